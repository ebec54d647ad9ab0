"""Executable bunch theory: values, prospective-value semantics, models and fixed points."""
