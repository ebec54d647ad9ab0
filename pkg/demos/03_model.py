"""Checking the axioms in a finite model, including a deliberately broken one."""
from bunchkit import model

u = model.Universe(carrier_size=2, depth=2)
print("\n".join(model.validate_axioms(u).lines()))

# A choice function that guesses breaks the choice axiom and nothing else.
broken = model.validate_axioms(model.Universe(2, 2, choice="mutated"))
print("\nmutated choice:", broken["choice"].line())

# Without the extra κ element in each carrier the improper bunch is not atomic.
no_kappa = model.Report(model.improper_checks(model.Universe(2, 2, use_kappa=False)))
print("without κ:", no_kappa["atomicity"].line())

print()
print("\n".join(model.lemma_suite(u).lines()))
