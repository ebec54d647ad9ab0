"""Boolean bunches: the five BOOL bunches null, T, F, (T,F), ⊥ and the
wholistic comparisons that produce them."""
from __future__ import annotations

from collections.abc import Callable

from . import core
from .core import BOOL, Bunch, BunchTypeError, Value, bottom, null


class Unsupported(Exception):
  pass


T = core.elem(core.TRUE)
F = core.elem(core.FALSE)
TF = core.bools(True, False)
NULL = null(BOOL)
BOT = bottom(BOOL)

FIVE = (NULL, T, F, TF, BOT)
NAMES = ("null", "T", "F", "T,F", "⊥")


def classify(b: Bunch) -> str:
  """The name of one of the five boolean bunches."""
  if core.unify(b.type, BOOL) is None:
    raise BunchTypeError(f"not a boolean bunch: type {b.type}")
  b = b.retype(BOOL)
  for name, v in zip(NAMES, FIVE):
    if b == v:
      return name
  raise AssertionError("unreachable: a BOOL bunch is one of five")


def render(b: Bunch) -> str:
  name = classify(b)
  return {"null": "null:BOOL", "⊥": "improper:BOOL"}.get(name, name)


def _wholistic(test: Callable[[Value, Value], bool]) -> Callable[[Bunch, Bunch], Bunch]:
  """Λ A,B • A=⊥ ∨ B=⊥ ↣ ⊥ , (∮ a,b • a:A ∧ b:B ↣ if test(a,b) then T else F end)"""
  def op(a: Bunch, b: Bunch) -> Bunch:
    if a.improper or b.improper:
      return BOT
    outs = {test(x, y) for x in a.elems for y in b.elems}
    return core.bools(*outs) if outs else NULL
  return op


def _same(a: Bunch, b: Bunch):
  if core.unify(a.type, b.type) is None:
    raise BunchTypeError(f"cannot compare {a.type} with {b.type}")


def eq_b(a: Bunch, b: Bunch) -> Bunch:
  _same(a, b)
  return _wholistic(lambda x, y: x == y)(a, b)


def lt_b(a: Bunch, b: Bunch) -> Bunch:
  _same(a, b)
  return _wholistic(lambda x, y: core.compare_values(x, y) < 0)(a, b)


def mem_b(a: Bunch, s: Bunch) -> Bunch:
  if not (s.type == core.ANY or isinstance(s.type, core.SetType)):
    raise BunchTypeError(f"membership needs a set on the right, got {s.type}")
  if isinstance(s.type, core.SetType) and core.unify(a.type, s.type.inner) is None:
    raise BunchTypeError(f"cannot test {a.type} for membership in {s.type}")
  return _wholistic(lambda x, y: x in y.contents.members)(a, s)


# rows and columns in the order null, T, F, T,F, ⊥
AND_TABLE = (
    ("null", "null", "F", "null", "null"),
    ("null", "T", "F", "T,F", "⊥"),
    ("F", "F", "F", "F", "F"),
    ("null", "T,F", "F", "T,F", "⊥"),
    ("null", "⊥", "F", "⊥", "⊥"),
)


def and_b(a: Bunch, b: Bunch) -> Bunch:
  """Table lookup; note null ∧ F = F, unlike pointwise lifting."""
  i, j = NAMES.index(classify(a)), NAMES.index(classify(b))
  return FIVE[NAMES.index(AND_TABLE[i][j])]


def not_b(a: Bunch) -> Bunch:
  raise Unsupported("only conjunction has a defined table for boolean bunches")


def or_b(a: Bunch, b: Bunch) -> Bunch:
  raise Unsupported("only conjunction has a defined table for boolean bunches")
