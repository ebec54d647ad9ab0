import pytest
from hypothesis import given, strategies as st

from bunchkit import boolean as b, core
from bunchkit.core import INT, ints, null

from helpers import ev

PRINTED = """
null  null  F  null  null
null  T     F  T,F   ⊥
F     F     F  F     F
null  T,F   F  T,F   ⊥
null  ⊥     F  ⊥     ⊥
"""


def test_and_table_cell_for_cell():
  rows = [line.split() for line in PRINTED.strip().splitlines()]
  for i, x in enumerate(b.FIVE):
    for j, y in enumerate(b.FIVE):
      assert b.classify(b.and_b(x, y)) == rows[i][j]


def test_and_table_is_symmetric():
  for i in range(5):
    for j in range(5):
      assert b.AND_TABLE[i][j] == b.AND_TABLE[j][i]


def test_table_examples():
  assert b.and_b(b.F, b.BOT) == b.F
  assert b.and_b(b.NULL, b.T) == b.NULL
  assert b.and_b(b.TF, b.TF) == b.TF
  assert b.and_b(b.NULL, b.F) == b.F
  assert b.and_b(b.BOT, b.NULL) == b.NULL


def test_five_interpretations():
  bald = core.pack(core.strings("louis"))
  king_of_france = null(core.STRING)
  assert b.classify(b.mem_b(king_of_france, bald)) == "null"
  assert b.classify(b.eq_b(ev("1+1"), ints(2))) == "T"
  assert b.classify(b.eq_b(ints(1), ints(2))) == "F"
  assert b.classify(b.lt_b(ints(1, 3), ints(2))) == "T,F"
  assert b.classify(b.eq_b(ev("n >= 0 |>> n", n=-1), ints(1))) == "⊥"


def test_bottom_guard_fires_before_comprehension():
  assert b.eq_b(core.bottom(INT), null(INT)) == b.BOT
  assert b.eq_b(null(INT), core.bottom(INT)) == b.BOT


def test_render():
  assert [b.render(x) for x in b.FIVE] == ["null:BOOL", "T", "F", "T,F", "improper:BOOL"]


def test_only_conjunction_is_defined():
  with pytest.raises(b.Unsupported):
    b.not_b(b.T)
  with pytest.raises(b.Unsupported):
    b.or_b(b.T, b.F)


def test_type_mismatch():
  with pytest.raises(core.BunchTypeError):
    b.eq_b(ints(1), core.strings("a"))
  with pytest.raises(core.BunchTypeError):
    b.classify(ints(1))


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_eq_on_elements_is_classical(x, y):
  assert b.eq_b(ints(x), ints(y)) == (b.T if x == y else b.F)


@given(st.sampled_from(b.FIVE), st.sampled_from(b.FIVE))
def test_every_result_is_one_of_five(x, y):
  assert b.classify(b.and_b(x, y)) in b.NAMES
