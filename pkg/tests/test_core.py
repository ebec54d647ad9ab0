import pytest
from hypothesis import given, strategies as st

from bunchkit import core
from bunchkit.core import INT, bottom, ints, null

from helpers import ev, holds, shown

small = st.frozensets(st.integers(-3, 6), max_size=5).map(lambda s: ints(*s))
bunches = st.one_of(small, st.just(bottom(INT)))


@pytest.mark.parametrize("text, want", [
    ("(1,2), (2,3)", "1,2,3"),
    ("(1,2)'(2,3)", "2"),
    ("(1,2)'!!", "improper:INT"),
    ("(1,2,3) \\ 2", "1,3"),
    ("!! \\ 1", "improper:INT"),
    ("null \\ (1,2)", "null:INT"),
    ("card (1,2,5)", "3"),
    ("card null", "0"),
    ("{1,2}", "{1,2}"),
    ("{improper:INT}", "improper:pow(INT)"),
    ("{null:INT}", "{}"),
    ("~{1,2}", "1,2"),
    ("~({1,2},{2,5})", "1,2,5"),
    ("~(improper:pow(INT))", "improper:INT"),
    ("true ->> (1,2)", "1,2"),
    ("false ->> 1/0", "null:INT"),
    ("true |>> 1", "1"),
    ("false |>> 1", "improper:INT"),
    ("(1,2) |-> (3,4)", "1 |-> 3,1 |-> 4,2 |-> 3,2 |-> 4"),
    ("1 |-> !!", "improper:(INT*ANY)"),
    ("(0,1)+(2,4)", "2,3,4,5"),
    ("2 + 1/0", "null:INT"),
    ("1 * !!", "improper:INT"),
    ("% x : (1,2) @ 10*x", "10,20"),
    ("7/2", "3"),
    ("7 mod 0", "null:INT"),
    ("0 .. 3", "0,1,2,3"),
    ('"ab" ^ "c"', '"abc"'),
])
def test_operator_examples(text, want):
  assert shown(text) == want


def test_false_guard_of_bottom_is_null():
  assert ev("false ->> !!").is_null


def test_false_precondition_of_null_is_bottom():
  assert ev("false |>> null").improper


def test_null_maplet_is_null():
  assert ev("null |-> 3").is_null


@pytest.mark.parametrize("text, want", [
    ("1 : (1,2)", True), ("(1,2) : !!", True), ("!! : (1,2)", False),
    ("null in {1}", True), ("(2,3) in {1,2,3}", True), ("(2,5) in {1,2,3}", False),
    ("1 in ({1,2},{1,3})", True), ("2 in ({1,2},{1,3})", False),
])
def test_inclusion_and_membership(text, want):
  assert holds(text) is want


def test_guard_is_not_strict():
  calls = []
  core.guard(False, lambda: calls.append(1) or ints(1), INT)
  assert calls == []


def test_atomicity():
  assert core.is_atomic(ints(1))
  assert core.is_atomic(null(INT))
  assert core.is_atomic(bottom(INT))
  assert not core.is_atomic(ints(1, 2))


def test_comprehension_with_bottom_absorbs():
  assert ev("% x : (1,2,3) @ (x = 2 ->> !!:INT)").improper
  assert ev("% x : (1,2) @ null:INT").is_null


def test_type_errors():
  with pytest.raises(core.BunchTypeError):
    ev('1 + "a"')
  with pytest.raises(core.BunchTypeError):
    core.union(ints(1), core.strings("a"))


def test_integer_division_truncates_toward_zero():
  assert shown("-7/2") == "-3"
  assert shown("(7,8)/(0,2)") == "3,4"


@given(small, small)
def test_union_commutes(a, b):
  assert core.union(a, b) == core.union(b, a)


@given(small, small, small)
def test_intersection_distributes_over_union(a, b, c):
  assert core.intersect(a, core.union(b, c)) == core.union(core.intersect(a, b), core.intersect(a, c))


@given(bunches, bunches)
def test_sub_bunch_antisymmetry(a, b):
  both = core.sub_bunch(a, b) and core.sub_bunch(b, a)
  assert both == (a == b)


@given(bunches)
def test_bottom_is_maximal(a):
  assert core.sub_bunch(a, bottom(INT))


@given(bunches, bunches)
def test_bottom_is_atomic(a, b):
  if core.sub_bunch(bottom(INT), core.union(a, b)):
    assert a.improper or b.improper


@given(bunches)
def test_unpack_pack(a):
  assert core.unpack(core.pack(a)) == a


@given(small)
def test_pack_unpack_on_sets(a):
  s = core.pack(a)
  assert core.pack(core.unpack(s)) == s


@given(small, small, st.booleans())
def test_guard_distributes(a, b, g):
  lhs = core.guard(g, core.union(a, b), INT)
  assert lhs == core.union(core.guard(g, a, INT), core.guard(g, b, INT))


@given(st.integers(-3, 6), small, small)
def test_part_of_and_member_of(x, a, b):
  e = ints(x)
  assert core.sub_bunch(e, core.union(a, b)) == (core.sub_bunch(e, a) or core.sub_bunch(e, b))
  sa, sb = core.pack(a), core.pack(b)
  assert core.member(e, core.union(sa, sb)) == (core.member(e, sa) and core.member(e, sb))


@given(st.integers(-3, 6), small)
def test_member_is_classical_on_elements(x, a):
  assert core.member(ints(x), core.pack(a)) == (core.IntV(x) in a.members)


@given(small, small)
def test_addition_is_lifted_pointwise(a, b):
  want = {x.n + y.n for x in a.elems for y in b.elems}
  assert {v.n for v in core.add(a, b).elems} == want
