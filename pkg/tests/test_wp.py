import random

import pytest
from hypothesis import given, settings, strategies as st

from bunchkit import core, pv as pvmod, wp
from bunchkit.corpus import ProgramGen
from bunchkit.parser import parse_cmd, parse_expr
from bunchkit.states import StateSpace
from bunchkit.syntax import Choice, Var, write_set

SPACE = StateSpace.of({"x": core.int_range(0, 3)})
X = lambda v: core.IntV(v)


def where(test):
  return SPACE.where(lambda e: test(e["x"].value.n))


def test_abort_establishes_nothing():
  for q in (frozenset(), SPACE.all, where(lambda x: x > 1)):
    assert wp.wp(parse_cmd("abort"), q, SPACE) == frozenset()


def test_magic_establishes_false():
  assert wp.wp(parse_cmd("magic"), frozenset(), SPACE) == SPACE.all


def test_assignment_of_a_bunch_is_demonic():
  c = parse_cmd("x := 1, 2")
  assert wp.wp(c, where(lambda x: x == 1), SPACE) == frozenset()
  assert wp.wp(c, where(lambda x: x in (1, 2)), SPACE) == SPACE.all


def test_cwp_examples():
  q = where(lambda x: x == 2)
  s, t = parse_cmd("x := 1"), parse_cmd("x := 2")
  assert wp.cwp(Choice(s, t), q, SPACE) == wp.cwp(s, q, SPACE) | wp.cwp(t, q, SPACE)
  assert wp.cwp(parse_cmd("skip"), q, SPACE) == q
  assert wp.cwp(parse_cmd("abort"), q, SPACE) == SPACE.all


def test_pref_has_no_wp_rule():
  with pytest.raises(pvmod.UnsupportedConstruct):
    wp.wp(parse_cmd("skip >> abort"), SPACE.all, SPACE)


@pytest.mark.parametrize("cmd", ["x := 1, 2 ; x > 1 ==> skip", "abort", "skip", "x := (x + 1) mod 4 [] x := 0"])
def test_basic_law_examples(cmd):
  assert wp.basic_law_check(parse_cmd(cmd), Var("x"), SPACE) == []


def test_basic_law_fails_for_null_when_infeasible():
  bad = wp.basic_law_check(parse_cmd("magic"), Var("x"), SPACE)
  assert bad and all(v.z.is_null and v.lhs and not v.rhs for v in bad)


def test_pv_explicit_examples():
  e = SPACE.env((X(0),))
  assert wp.pv_explicit(parse_cmd("abort"), Var("x"), e, SPACE).improper
  assert wp.pv_explicit(parse_cmd("magic"), Var("x"), e, SPACE).is_null
  assert wp.pv_explicit(parse_cmd("x := 1, 2"), parse_expr("x + 10"), e, SPACE) == core.ints(11, 12)


def programs(seed, n=3):
  g = ProgramGen(n, seed)
  return g, g.space()


def random_pred(space, rng):
  return frozenset(s for s in space if rng.random() < 0.5)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_transformer_laws(seed):
  g, space = programs(seed)
  rng = random.Random(seed)
  c = g.cmd()
  p, q = random_pred(space, rng), random_pred(space, rng)
  assert wp.wp(c, p & q, space) == wp.wp(c, p, space) & wp.wp(c, q, space)
  assert wp.cwp(c, p | q, space) == wp.cwp(c, p, space) | wp.cwp(c, q, space)
  assert wp.wp(c, p, space) <= wp.wp(c, p | q, space)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_frame_disjoint_conjunctivity(seed):
  g, space = programs(seed)
  rng = random.Random(seed)
  c = g.cmd()
  frame = write_set(c)
  free = [i for i, n in enumerate(space.names) if n not in frame]
  p = random_pred(space, rng)
  if free:
    i = free[0]
    keep = {v for v in space.domains[i] if rng.random() < 0.5}
    q = frozenset(s for s in space if s[i] in keep)
  else:
    q = space.all
  assert wp.cwp(c, p & q, space) == wp.cwp(c, p, space) & wp.cwp(c, q, space)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_pv_explicit_agrees_with_pv(seed):
  g, space = programs(seed)
  c, e = g.cmd(), g.observation()
  for s in space:
    env = space.env(s)
    assert wp.pv_explicit(c, e, env, space) == pvmod.pv(c, e, env)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 100_000))
def test_basic_law_for_elements_and_bottom(seed):
  g, space = programs(seed)
  c, e = g.cmd(), g.observation()
  for v in wp.basic_law_check(c, e, space):
    assert v.z.is_null
    assert not pvmod.fis(c, space.env(v.state))
