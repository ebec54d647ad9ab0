import json

import pytest
from hypothesis import given, settings, strategies as st

from bunchkit import model as m
from bunchkit.core import Given, SetType

U = m.Universe(2, 2)
T = U.given
MODEL = m.Model(U)
BAD = m.Model(U, improper=True)


def test_constant_denotes_singleton():
  assert MODEL.vden(m.Con("a", T), m.SemEnv(), {}) == frozenset({"a"})


def test_variable_denotes_its_binding():
  rho = m.SemEnv().override(x=frozenset({"a", "b"}))
  assert MODEL.vden(m.Var("x"), rho, {"x": T}) == frozenset({"a", "b"})


def test_truth_rules():
  envs = frozenset(m.SemEnv().override(x=frozenset({v})) for v in "ab")
  types = {"x": T}
  assert MODEL.tden(m.TrueP(), envs, types) == envs
  assert MODEL.tden(m.FalseP(), envs, types) == frozenset()
  p = m.Eq(m.Var("x"), m.Con("a", T))
  assert MODEL.tden(m.NotP(p), envs, types) == envs - MODEL.tden(p, envs, types)


bunch_of_t = st.sampled_from(MODEL.denotations(T))
preds = st.sampled_from([
    m.Eq(m.Var("x"), m.Con("a", T)), m.Incl(m.Var("x"), m.Con("b", T)), m.Element(m.Var("x")), m.TrueP(),
])


@given(bunch_of_t)
def test_packaging_two(v):
  rho = m.SemEnv().override(x=v)
  assert MODEL.vden(m.Unpack(m.Pack(m.Var("x"))), rho, {"x": T}) == v


@settings(max_examples=50)
@given(preds, preds)
def test_conjunction_is_intersection(p, q):
  envs = frozenset(m.SemEnv().override(x=v) for v in MODEL.denotations(T))
  types = {"x": T}
  assert MODEL.tden(m.AndP(p, q), envs, types) == MODEL.tden(p, envs, types) & MODEL.tden(q, envs, types)


def test_validate_axioms_report():
  r = m.validate_axioms(U)
  assert r.ok
  assert r.count("PASS") == 16
  assert [c.name for c in r.checks if c.status == "SKIPPED"] == ["BIG", "infinity 1", "infinity 2"]


def test_jsonl_records():
  r = m.validate_axioms(U)
  recs = [json.loads(line) for line in r.jsonl().splitlines()]
  assert {x["status"] for x in recs} == {"PASS", "SKIPPED"}
  assert recs[0]["name"] == "ordered pair"


def test_mutated_choice_fails_choice_only():
  r = m.validate_axioms(m.Universe(2, 2, choice="mutated"))
  assert r["choice"].status == "FAIL"
  assert r["ordered pair"].status == "PASS"


def test_without_kappa_atomicity_fails():
  r = m.Report(m.improper_checks(m.Universe(2, 2, use_kappa=False)))
  assert r["atomicity"].status == "FAIL"
  assert "A=" in r["atomicity"].detail


def test_kappa_properties():
  r = m.kappa_properties(U)
  assert r["property 1"].status == "PASS"
  assert r["property 2"].status == "PASS"


def test_lemmas():
  r = m.lemma_suite(U)
  assert r.ok
  assert [c.name for c in r.checks] == [f"L{i}" for i in range(1, 10)]


def test_bottom_is_maximal_set():
  assert BAD.bot(T) == frozenset({"a", "b", m.Kappa("T")})
  assert BAD.bot(SetType(T)) >= MODEL.carrier(SetType(T))


def test_no_carrier_for_scalars():
  from bunchkit.core import INT
  with pytest.raises(m.Unsupported):
    MODEL.carrier(INT)


def test_infinite_is_unsupported():
  with pytest.raises(m.Unsupported):
    MODEL.tden(m.Infinite(m.Var("x")), {m.SemEnv().override(x=frozenset())}, {"x": T})


def test_given_type_carrier():
  assert isinstance(T, Given)
  assert MODEL.carrier(T) == frozenset({"a", "b"})
