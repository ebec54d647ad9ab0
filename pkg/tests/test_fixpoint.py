import string

import pytest
from hypothesis import given, settings, strategies as st

from bunchkit import core, fixpoint as fp
from bunchkit.core import STRING, null

ALPHA = set(string.ascii_lowercase)
BETA = ALPHA | set(string.digits)
IDENT = fp.identifier_transformer()


def ident_words(n):
  out, layer = set(), set(ALPHA)
  for _ in range(n):
    out |= layer
    layer = {w + b for w in layer for b in BETA}
  return out


def test_identifier_chain():
  c = fp.chain(IDENT, 3)
  for i, b in enumerate(c, 1):
    assert fp.words(b) == ident_words(i)
  assert [len(b.elems) for b in c] == [26, 962, 34658]


def test_grammar_chain_matches_transformer_chain():
  g = fp.parse_grammar(fp.IDENTIFIER_GRAMMAR)
  assert fp.mutual_chain(g, 3)["ID"] == fp.chain(IDENT, 3)


def test_membership():
  g = fp.parse_grammar(fp.IDENTIFIER_GRAMMAR)
  yes = fp.member_bounded("a1", g, "ID", 2)
  assert yes.verdict == "YES" and yes.depth == 2
  no = fp.member_bounded("1a", g, "ID", 9)
  assert no.verdict == "NO-UP-TO" and str(no) == "NO-UP-TO 9"
  assert not fp.member_bounded("", IDENT, 5)
  assert fp.member_bounded("a1", IDENT, 2)


def test_expression_grammar_goldens():
  g = fp.parse_grammar(fp.EXPRESSION_GRAMMAR)
  steps = g.languages(3)
  atoms = {"0", "1", "a", "b"}
  assert steps[0] == {"E": frozenset(), "T": frozenset(), "F": frozenset(atoms)}
  assert steps[1] == {"E": frozenset(), "T": frozenset(atoms), "F": frozenset(atoms)}
  assert steps[2]["E"] == frozenset(atoms)
  assert "a*b" in steps[2]["T"]


def test_expression_membership():
  g = fp.parse_grammar(fp.EXPRESSION_GRAMMAR)
  assert fp.member_bounded("a+b", g, "E", 4).depth == 4
  assert not fp.member_bounded("a+b", g, "E", 3)
  assert fp.member_bounded("(a)", g, "F", 5)


def test_constructiveness():
  assert fp.check_constructive(IDENT)
  ident = fp.check_constructive(fp.Transformer("id", lambda x: x))
  assert not ident.nonstrict and ident.distributive


def test_non_distributive_rejected_with_witness():
  def f(x):
    extra = fp.string_bunch(["zz"]) if len(x.elems) >= 2 else null(STRING)
    return core.union(fp.string_bunch(["a"]), core.union(x, extra))
  r = fp.check_constructive(fp.Transformer("crafted", f))
  assert r.nonstrict and not r.distributive
  _, c, d, lhs, rhs = r.witness
  assert lhs != rhs
  assert "not distributive" in str(r)


def test_lfp():
  const = fp.Transformer("c", lambda x: fp.string_bunch(["c"]))
  got = fp.lfp_bounded(const, 5)
  assert got.status == "EXACT" and got.depth == 1 and fp.words(got.value) == {"c"}
  approx = fp.lfp_bounded(IDENT, 2)
  assert approx.status == "APPROXIMANT"


def test_finite_closure_reaches_exact():
  abc = fp.string_bunch(["a", "b", "c"])
  f = fp.Transformer("close", lambda x: core.union(fp.string_bunch(["a"]), core.intersect(fp.cat(x, fp.string_bunch([""])), abc)))
  got = fp.lfp_bounded(f, 10)
  assert got.status == "EXACT"
  assert f(got.value) == got.value


def test_nat_style_chain_over_ints():
  top = core.int_range(0, 10)
  f = fp.Transformer("nat", lambda a: core.union(core.ints(0), core.intersect(core.add(a, core.ints(1)), top)),
                     type=core.INT)
  assert [core.render(b) for b in fp.chain(f, 3)] == ["0", "0,1", "0,1,2"]


def test_grammar_errors():
  with pytest.raises(fp.GrammarError):
    fp.parse_grammar("E = E +")
  with pytest.raises(fp.GrammarError):
    fp.parse_grammar("const c = X")
  with pytest.raises(fp.GrammarError):
    fp.parse_grammar("")
  with pytest.raises(fp.GrammarError):
    fp.member_bounded("a", fp.parse_grammar(fp.IDENTIFIER_GRAMMAR), "Q", 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4))
def test_chains_increase(n):
  g = fp.parse_grammar(fp.EXPRESSION_GRAMMAR)
  steps = g.languages(n + 1)
  for a, b in zip(steps, steps[1:]):
    assert all(a[k] <= b[k] for k in a)


@given(st.sets(st.sampled_from(["", "a", "b1", "zz"]), max_size=4), st.sets(st.sampled_from(["q", "a", "9"]), max_size=3))
def test_identifier_transformer_distributes(c, d):
  c, d = fp.string_bunch(c), fp.string_bunch(d)
  assert IDENT(core.union(c, d)) == core.union(IDENT(c), IDENT(d))
