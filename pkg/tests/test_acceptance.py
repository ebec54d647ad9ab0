"""One test per acceptance criterion; each prints a PASS or FAIL line."""
import string
import time
from fractions import Fraction
from math import factorial

from bunchkit import boolean as b, core, fixpoint as fp, model, pv as pvmod, relations as rel, wp
from bunchkit.core import Env, INT, ints
from bunchkit.corpus import TreeGen, program_corpus
from bunchkit.evaluate import eval_expr, eval_pred
from bunchkit.parser import parse, parse_cmd, parse_expr, parse_pred, render
from bunchkit.syntax import Bin, Choice, Cmd, Expr, GuardC, If, Lit, Pred, Pref, PV, Seq, Var, if_as_choice

from helpers import verdict


def pv_at(cmd, expr, **state):
  env = Env({k: ints(v) for k, v in state.items()})
  return pvmod.pv(parse_cmd(cmd), parse_expr(expr), env)


def test_01_lifted_arithmetic():
  got = core.render(eval_expr(parse_expr("(0,1)+(2,4)"), Env()))
  verdict(1, "lifted arithmetic", got == "2,3,4,5", got)


def test_02_undefinedness_battery():
  env = Env({"king_of": rel.relation([], core.STRING, core.STRING), "france": core.strings("france"),
             "bald": core.pack(core.strings("louis"))})
  king = eval_expr(parse_expr("king_of(france)"), env)
  results = {
      "2+3/0 = 2": eval_pred(parse_pred("2+3/0 = 2"), env) is False,
      "2+3/0 /= 2": eval_pred(parse_pred("2+3/0 /= 2"), env) is True,
      "king_of(france) = null": king.is_null,
      "king_of(france) in bald": eval_pred(parse_pred("king_of(france) in bald"), env) is True,
      "1/0 = 1/0": eval_pred(parse_pred("1/0 = 1/0"), env) is True,
  }
  bad = [k for k, ok in results.items() if not ok]
  verdict(2, "undefinedness battery", not bad, ", ".join(bad) or "5 cases")


def test_03_factorial_chain():
  chain = rel.factorial_chain(7, range(7))
  ok = core.render(chain[1]) == "{0 |-> 1}" and core.render(chain[2]) == "{0 |-> 1,1 |-> 1}"
  fact = chain[7]
  ok = ok and all(rel.apply(fact, ints(n)) == ints(factorial(n)) for n in range(7))
  ok = ok and all(rel.apply(fact, ints(n)).is_null for n in (-3, -1, 7, 8))
  verdict(3, "factorial chain", ok, core.render(fact))


def test_04_pv_core():
  checks = [
      core.render(pv_at("x := 2", "x + 10", x=0)) == "12",
      core.render(pv_at("x := 1 [] x := 2", "x + 10", x=0)) == "11,12",
      pv_at("false ==> skip", "!!:INT", x=0).is_null,
  ]
  c = parse_cmd("if x = 0 then x := 5 else x := x + 1 end")
  assert isinstance(c, If)
  for x in range(3):
    env = Env({"x": ints(x)})
    checks.append(pvmod.pv(c, Var("x"), env) == pvmod.pv(if_as_choice(c), Var("x"), env))
  verdict(4, "prospective value core", all(checks), f"{sum(checks)}/{len(checks)} checks")


def test_05_preferential_choice():
  s = "x := 0 >> x := 1"
  checks = {
      "worked example": core.render(pv_at("x := 1 >> x := 2 ; x = 2 ==> skip", "x", x=0)) == "2",
      "termination discards choice": core.render(pv_at("x := 1 >> abort", "x", x=0)) == "1",
      "skip >> abort <> null": pv_at("skip >> abort", "null:INT", x=7).improper,
      "skip >> abort <> x": core.render(pv_at("skip >> abort", "x", x=7)) == "7",
      "triple": [core.render(pv_at(s, e, x=0, y=5)) for e in ("(x > 0 ->> x), y", "x > 0 ->> x", "y")]
      == ["5", "1", "5"],
  }
  bad = [k for k, ok in checks.items() if not ok]
  verdict(5, "preferential choice", not bad, ", ".join(bad) or "y / x / y reproduced")


def test_06_probabilistic_choice():
  env = Env({"x": ints(0)})
  ex = lambda c: pvmod.pv_expect(parse_cmd(c), Var("x"), env)
  rat = lambda q: core.elem(core.RatV(Fraction(q)))
  checks = {
      "both feasible": ex("x := 1 <+>1/2 x := 3") == rat(2),
      "uneven weights": ex("x := 1 <+>1/3 x := 2") == rat(Fraction(5, 3)),
      "one infeasible": ex("(magic ; x := 7) <+>1/3 x := 4") == rat(4),
      "other infeasible": ex("x := 4 <+>1/3 magic") == rat(4),
      "abortive": ex("abort <+>1/3 x := 4").improper,
  }
  bad = [k for k, ok in checks.items() if not ok]
  verdict(6, "probabilistic choice", not bad, ", ".join(bad) or "exact rationals")


def test_07_basic_law():
  corpus = program_corpus(500, seed=1, sizes=(2, 3, 4))
  law, explicit, classes = 0, 0, set()
  for space, c, e in corpus:
    bad = wp.basic_law_check(c, e, space)
    if bad:
      law += 1
      for v in bad:
        kind = "null" if v.z.is_null else "bottom" if v.z.improper else "element"
        feasible = pvmod.fis(c, space.env(v.state))
        classes.add(f"z={kind} at {'feasible' if feasible else 'infeasible'} states")
    for s in space:
      env = space.env(s)
      if wp.pv_explicit(c, e, env, space) != pvmod.pv(c, e, env):
        explicit += 1
        break
  detail = f"{len(corpus)} programs; basic law violated by {law}"
  if classes:
    detail += " [" + "; ".join(sorted(classes)) + "]"
  detail += f"; pv_explicit differs on {explicit}"
  verdict(7, "basic law over the corpus", law == 0 and explicit == 0, detail)


def test_08_refinement_laws():
  plain = program_corpus(300, seed=2, sizes=(2, 3), int_only=True)
  mixed = program_corpus(300, seed=3, sizes=(2, 3), pref=True, int_only=True)
  fails = {"refinement": 0, "sub-conjunctivity": 0, "conjunctivity": 0, "monotonicity": 0, "wp/cwp": 0}
  null_e = Lit(core.null(INT))
  for (space, s, e), (_, t, f) in zip(mixed, mixed[1:]):
    if not pvmod.refine_check(Choice(s, t), Pref(s, t), [e, f, Var("x"), Var("y")], space):
      fails["refinement"] += 1
    for st in space:
      env = space.env(st)
      both = pvmod.pv(s, Bin(",", e, f), env)
      if not core.sub_bunch(both, core.union(pvmod.pv(s, e, env), pvmod.pv(s, f, env))):
        fails["sub-conjunctivity"] += 1
  for (space, s, e), (_, _, f) in zip(plain, plain[1:]):
    for st in space:
      env = space.env(st)
      se, sf = pvmod.pv(s, e, env), pvmod.pv(s, f, env)
      if pvmod.pv(s, Bin(",", e, f), env) != core.union(se, sf):
        fails["conjunctivity"] += 1
      if not core.sub_bunch(pvmod.pv(s, null_e, env), se) or not core.sub_bunch(se, pvmod.pv(s, Bin(",", e, f), env)):
        fails["monotonicity"] += 1
    states = list(space)
    for k in range(3):
      p = frozenset(states[k::2])
      q = frozenset(states[k::3])
      if wp.wp(s, p & q, space) != wp.wp(s, p, space) & wp.wp(s, q, space):
        fails["wp/cwp"] += 1
      if wp.cwp(s, p | q, space) != wp.cwp(s, p, space) | wp.cwp(s, q, space):
        fails["wp/cwp"] += 1
  bad = {k: v for k, v in fails.items() if v}
  detail = ", ".join(f"{k}: {v}" for k, v in bad.items()) or "zero violations over 600 programs"
  verdict(8, "refinement, conjunctivity, monotonicity", not bad, detail)


def test_09_axiom_validation():
  start = time.time()
  report = model.validate_axioms(model.Universe(2, 2))
  elapsed = time.time() - start
  skipped = [c.name for c in report if c.status == "SKIPPED"]
  mutated = model.validate_axioms(model.Universe(2, 2, choice="mutated"))
  ok = (report.ok and report.count("FAIL") == 0 and skipped == ["BIG", "infinity 1", "infinity 2"]
        and mutated["choice"].status == "FAIL" and elapsed < 60)
  for line in report.lines():
    print("  " + line)
  print("  mutated: " + mutated["choice"].line())
  detail = f"{report.count('PASS')} PASS, {len(skipped)} SKIPPED, mutated choice {mutated['choice'].status}, {elapsed:.1f}s"
  verdict(9, "axiom validation", ok, detail)


def test_10_grammar_chains():
  alpha = set(string.ascii_lowercase)
  beta = alpha | set(string.digits)
  want, layer = [], set(alpha)
  acc = set()
  for _ in range(3):
    acc |= layer
    want.append(set(acc))
    layer = {w + c for w in layer for c in beta}
  ident = fp.parse_grammar(fp.IDENTIFIER_GRAMMAR)
  got = [fp.words(x) for x in fp.mutual_chain(ident, 3)["ID"]]
  atoms = frozenset({"0", "1", "a", "b"})
  steps = fp.parse_grammar(fp.EXPRESSION_GRAMMAR).languages(2)
  checks = {
      "identifier chain": got == want,
      "a1 at 2": fp.member_bounded("a1", ident, "ID", 2).verdict == "YES",
      "1a at 9": fp.member_bounded("1a", ident, "ID", 9).verdict == "NO-UP-TO",
      "E/T/F depth 1": steps[0] == {"E": frozenset(), "T": frozenset(), "F": atoms},
      "E/T/F depth 2": steps[1] == {"E": frozenset(), "T": atoms, "F": atoms},
  }
  bad = [k for k, ok in checks.items() if not ok]
  verdict(10, "grammar chains", not bad, ", ".join(bad) or "goldens match")


def test_11_constructiveness():
  good = fp.check_constructive(fp.identifier_transformer())
  ident = fp.check_constructive(fp.Transformer("identity", lambda x: x))

  def crafted(x):
    extra = fp.string_bunch(["zz"]) if len(x.elems) >= 2 else core.null(core.STRING)
    return core.union(fp.string_bunch(["a"]), core.union(x, extra))

  bad = fp.check_constructive(fp.Transformer("crafted", crafted))
  ok = good.ok and not ident.nonstrict and not bad.distributive and bad.witness is not None
  print("  identity: " + str(ident))
  print("  crafted: " + str(bad))
  verdict(11, "constructiveness", ok, "identifier accepted; identity and crafted rejected")


def test_12_boolean_bunches():
  printed = [
      ["null", "null", "F", "null", "null"],
      ["null", "T", "F", "T,F", "⊥"],
      ["F", "F", "F", "F", "F"],
      ["null", "T,F", "F", "T,F", "⊥"],
      ["null", "⊥", "F", "⊥", "⊥"],
  ]
  table_ok = all(b.classify(b.and_b(x, y)) == printed[i][j]
                 for i, x in enumerate(b.FIVE) for j, y in enumerate(b.FIVE))
  neg = eval_expr(parse_expr("n >= 0 |>> n"), Env({"n": ints(-1)}))
  interp = [
      b.classify(b.mem_b(core.null(core.STRING), core.pack(core.strings("louis")))) == "null",
      b.classify(b.eq_b(eval_expr(parse_expr("1+1"), Env()), ints(2))) == "T",
      b.classify(b.eq_b(ints(1), ints(2))) == "F",
      b.classify(b.lt_b(ints(1, 3), ints(2))) == "T,F",
      b.classify(b.eq_b(neg, ints(1))) == "⊥",
  ]
  verdict(12, "boolean bunches", table_ok and all(interp), f"25 cells, {sum(interp)}/5 interpretations")


def _category_parser(t):
  return parse_expr if isinstance(t, Expr) else parse_pred if isinstance(t, Pred) else parse_cmd


def test_13_parser():
  n, p = Var("n"), Var("p")
  got = parse("∀n • n>1 ⇒ (∃p • prime(p) ∧ n<p ∧ p<2*n)")
  shape = render(got, ascii=True) == "forall n @ n > 1 => (exists p @ prime(p) & n < p & p < 2 * n)"
  shape = shape and got.kind == "all" and got.body.op == "=>" and got.body.right.kind == "some"
  pref = parse("x:=1 ⟩⟩ x:=2 ; x=2 ⟹ skip ◇ x")
  binding = (isinstance(pref, PV) and isinstance(pref.cmd, Seq) and isinstance(pref.cmd.left, Pref)
             and isinstance(pref.cmd.right, GuardC))
  aliases = [("~{1}", "~{1}"), ("x ↦ y", "x |-> y"), ("skip ◇ x", "skip <> x"), ("skip ⊓ abort", "skip [] abort"),
             ("skip ⟩⟩ abort", "skip >> abort"), ("x=1 ⟹ skip", "x=1 ==> skip"), ("skip ⊕1/2 abort", "skip <+>1/2 abort"),
             ("⊥", "!!"), ("∮x • x", "% x @ x"), ("x=1 ↣ 2", "x=1 ->> 2"), ("x=1 ⫢ 2", "x=1 |>> 2"), ("a, b", "a, b"),
             ("a ' b", "a ' b")]
  alias_ok = all(parse(u) == parse(a) for u, a in aliases)
  gen = TreeGen(13)
  trips = 0
  for _ in range(1000):
    t = gen.tree(3)
    if all(_category_parser(t)(render(t, ascii=a)) == t for a in (False, True)):
      trips += 1
  comma = parse("0,1 + 2,4") == parse("0, (1 + 2), 4")
  ok = shape and binding and alias_ok and comma and trips == 1000
  verdict(13, "parser", ok, f"Bertrand tree {shape}, >> vs ; {binding}, aliases {alias_ok}, {trips}/1000 round trips")
