"""Prospective values S ◇ E, checked against weakest preconditions."""
from bunchkit import core, pv as pvmod, wp
from bunchkit.core import Env, ints
from bunchkit.parser import parse_cmd, parse_expr
from bunchkit.states import StateSpace
from bunchkit.syntax import Var

state = Env({"x": ints(0), "y": ints(5)})


def pv(cmd, expr):
  v = pvmod.pv(parse_cmd(cmd), parse_expr(expr), state)
  print(f"{cmd:40} ◇ {expr:18} = {core.render(v)}")


pv("x := 2", "x + 10")
pv("x := 1 [] x := 2", "x + 10")
pv("false ==> skip", "!!:INT")

# Preferential choice backtracks into its second branch when the continuation fails.
pv("x := 1 >> x := 2 ; x = 2 ==> skip", "x")
pv("x := 1 >> abort", "x")
# It is not monotonic: null : x, yet the results are ⊥ and x.
pv("skip >> abort", "null:INT")
pv("skip >> abort", "x")
# Nor conjunctive.
for e in ("(x > 0 ->> x), y", "x > 0 ->> x", "y"):
  pv("x := 0 >> x := 1", e)

# Probabilistic choice takes expectations, exactly.
for c in ("x := 1 <+>1/3 x := 2", "magic <+>1/3 x := 4", "abort <+>1/3 x := 4"):
  print(f"{c:40} ◇E x = {core.render(pvmod.pv_expect(parse_cmd(c), Var('x'), state))}")

# The basic law z : (S ◇ E) ⇔ ⟨S⟩(z : E), over every state of a small space.
space = StateSpace.of({"x": core.int_range(0, 3)})
c = parse_cmd("x := 1, 2 ; x > 1 ==> skip")
print("basic law violations:", wp.basic_law_check(c, Var("x"), space))
# With z = null the two sides part company wherever S is infeasible.
bad = wp.basic_law_check(parse_cmd("x = 0 ==> skip"), Var("x"), space)
print("null at infeasible states:", [(space.show(v.state), core.render(v.z)) for v in bad])

# Refinement: T refines S when T ◇ E : S ◇ E for every E.
abstract, impl = parse_cmd("x := 1 [] x := 2"), parse_cmd("x := 1 >> x := 2")
print("preference refines choice:", bool(pvmod.refine_check(abstract, impl, [Var("x")], space)))
