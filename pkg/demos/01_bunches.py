"""Bunches as unpackaged collections: lifted operators, null and the improper bunch."""
from bunchkit import core, relations as rel
from bunchkit.core import Env, ints
from bunchkit.evaluate import eval_expr, eval_pred
from bunchkit.parser import parse_expr, parse_pred


def show(text, env=Env()):
  print(f"{text:32} = {core.render(eval_expr(parse_expr(text), env))}")


def truth(text, env=Env()):
  print(f"{text:32} is {eval_pred(parse_pred(text), env)}")


# Operators apply to every combination of elements.
show("(0,1)+(2,4)")
# Comma binds more loosely than +, so this is 0, (1+2), 4.
show("0,1 + 2,4")
show("{1,2}")
show("~({1,2},{2,5})")
show("(1,2) |-> (3,4)")

# Division by zero gives null, the empty bunch, and null propagates through arithmetic.
show("2 + 3/0")
truth("2+3/0 = 2")
truth("2+3/0 /= 2")
truth("1/0 = 1/0")

# The improper bunch absorbs, and a failed precondition produces it.
show("1 * !!:INT")
show("false |>> 1")
show("false ->> 1")

# A description with nothing to describe is null, and null is a member of every set.
env = Env({"king_of": rel.relation([], core.STRING, core.STRING), "france": core.strings("france"),
           "bald": core.pack(core.strings("louis"))})
show("king_of(france)", env)
truth("king_of(france) in bald", env)

# Factorial as the limit of a chain of relations, starting from the empty relation.
for i, f in enumerate(rel.factorial_chain(4, range(7))):
  print(f"fact{i} = {core.render(f)}")
fact = rel.factorial_chain(7, range(7))[-1]
print("fact(6) =", core.render(rel.apply(fact, ints(6))), " fact(-1) =", core.render(rel.apply(fact, ints(-1))))
