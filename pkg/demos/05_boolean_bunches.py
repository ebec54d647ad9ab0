"""Five boolean bunches and the conjunction table."""
from bunchkit import boolean as b, core
from bunchkit.core import ints

print("     " + "".join(f"{n:>6}" for n in b.NAMES))
for x, name in zip(b.FIVE, b.NAMES):
  print(f"{name:>5}" + "".join(f"{b.classify(b.and_b(x, y)):>6}" for y in b.FIVE))

print("1+1 =b 2   :", b.render(b.eq_b(core.add(ints(1), ints(1)), ints(2))))
print("1,3 <b 2   :", b.render(b.lt_b(ints(1, 3), ints(2))))
print("null ∈b {x}:", b.render(b.mem_b(core.null(core.STRING), core.pack(core.strings("louis")))))
print("⊥ =b 1     :", b.render(b.eq_b(core.bottom(core.INT), ints(1))))
