"""Least fixed points of constructive transformers: identifiers and expressions."""
from bunchkit import core, fixpoint as fp

ident = fp.identifier_transformer()
print("identifier transformer:", fp.check_constructive(ident))
for i, b in enumerate(fp.chain(ident, 3), 1):
  sample = sorted(fp.words(b))[:4]
  print(f"f^{i}.null has {len(b.elems)} words, e.g. {sample}")

print("identity:", fp.check_constructive(fp.Transformer("identity", lambda x: x)))

g = fp.parse_grammar(fp.EXPRESSION_GRAMMAR)
for name, steps in fp.mutual_chain(g, 3).items():
  print(name, [core.render(s) if len(s.elems) < 8 else f"{len(s.elems)} words" for s in steps])

for word, nt, depth in (("a+b", "E", 4), ("(a)*1", "T", 6), ("a+", "E", 6)):
  print(f"{word!r} in {nt} by depth {depth}:", fp.member_bounded(word, g, nt, depth))
