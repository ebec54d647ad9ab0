"""Constructive transformers, Kleene chains from null, and grammar systems.

A transformer maps whole bunches to bunches.  It is constructive when
f.null ≠ null and f.(C,D) = f.C , f.D; then the chain f.null, f².null, ...
increases and its union is the least fixed point.
"""
from __future__ import annotations

import itertools
import random
import re
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from . import core
from .core import STRING, Bunch, StringV, TypeTag, null


@dataclass(frozen=True)
class Transformer:
  name: str
  fn: Callable[..., Bunch]
  arity: int = 1
  type: TypeTag = STRING

  def __call__(self, *args: Bunch) -> Bunch:
    if len(args) != self.arity:
      raise TypeError(f"{self.name} takes {self.arity} bunches, got {len(args)}")
    return self.fn(*args)


def string_bunch(words: Iterable[str]) -> Bunch:
  return core.of(STRING, (StringV(w) for w in words))


def words(b: Bunch) -> frozenset[str]:
  return frozenset(v.s for v in b.elems)


def cat(a: Bunch, b: Bunch) -> Bunch:
  """Lifted catenation: every string of a followed by every string of b."""
  return core.lift_binary(core.CAT, a, b)


def char_range(lo: str, hi: str) -> Bunch:
  return string_bunch(chr(c) for c in range(ord(lo), ord(hi) + 1))


ALPHA = char_range("a", "z")
BETA = core.union(ALPHA, char_range("0", "9"))


def identifier_transformer(alpha: Bunch = ALPHA, beta: Bunch = BETA) -> Transformer:
  """f.X = α , X β"""
  return Transformer("ident", lambda x: core.union(alpha, cat(x, beta)))


# ---------------------------------------------------------------- chains

def chain(f: Transformer, n: int) -> list[Bunch]:
  """[f.null, f².null, ..., fⁿ.null]"""
  if n < 1:
    raise ValueError("a chain needs at least one step")
  out, x = [], null(f.type)
  for _ in range(n):
    x = f(x)
    out.append(x)
  return out


class Fixpoint(NamedTuple):
  value: Bunch
  status: str  # EXACT or APPROXIMANT
  depth: int

  def __str__(self):
    return f"{self.status} at depth {self.depth}: {core.render(self.value)}"


def lfp_bounded(f: Transformer, max_iter: int) -> Fixpoint:
  """Iterate from null until fⁿ⁺¹.null = fⁿ.null or max_iter steps."""
  x = null(f.type)
  for i in range(1, max_iter + 1):
    nxt = f(x)
    if nxt == x:
      return Fixpoint(x, "EXACT", i - 1)
    x = nxt
  return Fixpoint(x, "APPROXIMANT", max_iter)


# ---------------------------------------------------------------- constructiveness

@dataclass(frozen=True)
class ConstructiveReport:
  nonstrict: bool
  distributive: bool
  witness: tuple | None = None  # (argument, C, D, f.(C,D), f.C , f.D)
  samples: int = 0

  @property
  def ok(self) -> bool:
    return self.nonstrict and self.distributive

  def __bool__(self):
    return self.ok

  def __str__(self):
    if self.ok:
      return f"constructive ({self.samples} distributivity samples)"
    parts = []
    if not self.nonstrict:
      parts.append("strict: f.null = null")
    if not self.distributive:
      i, c, d, lhs, rhs = self.witness
      where = f" in argument {i + 1}" if i else ""
      parts.append(f"not distributive{where}: C = {core.render(c)}, D = {core.render(d)}, "
                   f"f.(C,D) = {core.render(lhs)} but f.C , f.D = {core.render(rhs)}")
    return "; ".join(parts)


DEFAULT_POOL = ("", "a", "b", "1", "ab", "zz", "a1")


def check_constructive(f: Transformer, sample_budget: int = 200, pool: Sequence | None = None,
                       seed: int = 0) -> ConstructiveReport:
  """f.null ≠ null exactly, and f.(C,D) = f.C , f.D on every pair of non-null
  bunches over the first four pool values plus random pairs over the rest."""
  values = [StringV(s) if isinstance(s, str) else s for s in (pool or DEFAULT_POOL)]
  t = f.type
  nonstrict = not f(*[null(t)] * f.arity).is_null
  small = [core.of(t, c) for r in range(1, 5) for c in itertools.combinations(values[:4], r)]
  pairs = list(itertools.product(small, small))
  rng = random.Random(seed)
  for _ in range(sample_budget):
    pairs.append(tuple(core.of(t, rng.sample(values, rng.randint(1, len(values)))) for _ in range(2)))
  fixed = [null(t)] + small[:3]
  n = 0
  for i in range(f.arity):
    others = itertools.product(fixed, repeat=f.arity - 1)
    for rest in others:
      for c, d in pairs:
        n += 1

        def at(x):
          return f(*rest[:i], x, *rest[i:])

        lhs, rhs = at(core.union(c, d)), core.union(at(c), at(d))
        if lhs != rhs:
          return ConstructiveReport(nonstrict, False, (i, c, d, lhs, rhs), n)
  return ConstructiveReport(nonstrict, True, None, n)


# ---------------------------------------------------------------- grammars

class Rhs:
  __slots__ = ()


@dataclass(frozen=True)
class Terminals(Rhs):
  words: frozenset[str]


@dataclass(frozen=True)
class Ref(Rhs):
  name: str


@dataclass(frozen=True)
class Alt(Rhs):
  parts: tuple[Rhs, ...]


@dataclass(frozen=True)
class Cat(Rhs):
  parts: tuple[Rhs, ...]


def terminals(*ws: str) -> Terminals:
  return Terminals(frozenset(ws))


def refs(node: Rhs) -> set[str]:
  if isinstance(node, Ref):
    return {node.name}
  if isinstance(node, (Alt, Cat)):
    return set().union(*(refs(p) for p in node.parts))
  return set()


def evaluate(node: Rhs, env: Mapping[str, frozenset[str]], limit: int | None = None) -> frozenset[str]:
  """The language of node given languages for its references; limit drops longer words."""
  if isinstance(node, Terminals):
    w = node.words
  elif isinstance(node, Ref):
    w = env[node.name]
  elif isinstance(node, Alt):
    w = frozenset().union(*(evaluate(p, env, limit) for p in node.parts))
  elif isinstance(node, Cat):
    w = frozenset([""])
    for p in node.parts:
      right = evaluate(p, env, limit)
      w = frozenset(a + b for a in w for b in right if limit is None or len(a) + len(b) <= limit)
      if not w:
        break
  else:
    raise TypeError(f"not a grammar expression: {node!r}")
  if limit is not None:
    w = frozenset(x for x in w if len(x) <= limit)
  return w


class GrammarError(Exception):
  pass


@dataclass(frozen=True)
class GrammarSystem:
  """Equations N = G_N(N₁, ..., N_k), solved together from all-null."""
  equations: Mapping[str, Rhs]
  order: tuple[str, ...] = field(default=())

  def __post_init__(self):
    order = self.order or tuple(self.equations)
    object.__setattr__(self, "order", order)
    for name, rhs in self.equations.items():
      missing = refs(rhs) - set(self.equations)
      if missing:
        raise GrammarError(f"{name} refers to undefined {', '.join(sorted(missing))}")

  @property
  def start(self) -> str:
    return self.order[0]

  def step(self, env: Mapping[str, frozenset[str]], limit: int | None = None) -> dict[str, frozenset[str]]:
    return {n: evaluate(self.equations[n], env, limit) for n in self.order}

  def languages(self, n: int, limit: int | None = None) -> list[dict[str, frozenset[str]]]:
    """Simultaneous iteration: the languages after steps 1..n."""
    env = {name: frozenset() for name in self.order}
    out = []
    for _ in range(n):
      env = self.step(env, limit)
      out.append(env)
    return out

  def transformer(self, name: str | None = None) -> Transformer:
    """The single-argument transformer of a self-referential equation."""
    name = name or self.start
    rhs = self.equations[name]
    if refs(rhs) - {name}:
      raise GrammarError(f"{name} depends on other nonterminals; use mutual_chain")
    return Transformer(name, lambda x: string_bunch(evaluate(rhs, {name: words(x)})))

  def arity_transformer(self, name: str) -> Transformer:
    """G_N as a k-ary transformer over the nonterminals it mentions, in order."""
    rhs = self.equations[name]
    args = [n for n in self.order if n in refs(rhs)]
    return Transformer(f"G_{name}", lambda *xs: string_bunch(evaluate(rhs, dict(zip(args, map(words, xs))))),
                       arity=max(1, len(args)))


def mutual_chain(g: GrammarSystem, n: int) -> dict[str, list[Bunch]]:
  """For every nonterminal, [S(1), ..., S(n)]."""
  steps = g.languages(n)
  return {name: [string_bunch(step[name]) for step in steps] for name in g.order}


@dataclass(frozen=True)
class Membership:
  found: bool
  depth: int

  @property
  def verdict(self) -> str:
    return "YES" if self.found else "NO-UP-TO"

  def __bool__(self):
    return self.found

  def __str__(self):
    return f"{self.verdict} {self.depth}" if not self.found else f"YES at depth {self.depth}"


def member_bounded(w: str, g: GrammarSystem | Transformer, nt: str | int | None = None,
                   depth: int | None = None) -> Membership:
  """Is w in the nt approximant by the given depth?  Words longer than w are
  pruned, which is sound because catenation never shortens a word.

  Accepts member_bounded(w, g, depth) for the start symbol as well."""
  if isinstance(nt, int) and depth is None:
    nt, depth = None, nt
  if depth is None or depth < 1:
    raise ValueError("depth must be at least 1")
  limit = len(w)
  if isinstance(g, Transformer):
    x = frozenset()
    for d in range(1, depth + 1):
      nxt = frozenset(s for s in words(g(string_bunch(x))) if len(s) <= limit)
      if w in nxt:
        return Membership(True, d)
      if nxt == x:
        break
      x = nxt
    return Membership(False, depth)
  name = nt or g.start
  if name not in g.equations:
    raise GrammarError(f"unknown nonterminal {name}")
  env = {n: frozenset() for n in g.order}
  for d in range(1, depth + 1):
    nxt = g.step(env, limit)
    if w in nxt[name]:
      return Membership(True, d)
    if nxt == env:
      break
    env = nxt
  return Membership(False, depth)


# ---------------------------------------------------------------- grammar files

_TOKEN = re.compile(r'\s*(?:(?P<str>"(?:[^"\\]|\\.)*")|(?P<range>\.\.)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[,.()=]))')


def _tokens(text: str, lineno: int) -> list[tuple[str, str]]:
  out, i = [], 0
  text = text.rstrip()
  while i < len(text):
    m = _TOKEN.match(text, i)
    if not m:
      raise GrammarError(f"line {lineno}: unexpected {text[i:].strip()[:10]!r}")
    kind = m.lastgroup
    val = m.group(kind)
    if kind == "str":
      val = re.sub(r"\\(.)", r"\1", val[1:-1])
    out.append((kind, val))
    i = m.end()
  return out


class _RhsParser:
  def __init__(self, toks, consts, lineno):
    self.toks, self.i, self.consts, self.lineno = toks, 0, consts, lineno

  def peek(self):
    return self.toks[self.i] if self.i < len(self.toks) else (None, None)

  def take(self):
    t = self.peek()
    self.i += 1
    return t

  def fail(self, msg):
    raise GrammarError(f"line {self.lineno}: {msg}")

  def alt(self) -> Rhs:
    parts = [self.cat()]
    while self.peek() == ("op", ","):
      self.take()
      parts.append(self.cat())
    return parts[0] if len(parts) == 1 else Alt(tuple(parts))

  def cat(self) -> Rhs:
    parts = [self.atom()]
    while True:
      k, v = self.peek()
      if (k, v) == ("op", "."):
        self.take()
        parts.append(self.atom())
      elif k in ("str", "name") or (k, v) == ("op", "("):
        parts.append(self.atom())
      else:
        break
    return parts[0] if len(parts) == 1 else Cat(tuple(parts))

  def atom(self) -> Rhs:
    k, v = self.take()
    if k == "str":
      if self.peek()[0] == "range":
        self.take()
        k2, hi = self.take()
        if k2 != "str" or len(v) != 1 or len(hi) != 1:
          self.fail("a range needs two single-character terminals")
        return Terminals(words(char_range(v, hi)))
      return terminals(v)
    if k == "name":
      return self.consts.get(v, Ref(v))
    if (k, v) == ("op", "("):
      inner = self.alt()
      if self.take() != ("op", ")"):
        self.fail("expected ')'")
      return inner
    self.fail(f"unexpected {v!r}" if v else "unexpected end of line")


def parse_grammar(text: str, partial: bool = False) -> GrammarSystem | None:
  """Equations `N = rhs`, one per line; `const name = rhs` defines an inlined
  terminal bunch.  The first equation names the start symbol.  With partial,
  only the syntax is checked and None is returned."""
  consts: dict[str, Rhs] = {}
  equations: dict[str, Rhs] = {}
  for lineno, line in enumerate(text.splitlines(), 1):
    line = line.split("#", 1)[0]
    if not line.strip():
      continue
    toks = _tokens(line, lineno)
    is_const = toks[0] == ("name", "const")
    if is_const:
      toks = toks[1:]
    if len(toks) < 3 or toks[0][0] != "name" or toks[1] != ("op", "="):
      raise GrammarError(f"line {lineno}: expected 'Name = ...'")
    name = toks[0][1]
    p = _RhsParser(toks[2:], consts, lineno)
    rhs = p.alt()
    if p.i != len(p.toks):
      p.fail(f"unexpected {p.peek()[1]!r}")
    if is_const:
      if refs(rhs):
        raise GrammarError(f"line {lineno}: constant {name} mentions nonterminals")
      consts[name] = Terminals(evaluate(rhs, {}))
    else:
      if name in equations:
        raise GrammarError(f"line {lineno}: {name} defined twice")
      equations[name] = rhs
  if partial:
    return None
  if not equations:
    raise GrammarError("no equations")
  return GrammarSystem(equations)


IDENTIFIER_GRAMMAR = '''\
const alpha = "a".."z"
const beta = alpha, "0".."9"
ID = alpha, ID . beta
'''

EXPRESSION_GRAMMAR = '''\
const num = "0", "1"
const id = "a", "b"
E = E ("+", "-") T, T
T = T ("*", "/") F, F
F = num, id, "(" E ")"
'''
