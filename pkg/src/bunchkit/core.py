"""Bunch values, types and the primitive and lifted operators over them.

A bunch is a homogeneous finite collection of values without a set wrapper,
or the improper bunch of a type.  Every operation here is pure.
"""
from __future__ import annotations

import itertools
import os
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction


class BunchError(Exception):
  pass


class BunchTypeError(BunchError, TypeError):
  pass


class UndefinedCardinality(BunchError, ValueError):
  pass


class EnumerationError(BunchError):
  pass


class UnboundVariable(BunchError, NameError):
  pass


# ---------------------------------------------------------------- types

class TypeTag:
  __slots__ = ()


@dataclass(frozen=True)
class Scalar(TypeTag):
  name: str

  def __str__(self):
    return self.name


@dataclass(frozen=True)
class Given(TypeTag):
  name: str
  carrier: tuple[str, ...]
  _index: dict = field(default=None, init=False, compare=False, repr=False, hash=False)

  def __post_init__(self):
    carrier = tuple(self.carrier)
    if not carrier:
      raise ValueError(f"given set {self.name} has an empty carrier")
    if len(set(carrier)) != len(carrier):
      raise ValueError(f"given set {self.name} has duplicate atoms")
    object.__setattr__(self, "carrier", carrier)
    object.__setattr__(self, "_index", {a: i for i, a in enumerate(carrier)})

  def __str__(self):
    return self.name


@dataclass(frozen=True)
class PairType(TypeTag):
  left: TypeTag
  right: TypeTag

  def __str__(self):
    return f"({self.left}*{self.right})"


@dataclass(frozen=True)
class SetType(TypeTag):
  inner: TypeTag

  def __str__(self):
    return f"pow({self.inner})"


INT = Scalar("INT")
CHAR = Scalar("CHAR")
STRING = Scalar("STRING")
BOOL = Scalar("BOOL")
RAT = Scalar("RAT")
# Placeholder for null and improper literals written without an annotation;
# it unifies with every type and is replaced as soon as context supplies one.
ANY = Scalar("ANY")

NUMERIC = (INT, RAT)


def unify(a: TypeTag, b: TypeTag) -> TypeTag | None:
  """The more specific of two compatible types, or None if they clash."""
  if a == b:
    return a
  if a == ANY:
    return b
  if b == ANY:
    return a
  if isinstance(a, SetType) and isinstance(b, SetType):
    inner = unify(a.inner, b.inner)
    return None if inner is None else SetType(inner)
  if isinstance(a, PairType) and isinstance(b, PairType):
    left, right = unify(a.left, b.left), unify(a.right, b.right)
    if left is None or right is None:
      return None
    return PairType(left, right)
  return None


def same_type(a: Bunch, b: Bunch) -> TypeTag:
  t = unify(a.type, b.type)
  if t is None:
    raise BunchTypeError(f"type mismatch: {a.type} vs {b.type}")
  return t


# ---------------------------------------------------------------- values

class Value:
  __slots__ = ()


@dataclass(frozen=True, slots=True)
class IntV(Value):
  n: int

  @property
  def type(self):
    return INT

  @property
  def key(self):
    return self.n


@dataclass(frozen=True, slots=True)
class RatV(Value):
  q: Fraction

  @property
  def type(self):
    return RAT

  @property
  def key(self):
    return self.q


@dataclass(frozen=True, slots=True)
class CharV(Value):
  c: str

  def __post_init__(self):
    if len(self.c) != 1:
      raise ValueError(f"not a single character: {self.c!r}")

  @property
  def type(self):
    return CHAR

  @property
  def key(self):
    return self.c


@dataclass(frozen=True, slots=True)
class StringV(Value):
  s: str

  @property
  def type(self):
    return STRING

  @property
  def key(self):
    return self.s


@dataclass(frozen=True, slots=True)
class BoolV(Value):
  b: bool

  @property
  def type(self):
    return BOOL

  @property
  def key(self):
    return self.b


@dataclass(frozen=True, slots=True)
class GivenV(Value):
  atom: str
  gtype: Given

  def __post_init__(self):
    if self.atom not in self.gtype._index:
      raise ValueError(f"{self.atom} is not an atom of {self.gtype.name}")

  @property
  def type(self):
    return self.gtype

  @property
  def key(self):
    return self.gtype._index[self.atom]


@dataclass(frozen=True, slots=True)
class PairV(Value):
  fst: Value
  snd: Value
  type: TypeTag = field(init=False, compare=False, repr=False, hash=False)
  key: tuple = field(init=False, compare=False, repr=False, hash=False)

  def __post_init__(self):
    object.__setattr__(self, "type", PairType(self.fst.type, self.snd.type))
    object.__setattr__(self, "key", (self.fst.key, self.snd.key))


@dataclass(frozen=True, slots=True)
class SetV(Value):
  contents: Bunch
  type: TypeTag = field(init=False, compare=False, repr=False, hash=False)
  key: tuple = field(init=False, compare=False, repr=False, hash=False)

  def __post_init__(self):
    if self.contents.improper:
      raise BunchTypeError("a set value cannot wrap the improper bunch")
    object.__setattr__(self, "type", SetType(self.contents.type))
    elems = self.contents.elems
    object.__setattr__(self, "key", (len(elems), tuple(e.key for e in elems)))


TRUE = BoolV(True)
FALSE = BoolV(False)


def value_type(v: Value) -> TypeTag:
  return v.type


# ---------------------------------------------------------------- bunches

class Bunch:
  """A proper bunch (canonically ordered elements) or the improper bunch of a type."""

  __slots__ = ("type", "elems", "improper", "_members", "_hash")

  def __init__(self, type: TypeTag, elems: Iterable[Value] = (), improper: bool = False, *, _sorted: bool = False):
    if improper:
      elems = ()
    elif not _sorted:
      members = set(elems)
      for v in members:
        if unify(v.type, type) is None:
          raise BunchTypeError(f"value {render_value(v)} of type {v.type} in a bunch of type {type}")
      elems = tuple(sorted(members, key=_key))
      if elems and type == ANY:
        type = elems[0].type
    object.__setattr__(self, "type", type)
    object.__setattr__(self, "elems", tuple(elems))
    object.__setattr__(self, "improper", improper)
    object.__setattr__(self, "_members", None)
    object.__setattr__(self, "_hash", None)

  def __setattr__(self, name, value):
    raise AttributeError("bunches are immutable")

  @property
  def members(self) -> frozenset:
    m = self._members
    if m is None:
      m = frozenset(self.elems)
      object.__setattr__(self, "_members", m)
    return m

  @property
  def is_null(self) -> bool:
    return not self.improper and not self.elems

  @property
  def is_proper(self) -> bool:
    return not self.improper

  @property
  def is_element(self) -> bool:
    return not self.improper and len(self.elems) == 1

  @property
  def value(self) -> Value:
    if not self.is_element:
      raise BunchError(f"{render(self)} is not an element")
    return self.elems[0]

  def __contains__(self, v: Value) -> bool:
    return v in self.members

  def __iter__(self) -> Iterator[Value]:
    if self.improper:
      raise BunchError("cannot iterate the improper bunch")
    return iter(self.elems)

  def __eq__(self, other):
    if not isinstance(other, Bunch):
      return NotImplemented
    return (self.improper == other.improper and self.elems == other.elems
            and unify(self.type, other.type) is not None)

  def __hash__(self):
    h = self._hash
    if h is None:
      h = hash((self.improper, self.elems))
      object.__setattr__(self, "_hash", h)
    return h

  def __repr__(self):
    return f"Bunch({render(self)})"

  def __str__(self):
    return render(self)

  def retype(self, t: TypeTag) -> Bunch:
    """Same bunch at a compatible, possibly more specific, type."""
    u = unify(self.type, t)
    if u is None:
      raise BunchTypeError(f"cannot view {self.type} as {t}")
    if u == self.type:
      return self
    return Bunch(u, self.elems, self.improper, _sorted=True)


def _key(v: Value):
  return v.key


def _from_members(t: TypeTag, members) -> Bunch:
  return Bunch(t, sorted(members, key=_key), _sorted=True)


def null(t: TypeTag = ANY) -> Bunch:
  return Bunch(t, ())


def bottom(t: TypeTag = ANY) -> Bunch:
  return Bunch(t, improper=True)


def elem(v: Value) -> Bunch:
  return Bunch(v.type, (v,), _sorted=True)


def of(t: TypeTag, values: Iterable[Value]) -> Bunch:
  return Bunch(t, values)


def ints(*ns: int) -> Bunch:
  return Bunch(INT, (IntV(n) for n in ns))


def strings(*ss: str) -> Bunch:
  return Bunch(STRING, (StringV(s) for s in ss))


def atoms(t: Given, *names: str) -> Bunch:
  return Bunch(t, (GivenV(a, t) for a in names))


def bools(*bs: bool) -> Bunch:
  return Bunch(BOOL, (BoolV(b) for b in bs))


def int_range(lo: int, hi: int) -> Bunch:
  return Bunch(INT, (IntV(n) for n in range(lo, hi + 1)), _sorted=True)


def set_of(b: Bunch) -> Value:
  return SetV(b)


# ---------------------------------------------------------------- rendering

def render_value(v: Value) -> str:
  if isinstance(v, IntV):
    return str(v.n)
  if isinstance(v, RatV):
    q = v.q
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
  if isinstance(v, BoolV):
    return "TRUE" if v.b else "FALSE"
  if isinstance(v, CharV):
    return "'" + v.c + "'"
  if isinstance(v, StringV):
    return '"' + v.s.replace("\\", "\\\\").replace('"', '\\"') + '"'
  if isinstance(v, GivenV):
    return v.atom
  if isinstance(v, PairV):
    right = render_value(v.snd)
    if isinstance(v.snd, PairV):
      right = f"({right})"
    return f"{render_value(v.fst)} |-> {right}"
  if isinstance(v, SetV):
    return "{" + ",".join(render_value(e) for e in v.contents.elems) + "}"
  raise TypeError(f"not a value: {v!r}")


def render(b: Bunch) -> str:
  """Canonical text: elements joined by commas, `null:T`, `improper:T`."""
  if b.improper:
    return f"improper:{b.type}"
  if not b.elems:
    return f"null:{b.type}"
  return ",".join(render_value(v) for v in b.elems)


# ---------------------------------------------------------------- enumeration

DEFAULT_MAX_ENUM = 1 << 16


def max_enum() -> int:
  raw = os.environ.get("BT_MAX_ENUM")
  return int(raw) if raw else DEFAULT_MAX_ENUM


def subsets(values: list[Value]) -> Iterator[Bunch]:
  """All sub-bunches of a list of same-typed values, smallest first."""
  t = values[0].type if values else ANY
  for r in range(len(values) + 1):
    for combo in itertools.combinations(values, r):
      yield Bunch(t, combo)


def enumerate_type(t: TypeTag, limit: int | None = None) -> list[Value]:
  """Every value of an enumerable type, in canonical order."""
  limit = max_enum() if limit is None else limit
  if isinstance(t, Given):
    return [GivenV(a, t) for a in t.carrier]
  if t == BOOL:
    return [FALSE, TRUE]
  if isinstance(t, PairType):
    left, right = enumerate_type(t.left, limit), enumerate_type(t.right, limit)
    if len(left) * len(right) > limit:
      raise EnumerationError(f"{t} has more than {limit} values")
    return [PairV(a, b) for a in left for b in right]
  if isinstance(t, SetType):
    inner = enumerate_type(t.inner, limit)
    if len(inner) >= 63 or 2 ** len(inner) > limit:
      raise EnumerationError(f"{t} has more than {limit} values")
    vals = [SetV(s.retype(t.inner)) for s in subsets(inner)]
    return sorted(vals, key=_key)
  raise EnumerationError(f"type {t} is not enumerable without a declared range")


# ---------------------------------------------------------------- operators

def union(a: Bunch, b: Bunch) -> Bunch:
  """The comma: improper if either side is."""
  t = same_type(a, b)
  if a.improper or b.improper:
    return bottom(t)
  if not b.elems:
    return a.retype(t)
  if not a.elems:
    return b.retype(t)
  return _from_members(t, a.members | b.members)


def union_all(t: TypeTag, parts: Iterable[Bunch]) -> Bunch:
  members = set()
  for p in parts:
    t = same_type(p, null(t))
    if p.improper:
      return bottom(t)
    members.update(p.elems)
  return _from_members(t, members)


def intersect(a: Bunch, b: Bunch) -> Bunch:
  t = same_type(a, b)
  if a.improper or b.improper:
    return bottom(t)
  return _from_members(t, a.members & b.members)


def diff(a: Bunch, b: Bunch) -> Bunch:
  t = same_type(a, b)
  if a.improper or b.improper:
    return bottom(t)
  return _from_members(t, a.members - b.members)


def sub_bunch(a: Bunch, b: Bunch) -> bool:
  same_type(a, b)
  if b.improper:
    return True
  if a.improper:
    return False
  return a.members <= b.members


def cardinality(a: Bunch) -> int:
  if a.improper:
    raise UndefinedCardinality("the improper bunch has no cardinality")
  return len(a.elems)


def pack(a: Bunch) -> Bunch:
  """{A}: a set element, or the improper bunch one type up."""
  if a.improper:
    return bottom(SetType(a.type))
  return elem(SetV(a))


def _set_inner(t: TypeTag) -> TypeTag:
  if t == ANY:
    return ANY
  if not isinstance(t, SetType):
    raise BunchTypeError(f"expected a set type, got {t}")
  return t.inner


def unpack(e: Bunch) -> Bunch:
  """Lifted ~: the union of the contents of every set in E."""
  inner = _set_inner(e.type)
  if e.improper:
    return bottom(inner)
  members = set()
  for s in e.elems:
    members.update(s.contents.elems)
  return _from_members(inner, members)


def guard(g: bool, e: Bunch | Callable[[], Bunch], t: TypeTag | None = None) -> Bunch:
  """g ->> E.  A callable E is only evaluated when g holds."""
  if g:
    return e() if callable(e) else e
  if t is None:
    t = ANY if callable(e) else e.type
  return null(t)


def precond(p: bool, e: Bunch) -> Bunch:
  """p |>> E: E when p holds, otherwise improper."""
  return e if p else bottom(e.type)


def maplet(a: Bunch, b: Bunch) -> Bunch:
  t = PairType(a.type, b.type)
  if a.improper or b.improper:
    return bottom(t)
  return Bunch(t, [PairV(x, y) for x in a.elems for y in b.elems], _sorted=True)


@dataclass(frozen=True)
class ElemOp:
  """An element-level operator: fn returns None outside its domain."""
  name: str
  fn: Callable
  result_type: Callable


def lift_binary(op: ElemOp, a: Bunch, b: Bunch) -> Bunch:
  t = op.result_type(a.type, b.type)
  if a.improper or b.improper:
    return bottom(t)
  out = set()
  for x in a.elems:
    for y in b.elems:
      r = op.fn(x, y)
      if r is not None:
        out.add(r)
  return Bunch(t, out)


def lift_unary(op: ElemOp, a: Bunch) -> Bunch:
  t = op.result_type(a.type)
  if a.improper:
    return bottom(t)
  out = set()
  for x in a.elems:
    r = op.fn(x)
    if r is not None:
      out.add(r)
  return Bunch(t, out)


def lifted_relation(rel: Callable[[Value, Value], bool], a: Bunch, b: Bunch) -> bool:
  """A |-> B in the relation: every pair satisfies rel, vacuous on null."""
  if a.improper or b.improper:
    return False
  return all(rel(x, y) for x in a.elems for y in b.elems)


def member(e: Bunch, s: Bunch) -> bool:
  """Lifted membership: every element of E lies in every set of S."""
  unify_or_raise(SetType(e.type), s.type)
  if e.is_null:
    return True
  if e.improper:
    return False
  if s.is_null:
    return True
  if s.improper:
    return False
  return all(e.members <= sv.contents.members for sv in s.elems)


def unify_or_raise(a: TypeTag, b: TypeTag) -> TypeTag:
  t = unify(a, b)
  if t is None:
    raise BunchTypeError(f"type mismatch: {a} vs {b}")
  return t


def is_atomic(a: Bunch) -> bool:
  return a.improper or len(a.elems) <= 1


def comprehension(
    x: str,
    t: TypeTag,
    body: Callable[[Env], Bunch],
    env: Env,
    domain: Iterable[Value] | None = None,
    result_type: TypeTag = ANY,
) -> Bunch:
  """∮x•E: union of body over every value of x.  Any improper part wins."""
  values = enumerate_type(t) if domain is None else domain
  members = set()
  rt = result_type
  for v in values:
    part = body(env.bind(x, elem(v)))
    rt = unify_or_raise(rt, part.type)
    if part.improper:
      return bottom(rt)
    members.update(part.elems)
  return _from_members(rt, members)


def powerset(a: Bunch) -> Bunch:
  """Lifted pow: one powerset element per set element of A."""
  inner = _set_inner(a.type)
  t = SetType(SetType(inner))
  if a.improper:
    return bottom(t)
  out = []
  for s in a.elems:
    contents = list(s.contents.elems)
    out.append(SetV(Bunch(SetType(inner), (SetV(sub.retype(inner)) for sub in subsets(contents)))))
  return Bunch(t, out)


def _set_binary(name: str, f):
  def op(a: Bunch, b: Bunch) -> Bunch:
    t = unify_or_raise(a.type, b.type)
    _set_inner(t)
    if a.improper or b.improper:
      return bottom(t)
    return Bunch(t, [SetV(_from_members(_set_inner(t), f(s.contents.members, u.contents.members)))
                     for s in a.elems for u in b.elems])
  op.__name__ = name
  return op


set_union = _set_binary("set_union", lambda x, y: x | y)
set_inter = _set_binary("set_inter", lambda x, y: x & y)


def cross(a: Bunch, b: Bunch) -> Bunch:
  """Lifted cartesian product of set elements."""
  t = SetType(PairType(_set_inner(a.type), _set_inner(b.type)))
  if a.improper or b.improper:
    return bottom(t)
  out = []
  for s in a.elems:
    for u in b.elems:
      out.append(SetV(maplet(s.contents, u.contents)))
  return Bunch(t, out)


# ---------------------------------------------------------------- elementary ops

def _numeric_type(*ts: TypeTag) -> TypeTag:
  known = [t for t in ts if t != ANY]
  for t in known:
    if t not in NUMERIC:
      raise BunchTypeError(f"arithmetic on non-numeric type {t}")
  if not known:
    return ANY
  return RAT if RAT in known else INT


def _num(v: Value):
  return v.n if isinstance(v, IntV) else v.q


def _make_num(x, t: TypeTag) -> Value:
  if t == RAT:
    return RatV(Fraction(x))
  return IntV(int(x))


def _arith(name: str, f):
  def fn(x, y):
    t = RAT if RAT in (x.type, y.type) else INT
    r = f(_num(x), _num(y), t)
    return None if r is None else _make_num(r, t)
  return ElemOp(name, fn, lambda ta, tb: _numeric_type(ta, tb))


def _div(a, b, t):
  if b == 0:
    return None
  if t == RAT:
    return Fraction(a) / Fraction(b)
  q = abs(a) // abs(b)
  return q if (a >= 0) == (b >= 0) else -q


def _mod(a, b, t):
  if b == 0:
    return None
  return a % b


ADD = _arith("+", lambda a, b, t: a + b)
SUB = _arith("-", lambda a, b, t: a - b)
MUL = _arith("*", lambda a, b, t: a * b)
DIV = _arith("/", _div)
MOD = _arith("mod", _mod)


def _cat_type(ta, tb):
  for t in (ta, tb):
    if t not in (STRING, CHAR, ANY):
      raise BunchTypeError(f"catenation of non-string type {t}")
  return STRING


def _text(v: Value) -> str:
  return v.s if isinstance(v, StringV) else v.c


CAT = ElemOp("^", lambda x, y: StringV(_text(x) + _text(y)), _cat_type)
NEG = ElemOp("-", lambda x: _make_num(-_num(x), x.type), lambda t: _numeric_type(t))


def to_rat(b: Bunch) -> Bunch:
  """View a numeric bunch at RAT."""
  _numeric_type(b.type)
  if b.improper:
    return bottom(RAT)
  return Bunch(RAT, (RatV(Fraction(_num(v))) for v in b.elems))


def add(a, b):
  return lift_binary(ADD, a, b)


def sub(a, b):
  return lift_binary(SUB, a, b)


def mul(a, b):
  return lift_binary(MUL, a, b)


def div(a, b):
  return lift_binary(DIV, a, b)


def mod(a, b):
  return lift_binary(MOD, a, b)


def compare_values(x: Value, y: Value) -> int:
  if x.type in NUMERIC and y.type in NUMERIC:
    a, b = _num(x), _num(y)
  else:
    if unify(x.type, y.type) is None:
      raise BunchTypeError(f"cannot compare {x.type} with {y.type}")
    a, b = x.key, y.key
  return (a > b) - (a < b)


def range_bunch(a: Bunch, b: Bunch) -> Bunch:
  """Lifted a..b over integers."""
  for t in (a.type, b.type):
    if t not in (INT, ANY):
      raise BunchTypeError(f"range over non-integer type {t}")
  if a.improper or b.improper:
    return bottom(INT)
  out = set()
  for x in a.elems:
    for y in b.elems:
      out.update(IntV(n) for n in range(x.n, y.n + 1))
  return Bunch(INT, out)


# ---------------------------------------------------------------- environments

class Env(Mapping):
  """Immutable name -> Bunch binding with override."""

  __slots__ = ("_d",)

  def __init__(self, bindings: Mapping[str, Bunch] | None = None):
    self._d = dict(bindings or {})

  def __getitem__(self, name):
    try:
      return self._d[name]
    except KeyError:
      raise UnboundVariable(name) from None

  def __iter__(self):
    return iter(self._d)

  def __len__(self):
    return len(self._d)

  def __repr__(self):
    inner = ", ".join(f"{k}={render(v)}" for k, v in self._d.items())
    return f"Env({inner})"

  def override(self, other: Mapping[str, Bunch]) -> Env:
    d = dict(self._d)
    d.update(other)
    return Env(d)

  def bind(self, name: str, value: Bunch) -> Env:
    d = dict(self._d)
    d[name] = value
    return Env(d)

  def __hash__(self):
    return hash(frozenset(self._d.items()))

  def __eq__(self, other):
    if isinstance(other, Env):
      return self._d == other._d
    return NotImplemented
