"""Functions as relations: lifted and wholistic application, lambdas, composition."""
from __future__ import annotations

from collections.abc import Callable, Iterable

from .core import (
    ANY, INT, Bunch, BunchTypeError, EnumerationError, Env, IntV, PairType, PairV, SetType, SetV, TypeTag,
    Value, bottom, elem, enumerate_type, ints, max_enum, mul, pack, sub, subsets, unify, unpack,
)


def relation_type(dom: TypeTag, ran: TypeTag) -> SetType:
  return SetType(PairType(dom, ran))


def signature(t: TypeTag) -> tuple[TypeTag, TypeTag]:
  """(domain, range) types of a relation-bunch type."""
  if t == ANY:
    return ANY, ANY
  if isinstance(t, SetType):
    if t.inner == ANY:
      return ANY, ANY
    if isinstance(t.inner, PairType):
      return t.inner.left, t.inner.right
  raise BunchTypeError(f"not a relation type: {t}")


def relation(pairs: Iterable[tuple[Value, Value]], dom: TypeTag = ANY, ran: TypeTag = ANY) -> Bunch:
  """An elementary relation from explicit pairs."""
  pv = [PairV(a, b) for a, b in pairs]
  if pv:
    dom, ran = pv[0].fst.type, pv[0].snd.type
  return elem(SetV(Bunch(PairType(dom, ran), pv)))


def int_relation(pairs: Iterable[tuple[int, int]]) -> Bunch:
  return relation(((IntV(a), IntV(b)) for a, b in pairs), INT, INT)


def pairs_of(r: Bunch) -> list[tuple[Value, Value]]:
  """The pairs of an elementary relation."""
  return [(p.fst, p.snd) for p in r.value.contents.elems]


def apply(f: Bunch, a: Bunch) -> Bunch:
  """F(A): every b with a |-> b in some f:F and a:A; strict in improper."""
  dom, ran = signature(f.type)
  if unify(dom, a.type) is None:
    raise BunchTypeError(f"argument of type {a.type} for a relation from {dom}")
  if f.improper or a.improper:
    return bottom(ran)
  args = a.members
  out = set()
  for rel in f.elems:
    for p in rel.contents.elems:
      if p.fst in args:
        out.add(p.snd)
  return Bunch(ran, out)


def wholistic_apply(f: Bunch, x: Bunch) -> Bunch:
  """f.X = ~f{X}: apply to the whole of X, unwrapping a set result."""
  r = apply(f, pack(x))
  if isinstance(r.type, SetType) or r.type == ANY:
    return unpack(r)
  return r


def lambda_ext(x: str, domain: Iterable[Value], body: Callable[[Env], Bunch], env: Env | None = None) -> Bunch:
  """λx•E over a finite domain; arguments where E is null are left out."""
  env = env or Env()
  dom_t, ran_t = ANY, ANY
  pairs = []
  for a in domain:
    dom_t = a.type
    b = body(env.bind(x, elem(a)))
    u = unify(ran_t, b.type)
    if u is None:
      raise BunchTypeError(f"lambda body changes type: {ran_t} vs {b.type}")
    ran_t = u
    if b.improper:
      return bottom(relation_type(dom_t, ran_t))
    pairs.extend(PairV(a, v) for v in b.elems)
  return elem(SetV(Bunch(PairType(dom_t, ran_t), pairs)))


def big_lambda(x: str, body: Callable[[Env], Bunch], domain: TypeTag | list[Value], env: Env | None = None) -> Bunch:
  """ΛX•E = λz•{E[~z/X]}, with z ranging over subsets of a finite carrier."""
  env = env or Env()
  carrier = enumerate_type(domain) if isinstance(domain, TypeTag) else list(domain)
  if len(carrier) >= 63 or 2 ** len(carrier) > max_enum():
    raise EnumerationError(f"powerset of {len(carrier)} values exceeds the enumeration cap")
  dom_t = carrier[0].type if carrier else ANY
  ran_t = ANY
  pairs = []
  for z in subsets(carrier):
    z = z.retype(dom_t)
    out = pack(body(env.bind(x, z)))
    if out.improper:
      return bottom(relation_type(SetType(dom_t), out.type))
    ran_t = unify(ran_t, out.type)
    if ran_t is None:
      raise BunchTypeError("big lambda body changes type")
    pairs.append(PairV(SetV(z), out.value))
  return elem(SetV(Bunch(PairType(SetType(dom_t), ran_t), pairs)))


def compose(f: Bunch, g: Bunch) -> Bunch:
  """f ; g, lifted over the relation elements of both bunches."""
  fd, fr = signature(f.type)
  gd, gr = signature(g.type)
  if unify(fr, gd) is None:
    raise BunchTypeError(f"cannot compose {f.type} with {g.type}")
  t = relation_type(fd, gr)
  if f.improper or g.improper:
    return bottom(t)
  out = []
  for fe in f.elems:
    for ge in g.elems:
      succ: dict[Value, list[Value]] = {}
      for p in ge.contents.elems:
        succ.setdefault(p.fst, []).append(p.snd)
      pairs = [PairV(p.fst, c) for p in fe.contents.elems for c in succ.get(p.snd, ())]
      out.append(SetV(Bunch(PairType(fd, gr), pairs)))
  return Bunch(t, out)


def identity_on(f: Bunch) -> Bunch:
  fd, _ = signature(f.type)
  t = relation_type(fd, fd)
  if f.improper:
    return bottom(t)
  out = []
  for fe in f.elems:
    out.append(SetV(Bunch(PairType(fd, fd), [PairV(p.fst, p.fst) for p in fe.contents.elems])))
  return Bunch(t, out)


def iterate_rel(f: Bunch, n: int) -> Bunch:
  """fⁿ; n = 0 gives the identity on f's domain."""
  if n < 0:
    raise ValueError("negative iteration count")
  if n == 0:
    return identity_on(f)
  r = f
  for _ in range(n - 1):
    r = compose(r, f)
  return r


def factorial_step(fact: Bunch, args: Iterable[int]) -> Bunch:
  """λn • if n=0 then 1 else n*fact(n-1) end over the given arguments."""
  one = ints(1)

  def body(env):
    n = env["n"]
    if n == ints(0):
      return one
    return mul(n, apply(fact, sub(n, one)))

  return lambda_ext("n", [IntV(a) for a in args], body).retype(relation_type(INT, INT))


def factorial_chain(steps: int, args: Iterable[int]) -> list[Bunch]:
  """fact0 = {} and fact(i+1) = F(fact i), for i up to steps."""
  args = list(args)
  chain = [int_relation([])]
  for _ in range(steps):
    chain.append(factorial_step(chain[-1], args))
  return chain
