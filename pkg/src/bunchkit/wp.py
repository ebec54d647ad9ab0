"""Weakest preconditions over finite state spaces, used as an oracle for ◇.

Predicates are sets of states, so every transformer law can be checked by
enumeration.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import core
from .core import Bunch, bottom, elem, null
from .evaluate import Context, eval_expr, eval_pred, type_of
from .pv import UnsupportedConstruct, pv
from .states import State, StateSpace
from .syntax import Assign, Choice, Cmd, Expr, GuardC, If, Pre, Pref, Prob, Seq, Skip, if_as_choice, write_set


def wp(c: Cmd, q: frozenset, space: StateSpace, ctx: Context | None = None) -> frozenset:
  """[S]Q: the states from which S is guaranteed to establish Q."""
  if isinstance(c, Skip):
    return q
  if isinstance(c, Assign):
    out = set()
    for s in space:
      env = space.env(s)
      values = [eval_expr(v, env, ctx) for v in c.values]
      if any(v.improper for v in values):
        continue
      if all(
          space.update(s, dict(zip(c.targets, combo))) in q
          for combo in itertools.product(*(v.elems for v in values))
      ):
        out.add(s)
    return frozenset(out)
  if isinstance(c, Pre):
    inner = wp(c.body, q, space, ctx)
    return frozenset(s for s in inner if eval_pred(c.cond, space.env(s), ctx))
  if isinstance(c, GuardC):
    inner = wp(c.body, q, space, ctx)
    return frozenset(s for s in space if s in inner or not eval_pred(c.cond, space.env(s), ctx))
  if isinstance(c, Choice):
    return wp(c.left, q, space, ctx) & wp(c.right, q, space, ctx)
  if isinstance(c, Seq):
    return wp(c.left, wp(c.right, q, space, ctx), space, ctx)
  if isinstance(c, If):
    return wp(if_as_choice(c), q, space, ctx)
  if isinstance(c, (Pref, Prob)):
    raise UnsupportedConstruct(f"{type(c).__name__} has no weakest-precondition rule")
  raise TypeError(f"not a command: {c!r}")


def cwp(c: Cmd, q: frozenset, space: StateSpace, ctx: Context | None = None) -> frozenset:
  """⟨S⟩Q = ¬[S]¬Q: the states from which S might establish Q."""
  return space.complement(wp(c, space.complement(q), space, ctx))


@dataclass(frozen=True)
class Violation:
  construct: str
  state: State
  z: Bunch
  lhs: bool
  rhs: bool


def _candidates(t, observed: set) -> list[Bunch]:
  """Atomic bunches worth testing: observed elements, a fresh one, null and ⊥."""
  values = set(observed)
  try:
    values.update(core.enumerate_type(t, limit=256))
  except core.EnumerationError:
    if t == core.INT:
      values.add(core.IntV(max((v.n for v in observed), default=0) + 1))
    elif t == core.STRING:
      values.add(core.StringV("".join(v.s for v in observed) + "#"))
  zs = [elem(v) for v in sorted(values, key=lambda v: v.key)]
  return zs + [null(t), bottom(t)]


def basic_law_check(c: Cmd, e: Expr, space: StateSpace, ctx: Context | None = None) -> list[Violation]:
  """z : (S ◇ E)  ⇔  ⟨S⟩(z : E), for every state and atomic z."""
  envs = {s: space.env(s) for s in space}
  t = type_of(e, envs[space.states[0]], ctx)
  observed = set()
  before = {}
  for s, env in envs.items():
    v = eval_expr(e, env, ctx)
    before[s] = v
    if v.is_proper:
      observed.update(v.elems)
  results = {}
  for s, env in envs.items():
    r = pv(c, e, env, ctx)
    results[s] = r
    if r.is_proper:
      observed.update(r.elems)
  out = []
  name = type(c).__name__
  for z in _candidates(t, observed):
    z = z.retype(t)
    target = frozenset(s for s in space if core.sub_bunch(z, before[s]))
    might = cwp(c, target, space, ctx)
    for s in space:
      lhs = core.sub_bunch(z, results[s])
      rhs = s in might
      if lhs != rhs:
        out.append(Violation(name, s, z, lhs, rhs))
  return out


def pv_explicit(c: Cmd, e: Expr, env: core.Env, space: StateSpace, ctx: Context | None = None) -> Bunch:
  """⟨S⟩false ↣ ⊥ , (∮x' • ⟨S⟩x=x' ↣ (λx•E)(x')), x the frame of S."""
  t = type_of(e, env, ctx)
  here = space.state_of(env)
  if here in cwp(c, frozenset(), space, ctx):
    return bottom(t)
  frame = [n for n in space.names if n in write_set(c)]
  positions = [space.names.index(n) for n in frame]
  doms = [space.domains[i] for i in positions]
  parts = []
  for xprime in itertools.product(*doms):
    target = frozenset(s for s in space if all(s[i] == v for i, v in zip(positions, xprime)))
    if here in cwp(c, target, space, ctx):
      parts.append(eval_expr(e, env.override({n: elem(v) for n, v in zip(frame, xprime)}), ctx))
  return core.union_all(t, parts)
