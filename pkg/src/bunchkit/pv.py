"""Prospective values: the bunch S ◇ E of values E may take after running S."""
from __future__ import annotations

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import core
from .core import RAT, Bunch, BunchTypeError, Env, TypeTag, bottom, elem, null
from .evaluate import Context, eval_expr, eval_pred, type_of
from .states import State, StateSpace
from .syntax import (
    Assign, Choice, Cmd, Expr, GuardC, If, Lit, Pre, Pref, Prob, Seq, Skip, if_as_choice, uses_pref, uses_prob,
)


class UnsupportedConstruct(Exception):
  pass


@dataclass(frozen=True)
class Post:
  """A post-state observation: its type and how to compute it in a state."""
  type: TypeTag
  at: Callable[[Env], Bunch]


def _assign(c: Assign, post: Post, env: Env, ctx: Context) -> Bunch:
  values = [eval_expr(v, env, ctx) for v in c.values]
  if any(v.improper for v in values):
    return bottom(post.type)
  if any(v.is_null for v in values):
    return null(post.type)
  parts = (
      post.at(env.override({x: elem(v) for x, v in zip(c.targets, combo)}))
      for combo in itertools.product(*(v.elems for v in values))
  )
  return core.union_all(post.type, parts)


def _weighted(p: Fraction, x1: Bunch, x2: Bunch) -> Bunch:
  """X1 p+ X2 = (X1=null ↣ X2), (X2=null ↣ X1), (p·X1 + (1−p)·X2)."""
  first = x2 if x1.is_null else null(RAT)
  second = x1 if x2.is_null else null(RAT)
  pr = elem(core.RatV(Fraction(p)))
  qr = elem(core.RatV(1 - Fraction(p)))
  third = core.add(core.mul(pr, x1), core.mul(qr, x2))
  return core.union(core.union(first, second), third)


def run(c: Cmd, post: Post, env: Env, ctx: Context | None = None, expect: bool = False) -> Bunch:
  """c ◇ post at env.  With expect, probabilistic choice is allowed."""
  ctx = ctx or Context()
  if isinstance(c, Skip):
    return post.at(env)
  if isinstance(c, Assign):
    return _assign(c, post, env, ctx)
  if isinstance(c, Pre):
    if not eval_pred(c.cond, env, ctx):
      return bottom(post.type)
    return run(c.body, post, env, ctx, expect)
  if isinstance(c, GuardC):
    if not eval_pred(c.cond, env, ctx):
      return null(post.type)
    return run(c.body, post, env, ctx, expect)
  if isinstance(c, Choice):
    return core.union(run(c.left, post, env, ctx, expect), run(c.right, post, env, ctx, expect))
  if isinstance(c, Seq):
    then = Post(post.type, lambda r: run(c.right, post, r, ctx, expect))
    return run(c.left, then, env, ctx, expect)
  if isinstance(c, Pref):
    first = run(c.left, post, env, ctx, expect)
    if not first.is_null:
      return first
    return core.union(first, run(c.right, post, env, ctx, expect))
  if isinstance(c, If):
    return run(if_as_choice(c), post, env, ctx, expect)
  if isinstance(c, Prob):
    if not expect:
      raise UnsupportedConstruct("probabilistic choice needs the expectation evaluator")
    return _weighted(c.p, run(c.left, post, env, ctx, expect), run(c.right, post, env, ctx, expect))
  raise TypeError(f"not a command: {c!r}")


def observe(e: Expr, env: Env, ctx: Context | None = None) -> Post:
  return Post(type_of(e, env, ctx), lambda r: eval_expr(e, r, ctx))


def pv(c: Cmd, e: Expr, env: Env, ctx: Context | None = None) -> Bunch:
  return run(c, observe(e, env, ctx), env, ctx)


def pv_expect(c: Cmd, x: Expr, env: Env, ctx: Context | None = None) -> Bunch:
  """c ◇_E x for numeric x; results are exact rationals."""
  t = type_of(x, env, ctx)
  if t not in core.NUMERIC and t != core.ANY:
    raise BunchTypeError(f"expectation of a non-numeric expression of type {t}")
  post = Post(RAT, lambda r: core.to_rat(eval_expr(x, r, ctx)))
  return run(c, post, env, ctx, expect=True)


def mixes_preference_and_probability(c: Cmd) -> bool:
  """Programs combining ⟩⟩ and p⊕ are evaluated compositionally; callers flag them."""
  return uses_pref(c) and uses_prob(c)


def fis(c: Cmd, env: Env, ctx: Context | None = None) -> bool:
  """Feasible: S ◇ ⊥ is not null."""
  return not pv(c, Lit(bottom(core.BOOL)), env, ctx).is_null


def results_set(c: Cmd, e: Expr, env: Env, ctx: Context | None = None) -> Bunch:
  """{S ◇ E}: every completion of S collected into one set."""
  return core.pack(pv(c, e, env, ctx))


@dataclass(frozen=True)
class RefinementReport:
  holds: bool
  state: State | None = None
  expr: Expr | None = None
  spec_value: Bunch | None = None
  impl_value: Bunch | None = None

  def __bool__(self):
    return self.holds


def refine_check(s: Cmd, t: Cmd, exprs: Sequence[Expr], space: StateSpace, ctx: Context | None = None) -> RefinementReport:
  """S ⊑ T iff (T ◇ E) : (S ◇ E) for every state and every E."""
  if not exprs:
    raise ValueError("refinement needs at least one observation")
  for st in space:
    env = space.env(st)
    for e in exprs:
      a, b = pv(t, e, env, ctx), pv(s, e, env, ctx)
      if not core.sub_bunch(a, b):
        return RefinementReport(False, st, e, b, a)
  return RefinementReport(True)
