"""Evaluation of expressions to bunches and of predicates to truth values."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from . import core, relations
from .core import (
    ANY, INT, STRING, Bunch, BunchTypeError, EnumerationError, Env, IntV, PairType, SetType, TypeTag,
    Value, bottom, elem, null, unify,
)
from .syntax import (
    App, Assign, Bin, BigLambda, Cmd, Cmp, Comp, Conn, Const, Expr, Guard, IfE, Lambda, Lit, Not, PV,
    Pack, Precond, Pred, PredApp, Quant, Unary, Var, WApp,
)


@dataclass
class Context:
  """Finite ranges for bound variables that cannot be inferred from a guard."""
  domains: dict[str, Bunch] = field(default_factory=dict)


_DEFAULT = Context()

_ARITH = {"+": core.ADD, "-": core.SUB, "*": core.MUL, "/": core.DIV, "mod": core.MOD, "^": core.CAT}


def eval_expr(e: Expr, env: Env, ctx: Context | None = None) -> Bunch:
  ctx = ctx or _DEFAULT
  if isinstance(e, Lit):
    return e.value
  if isinstance(e, Var):
    return env[e.name]
  if isinstance(e, Bin):
    a = eval_expr(e.left, env, ctx)
    b = eval_expr(e.right, env, ctx)
    op = e.op
    if op == ",":
      return core.union(a, b)
    if op == "'":
      return core.intersect(a, b)
    if op == "\\":
      return core.diff(a, b)
    if op == "|->":
      return core.maplet(a, b)
    if op == "..":
      return core.range_bunch(a, b)
    if op == "><":
      return core.cross(a, b)
    if op == "\\/":
      return core.set_union(a, b)
    if op == "/\\":
      return core.set_inter(a, b)
    return core.lift_binary(_ARITH[op], a, b)
  if isinstance(e, Unary):
    a = eval_expr(e.arg, env, ctx)
    if e.op == "-":
      return core.lift_unary(core.NEG, a)
    if e.op == "~":
      return core.unpack(a)
    if e.op == "pow":
      return core.powerset(a)
    if e.op == "card":
      return elem(IntV(core.cardinality(a)))
    raise ValueError(f"unknown unary operator {e.op}")
  if isinstance(e, Pack):
    return core.pack(eval_expr(e.arg, env, ctx))
  if isinstance(e, Guard):
    if eval_pred(e.cond, env, ctx):
      return eval_expr(e.body, env, ctx)
    return null(type_of(e.body, env, ctx))
  if isinstance(e, Precond):
    if eval_pred(e.cond, env, ctx):
      return eval_expr(e.body, env, ctx)
    return bottom(type_of(e.body, env, ctx))
  if isinstance(e, Comp):
    dom = binder_domain(e.var, e.body, env, ctx)
    rt = type_of(e.body, env.bind(e.var, null(_domain_type(dom))), ctx)
    return core.comprehension(e.var, ANY, lambda r: eval_expr(e.body, r, ctx), env, dom, rt)
  if isinstance(e, Lambda):
    dom = binder_domain(e.var, e.body, env, ctx)
    return relations.lambda_ext(e.var, dom, lambda r: eval_expr(e.body, r, ctx), env)
  if isinstance(e, BigLambda):
    dom = declared_domain(e.var, ctx)
    return relations.big_lambda(e.var, lambda r: eval_expr(e.body, r, ctx), dom, env)
  if isinstance(e, App):
    return relations.apply(eval_expr(e.fn, env, ctx), eval_expr(e.arg, env, ctx))
  if isinstance(e, WApp):
    return relations.wholistic_apply(eval_expr(e.fn, env, ctx), eval_expr(e.arg, env, ctx))
  if isinstance(e, IfE):
    t = type_of(e, env, ctx)
    branch = e.then if eval_pred(e.cond, env, ctx) else e.orelse
    return eval_expr(branch, env, ctx).retype(t)
  if isinstance(e, PV):
    from .pv import pv
    return pv(e.cmd, e.expr, env, ctx)
  raise TypeError(f"not an expression: {e!r}")


def _numeric_pair(x: Value, y: Value) -> int:
  return core.compare_values(x, y)


_ORDER = {
    "<": lambda c: c < 0,
    "<=": lambda c: c <= 0,
    ">": lambda c: c > 0,
    ">=": lambda c: c >= 0,
}


def _subset(x: Value, y: Value, strict: bool) -> bool:
  a, b = x.contents.members, y.contents.members
  return a < b if strict else a <= b


def eval_pred(p: Pred, env: Env, ctx: Context | None = None) -> bool:
  ctx = ctx or _DEFAULT
  if isinstance(p, Const):
    return p.value
  if isinstance(p, Cmp):
    a = eval_expr(p.left, env, ctx)
    b = eval_expr(p.right, env, ctx)
    op = p.op
    if op == "=":
      core.same_type(a, b)
      return a == b
    if op == ":":
      return core.sub_bunch(a, b)
    if op == "in":
      return core.member(a, b)
    if op == "notin":
      core.unify_or_raise(SetType(a.type), b.type)
      if a.is_null:
        return True
      if a.improper or b.improper:
        return False
      return all(not (a.members & s.contents.members) for s in b.elems)
    if op == "/=":
      core.same_type(a, b)
      return core.lifted_relation(lambda x, y: x != y, a, b)
    if op in _ORDER:
      test = _ORDER[op]
      return core.lifted_relation(lambda x, y: test(_numeric_pair(x, y)), a, b)
    if op in ("<:", "<<:"):
      core.same_type(a, b)
      return core.lifted_relation(lambda x, y: _subset(x, y, op == "<<:"), a, b)
    raise ValueError(f"unknown comparison {op}")
  if isinstance(p, Not):
    return not eval_pred(p.arg, env, ctx)
  if isinstance(p, Conn):
    if p.op == "&":
      return eval_pred(p.left, env, ctx) and eval_pred(p.right, env, ctx)
    if p.op == "or":
      return eval_pred(p.left, env, ctx) or eval_pred(p.right, env, ctx)
    if p.op == "=>":
      return (not eval_pred(p.left, env, ctx)) or eval_pred(p.right, env, ctx)
    if p.op == "<=>":
      return eval_pred(p.left, env, ctx) == eval_pred(p.right, env, ctx)
    raise ValueError(f"unknown connective {p.op}")
  if isinstance(p, Quant):
    dom = binder_domain(p.var, p, env, ctx)
    results = (eval_pred(p.body, env.bind(p.var, elem(v)), ctx) for v in dom)
    return all(results) if p.kind == "all" else any(results)
  if isinstance(p, PredApp):
    return core.member(eval_expr(p.arg, env, ctx), eval_expr(p.fn, env, ctx))
  raise TypeError(f"not a predicate: {p!r}")


# ---------------------------------------------------------------- bound variables

def free_vars(node) -> frozenset[str]:
  if isinstance(node, Var):
    return frozenset((node.name,))
  if isinstance(node, (Comp, Lambda, BigLambda, Quant)):
    return free_vars(node.body) - {node.var}
  if isinstance(node, Assign):
    out = frozenset(node.targets)
    for v in node.values:
      out |= free_vars(v)
    return out
  if isinstance(node, (Lit, str, int, bool)) or node is None:
    return frozenset()
  out = frozenset()
  if dataclasses.is_dataclass(node):
    for f in dataclasses.fields(node):
      child = getattr(node, f.name)
      if isinstance(child, (Expr, Pred, Cmd)):
        out |= free_vars(child)
  return out


def _restriction(var: str, p: Pred):
  """An expression S with p implying var:S (or var ∈ S), if p has that shape."""
  if isinstance(p, Cmp) and isinstance(p.left, Var) and p.left.name == var and var not in free_vars(p.right):
    if p.op in (":", "="):
      return ":", p.right
    if p.op == "in":
      return "in", p.right
  if isinstance(p, Conn) and p.op == "&":
    return _restriction(var, p.left) or _restriction(var, p.right)
  return None


def _body_restriction(var: str, body):
  # a guard for ∮, an antecedent for ∀, a conjunct for ∃
  if isinstance(body, Guard):
    return _restriction(var, body.cond)
  if isinstance(body, Quant):
    if body.kind == "all" and isinstance(body.body, Conn) and body.body.op == "=>":
      return _restriction(var, body.body.left)
    if body.kind == "some":
      return _restriction(var, body.body)
  return None


def declared_domain(var: str, ctx: Context) -> list[Value]:
  d = ctx.domains.get(var)
  if d is None:
    raise EnumerationError(f"no range declared for bound variable {var}")
  return list(d.elems)


def binder_domain(var: str, body, env: Env, ctx: Context) -> list[Value]:
  """Values for a bound variable: from a guard on it when possible, else its declared range."""
  found = _body_restriction(var, body)
  if found is not None:
    kind, s = found
    b = eval_expr(s, env, ctx)
    if kind == ":" and not b.improper:
      return list(b.elems)
    if kind == "in" and not b.improper and b.elems:
      return list(b.elems[0].contents.elems)
    if kind == "in" and b.improper:
      return []
  return declared_domain(var, ctx)


def _domain_type(dom: list[Value]) -> TypeTag:
  return dom[0].type if dom else ANY


def _binder_type(var: str, body, env: Env, ctx: Context) -> TypeTag:
  d = ctx.domains.get(var)
  if d is not None:
    return d.type
  found = _body_restriction(var, body)
  if found is not None:
    kind, s = found
    t = type_of(s, env, ctx)
    return t if kind == ":" else core._set_inner(t)
  return ANY


# ---------------------------------------------------------------- static types

def type_of(e: Expr, env: Env, ctx: Context | None = None) -> TypeTag:
  """The type of e's value without evaluating it."""
  ctx = ctx or _DEFAULT
  if isinstance(e, Lit):
    return e.value.type
  if isinstance(e, Var):
    return env[e.name].type
  if isinstance(e, Bin):
    a, b = type_of(e.left, env, ctx), type_of(e.right, env, ctx)
    op = e.op
    if op in (",", "'", "\\", "\\/", "/\\"):
      return core.unify_or_raise(a, b)
    if op == "|->":
      return PairType(a, b)
    if op == "..":
      return INT
    if op == "><":
      return SetType(PairType(core._set_inner(a), core._set_inner(b)))
    if op == "^":
      return core._cat_type(a, b)
    return core._numeric_type(a, b)
  if isinstance(e, Unary):
    a = type_of(e.arg, env, ctx)
    if e.op == "-":
      return core._numeric_type(a)
    if e.op == "~":
      return core._set_inner(a)
    if e.op == "pow":
      return SetType(SetType(core._set_inner(a)))
    return INT
  if isinstance(e, Pack):
    return SetType(type_of(e.arg, env, ctx))
  if isinstance(e, (Guard, Precond)):
    return type_of(e.body, env, ctx)
  if isinstance(e, Comp):
    vt = _binder_type(e.var, e.body, env, ctx)
    return type_of(e.body, env.bind(e.var, null(vt)), ctx)
  if isinstance(e, Lambda):
    vt = _binder_type(e.var, e.body, env, ctx)
    return relations.relation_type(vt, type_of(e.body, env.bind(e.var, null(vt)), ctx))
  if isinstance(e, BigLambda):
    vt = _binder_type(e.var, e.body, env, ctx)
    return relations.relation_type(SetType(vt), SetType(type_of(e.body, env.bind(e.var, null(vt)), ctx)))
  if isinstance(e, App):
    return relations.signature(type_of(e.fn, env, ctx))[1]
  if isinstance(e, WApp):
    r = relations.signature(type_of(e.fn, env, ctx))[1]
    return core._set_inner(r) if isinstance(r, SetType) or r == ANY else r
  if isinstance(e, IfE):
    return core.unify_or_raise(type_of(e.then, env, ctx), type_of(e.orelse, env, ctx))
  if isinstance(e, PV):
    return type_of(e.expr, env, ctx)
  raise TypeError(f"not an expression: {e!r}")


def typed_null(e: Expr, env: Env, ctx: Context | None = None) -> Bunch:
  return null(type_of(e, env, ctx))


def lit_int(n: int) -> Lit:
  return Lit(elem(IntV(n)))


def lit_str(s: str) -> Lit:
  return Lit(elem(core.StringV(s)))

