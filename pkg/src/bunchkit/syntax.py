"""Abstract syntax for bunch expressions, classical predicates and commands."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Bunch


class Expr:
  __slots__ = ()


class Pred:
  __slots__ = ()


class Cmd:
  __slots__ = ()


# ---------------------------------------------------------------- expressions

@dataclass(frozen=True)
class Lit(Expr):
  value: Bunch


@dataclass(frozen=True)
class Var(Expr):
  name: str


# op is one of: , ' \ + - * / mod ^ |-> .. ><
@dataclass(frozen=True)
class Bin(Expr):
  op: str
  left: Expr
  right: Expr


# op is one of: - ~ pow card
@dataclass(frozen=True)
class Unary(Expr):
  op: str
  arg: Expr


@dataclass(frozen=True)
class Pack(Expr):
  arg: Expr


@dataclass(frozen=True)
class Guard(Expr):
  cond: Pred
  body: Expr


@dataclass(frozen=True)
class Precond(Expr):
  cond: Pred
  body: Expr


@dataclass(frozen=True)
class Comp(Expr):
  var: str
  body: Expr


@dataclass(frozen=True)
class Lambda(Expr):
  var: str
  body: Expr


@dataclass(frozen=True)
class BigLambda(Expr):
  var: str
  body: Expr


@dataclass(frozen=True)
class App(Expr):
  fn: Expr
  arg: Expr


@dataclass(frozen=True)
class WApp(Expr):
  fn: Expr
  arg: Expr


@dataclass(frozen=True)
class IfE(Expr):
  cond: Pred
  then: Expr
  orelse: Expr


@dataclass(frozen=True)
class PV(Expr):
  cmd: Cmd
  expr: Expr


# ---------------------------------------------------------------- predicates

@dataclass(frozen=True)
class Const(Pred):
  value: bool


# op is one of: = /= < <= > >= : in notin <: <<:
@dataclass(frozen=True)
class Cmp(Pred):
  op: str
  left: Expr
  right: Expr


@dataclass(frozen=True)
class Not(Pred):
  arg: Pred


# op is one of: & or => <=>
@dataclass(frozen=True)
class Conn(Pred):
  op: str
  left: Pred
  right: Pred


@dataclass(frozen=True)
class Quant(Pred):
  kind: str  # "all" or "some"
  var: str
  body: Pred


@dataclass(frozen=True)
class PredApp(Pred):
  """p(E) read as E ∈ p."""
  fn: Expr
  arg: Expr


TRUE_P = Const(True)
FALSE_P = Const(False)


# ---------------------------------------------------------------- commands

@dataclass(frozen=True)
class Skip(Cmd):
  pass


@dataclass(frozen=True)
class Assign(Cmd):
  targets: tuple[str, ...]
  values: tuple[Expr, ...]

  def __post_init__(self):
    if len(self.targets) != len(self.values) or not self.targets:
      raise ValueError("assignment arity mismatch")
    if len(set(self.targets)) != len(self.targets):
      raise ValueError("assignment to the same variable twice")


@dataclass(frozen=True)
class Pre(Cmd):
  cond: Pred
  body: Cmd


@dataclass(frozen=True)
class GuardC(Cmd):
  cond: Pred
  body: Cmd


@dataclass(frozen=True)
class Choice(Cmd):
  left: Cmd
  right: Cmd


@dataclass(frozen=True)
class Seq(Cmd):
  left: Cmd
  right: Cmd


@dataclass(frozen=True)
class Pref(Cmd):
  left: Cmd
  right: Cmd


@dataclass(frozen=True)
class Prob(Cmd):
  p: Fraction
  left: Cmd
  right: Cmd

  def __post_init__(self):
    if not 0 < self.p < 1:
      raise ValueError("probability must lie strictly between 0 and 1")


@dataclass(frozen=True)
class If(Cmd):
  cond: Pred
  then: Cmd
  orelse: Cmd


SKIP = Skip()
ABORT = Pre(FALSE_P, SKIP)
MAGIC = GuardC(FALSE_P, SKIP)


def assign(name: str, value: Expr) -> Assign:
  return Assign((name,), (value,))


def if_as_choice(c: If) -> Choice:
  return Choice(GuardC(c.cond, c.then), GuardC(Not(c.cond), c.orelse))


def write_set(c: Cmd) -> frozenset[str]:
  """Variables assigned anywhere in c."""
  if isinstance(c, Assign):
    return frozenset(c.targets)
  if isinstance(c, (Pre, GuardC)):
    return write_set(c.body)
  if isinstance(c, (Choice, Seq, Pref, Prob)):
    return write_set(c.left) | write_set(c.right)
  if isinstance(c, If):
    return write_set(c.then) | write_set(c.orelse)
  return frozenset()


def constructs(c: Cmd) -> set[type]:
  out = {type(c)}
  for child in (getattr(c, "body", None), getattr(c, "left", None), getattr(c, "right", None),
                getattr(c, "then", None), getattr(c, "orelse", None)):
    if isinstance(child, Cmd):
      out |= constructs(child)
  return out


def uses_pref(c: Cmd) -> bool:
  return Pref in constructs(c)


def uses_prob(c: Cmd) -> bool:
  return Prob in constructs(c)
