"""Seeded random generators: small programs over a finite state space, and
arbitrary syntax trees for round-trip testing."""
from __future__ import annotations

import random
from fractions import Fraction

from . import core
from .core import INT, bottom, elem, null
from .states import StateSpace
from .syntax import (
    ABORT, MAGIC, SKIP, App, Assign, Bin, BigLambda, Choice, Cmd, Cmp, Comp, Conn, Const, Expr, Guard, GuardC,
    If, IfE, Lambda, Lit, Not, PV, Pack, Pre, Precond, Pred, PredApp, Pref, Prob, Quant, Seq, Unary, Var,
)


def _int(n: int) -> Lit:
  return Lit(elem(core.IntV(n)))


# ---------------------------------------------------------------- programs over x, y

class ProgramGen:
  """Programs over variables x and y whose right-hand sides stay inside 0..n-1."""

  def __init__(self, n: int = 3, seed: int = 0, pref: bool = False):
    self.n = n
    self.rng = random.Random(seed)
    self.pref = pref
    self.vars = ("x", "y")

  def space(self) -> StateSpace:
    return StateSpace.of({v: core.int_range(0, self.n - 1) for v in self.vars})

  def const(self) -> Lit:
    return _int(self.rng.randrange(self.n))

  def cond(self, depth: int = 1) -> Pred:
    r = self.rng.random()
    if depth <= 0 or r < 0.6:
      op = self.rng.choice(("=", "/=", "<", "<="))
      a = Var(self.rng.choice(self.vars))
      b = self.const() if self.rng.random() < 0.6 else Var(self.rng.choice(self.vars))
      return Cmp(op, a, b)
    if r < 0.7:
      return Const(self.rng.random() < 0.5)
    if r < 0.8:
      return Not(self.cond(depth - 1))
    return Conn(self.rng.choice(("&", "or", "=>")), self.cond(depth - 1), self.cond(depth - 1))

  def rhs(self, depth: int = 2) -> Expr:
    """A closed right-hand side: every element it can denote is in 0..n-1."""
    r = self.rng.random()
    if depth <= 0 or r < 0.35:
      return self.const() if self.rng.random() < 0.5 else Var(self.rng.choice(self.vars))
    if r < 0.5:
      return Bin(",", self.rhs(depth - 1), self.rhs(depth - 1))
    if r < 0.6:
      return Bin("mod", Bin("+", Var(self.rng.choice(self.vars)), _int(1 + self.rng.randrange(self.n))),
                 _int(self.n))
    if r < 0.7:
      return Guard(self.cond(0), self.rhs(depth - 1))
    if r < 0.77:
      return Precond(self.cond(0), self.rhs(depth - 1))
    if r < 0.85:
      return IfE(self.cond(0), self.rhs(depth - 1), self.rhs(depth - 1))
    if r < 0.93:
      return Lit(null(INT))
    return Lit(bottom(INT))

  def assign(self) -> Assign:
    if self.rng.random() < 0.25:
      return Assign(self.vars, (self.rhs(), self.rhs()))
    return Assign((self.rng.choice(self.vars),), (self.rhs(),))

  def cmd(self, depth: int = 3) -> Cmd:
    r = self.rng.random()
    if depth <= 0 or r < 0.3:
      leaf = self.rng.random()
      if leaf < 0.7:
        return self.assign()
      return (SKIP, ABORT, MAGIC)[self.rng.randrange(3)]
    kinds = ["pre", "guard", "choice", "seq", "if"] + (["pref", "pref"] if self.pref else [])
    k = self.rng.choice(kinds)
    if k == "pre":
      return Pre(self.cond(), self.cmd(depth - 1))
    if k == "guard":
      return GuardC(self.cond(), self.cmd(depth - 1))
    if k == "choice":
      return Choice(self.cmd(depth - 1), self.cmd(depth - 1))
    if k == "seq":
      return Seq(self.cmd(depth - 1), self.cmd(depth - 1))
    if k == "if":
      return If(self.cond(), self.cmd(depth - 1), self.cmd(depth - 1))
    return Pref(self.cmd(depth - 1), self.cmd(depth - 1))

  def observation(self, int_only: bool = False) -> Expr:
    x, y = Var("x"), Var("y")
    pool = [x, y, Bin("+", x, y), Bin(",", x, y), Bin("*", x, y), Guard(self.cond(0), x), Lit(null(INT)),
            Lit(bottom(INT))]
    if not int_only:
      pool.append(Bin("|->", x, y))
    return self.rng.choice(pool)


def program_corpus(count: int = 500, seed: int = 0, sizes=(2, 3, 4), pref: bool = False, int_only: bool = False):
  """(space, program, observation) triples; carrier sizes cycle through sizes."""
  out = []
  gens = {n: ProgramGen(n, seed * 1000 + n, pref) for n in sizes}
  spaces = {n: g.space() for n, g in gens.items()}
  for i in range(count):
    n = sizes[i % len(sizes)]
    g = gens[n]
    out.append((spaces[n], g.cmd(), g.observation(int_only)))
  return out


# ---------------------------------------------------------------- arbitrary syntax trees

_NAMES = ("x", "y", "z", "f", "g", "p")


class TreeGen:
  """Well-formed syntax trees in their canonical parsed shape."""

  def __init__(self, seed: int = 0):
    self.rng = random.Random(seed)

  def pick(self, seq):
    return seq[self.rng.randrange(len(seq))]

  def name(self) -> str:
    return self.pick(_NAMES)

  def literal(self) -> Lit:
    k = self.rng.randrange(6)
    if k == 0:
      return Lit(elem(core.StringV(self.pick(("", "ab", "x y")))))
    if k == 1:
      return Lit(elem(core.CharV(self.pick("az"))))
    if k == 2:
      return Lit(null(self.pick((INT, core.ANY))))
    if k == 3:
      return Lit(bottom(self.pick((INT, core.ANY))))
    return _int(self.rng.randrange(20))

  def expr(self, depth: int) -> Expr:
    if depth <= 0:
      return self.literal() if self.rng.random() < 0.5 else Var(self.name())
    k = self.rng.randrange(14)
    d = depth - 1
    if k < 4:
      op = self.pick(("*", "/", "mod", "+", "-", "^", "..", "\\/", "/\\", "><", "|->", ",", "'", "\\"))
      return Bin(op, self.expr(d), self.expr(d))
    if k == 4:
      return Unary(self.pick(("-", "~", "pow", "card")), self.expr(d))
    if k == 5:
      return Pack(self.expr(d))
    if k == 6:
      return Guard(self.pred(d), self.expr(d))
    if k == 7:
      return Precond(self.pred(d), self.expr(d))
    if k == 8:
      return self.pick((Comp, Lambda, BigLambda))(self.name(), self.expr(d))
    if k == 9:
      return App(Var(self.name()), self.expr(d))
    if k == 10:
      return IfE(self.pred(d), self.expr(d), self.expr(d))
    if k == 11:
      return PV(self.cmd(d), self.expr(d))
    return self.expr(0)

  def pred(self, depth: int) -> Pred:
    if depth <= 0:
      return Cmp(self.pick(("=", "<")), Var(self.name()), self.literal())
    k = self.rng.randrange(7)
    d = depth - 1
    if k < 2:
      op = self.pick(("<", "<=", ">", ">=", "=", "/=", ":", "in", "notin", "<:", "<<:"))
      return Cmp(op, self.expr(d), self.expr(d))
    if k == 2:
      return Not(self.pred(d))
    if k == 3:
      return Conn(self.pick(("&", "or", "=>", "<=>")), self.pred(d), self.pred(d))
    if k == 4:
      return Quant(self.pick(("all", "some")), self.name(), self.pred(d))
    if k == 5:
      return PredApp(Var(self.name()), self.expr(d))
    return Const(self.rng.random() < 0.5)

  def cmd(self, depth: int) -> Cmd:
    if depth <= 0:
      k = self.rng.randrange(5)
      if k < 3:
        n = 1 + (k == 2)
        targets = tuple(self.rng.sample(("x", "y", "z"), n))
        return Assign(targets, tuple(self.expr(1) for _ in targets))
      return self.pick((SKIP, ABORT, MAGIC))
    k = self.rng.randrange(8)
    d = depth - 1
    if k == 0:
      return Pre(self.pred(d), self.cmd(d))
    if k == 1:
      return GuardC(self.pred(d), self.cmd(d))
    if k == 2:
      return Choice(self.cmd(d), self.cmd(d))
    if k == 3:
      return Seq(self.cmd(d), self.cmd(d))
    if k == 4:
      return Pref(self.cmd(d), self.cmd(d))
    if k == 5:
      p = Fraction(1 + self.rng.randrange(3), 4)
      return Prob(p, self.cmd(d), self.cmd(d))
    if k == 6:
      return If(self.pred(d), self.cmd(d), self.cmd(d))
    return self.cmd(0)

  def tree(self, depth: int = 3):
    return self.pick((self.expr, self.pred, self.cmd))(depth)
