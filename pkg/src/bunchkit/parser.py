"""Text syntax: a precedence-climbing parser and a canonical renderer.

Operators, from tightest to loosest binding:

  application f(x) f{x}, wholistic f.x
  prefix - ~ pow card ¬ and the binders ∀ ∃ ∮ λ Λ
  * / mod;  + - ^;  ..;  ∪ ∩ ×;  ↦;  , ' ∖
  < ≤ > ≥;  = ≠;  : ∈ ∉ ⊆ ⊂;  ∧;  ∨;  ⇒ (right);  ⇔
  • (right);  ↣ ⫢
  :=;  ⟹;  ⊓ p⊕;  ⊔;  ⟩⟩;  ⊞;  ;;  |;  ◇ ∇ (right);  ⊑;  ≜ ≡ ≡>

Every token has an ASCII spelling, listed in SYMBOLS.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import core
from .core import (
    ANY, BOOL, CHAR, INT, RAT, STRING, Bunch, CharV, Given, GivenV, IntV, PairType, SetType, StringV, TypeTag,
    bottom, elem, null,
)
from .syntax import (
    ABORT, MAGIC, SKIP, App, Assign, Bin, BigLambda, Choice, Cmd, Cmp, Comp, Conn, Const, Expr, Guard, GuardC,
    If, IfE, Lambda, Lit, Not, PV, Pack, Pre, Precond, Pred, PredApp, Pref, Prob, Quant, Seq, Skip, Unary, Var,
    WApp,
)


class ParseError(Exception):
  def __init__(self, msg: str, text: str = "", pos: int = 0):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    super().__init__(f"{msg} at line {line}, column {col}")
    self.pos, self.line, self.col = pos, line, col


# canonical name -> spellings; the first spelling is the unicode form
SYMBOLS = {
    ",": [","], "'": ["'"], "\\": ["∖", "\\"], "+": ["+"], "-": ["-"], "*": ["*"], "/": ["/"], "^": ["^"],
    "|->": ["↦", "|->"], "..": [".."], "><": ["×", "><"], "\\/": ["∪", "\\/"], "/\\": ["∩", "/\\"],
    "~": ["~"], "card": ["¢"], "pow": ["ℙ"],
    "=": ["="], "/=": ["≠", "/="], "<": ["<"], "<=": ["≤", "<="], ">": [">"], ">=": ["≥", ">="],
    ":": [":"], "in": ["∈"], "notin": ["∉"], "<:": ["⊆", "<:"], "<<:": ["⊂", "<<:"],
    "&": ["∧", "&"], "or": ["∨"], "=>": ["⇒", "=>"], "<=>": ["⇔", "<=>"], "not": ["¬"],
    "forall": ["∀"], "exists": ["∃"], "@": ["•", "@"], "%": ["∮", "%"], "lambda": ["λ"], "LAMBDA": ["Λ"],
    "->>": ["↣", "->>"], "|>>": ["⫢", "|>>"],
    ":=": [":="], "==>": ["⟹", "==>"], "[]": ["⊓", "[]"], "<+>": ["⊕", "<+>"], ">>": ["⟩⟩", ">>"],
    ";": [";"], "|": ["|"], "<>": ["◇", "<>"], "!!": ["⊥", "!!"],
    "⊔": ["⊔"], "⊞": ["⊞"], "∇": ["∇"], "⊑": ["⊑"], "≜": ["≜"], "≡": ["≡"], "≡>": ["≡>"],
    "(": ["("], ")": [")"], "{": ["{"], "}": ["}"], ".": ["."],
}
RESERVED = {"⊔", "⊞", "∇", "⊑", "≜", "≡", "≡>"}

KEYWORDS = {
    "mod": "mod", "pow": "pow", "card": "card", "in": "in", "notin": "notin", "or": "or", "and": "&",
    "not": "not", "forall": "forall", "exists": "exists", "lambda": "lambda", "LAMBDA": "LAMBDA",
    "skip": "skip", "abort": "abort", "magic": "magic", "if": "if", "then": "then", "else": "else",
    "end": "end", "true": "true", "false": "false", "null": "null", "improper": "improper",
    "TRUE": "TRUE", "FALSE": "FALSE",
}

_SPELLINGS = sorted(((s, name) for name, ss in SYMBOLS.items() for s in ss), key=lambda p: -len(p[0]))
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"\d+\.\d+|\d+")
_STRING = re.compile(r'"((?:[^"\\]|\\.)*)"')
_CHAR = re.compile(r"'([^'\\]|\\.)'")

PREFIX_BP = 195
APP_BP = 200
BINARY = {  # name -> (binding power, right associative)
    "*": (190, False), "/": (190, False), "mod": (190, False),
    "+": (180, False), "-": (180, False), "^": (180, False),
    "..": (175, False),
    "\\/": (170, False), "/\\": (170, False), "><": (170, False),
    "|->": (165, False),
    ",": (160, False), "'": (160, False), "\\": (160, False),
    "<": (150, False), "<=": (150, False), ">": (150, False), ">=": (150, False),
    "=": (140, False), "/=": (140, False),
    ":": (130, False), "in": (130, False), "notin": (130, False), "<:": (130, False), "<<:": (130, False),
    "&": (120, False), "or": (110, False), "=>": (100, True), "<=>": (90, False),
    "@": (80, True),
    "->>": (70, False), "|>>": (70, False),
    ":=": (60, False), "==>": (55, False), "[]": (50, False), "<+>": (50, False), "⊔": (48, False),
    ">>": (45, False), "⊞": (43, False), ";": (40, False), "|": (35, False),
    "<>": (30, True), "∇": (30, True), "⊑": (25, False), "≜": (20, False), "≡": (20, False), "≡>": (20, True),
}
CMP_OPS = {"<", "<=", ">", ">=", "=", "/=", ":", "in", "notin", "<:", "<<:"}
EXPR_OPS = {"*", "/", "mod", "+", "-", "^", "..", "\\/", "/\\", "><", "|->", ",", "'", "\\"}
BINDERS = {"forall": "all", "exists": "some", "%": "comp", "lambda": "lambda", "LAMBDA": "biglambda"}


@dataclass(frozen=True)
class Token:
  kind: str  # num dec str char ident op eof
  text: str
  pos: int
  end: int


_OPERAND_END = {"num", "dec", "str", "char", "ident"}


def _ends_probability(out: list[Token]) -> bool:
  texts = [(t.kind, t.text) for t in out[-4:]]
  return (texts[-2:-1] == [("op", "<+>")] and texts[-1][0] in ("num", "dec")) or (
      len(texts) == 4 and texts[0] == ("op", "<+>") and texts[2] == ("op", "/"))


def tokenize(text: str) -> list[Token]:
  out: list[Token] = []
  i, n = 0, len(text)
  while i < n:
    c = text[i]
    if c.isspace():
      i += 1
      continue
    if text.startswith("--", i) and not text.startswith("-->", i):
      j = text.find("\n", i)
      i = n if j < 0 else j
      continue
    prev = out[-1] if out else None
    after_operand = prev is not None and (
        prev.kind in _OPERAND_END or (prev.kind == "op" and prev.text in (")", "}", "null", "improper", "!!",
                                                                          "true", "false", "TRUE", "FALSE",
                                                                          "skip", "abort", "magic", "end")))
    if after_operand and _ends_probability(out):
      after_operand = False  # "⊕1/2 'c'" starts an operand
    if c == "'" and not after_operand:
      m = _CHAR.match(text, i)
      if m:
        out.append(Token("char", m.group(1).encode().decode("unicode_escape") if "\\" in m.group(1) else m.group(1), i, m.end()))
        i = m.end()
        continue
    if c == '"':
      m = _STRING.match(text, i)
      if not m:
        raise ParseError("unterminated string", text, i)
      raw = m.group(1)
      out.append(Token("str", re.sub(r"\\(.)", r"\1", raw), i, m.end()))
      i = m.end()
      continue
    if c.isdigit():
      m = _NUMBER.match(text, i)
      out.append(Token("dec" if "." in m.group() else "num", m.group(), i, m.end()))
      i = m.end()
      continue
    m = _IDENT.match(text, i)
    if m:
      word = m.group()
      if word in KEYWORDS:
        out.append(Token("op", KEYWORDS[word], i, m.end()))
      else:
        out.append(Token("ident", word, i, m.end()))
      i = m.end()
      continue
    for spelling, name in _SPELLINGS:
      if text.startswith(spelling, i):
        out.append(Token("op", name, i, i + len(spelling)))
        i += len(spelling)
        break
    else:
      raise ParseError(f"unexpected character {c!r}", text, i)
  out.append(Token("eof", "", n, n))
  return out


# ---------------------------------------------------------------- parse-time helpers

@dataclass(frozen=True)
class _Paren:
  inner: object


@dataclass(frozen=True)
class _Binder:
  kind: str
  names: tuple[str, ...]
  range_op: str | None
  range_expr: Expr | None


def _strip(n):
  while isinstance(n, _Paren):
    n = n.inner
  return n


class Parser:
  def __init__(self, text: str, types: dict[str, TypeTag] | None = None, atoms: dict[str, Given] | None = None,
               programs: dict[str, Cmd] | None = None):
    self.text = text
    self.toks = tokenize(text)
    self.i = 0
    self.types = dict(types or {})
    self.atoms = dict(atoms or {})
    self.programs = dict(programs or {})

  # -- token plumbing
  @property
  def tok(self) -> Token:
    return self.toks[self.i]

  def advance(self) -> Token:
    t = self.toks[self.i]
    self.i += 1
    return t

  def error(self, msg: str, tok: Token | None = None):
    tok = tok or self.tok
    return ParseError(msg, self.text, tok.pos)

  def at_op(self, name: str) -> bool:
    return self.tok.kind == "op" and self.tok.text == name

  def expect(self, name: str) -> Token:
    if not self.at_op(name):
      shown = self.tok.text or "end of input"
      raise self.error(f"expected {SYMBOLS.get(name, [name])[-1]!r} but found {shown!r}")
    return self.advance()

  def glued(self) -> bool:
    return self.tok.pos == self.toks[self.i - 1].end

  # -- coercions
  def as_expr(self, n, tok=None) -> Expr:
    n = _strip(n)
    if isinstance(n, Expr):
      return n
    raise self.error(f"expected an expression, found a {_kind(n)}", tok)

  def as_pred(self, n, tok=None) -> Pred:
    n = _strip(n)
    if isinstance(n, Pred):
      return n
    if isinstance(n, App):
      return PredApp(n.fn, n.arg)
    raise self.error(f"expected a predicate, found a {_kind(n)}", tok)

  def as_cmd(self, n, tok=None) -> Cmd:
    n = _strip(n)
    if isinstance(n, Cmd):
      return n
    raise self.error(f"expected a command, found a {_kind(n)}", tok)

  # -- entry points
  def parse(self):
    n = self.expression(0)
    if self.tok.kind != "eof":
      raise self.error(f"unexpected {self.tok.text!r}")
    n = _strip(n)
    if isinstance(n, _Binder):
      raise self.error("binder without a body")
    return n

  def expression(self, rbp: int):
    t = self.advance()
    left = self.nud(t)
    while True:
      t = self.tok
      bp = self.left_bp(t)
      if bp <= rbp:
        return left
      self.advance()
      left = self.led(t, left)

  def left_bp(self, t: Token) -> int:
    if t.kind != "op":
      return 0
    if t.text in ("(", "{", "."):
      return APP_BP
    if t.text in BINARY:
      return BINARY[t.text][0]
    return 0

  # -- prefix positions
  def nud(self, t: Token):
    k, s = t.kind, t.text
    if k == "num":
      return Lit(elem(IntV(int(s))))
    if k == "dec":
      raise self.error("decimal numbers only appear after a probabilistic choice", t)
    if k == "str":
      return Lit(elem(StringV(s)))
    if k == "char":
      return Lit(elem(CharV(s)))
    if k == "ident":
      if s in self.atoms:
        return Lit(elem(GivenV(s, self.atoms[s])))
      if s in self.types and isinstance(self.types[s], Given):
        # a given set name stands for the bunch of all its atoms
        return Lit(core.of(self.types[s], core.enumerate_type(self.types[s])))
      return Var(s)
    if k == "eof":
      raise self.error("unexpected end of input", t)
    if s == "(":
      inner = self.expression(0)
      self.expect(")")
      if isinstance(_strip(inner), _Binder):
        raise self.error("binder without a body", t)
      return _Paren(inner)
    if s == "{":
      if self.at_op("}"):
        self.advance()
        return Pack(Lit(null()))
      if self.tok.kind == "ident" and self.tok.text in self.programs and self.toks[self.i + 1].text == "}":
        name = self.advance().text
        self.advance()
        return _Paren(self.programs[name])
      inner = self.expression(0)
      self.expect("}")
      return Pack(self.as_expr(inner, t))
    if s in ("-", "~", "pow", "card"):
      arg = self.as_expr(self.expression(PREFIX_BP), t)
      return Unary(s, arg)
    if s == "not":
      return Not(self.as_pred(self.expression(PREFIX_BP), t))
    if s in BINDERS:
      return self.binder(BINDERS[s], t)
    if s == "true":
      return Const(True)
    if s == "false":
      return Const(False)
    if s == "TRUE":
      return Lit(elem(core.TRUE))
    if s == "FALSE":
      return Lit(elem(core.FALSE))
    if s in ("null", "improper", "!!"):
      typ = self.annotation()
      if s == "null":
        return Lit(null(typ))
      return Lit(bottom(typ))
    if s == "skip":
      return SKIP
    if s == "abort":
      return ABORT
    if s == "magic":
      return MAGIC
    if s == "if":
      cond = self.as_pred(self.expression(0), t)
      self.expect("then")
      a = _strip(self.expression(0))
      self.expect("else")
      b = _strip(self.expression(0))
      self.expect("end")
      if isinstance(a, Cmd) or isinstance(b, Cmd):
        return If(cond, self.as_cmd(a, t), self.as_cmd(b, t))
      return IfE(cond, self.as_expr(a, t), self.as_expr(b, t))
    if s in RESERVED:
      raise self.error(f"operator {s} is reserved and has no meaning", t)
    raise self.error(f"unexpected {s!r}", t)

  def annotation(self) -> TypeTag:
    if self.at_op(":") and self.glued():
      self.advance()
      return self.type_expr()
    return ANY

  def type_expr(self) -> TypeTag:
    t = self.tok
    if t.kind == "op" and t.text == "pow":
      self.advance()
      self.expect("(")
      inner = self.type_expr()
      self.expect(")")
      return SetType(inner)
    if t.kind == "op" and t.text == "(":
      self.advance()
      left = self.type_expr()
      self.expect("*")
      right = self.type_expr()
      self.expect(")")
      return PairType(left, right)
    if t.kind == "ident":
      self.advance()
      return self.named_type(t)
    raise self.error("expected a type", t)

  def named_type(self, t: Token) -> TypeTag:
    builtin = {"INT": INT, "BOOL": BOOL, "CHAR": CHAR, "STRING": STRING, "RAT": RAT, "ANY": ANY}
    if t.text in builtin:
      return builtin[t.text]
    if t.text in self.types:
      return self.types[t.text]
    raise self.error(f"unknown type {t.text}", t)

  def binder(self, kind: str, t: Token) -> _Binder:
    names = []
    while True:
      if self.tok.kind != "ident":
        raise self.error("expected a bound variable name")
      names.append(self.advance().text)
      if self.at_op(",") and self.toks[self.i + 1].kind == "ident" and kind in ("all", "some"):
        self.advance()
        continue
      break
    range_op = range_expr = None
    if self.at_op("in") or self.at_op(":"):
      range_op = self.advance().text
      range_expr = self.as_expr(self.expression(BINARY[":"][0]), t)
    if not self.at_op("@"):
      raise self.error("expected '•' after the bound variable")
    return _Binder(kind, tuple(names), range_op, range_expr)

  # -- infix positions
  def led(self, t: Token, left):
    s = t.text
    if s == "(":
      inner = self.expression(0)
      self.expect(")")
      return App(self.as_expr(left, t), self.as_expr(inner, t))
    if s == "{":
      inner = self.expression(0)
      self.expect("}")
      return App(self.as_expr(left, t), Pack(self.as_expr(inner, t)))
    if s == ".":
      right = self.expression(APP_BP)
      return WApp(self.as_expr(left, t), self.as_expr(right, t))
    if s in RESERVED:
      raise self.error(f"operator {s} is reserved and has no meaning", t)
    bp, right_assoc = BINARY[s]
    if s == "@":
      return self.binder_body(t, left, bp - 1)
    if s == "<+>":
      p = self.probability()
      right = self.expression(bp)
      return Prob(p, self.as_cmd(left, t), self.as_cmd(right, t))
    if s == ":=":
      return self.assignment(t, left)
    right = self.expression(bp - 1 if right_assoc else bp)
    if s in EXPR_OPS:
      return Bin(s, self.as_expr(left, t), self.as_expr(right, t))
    if s in CMP_OPS:
      return Cmp(s, self.as_expr(left, t), self.as_expr(right, t))
    if s in ("&", "or", "=>", "<=>"):
      return Conn(s, self.as_pred(left, t), self.as_pred(right, t))
    if s == "->>":
      return Guard(self.as_pred(left, t), self.as_expr(right, t))
    if s == "|>>":
      return Precond(self.as_pred(left, t), self.as_expr(right, t))
    if s == "==>":
      return GuardC(self.as_pred(left, t), self.as_cmd(right, t))
    if s == "|":
      return Pre(self.as_pred(left, t), self.as_cmd(right, t))
    if s == "[]":
      return Choice(self.as_cmd(left, t), self.as_cmd(right, t))
    if s == ">>":
      return Pref(self.as_cmd(left, t), self.as_cmd(right, t))
    if s == ";":
      return Seq(self.as_cmd(left, t), self.as_cmd(right, t))
    if s == "<>":
      return PV(self.as_cmd(left, t), self.as_expr(right, t))
    raise self.error(f"unexpected {s!r}", t)

  def probability(self) -> Fraction:
    t = self.tok
    if t.kind == "dec":
      self.advance()
      return Fraction(t.text)
    if t.kind == "num":
      self.advance()
      p = Fraction(int(t.text))
      if self.at_op("/"):
        self.advance()
        d = self.tok
        if d.kind != "num":
          raise self.error("expected a denominator")
        self.advance()
        p = p / int(d.text)
      if not 0 < p < 1:
        raise self.error("probability must lie strictly between 0 and 1", t)
      return p
    raise self.error("expected a probability after the choice operator", t)

  def binder_body(self, t: Token, left, rbp: int):
    b = left if isinstance(left, _Binder) else None
    if b is None:
      raise self.error("'•' must follow a binder such as ∀x", t)
    body = self.expression(rbp)
    if b.kind in ("all", "some"):
      body = self.as_pred(body, t)
      for name in reversed(b.names):
        if b.range_op is not None:
          r = Cmp(b.range_op, Var(name), b.range_expr)
          body = Conn("=>", r, body) if b.kind == "all" else Conn("&", r, body)
        body = Quant(b.kind, name, body)
      return body
    body = self.as_expr(body, t)
    name = b.names[0]
    if b.range_op is not None:
      body = Guard(Cmp(b.range_op, Var(name), b.range_expr), body)
    return {"comp": Comp, "lambda": Lambda, "biglambda": BigLambda}[b.kind](name, body)

  def assignment(self, t: Token, left) -> Assign:
    targets = _flatten_commas(_strip(left))
    names = []
    for x in targets:
      x = _strip(x)
      if not isinstance(x, Var):
        raise self.error("only variables can be assigned", t)
      names.append(x.name)
    if len(names) == 1:
      values = [self.as_expr(self.expression(BINARY[":="][0]), t)]
    else:
      # one value per target, each parsed above the comma so parenthesised bunches stay whole
      values = [self.as_expr(self.expression(BINARY[","][0]), t)]
      while self.at_op(","):
        self.advance()
        values.append(self.as_expr(self.expression(BINARY[","][0]), t))
      if len(values) != len(names):
        raise self.error(f"{len(names)} variables but {len(values)} values", t)
    try:
      return Assign(tuple(names), tuple(values))
    except ValueError as exc:
      raise self.error(str(exc), t) from None


def _flatten_commas(n) -> list:
  if isinstance(n, Bin) and n.op == ",":
    return _flatten_commas(n.left) + [n.right]
  return [n]


def _kind(n) -> str:
  if isinstance(n, Expr):
    return "expression"
  if isinstance(n, Pred):
    return "predicate"
  if isinstance(n, Cmd):
    return "command"
  if isinstance(n, _Binder):
    return "binder without a body"
  return type(n).__name__


def parse(text: str, **kw):
  return _unparen(Parser(text, **kw).parse())


def parse_expr(text: str, **kw) -> Expr:
  p = Parser(text, **kw)
  return _unparen(p.as_expr(p.parse()))


def parse_pred(text: str, **kw) -> Pred:
  p = Parser(text, **kw)
  return _unparen(p.as_pred(p.parse()))


def parse_cmd(text: str, **kw) -> Cmd:
  p = Parser(text, **kw)
  return _unparen(p.as_cmd(p.parse()))


def _unparen(n):
  # _Paren only survives where an operand was never coerced; coercions strip it elsewhere
  return _strip(n)


# ---------------------------------------------------------------- rendering

ATOM = 1000


def _level(n) -> int:
  if isinstance(n, (Bin, Cmp)):
    return BINARY[n.op][0]
  if isinstance(n, Conn):
    return BINARY[n.op][0]
  if isinstance(n, (Unary, Not)):
    return PREFIX_BP
  if isinstance(n, (App, WApp, PredApp)):
    return APP_BP
  if isinstance(n, (Quant, Comp, Lambda, BigLambda)):
    return BINARY["@"][0]
  if isinstance(n, (Guard, Precond)):
    return 70
  if isinstance(n, Assign):
    return BINARY[":="][0]
  if isinstance(n, GuardC):
    return BINARY["==>"][0] if n != MAGIC else ATOM
  if isinstance(n, Pre):
    return BINARY["|"][0] if n != ABORT else ATOM
  if isinstance(n, (Choice, Prob)):
    return BINARY["[]"][0]
  if isinstance(n, Pref):
    return BINARY[">>"][0]
  if isinstance(n, Seq):
    return BINARY[";"][0]
  if isinstance(n, PV):
    return BINARY["<>"][0]
  return ATOM


class Renderer:
  def __init__(self, ascii: bool = False):
    self.ascii = ascii

  def sym(self, name: str) -> str:
    spellings = SYMBOLS.get(name)
    if spellings is None:
      return name
    if self.ascii:
      return spellings[-1]
    return spellings[0]

  def word(self, name: str) -> str:
    # operators whose unicode form replaces an ASCII keyword
    uni = {"in": "∈", "notin": "∉", "or": "∨", "not": "¬", "forall": "∀", "exists": "∃", "lambda": "λ",
           "LAMBDA": "Λ", "card": "¢", "pow": "pow"}
    if self.ascii or name not in uni:
      return {"not": "not ", "card": "card ", "pow": "pow "}.get(name, name)
    return uni[name]

  def wrap(self, n, min_level: int) -> str:
    s = self.render(n)
    return f"({s})" if _level(n) < min_level else s

  def binary(self, op: str, left, right, shown: str | None = None) -> str:
    bp, right_assoc = BINARY[op]
    lmin, rmin = (bp + 1, bp) if right_assoc else (bp, bp + 1)
    shown = shown if shown is not None else self.op_text(op)
    sep = "" if op == "," else " "
    return f"{self.wrap(left, lmin)}{sep}{shown} {self.wrap(right, rmin)}"

  def op_text(self, op: str) -> str:
    if op == ",":
      return ","
    if op in ("in", "notin", "or"):
      return self.word(op)
    if op == "mod":
      return "mod"
    return self.sym(op)

  def render(self, n) -> str:
    if isinstance(n, Lit):
      return self.literal(n.value)
    if isinstance(n, Var):
      return n.name
    if isinstance(n, (Bin, Cmp, Conn)):
      return self.binary(n.op, n.left, n.right)
    if isinstance(n, Unary):
      word = {"-": "-", "~": "~", "pow": self.word("pow"), "card": self.word("card")}[n.op]
      return self.prefix(word, n.arg)
    if isinstance(n, Not):
      return self.prefix(self.word("not"), n.arg)
    if isinstance(n, Pack):
      if isinstance(n.arg, Lit) and n.arg.value.is_null and n.arg.value.type == ANY:
        return "{}"
      return "{" + self.render(n.arg) + "}"
    if isinstance(n, (App, PredApp)):
      return f"{self.wrap(n.fn, APP_BP)}({self.render(n.arg)})"
    if isinstance(n, WApp):
      return f"{self.wrap(n.fn, APP_BP)}.{self.wrap(n.arg, APP_BP + 1)}"
    if isinstance(n, Guard):
      return self.binary("->>", n.cond, n.body)
    if isinstance(n, Precond):
      return self.binary("|>>", n.cond, n.body)
    if isinstance(n, Quant):
      head = self.word("forall" if n.kind == "all" else "exists")
      head += " " if head[-1:].isalpha() else ""
      return f"{head}{n.var} {self.sym('@')} {self.wrap(n.body, BINARY['@'][0])}"
    if isinstance(n, (Comp, Lambda, BigLambda)):
      head = {Comp: self.sym("%"), Lambda: self.word("lambda"), BigLambda: self.word("LAMBDA")}[type(n)]
      sep = " " if head[-1:].isalpha() else ""
      return f"{head}{sep}{n.var} {self.sym('@')} {self.wrap(n.body, BINARY['@'][0])}"
    if isinstance(n, IfE) or isinstance(n, If):
      return f"if {self.render(n.cond)} then {self.render(n.then)} else {self.render(n.orelse)} end"
    if isinstance(n, PV):
      return self.binary("<>", n.cmd, n.expr)
    if isinstance(n, Const):
      return "true" if n.value else "false"
    if isinstance(n, Skip):
      return "skip"
    if n == ABORT:
      return "abort"
    if n == MAGIC:
      return "magic"
    if isinstance(n, Assign):
      lhs = ",".join(n.targets)
      if len(n.values) == 1:
        rhs = self.wrap(n.values[0], BINARY[":="][0] + 1)
      else:
        rhs = ", ".join(self.wrap(v, BINARY[","][0] + 1) for v in n.values)
      return f"{lhs} := {rhs}"
    if isinstance(n, Pre):
      return self.binary("|", n.cond, n.body)
    if isinstance(n, GuardC):
      return self.binary("==>", n.cond, n.body)
    if isinstance(n, Choice):
      return self.binary("[]", n.left, n.right)
    if isinstance(n, Prob):
      p = n.p
      shown = f"{self.sym('<+>')}{p.numerator}/{p.denominator}"
      return self.binary("<+>", n.left, n.right, shown)
    if isinstance(n, Pref):
      return self.binary(">>", n.left, n.right)
    if isinstance(n, Seq):
      return self.binary(";", n.left, n.right)
    raise TypeError(f"cannot render {n!r}")

  def prefix(self, word: str, arg) -> str:
    word = word.strip()
    s = self.render(arg) if isinstance(arg, (Unary, Not)) else self.wrap(arg, PREFIX_BP)
    # a space keeps words apart and stops "--" reading as a comment
    if (word[-1].isalpha() and (s[:1].isalnum() or s[:1] == "_")) or (word == "-" and s[:1] == "-"):
      return f"{word} {s}"
    return word + s

  def literal(self, b: Bunch) -> str:
    if b.improper:
      return self.sym("!!") if b.type == ANY else f"improper:{b.type}"
    if not b.elems:
      return "null" if b.type == ANY else f"null:{b.type}"
    if len(b.elems) == 1:
      v = b.elems[0]
      if isinstance(v, IntV) and v.n < 0:
        return f"(-{-v.n})"
      return core.render_value(v)
    return "(" + core.render(b) + ")"


def render(n, ascii: bool = False) -> str:
  """Canonical text for an expression, predicate or command."""
  return Renderer(ascii).render(n)
