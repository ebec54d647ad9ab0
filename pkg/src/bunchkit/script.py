"""Scripts: declarations and directives, one per line.

  given PERSON = alice, bob       a given set and its atoms
  var x : 0..3                    a state variable and its finite range
  let name = expr                 a named constant
  program P = cmd                 a named program, usable as {P}
  state x = 0, y = 5              the current state
  eval expr-or-pred               evaluate in the current state
  pv cmd <> expr                  prospective value in the current state
  expect cmd <> expr              expected value (probabilistic choice allowed)
  fis cmd                         feasibility in the current state
  refines P Q                     does Q refine P over the declared variables?
  basic-law cmd <> expr           check the basic law over every state
  validate [--carrier N] [--depth D]
  rule N = rhs                    a grammar equation (or: rule const c = rhs)
  chain N k                       the first k approximants of nonterminal N
  member "w" N d                  bounded membership of w in N

Lines starting with # or -- are comments.
"""
from __future__ import annotations

import re
import shlex
import sys
from dataclasses import dataclass, field

from . import core, fixpoint, model, pv as pvmod, wp
from .core import Bunch, BunchError, Env, Given
from .evaluate import Context, eval_expr, eval_pred
from .parser import ParseError, Parser, render
from .states import StateSpace, StateSpaceError
from .syntax import PV, Cmd, Expr, Pred, Var


class ScriptError(Exception):
  pass


DIRECTIVES = ("given", "var", "let", "program", "state", "eval", "pv", "expect", "fis", "refines", "basic-law",
              "validate", "rule", "chain", "member")

_BUILTIN_TYPES = {"BOOL": core.BOOL, "CHAR": core.CHAR}


@dataclass
class Session:
  types: dict = field(default_factory=dict)
  atoms: dict = field(default_factory=dict)
  domains: dict = field(default_factory=dict)
  consts: dict = field(default_factory=dict)
  programs: dict = field(default_factory=dict)
  state: dict = field(default_factory=dict)
  grammar: list = field(default_factory=list)

  # -- helpers
  def parser(self, text: str) -> Parser:
    return Parser(text, types=self.types, atoms=self.atoms, programs=self.programs)

  def parse(self, text: str):
    p = self.parser(text)
    return p.parse()

  def parse_as(self, text: str, kind: str):
    p = self.parser(text)
    n = p.parse()
    return {"expr": p.as_expr, "pred": p.as_pred, "cmd": p.as_cmd}[kind](n)

  @property
  def ctx(self) -> Context:
    return Context(dict(self.domains))

  @property
  def env(self) -> Env:
    return Env({**self.consts, **self.state})

  def space(self) -> StateSpace:
    if not self.domains:
      raise ScriptError("no variables declared")
    return StateSpace.of(self.domains, constants=self.consts)

  def pv_parts(self, text: str) -> tuple[Cmd, Expr]:
    n = self.parse_as(text, "expr")
    if not isinstance(n, PV):
      raise ScriptError("expected 'program <> expression'")
    return n.cmd, n.expr

  # -- directives
  def execute(self, line: str) -> list[str]:
    """Run one line; returns output lines.  Raises ScriptError on failure."""
    line = line.strip()
    if not line or line.startswith("#") or line.startswith("--"):
      return []
    word, _, rest = line.partition(" ")
    rest = rest.strip()
    handler = getattr(self, "do_" + word.replace("-", "_"), None)
    if word not in DIRECTIVES or handler is None:
      raise ScriptError(f"unknown directive {word!r}")
    try:
      return handler(rest) or []
    except core.UnboundVariable as exc:
      raise ScriptError(f"unbound variable {exc}") from exc
    except (ParseError, BunchError, StateSpaceError, pvmod.UnsupportedConstruct, fixpoint.GrammarError,
            model.Unsupported, ValueError, TypeError) as exc:
      raise ScriptError(str(exc)) from exc

  def do_given(self, rest):
    m = re.fullmatch(r"([A-Za-z_]\w*)\s*=\s*(.+)", rest)
    if not m:
      raise ScriptError("expected 'given NAME = atom, atom, ...'")
    name = m.group(1)
    atoms = [a.strip() for a in m.group(2).split(",")]
    t = Given(name, tuple(atoms))
    self.types[name] = t
    for a in atoms:
      self.atoms[a] = t

  def do_var(self, rest):
    m = re.fullmatch(r"([A-Za-z_]\w*)\s*:\s*(.+)", rest)
    if not m:
      raise ScriptError("expected 'var x : range'")
    name, rng = m.groups()
    rng = rng.strip()
    if rng in self.types:
      dom = core.of(self.types[rng], core.enumerate_type(self.types[rng]))
    elif rng in _BUILTIN_TYPES:
      dom = core.of(_BUILTIN_TYPES[rng], core.enumerate_type(_BUILTIN_TYPES[rng]))
    else:
      dom = eval_expr(self.parse_as(rng, "expr"), self.env, self.ctx)
      if not dom.is_proper or dom.is_null:
        raise ScriptError(f"variable {name} needs a non-empty finite range")
    self.domains[name] = dom
    if name not in self.state:
      self.state[name] = core.elem(dom.elems[0])

  def do_let(self, rest):
    m = re.fullmatch(r"([A-Za-z_]\w*)\s*=\s*(.+)", rest)
    if not m:
      raise ScriptError("expected 'let name = expression'")
    self.consts[m.group(1)] = eval_expr(self.parse_as(m.group(2), "expr"), self.env, self.ctx)

  def do_program(self, rest):
    m = re.fullmatch(r"([A-Za-z_]\w*)\s*=\s*(.+)", rest)
    if not m:
      raise ScriptError("expected 'program P = command'")
    self.programs[m.group(1)] = self.parse_as(m.group(2), "cmd")

  def do_state(self, rest):
    for part in re.split(r",\s*(?=[A-Za-z_]\w*\s*=[^=>])", rest):
      m = re.fullmatch(r"\s*([A-Za-z_]\w*)\s*=\s*(.+)", part)
      if not m:
        raise ScriptError("expected 'state x = value, ...'")
      name = m.group(1)
      v = eval_expr(self.parse_as(m.group(2), "expr"), self.env, self.ctx)
      if not v.is_element:
        raise ScriptError(f"state value for {name} must be an element, got {core.render(v)}")
      if name in self.domains and v.value not in self.domains[name].members:
        raise ScriptError(f"{core.render(v)} is outside the range of {name}")
      self.state[name] = v

  def do_eval(self, rest):
    n = self.parse(rest)
    if isinstance(n, Pred):
      return ["true" if eval_pred(n, self.env, self.ctx) else "false"]
    if isinstance(n, Expr):
      return [core.render(eval_expr(n, self.env, self.ctx))]
    raise ScriptError("a command has no value; use pv")

  def do_pv(self, rest):
    c, e = self.pv_parts(rest)
    return [core.render(pvmod.pv(c, e, self.env, self.ctx))]

  def do_expect(self, rest):
    c, e = self.pv_parts(rest)
    out = [core.render(pvmod.pv_expect(c, e, self.env, self.ctx))]
    if pvmod.mixes_preference_and_probability(c):
      out.append("note: preferential and probabilistic choice are combined compositionally")
    return out

  def do_fis(self, rest):
    return ["true" if pvmod.fis(self.parse_as(rest, "cmd"), self.env, self.ctx) else "false"]

  def do_refines(self, rest):
    names = rest.split()
    if len(names) != 2 or any(n not in self.programs for n in names):
      raise ScriptError("expected 'refines P Q' with two declared programs")
    s, t = (self.programs[n] for n in names)
    space = self.space()
    r = pvmod.refine_check(s, t, [Var(n) for n in space.names], space, self.ctx)
    if r.holds:
      return [f"{names[1]} refines {names[0]}"]
    raise ScriptError(
        f"{names[1]} does not refine {names[0]}: at {space.show(r.state)}, {render(r.expr)} may be "
        f"{core.render(r.impl_value)} but {names[0]} allows only {core.render(r.spec_value)}")

  def do_basic_law(self, rest):
    c, e = self.pv_parts(rest)
    space = self.space()
    bad = wp.basic_law_check(c, e, space, self.ctx)
    if not bad:
      return [f"PASS basic law over {len(space)} states"]
    v = bad[0]
    raise ScriptError(f"FAIL basic law at {space.show(v.state)} with z = {core.render(v.z)}: "
                      f"z : (S ◇ E) is {v.lhs} but ⟨S⟩(z : E) is {v.rhs}")

  def do_validate(self, rest):
    args = shlex.split(rest)
    opts = {"--carrier": 2, "--depth": 2}
    while args:
      flag = args.pop(0)
      if flag not in opts or not args:
        raise ScriptError(f"bad validate option {flag!r}")
      opts[flag] = int(args.pop(0))
    report = model.validate_axioms(model.Universe(opts["--carrier"], opts["--depth"]))
    lines = report.lines()
    if not report.ok:
      raise ScriptError("\n".join(lines))
    return lines

  def do_rule(self, rest):
    self.grammar.append(rest)
    fixpoint.parse_grammar("\n".join(self.grammar), partial=True)  # fail early on a bad rule

  def grammar_system(self) -> fixpoint.GrammarSystem:
    if not self.grammar:
      raise ScriptError("no grammar rules declared")
    return fixpoint.parse_grammar("\n".join(self.grammar))

  def do_chain(self, rest):
    parts = rest.split()
    if len(parts) != 2:
      raise ScriptError("expected 'chain N k'")
    g = self.grammar_system()
    chains = fixpoint.mutual_chain(g, int(parts[1]))
    if parts[0] not in chains:
      raise ScriptError(f"unknown nonterminal {parts[0]}")
    return [f"{parts[0]}({i}) = {core.render(b)}" for i, b in enumerate(chains[parts[0]], 1)]

  def do_member(self, rest):
    parts = shlex.split(rest)
    if len(parts) != 3:
      raise ScriptError("expected 'member \"word\" N depth'")
    return [str(fixpoint.member_bounded(parts[0], self.grammar_system(), parts[1], int(parts[2])))]


@dataclass
class Transcript:
  lines: list[str]
  failures: int

  @property
  def ok(self) -> bool:
    return self.failures == 0

  def __str__(self):
    return "\n".join(self.lines)


def run(text: str, session: Session | None = None) -> Transcript:
  """Execute every line; a failing directive is reported and the run continues."""
  session = session or Session()
  out, failures = [], 0
  for lineno, line in enumerate(text.splitlines(), 1):
    try:
      out.extend(session.execute(line))
    except ScriptError as exc:
      failures += 1
      out.append(f"error at line {lineno}: {exc}")
  return Transcript(out, failures)


def repl(stdin=None, stdout=None) -> int:
  stdin = stdin or sys.stdin
  stdout = stdout or sys.stdout
  session = Session()
  interactive = stdin.isatty()
  failures = 0
  while True:
    if interactive:
      stdout.write("bt> ")
      stdout.flush()
    line = stdin.readline()
    if not line:
      break
    if line.strip() in ("quit", "exit"):
      break
    try:
      for out in session.execute(line):
        stdout.write(out + "\n")
    except ScriptError as exc:
      failures += 1
      stdout.write(f"error: {exc}\n")
  return 0 if failures == 0 else 1
