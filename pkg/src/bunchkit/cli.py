"""The `bt` command line."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import core, fixpoint, model, pv as pvmod, script, wp
from .parser import ParseError
from .script import ScriptError, Session


def _load_program(session: Session, path: str):
  """A program file holds declarations and directives-free command lines;
  the command lines, joined, form the program."""
  body = []
  for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
    word = line.strip().split(" ", 1)[0]
    if word in script.DIRECTIVES:
      try:
        session.execute(line)
      except ScriptError as exc:
        raise ScriptError(f"{path}:{lineno}: {exc}") from exc
    elif line.strip() and not line.strip().startswith(("#", "--")):
      body.append(line)
  if not body:
    if session.programs:
      return list(session.programs.values())[-1]
    raise ScriptError(f"{path}: no program text")
  return session.parse_as("\n".join(body), "cmd")


def _pv_like(args, expect: bool) -> int:
  session = Session()
  c = _load_program(session, args.program)
  e = session.parse_as(args.expr, "expr")
  if args.all_states:
    envs = [(session.space().show(s), session.space().env(s)) for s in session.space()]
  else:
    envs = [(None, session.env)]
  for label, env in envs:
    v = pvmod.pv_expect(c, e, env, session.ctx) if expect else pvmod.pv(c, e, env, session.ctx)
    print(f"{label}: {core.render(v)}" if label else core.render(v))
  return 0


def cmd_eval(args) -> int:
  print("\n".join(Session().execute("eval " + args.expr)))
  return 0


def cmd_pv(args) -> int:
  return _pv_like(args, expect=False)


def cmd_expect(args) -> int:
  return _pv_like(args, expect=True)


def cmd_check_basic_law(args) -> int:
  session = Session()
  if args.space:
    for lineno, line in enumerate(Path(args.space).read_text(encoding="utf-8").splitlines(), 1):
      try:
        session.execute(line)
      except ScriptError as exc:
        raise ScriptError(f"{args.space}:{lineno}: {exc}") from exc
  c = _load_program(session, args.program)
  e = session.parse_as(args.expr, "expr")
  space = session.space()
  bad = wp.basic_law_check(c, e, space, session.ctx)
  if not bad:
    print(f"PASS basic law over {len(space)} states")
    return 0
  for v in bad[:10]:
    print(f"FAIL at {space.show(v.state)}, z = {core.render(v.z)}: lhs {v.lhs}, rhs {v.rhs}")
  return 1


def cmd_validate(args) -> int:
  u = model.Universe(args.carrier, args.depth)
  if args.improper:
    report = model.Report(model.improper_checks(u) + model.kappa_properties(u).checks)
  else:
    report = model.validate_axioms(u)
  if args.lemmas:
    report = model.Report(report.checks + model.lemma_suite(u).checks)
  print(report.jsonl() if args.jsonl else "\n".join(report.lines()))
  return 0 if report.ok else 1


def cmd_grammar(args) -> int:
  g = fixpoint.parse_grammar(Path(args.file).read_text(encoding="utf-8"))
  if args.chain is not None:
    chains = fixpoint.mutual_chain(g, args.chain)
    names = [args.nt] if args.nt else list(g.order)
    for name in names:
      for i, b in enumerate(chains[name], 1):
        print(f"{name}({i}) = {core.render(b)}")
    return 0
  if args.depth is None:
    raise ScriptError("--member needs --depth")
  print(fixpoint.member_bounded(args.member, g, args.nt or g.start, args.depth))
  return 0


def cmd_run(args) -> int:
  t = script.run(Path(args.script).read_text(encoding="utf-8"))
  if str(t):
    print(t)
  return 0 if t.ok else 1


def cmd_repl(args) -> int:
  return script.repl()


def build_parser() -> argparse.ArgumentParser:
  p = argparse.ArgumentParser(prog="bt", description="Executable bunch theory.")
  sub = p.add_subparsers(dest="command", required=True)

  s = sub.add_parser("eval", help="evaluate an expression or predicate")
  s.add_argument("expr")
  s.set_defaults(fn=cmd_eval)

  for name, fn, text in (("pv", cmd_pv, "prospective value S ◇ E"), ("expect", cmd_expect, "expected value")):
    s = sub.add_parser(name, help=text)
    s.add_argument("--program", required=True, help="file with declarations and a command")
    s.add_argument("--expr", required=True)
    s.add_argument("--all-states", action="store_true", help="report every state of the declared variables")
    s.set_defaults(fn=fn)

  s = sub.add_parser("check-basic-law", help="check z : (S ◇ E) ⇔ ⟨S⟩(z : E) over a state space")
  s.add_argument("--program", required=True)
  s.add_argument("--expr", required=True)
  s.add_argument("--space", help="file of var declarations")
  s.set_defaults(fn=cmd_check_basic_law)

  s = sub.add_parser("validate", help="check the axioms in a finite model")
  s.add_argument("--carrier", type=int, default=2)
  s.add_argument("--depth", type=int, default=2)
  s.add_argument("--improper", action="store_true", help="only the improper-bunch axioms and κ properties")
  s.add_argument("--lemmas", action="store_true", help="also check the host lemmas")
  s.add_argument("--jsonl", action="store_true", help="one JSON record per line")
  s.set_defaults(fn=cmd_validate)

  s = sub.add_parser("grammar", help="approximate grammar languages")
  s.add_argument("--file", required=True)
  mode = s.add_mutually_exclusive_group(required=True)
  mode.add_argument("--chain", type=int)
  mode.add_argument("--member")
  s.add_argument("--nt")
  s.add_argument("--depth", type=int)
  s.set_defaults(fn=cmd_grammar)

  s = sub.add_parser("run", help="run a script")
  s.add_argument("script")
  s.set_defaults(fn=cmd_run)

  s = sub.add_parser("repl", help="interactive session")
  s.set_defaults(fn=cmd_repl)
  return p


def main(argv=None) -> int:
  args = build_parser().parse_args(argv)
  try:
    return args.fn(args)
  except (ScriptError, OSError) as exc:
    print(f"bt: {exc}", file=sys.stderr)
    return 2
  except Exception as exc:  # surface library errors without a traceback
    if isinstance(exc, (core.BunchError, ParseError, pvmod.UnsupportedConstruct, fixpoint.GrammarError, model.Unsupported)):
      print(f"bt: {exc}", file=sys.stderr)
      return 2
    raise


if __name__ == "__main__":
  sys.exit(main())
