import io
import json

import pytest

from bunchkit import cli, fixpoint, script
from bunchkit.script import ScriptError, Session

PROG1 = "x := 1 >> x := 2 ; x = 2 ==> skip"


def bt(capsys, *argv):
  code = cli.main(list(argv))
  out, err = capsys.readouterr()
  return code, out.strip(), err.strip()


def test_script_examples():
  t = script.run(f"""
var x : 0..3
program prog1 = {PROG1}
eval (0,1)+(2,4)
pv {{prog1}} <> x
pv x := 1 [] x := 2 <> x + 10
expect x := 1 <+>1/2 x := 3 <> x
fis magic
""")
  assert t.ok
  assert t.lines == ["2,3,4,5", "2", "11,12", "2", "false"]


def test_script_failures_are_counted_with_lines():
  t = script.run("eval 1 +\nvar x : 0..1\nstate x = 7\neval 2")
  assert t.failures == 2
  assert t.lines[0].startswith("error at line 1")
  assert t.lines[1].startswith("error at line 3")
  assert t.lines[-1] == "2"


def test_given_sets_and_quantifiers():
  s = Session()
  for line in ("given PERSON = louis, marie", "let bald = {louis}"):
    s.execute(line)
  assert s.execute("eval forall p : PERSON @ p = louis") == ["false"]
  assert s.execute("eval exists p : PERSON @ p in bald") == ["true"]
  assert s.execute("eval null:PERSON in bald") == ["true"]


def test_refines_directive():
  s = Session()
  for line in ("var x : 0..2", "program S = x := 1 [] x := 2", "program T = x := 2"):
    s.execute(line)
  assert s.execute("refines S T") == ["T refines S"]
  with pytest.raises(ScriptError, match="does not refine"):
    s.execute("refines T S")


def test_basic_law_directive():
  s = Session()
  s.execute("var x : 0..3")
  assert s.execute("basic-law x := 1, 2 ; x > 1 ==> skip <> x") == ["PASS basic law over 4 states"]
  with pytest.raises(ScriptError, match="FAIL basic law"):
    s.execute("basic-law magic <> x")


def test_grammar_directives():
  s = Session()
  for line in ('rule const num = "0", "1"', 'rule const id = "a", "b"', 'rule E = E ("+", "-") T, T',
               'rule T = T ("*", "/") F, F', 'rule F = num, id, "(" E ")"'):
    s.execute(line)
  assert s.execute("chain E 3") == ["E(1) = null:STRING", "E(2) = null:STRING", 'E(3) = "0","1","a","b"']
  assert s.execute('member "a+b" E 4') == ["YES at depth 4"]


def test_validate_directive():
  out = Session().execute("validate --carrier 2 --depth 1")
  assert all(line.startswith(("PASS", "SKIPPED")) for line in out)


def test_unknown_directive():
  with pytest.raises(ScriptError, match="unknown directive"):
    Session().execute("frobnicate 1")


def test_unbound_variable_message():
  with pytest.raises(ScriptError, match="unbound variable"):
    Session().execute("eval q + 1")


def test_repl():
  out = io.StringIO()
  code = script.repl(io.StringIO("eval 1 + 1\neval nope +\nquit\neval 3\n"), out)
  lines = out.getvalue().splitlines()
  assert lines[0] == "2" and lines[1].startswith("error:")
  assert code == 1


def test_cli_eval(capsys):
  assert bt(capsys, "eval", "(0,1)+(2,4)") == (0, "2,3,4,5", "")


def test_cli_pv_and_expect(tmp_path, capsys):
  prog = tmp_path / "prog1.bt"
  prog.write_text(f"var x : 0..3\n{PROG1}\n")
  assert bt(capsys, "pv", "--program", str(prog), "--expr", "x")[1] == "2"
  code, out, _ = bt(capsys, "pv", "--program", str(prog), "--expr", "x", "--all-states")
  assert code == 0 and out.splitlines()[0] == "x=0: 2"
  coin = tmp_path / "coin.bt"
  coin.write_text("var x : 0..3\nx := 1 <+>1/2 x := 3\n")
  assert bt(capsys, "expect", "--program", str(coin), "--expr", "x")[1] == "2"


def test_cli_check_basic_law(tmp_path, capsys):
  space = tmp_path / "space.bt"
  space.write_text("var x : 0..3\n")
  prog = tmp_path / "p.bt"
  prog.write_text("x := 1, 2 ; x > 1 ==> skip\n")
  code, out, _ = bt(capsys, "check-basic-law", "--program", str(prog), "--expr", "x", "--space", str(space))
  assert code == 0 and out.startswith("PASS")


def test_cli_validate(capsys):
  code, out, _ = bt(capsys, "validate", "--carrier", "2", "--depth", "2")
  assert code == 0
  assert out.splitlines()[-1].startswith("SKIPPED  infinity 2")
  code, out, _ = bt(capsys, "validate", "--depth", "1", "--jsonl")
  assert json.loads(out.splitlines()[0])["status"] == "PASS"


def test_cli_grammar(tmp_path, capsys):
  g = tmp_path / "id.g"
  g.write_text(fixpoint.IDENTIFIER_GRAMMAR)
  code, out, _ = bt(capsys, "grammar", "--file", str(g), "--member", "a1", "--nt", "ID", "--depth", "2")
  assert (code, out) == (0, "YES at depth 2")
  code, out, _ = bt(capsys, "grammar", "--file", str(g), "--member", "1a", "--nt", "ID", "--depth", "9")
  assert out == "NO-UP-TO 9"
  code, out, _ = bt(capsys, "grammar", "--file", str(g), "--chain", "1")
  assert out.startswith('ID(1) = "a","b"')


def test_cli_run_exit_codes(tmp_path, capsys):
  good = tmp_path / "good.bt"
  good.write_text("eval 1 + 1\n")
  assert bt(capsys, "run", str(good))[:2] == (0, "2")
  bad = tmp_path / "bad.bt"
  bad.write_text("eval 1 +\n")
  assert bt(capsys, "run", str(bad))[0] == 1


def test_cli_reports_errors_without_traceback(tmp_path, capsys):
  code, _, err = bt(capsys, "eval", "1 +")
  assert code == 2 and err.startswith("bt: ")
  code, _, err = bt(capsys, "run", str(tmp_path / "missing.bt"))
  assert code == 2
