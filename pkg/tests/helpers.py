from bunchkit import core
from bunchkit.evaluate import eval_expr, eval_pred
from bunchkit.parser import parse_expr, parse_pred
from bunchkit.script import Session


def ev(text, **state):
  """Evaluate an expression with integer state variables."""
  env = core.Env({k: core.ints(v) if isinstance(v, int) else v for k, v in state.items()})
  return eval_expr(parse_expr(text), env)


def holds(text, **state):
  env = core.Env({k: core.ints(v) if isinstance(v, int) else v for k, v in state.items()})
  return eval_pred(parse_pred(text), env)


def shown(text, **state):
  return core.render(ev(text, **state))


def run_lines(*lines):
  s = Session()
  out = []
  for line in lines:
    out.extend(s.execute(line))
  return out


VERDICTS = []


def verdict(n, title, ok, detail=""):
  """Print and record one acceptance line, then fail the test if needed."""
  line = f"{'PASS' if ok else 'FAIL'} {n}: {title}" + (f" ({detail})" if detail else "")
  print(line)
  VERDICTS.append(line)
  assert ok, line
