"""Finite state spaces and extensional predicates over them."""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field

from .core import Bunch, Env, TypeTag, Value, elem, enumerate_type, render_value

State = tuple  # one value per space variable, in declaration order


class StateSpaceError(Exception):
  pass


@dataclass(frozen=True)
class StateSpace:
  names: tuple[str, ...]
  domains: tuple[tuple[Value, ...], ...]
  constants: Mapping[str, Bunch] = field(default_factory=dict, compare=False, hash=False)
  _states: tuple = field(default=None, init=False, compare=False, repr=False, hash=False)
  _index: dict = field(default=None, init=False, compare=False, repr=False, hash=False)

  def __post_init__(self):
    states = tuple(itertools.product(*self.domains))
    object.__setattr__(self, "_states", states)
    object.__setattr__(self, "_index", {s: i for i, s in enumerate(states)})

  @classmethod
  def of(cls, variables: Mapping[str, Bunch | TypeTag], constants: Mapping[str, Bunch] | None = None) -> StateSpace:
    names, domains = [], []
    for name, dom in variables.items():
      values = enumerate_type(dom) if isinstance(dom, TypeTag) else list(dom.elems)
      if not values:
        raise StateSpaceError(f"empty domain for {name}")
      names.append(name)
      domains.append(tuple(values))
    return cls(tuple(names), tuple(domains), dict(constants or {}))

  @property
  def states(self) -> tuple[State, ...]:
    return self._states

  @property
  def all(self) -> frozenset:
    return frozenset(self._states)

  def __len__(self):
    return len(self._states)

  def __iter__(self) -> Iterator[State]:
    return iter(self._states)

  def env(self, s: State) -> Env:
    d = dict(self.constants)
    d.update((n, elem(v)) for n, v in zip(self.names, s))
    return Env(d)

  def contains(self, s: State) -> bool:
    return s in self._index

  def update(self, s: State, assignment: Mapping[str, Value]) -> State:
    out = list(s)
    for name, v in assignment.items():
      out[self.names.index(name)] = v
    t = tuple(out)
    if t not in self._index:
      shown = ", ".join(f"{n}={render_value(v)}" for n, v in assignment.items())
      raise StateSpaceError(f"assignment {shown} leaves the state space")
    return t

  def state_of(self, env: Mapping[str, Bunch]) -> State:
    return tuple(env[n].value for n in self.names)

  def where(self, test: Callable[[Env], bool]) -> frozenset:
    """The extensional predicate of all states satisfying test."""
    return frozenset(s for s in self._states if test(self.env(s)))

  def complement(self, q: frozenset) -> frozenset:
    return frozenset(s for s in self._states if s not in q)

  def show(self, s: State) -> str:
    return ", ".join(f"{n}={render_value(v)}" for n, v in zip(self.names, s))
