"""Monads from containers: container monoids and dependently typed update monads."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .containers import LIST, Container, DataStructure, _check_belongs
from .directed import DirectedContainer
from .errors import MalformedNesting, PositionOutOfRange
from .values import Pair, render


@dataclass(frozen=True, eq=False)
class ContainerMonoid:
    """Shape/position data of a monad on the interpreted container.

    ``bullet(s, v)`` is the shape of a flattened structure whose outer shape
    is ``s`` and whose inner shapes are ``v``; ``upleft`` and ``upright``
    split a position of the flattened shape into an outer position and a
    position of the corresponding inner shape.
    """

    base: Container
    unit_shape: Any
    bullet: Callable[[Any, Callable[[Any], Any]], Any]
    upleft: Callable[[Any, Callable[[Any], Any], Any], Any]
    upright: Callable[[Any, Callable[[Any], Any], Any], Any]
    name: str = "monoid"


def _list_bullet(s: int, v: Callable[[int], int]) -> int:
    return sum(v(p) for p in range(s))


def _list_upleft(s: int, v: Callable[[int], int], p: int) -> int:
    # greatest outer index whose inner block starts at or before p
    start = 0
    for outer in range(s):
        width = v(outer)
        if p < start + width:
            return outer
        start += width
    raise PositionOutOfRange(f"{p} is past the end of the flattened list")


def _list_upright(s: int, v: Callable[[int], int], p: int) -> int:
    outer = _list_upleft(s, v, p)
    return p - sum(v(q) for q in range(outer))


LIST_MONOID = ContainerMonoid(LIST, 1, _list_bullet, _list_upleft, _list_upright, "list")


def list_monoid() -> ContainerMonoid:
    return LIST_MONOID


def monoid_unit(m: ContainerMonoid, x: Any) -> DataStructure:
    """``η x = (e, const x)``."""
    return DataStructure(m.base, m.unit_shape, lambda _p: x)


def monoid_flatten(m: ContainerMonoid, dd: DataStructure) -> DataStructure:
    """Flatten a structure of structures through ``(bullet, upleft, upright)``."""
    _check_belongs(m.base, dd)
    s, outer = dd.shape, dd.assignment

    def inner(p):
        x = outer(p)
        if not isinstance(x, DataStructure) or x.container.name != m.base.name:
            raise MalformedNesting(f"payload at {render(p)} is not a {m.base.name}-structure")
        return x

    def v(p):
        return inner(p).shape

    def assign(p):
        left = m.upleft(s, v, p)
        return inner(left).assignment(m.upright(s, v, p))

    return DataStructure(m.base, m.bullet(s, v), assign)


def monoid_map(m: ContainerMonoid, f: Callable[[Any], Any], d: DataStructure) -> DataStructure:
    v = d.assignment
    return DataStructure(m.base, d.shape, lambda p: f(v(p)))


def list_structure(items: list) -> DataStructure:
    return DataStructure(LIST, len(items), lambda p, items=tuple(items): items[p])


def list_items(d: DataStructure) -> list:
    return [d.assignment(p) for p in range(d.shape)]


# ---------------------------------------------------------------------------
# update monads
#
# An element of the update monad over X is a function from states (shapes)
# to a pair of an update (a position of that state) and an X.


def update_eta(e: DirectedContainer, x: Any) -> Callable[[Any], Pair]:
    return lambda s: Pair(e.root(s), x)


def update_mu(e: DirectedContainer, f: Callable[[Any], Pair]) -> Callable[[Any], Pair]:
    """Run the outer update, then the inner one from the state it leads to."""

    def run(s):
        outer = f(s)
        p, g = outer.fst, outer.snd
        inner = g(e.down(s, p))
        return Pair(e.plus(s, p, inner.fst), inner.snd)

    return run


def update_map(f: Callable[[Any], Any], u: Callable[[Any], Pair]) -> Callable[[Any], Pair]:
    def run(s):
        r = u(s)
        return Pair(r.fst, f(r.snd))

    return run


@dataclass(frozen=True, eq=False)
class UpdateMonadInstance:
    source: DirectedContainer

    def eta(self, x: Any) -> Callable[[Any], Pair]:
        return update_eta(self.source, x)

    def mu(self, f: Callable[[Any], Pair]) -> Callable[[Any], Pair]:
        return update_mu(self.source, f)

    def fmap(self, f: Callable[[Any], Any], u: Callable[[Any], Pair]) -> Callable[[Any], Pair]:
        return update_map(f, u)
