"""Containers, container morphisms and the functor they denote.

A container is a set of shapes together with, for every shape, a set of
positions.  A data structure is a shape plus an assignment of a payload to
each of its positions.  Morphisms map shapes forwards and positions
backwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from .errors import (
    ContainerMismatch,
    FuelExhausted,
    MalformedNesting,
    PositionOutOfRange,
    ShapeNotInContainer,
)
from .values import (
    EMPTY,
    EQUAL,
    EXHAUSTED,
    NAT,
    UNEQUAL,
    UNIT,
    UNIT_SET,
    EqResult,
    Enumeration,
    Inl,
    Inr,
    Pair,
    Seq,
    coproduct,
    dependent_pairs,
    fin,
    int_range,
    product,
    render,
    sigma,
    quantify,
    take_bounded,
    tuples,
    value_eq,
)


@dataclass(eq=False)
class Container:
    name: str
    shapes: Enumeration
    positions_of: Callable[[Any], Enumeration]
    _position_cache: dict = field(default_factory=dict, repr=False)

    def positions(self, s: Any) -> Enumeration:
        try:
            cached = self._position_cache.get(s)
        except TypeError:
            return self.positions_of(s)
        if cached is None:
            cached = self.positions_of(s)
            self._position_cache[s] = cached
        return cached

    def has_shape(self, s: Any) -> bool:
        return self.shapes.member(s)

    def has_position(self, s: Any, p: Any) -> Optional[bool]:
        """Membership of ``p`` in ``P s``; ``None`` when it cannot be decided cheaply."""
        enum = self.positions(s)
        if enum.contains is not None:
            return enum.contains(p)
        if enum.cardinality is not None and enum.cardinality <= 4096:
            return enum.member(p)
        return None

    def require_shape(self, s: Any) -> None:
        if not self.has_shape(s):
            raise ShapeNotInContainer(f"{render(s)} is not a shape of {self.name}")

    def __repr__(self) -> str:
        return f"Container({self.name})"


@dataclass(frozen=True, eq=False)
class DataStructure:
    """An element ``(s, v)`` of the interpreted container."""

    container: Container
    shape: Any
    assignment: Callable[[Any], Any]

    def at(self, p: Any) -> Any:
        return self.assignment(p)

    def payloads(self, limit: int = 64) -> list:
        items, _ = take_bounded(self.container.positions(self.shape), limit)
        return [self.assignment(p) for p in items]

    def render(self, limit: int = 64) -> str:
        items, truncated = take_bounded(self.container.positions(self.shape), limit)
        body = ",".join(render(self.assignment(p)) for p in items)
        if truncated:
            body += ",..."
        return f"({render(self.shape)},[{body}])"

    def __repr__(self) -> str:
        return f"DataStructure({self.render(8)})"


def structure(container: Container, shape: Any, payloads: Sequence[Any]) -> DataStructure:
    """Build a structure from payloads listed in position enumeration order."""
    container.require_shape(shape)
    positions = container.positions(shape)
    items, truncated = take_bounded(positions, len(payloads) + 1)
    if truncated or len(items) != len(payloads):
        raise MalformedNesting(
            f"shape {render(shape)} of {container.name} has "
            f"{'more than ' + str(len(payloads)) if truncated else len(items)} positions, "
            f"got {len(payloads)} payloads"
        )
    table = dict(zip(items, payloads))

    def assign(p):
        try:
            return table[p]
        except KeyError:
            raise PositionOutOfRange(f"{render(p)} is not a position of {render(shape)}") from None

    return DataStructure(container, shape, assign)


def identity_structure(container: Container, shape: Any) -> DataStructure:
    """``(s, id)``: every position carries itself as payload."""
    return DataStructure(container, shape, lambda p: p)


def ds_eq(a: DataStructure, b: DataStructure, fuel: int = 8, position_limit: int = 8) -> EqResult:
    """Pointwise equality of two structures, recursing into nested structures."""
    r = value_eq(a.shape, b.shape, fuel)
    if r is UNEQUAL:
        return r
    try:
        items, truncated = quantify(a.container.positions(a.shape), position_limit)
    except FuelExhausted:
        return EXHAUSTED
    if truncated:
        r = r & EXHAUSTED
    for p in items:
        try:
            x, y = a.assignment(p), b.assignment(p)
        except FuelExhausted:
            r = r & EXHAUSTED
            continue
        if isinstance(x, DataStructure) and isinstance(y, DataStructure):
            r = r & ds_eq(x, y, fuel, position_limit)
        elif isinstance(x, DataStructure) or isinstance(y, DataStructure):
            return UNEQUAL
        else:
            r = r & value_eq(x, y, fuel)
        if r is UNEQUAL:
            return r
    return r


def interpret_map(container: Container, f: Callable[[Any], Any], d: DataStructure) -> DataStructure:
    """The functor action on maps: ``(s, f ∘ v)``."""
    _check_belongs(container, d)
    v = d.assignment
    return DataStructure(container, d.shape, lambda p: f(v(p)))


def _check_belongs(container: Container, d: DataStructure) -> None:
    if d.container is not container and d.container.name != container.name:
        raise ContainerMismatch(f"structure over {d.container.name}, expected {container.name}")
    container.require_shape(d.shape)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class ContainerMorphism:
    source: Container
    target: Container
    shape_map: Callable[[Any], Any]
    position_map: Callable[[Any, Any], Any]
    name: str = "morphism"

    def t(self, s: Any) -> Any:
        return self.shape_map(s)

    def q(self, s: Any, p: Any) -> Any:
        return self.position_map(s, p)

    def __repr__(self) -> str:
        return f"ContainerMorphism({self.name}: {self.source.name} -> {self.target.name})"


def same_container(a: Container, b: Container) -> bool:
    return a is b or a.name == b.name


def apply_morphism(h: ContainerMorphism, d: DataStructure) -> DataStructure:
    """``(t s, v ∘ q{s})``; ``q``'s results are validated when observed."""
    _check_belongs(h.source, d)
    s, v = d.shape, d.assignment

    def assign(p2):
        p = h.position_map(s, p2)
        if h.source.has_position(s, p) is False:
            raise PositionOutOfRange(
                f"{h.name}: q{{{render(s)}}} {render(p2)} = {render(p)} is not a position"
            )
        return v(p)

    return DataStructure(h.target, h.shape_map(s), assign)


def quote_transformation(
    tau: Callable[[DataStructure], DataStructure],
    source: Container,
    target: Container,
    name: str = "quoted",
) -> ContainerMorphism:
    """Read a morphism off a natural transformation by probing it with ``(s, id)``."""
    cache: dict = {}

    def probe(s):
        try:
            hit = cache.get(s)
        except TypeError:
            hit = None
        if hit is None:
            out = tau(identity_structure(source, s))
            if not isinstance(out, DataStructure) or not same_container(out.container, target):
                raise ContainerMismatch(f"{name}: transformation left {target.name}")
            hit = out
            try:
                cache[s] = hit
            except TypeError:
                pass
        return hit

    return ContainerMorphism(
        source, target, lambda s: probe(s).shape, lambda s, p: probe(s).assignment(p), name
    )


def compose_morphisms(h: ContainerMorphism, h2: ContainerMorphism) -> ContainerMorphism:
    """Vertical composite ``h ∘ h2`` (apply ``h2`` first)."""
    if not same_container(h2.target, h.source):
        raise ContainerMismatch(f"cannot compose {h.name} after {h2.name}")
    return ContainerMorphism(
        h2.source,
        h.target,
        lambda s: h.shape_map(h2.shape_map(s)),
        lambda s, p: h2.position_map(s, h.position_map(h2.shape_map(s), p)),
        f"{h.name}.{h2.name}",
    )


def identity_morphism(c: Container) -> ContainerMorphism:
    return ContainerMorphism(c, c, lambda s: s, lambda s, p: p, f"id[{c.name}]")


def morphism_eq(
    h: ContainerMorphism, g: ContainerMorphism, shape_bound: int = 6, position_fuel: int = 8, fuel: int = 8
) -> EqResult:
    """Extensional equality of two morphisms over bounded shapes and positions."""
    result = EQUAL
    shapes, _ = take_bounded(h.source.shapes, shape_bound)
    for s in shapes:
        try:
            t1, t2 = h.shape_map(s), g.shape_map(s)
        except FuelExhausted:
            result = result & EXHAUSTED
            continue
        r = value_eq(t1, t2, fuel)
        if r is UNEQUAL:
            return r
        result = result & r
        try:
            items, truncated = quantify(h.target.positions(t1), position_fuel)
        except FuelExhausted:
            result = result & EXHAUSTED
            continue
        if truncated:
            result = result & EXHAUSTED
        for p in items:
            try:
                r = value_eq(h.position_map(s, p), g.position_map(s, p), fuel)
            except FuelExhausted:
                r = EXHAUSTED
            if r is UNEQUAL:
                return r
            result = result & r
    return result


# ---------------------------------------------------------------------------
# builtin containers


def _nat_positions(n: Any) -> Enumeration:
    return fin(n) if isinstance(n, int) and n >= 0 else EMPTY


UNIT_CONTAINER = Container("cId", UNIT_SET, lambda s: UNIT_SET)
LIST = Container("list", NAT, _nat_positions)
NELIST = Container("nelist", NAT, lambda s: fin(s + 1) if isinstance(s, int) and s >= 0 else EMPTY)
STREAM = Container("stream", UNIT_SET, lambda s: NAT)
MAYBE = Container(
    "maybe",
    coproduct(UNIT_SET, UNIT_SET),
    lambda s: UNIT_SET if isinstance(s, Inr) else EMPTY,
)
ZIPPER = Container(
    "zipper",
    product(NAT, NAT),
    lambda s: int_range(-s.fst, s.snd) if isinstance(s, Pair) else EMPTY,
)

CONTAINERS = {c.name: c for c in (UNIT_CONTAINER, LIST, NELIST, STREAM, MAYBE, ZIPPER)}


def cid() -> Container:
    """The unit container ``1 ◁ λ∗.1``."""
    return UNIT_CONTAINER


# ---------------------------------------------------------------------------
# monoidal structure


def _lookup(table: Seq, positions: Enumeration, p: Any) -> Any:
    return table.items[positions.index(p)]


def _finite_positions(c: Container, s: Any) -> Enumeration:
    enum = c.positions(s)
    if enum.cardinality is None:
        raise FuelExhausted(f"{c.name}: shape {render(s)} has unboundedly many positions")
    return enum


_COMPOSITES: dict = {}


def container_compose(c0: Container, c1: Container) -> Container:
    """``c0 ·c c1``: shapes ``(s, table of inner shapes)``, positions ``(p0, p1)``."""
    key = (id(c0), id(c1))
    hit = _COMPOSITES.get(key)
    if hit is not None:
        return hit

    def inner_tables(s):
        return tuples(c1.shapes, _finite_positions(c0, s).cardinality)

    shapes = sigma(c0.shapes, inner_tables, f"{c0.name}.{c1.name}", count=False)

    def positions(shape):
        if not isinstance(shape, Pair) or not isinstance(shape.snd, Seq):
            return EMPTY
        s, table = shape.fst, shape.snd
        outer = _finite_positions(c0, s)
        return dependent_pairs(outer, lambda p0: c1.positions(_lookup(table, outer, p0)))

    composite = Container(f"({c0.name}.{c1.name})", shapes, positions)
    _COMPOSITES[key] = composite
    return composite


def composite_shape(c0: Container, s: Any, inner: Callable[[Any], Any]) -> Pair:
    """The composite shape ``(s, v)`` with ``v`` tabulated over ``P0 s``."""
    outer = _finite_positions(c0, s)
    return Pair(s, Seq(tuple(inner(p) for p in outer)))


def composite_inner(c0: Container, shape: Pair, p0: Any) -> Any:
    return _lookup(shape.snd, _finite_positions(c0, shape.fst), p0)


def hcompose_morphisms(h0: ContainerMorphism, h1: ContainerMorphism) -> ContainerMorphism:
    """Horizontal composite ``h0 ·c h1``."""
    src = container_compose(h0.source, h1.source)
    tgt = container_compose(h0.target, h1.target)

    def t(shape):
        s = shape.fst
        return composite_shape(
            h0.target,
            h0.shape_map(s),
            lambda p0: h1.shape_map(composite_inner(h0.source, shape, h0.position_map(s, p0))),
        )

    def q(shape, pair):
        s = shape.fst
        p0 = h0.position_map(s, pair.fst)
        return Pair(p0, h1.position_map(composite_inner(h0.source, shape, p0), pair.snd))

    return ContainerMorphism(src, tgt, t, q, f"({h0.name}.{h1.name})")


def unit_intro(x: Any) -> DataStructure:
    """``e x = (∗, λ∗. x)``."""
    return DataStructure(UNIT_CONTAINER, UNIT, lambda _: x)


def merge(c0: Container, c1: Container, d: DataStructure) -> DataStructure:
    """Flatten a ``c0``-structure of ``c1``-structures into ``c0 ·c c1``."""
    _check_belongs(c0, d)

    def inner(p0):
        x = d.assignment(p0)
        if not isinstance(x, DataStructure) or not same_container(x.container, c1):
            raise MalformedNesting(f"payload at {render(p0)} is not a {c1.name}-structure")
        return x

    shape = composite_shape(c0, d.shape, lambda p0: inner(p0).shape)
    return DataStructure(
        container_compose(c0, c1), shape, lambda pair: inner(pair.fst).assignment(pair.snd)
    )


def split(c0: Container, c1: Container, d: DataStructure) -> DataStructure:
    """Inverse of ``merge``."""
    comp = container_compose(c0, c1)
    if not same_container(d.container, comp):
        raise MalformedNesting(f"expected a {comp.name}-structure, got {d.container.name}")
    shape = d.shape
    if not isinstance(shape, Pair) or not isinstance(shape.snd, Seq):
        raise MalformedNesting(f"{render(shape)} is not a composite shape")
    v = d.assignment
    return DataStructure(
        c0,
        shape.fst,
        lambda p0: DataStructure(
            c1, composite_inner(c0, shape, p0), lambda p1, p0=p0: v(Pair(p0, p1))
        ),
    )


def compose_repr(direction: str, d: Any, c0: Optional[Container] = None, c1: Optional[Container] = None):
    """Dispatch for ``unit_intro`` / ``merge`` / ``split``."""
    if direction == "unit_intro":
        return unit_intro(d)
    if c0 is None or c1 is None:
        raise MalformedNesting(f"{direction} needs both component containers")
    if direction == "merge":
        return merge(c0, c1, d)
    if direction == "split":
        return split(c0, c1, d)
    raise ValueError(f"unknown direction {direction!r}")


# Unitors and associator as morphisms, with their inverses.


def right_unitor(c: Container) -> ContainerMorphism:
    """``ρ : c ·c cId → c``."""
    src = container_compose(c, UNIT_CONTAINER)
    return ContainerMorphism(src, c, lambda sh: sh.fst, lambda sh, p: Pair(p, UNIT), f"rho[{c.name}]")


def right_unitor_inv(c: Container) -> ContainerMorphism:
    tgt = container_compose(c, UNIT_CONTAINER)
    return ContainerMorphism(
        c, tgt, lambda s: composite_shape(c, s, lambda _: UNIT), lambda s, pair: pair.fst, f"rho^-1[{c.name}]"
    )


def left_unitor(c: Container) -> ContainerMorphism:
    """``λ : cId ·c c → c``."""
    src = container_compose(UNIT_CONTAINER, c)
    return ContainerMorphism(
        src, c, lambda sh: sh.snd.items[0], lambda sh, p: Pair(UNIT, p), f"lambda[{c.name}]"
    )


def left_unitor_inv(c: Container) -> ContainerMorphism:
    tgt = container_compose(UNIT_CONTAINER, c)
    return ContainerMorphism(
        c, tgt, lambda s: Pair(UNIT, Seq((s,))), lambda s, pair: pair.snd, f"lambda^-1[{c.name}]"
    )


def associator(c0: Container, c1: Container, c2: Container) -> ContainerMorphism:
    """``α : (c0 ·c c1) ·c c2 → c0 ·c (c1 ·c c2)``."""
    c01 = container_compose(c0, c1)
    src = container_compose(c01, c2)
    tgt = container_compose(c0, container_compose(c1, c2))

    def t(sh):
        inner01, w = sh.fst, sh
        s = inner01.fst

        def column(p0):
            s1 = composite_inner(c0, inner01, p0)
            return composite_shape(c1, s1, lambda p1: composite_inner(c01, w, Pair(p0, p1)))

        return composite_shape(c0, s, column)

    def q(sh, pos):
        return Pair(Pair(pos.fst, pos.snd.fst), pos.snd.snd)

    return ContainerMorphism(src, tgt, t, q, f"alpha[{c0.name},{c1.name},{c2.name}]")


def associator_inv(c0: Container, c1: Container, c2: Container) -> ContainerMorphism:
    c12 = container_compose(c1, c2)
    src = container_compose(c0, c12)
    c01 = container_compose(c0, c1)
    tgt = container_compose(c01, c2)

    def t(sh):
        s = sh.fst
        inner01 = composite_shape(c0, s, lambda p0: composite_inner(c0, sh, p0).fst)
        return composite_shape(
            c01,
            inner01,
            lambda pair: composite_inner(c1, composite_inner(c0, sh, pair.fst), pair.snd),
        )

    def q(sh, pos):
        return Pair(pos.fst.fst, Pair(pos.fst.snd, pos.snd))

    return ContainerMorphism(src, tgt, t, q, f"alpha^-1[{c0.name},{c1.name},{c2.name}]")


# ---------------------------------------------------------------------------
# products, coproducts, exponentials


def container_product(c0: Container, c1: Container) -> Container:
    def positions(s):
        if not isinstance(s, Pair):
            return EMPTY
        return coproduct(c0.positions(s.fst), c1.positions(s.snd))

    return Container(f"({c0.name}*{c1.name})", product(c0.shapes, c1.shapes), positions)


def container_coproduct(c0: Container, c1: Container) -> Container:
    def positions(s):
        if isinstance(s, Inl):
            return c0.positions(s.value)
        if isinstance(s, Inr):
            return c1.positions(s.value)
        return EMPTY

    return Container(f"({c0.name}+{c1.name})", coproduct(c0.shapes, c1.shapes), positions)


def container_exponential(k: Enumeration, c: Container) -> Container:
    """``K → c``: shapes are tables ``f : K → S``, positions ``Σ k. P (f k)``."""
    if k.cardinality is None:
        raise ValueError("exponent of a container exponential must be finite")
    keys = k.take(k.cardinality)
    index = {x: i for i, x in enumerate(keys)}

    def positions(f):
        if not isinstance(f, Seq) or len(f) != len(keys):
            return EMPTY
        return dependent_pairs(k, lambda key: c.positions(f.items[index[key]]))

    return Container(f"({k.name}->{c.name})", tuples(c.shapes, len(keys)), positions)


def container_construct(kind: str, *args: Any) -> Container:
    if kind == "product":
        return container_product(*args)
    if kind == "coproduct":
        return container_coproduct(*args)
    if kind == "exponential":
        return container_exponential(*args)
    if kind == "identity":
        return UNIT_CONTAINER
    raise ValueError(f"unknown container construction {kind!r}")


def render_structure(d: DataStructure, limit: int = 64) -> str:
    """Render a structure, recursing into structure-valued payloads."""
    items, truncated = take_bounded(d.container.positions(d.shape), limit)
    parts = []
    for p in items:
        x = d.assignment(p)
        parts.append(render_structure(x, limit) if isinstance(x, DataStructure) else render(x))
    if truncated:
        parts.append("...")
    return f"({render(d.shape)},[{','.join(parts)}])"


def finite_positions_list(c: Container, s: Any, limit: int) -> list:
    items, _ = take_bounded(c.positions(s), limit)
    return items


