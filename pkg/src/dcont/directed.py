"""Directed containers, their morphisms and the comonads they denote.

A directed container adds three operations to a container: ``down``
(the subshape reached from a position), ``root`` (the position of the
shape itself) and ``plus`` (translating a position of a subshape back into
the enclosing shape).  ``plus`` always takes the enclosing shape explicitly
as its first argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Optional

from .containers import (
    LIST,
    MAYBE,
    NELIST,
    STREAM,
    UNIT_CONTAINER,
    ZIPPER,
    Container,
    ContainerMorphism,
    DataStructure,
    compose_morphisms,
    identity_structure,
    interpret_map,
    _check_belongs,
)
from .errors import ShapeNotInContainer, ShapeNotPreserved, UnknownName
from .values import (
    NAT,
    UNIT,
    UNIT_SET,
    Enumeration,
    Pair,
    fin,
    finite,
    render,
    sigma,
    take_bounded,
    value_eq,
    UNEQUAL,
)


@dataclass(frozen=True, eq=False)
class DirectedContainer:
    base: Container
    down: Callable[[Any, Any], Any]
    root: Callable[[Any], Any]
    plus: Callable[[Any, Any, Any], Any]
    name: str = "directed"

    @property
    def shapes(self) -> Enumeration:
        return self.base.shapes

    def positions(self, s: Any) -> Enumeration:
        return self.base.positions(s)

    def __repr__(self) -> str:
        return f"DirectedContainer({self.name} on {self.base.name})"


@dataclass(frozen=True, eq=False)
class DCMorphism:
    """A container morphism between the bases of two directed containers."""

    source: DirectedContainer
    target: DirectedContainer
    underlying: ContainerMorphism

    @property
    def name(self) -> str:
        return self.underlying.name

    def t(self, s: Any) -> Any:
        return self.underlying.shape_map(s)

    def q(self, s: Any, p: Any) -> Any:
        return self.underlying.position_map(s, p)

    def __repr__(self) -> str:
        return f"DCMorphism({self.name}: {self.source.name} -> {self.target.name})"


def dc_morphism(
    source: DirectedContainer,
    target: DirectedContainer,
    shape_map: Callable[[Any], Any],
    position_map: Callable[[Any, Any], Any],
    name: str,
) -> DCMorphism:
    return DCMorphism(source, target, ContainerMorphism(source.base, target.base, shape_map, position_map, name))


def compose_dc_morphisms(h: DCMorphism, g: DCMorphism) -> DCMorphism:
    """``h ∘ g``."""
    return DCMorphism(g.source, h.target, compose_morphisms(h.underlying, g.underlying))


def identity_dc_morphism(e: DirectedContainer) -> DCMorphism:
    return dc_morphism(e, e, lambda s: s, lambda s, p: p, f"id[{e.name}]")


@dataclass(frozen=True, eq=False)
class ComonadWitness:
    container: Container
    counit: Callable[[DataStructure], Any]
    comult: Callable[[DataStructure], DataStructure]
    name: str = "comonad"


# ---------------------------------------------------------------------------
# interpretation


def dc_counit(e: DirectedContainer, d: DataStructure) -> Any:
    """Extract the payload at the root."""
    _check_belongs(e.base, d)
    return d.assignment(e.root(d.shape))


def dc_comult(e: DirectedContainer, d: DataStructure) -> DataStructure:
    """Replace every position by the substructure rooted there."""
    _check_belongs(e.base, d)
    s, v = d.shape, d.assignment

    def sub(p):
        return DataStructure(e.base, e.down(s, p), lambda p2: v(e.plus(s, p, p2)))

    return DataStructure(e.base, s, sub)


def dc_extend(e: DirectedContainer, f: Callable[[DataStructure], Any], d: DataStructure) -> DataStructure:
    return interpret_map(e.base, f, dc_comult(e, d))


def interpret(e: DirectedContainer) -> ComonadWitness:
    return ComonadWitness(e.base, lambda d: dc_counit(e, d), lambda d: dc_comult(e, d), f"[{e.name}]")


def dc_from_comonad(w: ComonadWitness, check_bound: int = 6, name: Optional[str] = None) -> DirectedContainer:
    """Recover the directed structure by probing counit and comult at ``(s, id)``.

    Shape preservation of the comultiplication is checked eagerly over the
    first ``check_bound`` shapes and again whenever a new shape is probed.
    """
    c = w.container
    probes: dict = {}

    def probe(s):
        try:
            hit = probes.get(s)
        except TypeError:
            hit = None
        if hit is None:
            hit = w.comult(identity_structure(c, s))
            if value_eq(hit.shape, s) is UNEQUAL:
                raise ShapeNotPreserved(
                    f"{w.name}: comult moved shape {render(s)} to {render(hit.shape)}"
                )
            try:
                probes[s] = hit
            except TypeError:
                pass
        return hit

    shapes, _ = take_bounded(c.shapes, check_bound)
    for s in shapes:
        probe(s)

    return DirectedContainer(
        c,
        lambda s, p: probe(s).assignment(p).shape,
        lambda s: w.counit(identity_structure(c, s)),
        lambda s, p, p2: probe(s).assignment(p).assignment(p2),
        name or f"<{w.name}>",
    )


# ---------------------------------------------------------------------------
# builtin catalogue


def _nat_shape(c: Container) -> Callable[[Any], None]:
    def check(s):
        if not (isinstance(s, int) and not isinstance(s, bool) and s >= 0):
            raise ShapeNotInContainer(
                f"{render(s)} is not a shape of {c.name}; empty lists have no root position"
            )

    return check


_check_ne = _nat_shape(NELIST)


def _suffix_down(s, p):
    _check_ne(s)
    return s - p


def _suffix_root(s):
    _check_ne(s)
    return 0


def _cyclic_down(s, p):
    _check_ne(s)
    return s


def _cyclic_plus(s, p, p2):
    _check_ne(s)
    return (p + p2) % (s + 1)


SUFFIX = DirectedContainer(NELIST, _suffix_down, _suffix_root, lambda s, p, p2: p + p2, "nonempty-suffix")
CYCLIC = DirectedContainer(NELIST, _cyclic_down, _suffix_root, _cyclic_plus, "nonempty-cyclic")

IDENTITY_DC = DirectedContainer(
    UNIT_CONTAINER, lambda s, p: UNIT, lambda s: UNIT, lambda s, p, p2: UNIT, "identity"
)


@dataclass(frozen=True, eq=False)
class Monoid:
    carrier: Enumeration
    unit: Any
    op: Callable[[Any, Any], Any]
    name: str


NAT_ADD = Monoid(NAT, 0, lambda a, b: a + b, "nat-add")
Z2 = Monoid(fin(2), 0, lambda a, b: a ^ b, "z2")
MONOIDS = {m.name: m for m in (NAT_ADD, Z2)}


def monoid_dc(m: Monoid, name: Optional[str] = None) -> DirectedContainer:
    """A monoid as a directed container with a single shape."""
    base = Container(f"monoid:{m.name}", UNIT_SET, lambda s: m.carrier)
    return DirectedContainer(
        base, lambda s, p: UNIT, lambda s: m.unit, lambda s, p, p2: m.op(p, p2), name or f"monoid({m.name})"
    )


STREAM_DC = DirectedContainer(STREAM, lambda s, p: UNIT, lambda s: 0, lambda s, p, p2: p + p2, "stream")


def _zipper_down(s, p):
    return Pair(s.fst + p, s.snd - p)


ZIPPER_DC = DirectedContainer(ZIPPER, _zipper_down, lambda s: 0, lambda s, p, p2: p + p2, "list-zipper")


def focus(c0: Container, name: Optional[str] = None) -> DirectedContainer:
    """Shapes carry a focussed position; moving the focus is the only navigation."""
    shapes = sigma(c0.shapes, c0.positions, f"focus({c0.name})", count=False)

    def positions(sp):
        return c0.positions(sp.fst) if isinstance(sp, Pair) else finite(())

    base = Container(f"focus({c0.name})", shapes, positions)
    return DirectedContainer(
        base,
        lambda sp, p: Pair(sp.fst, p),
        lambda sp: sp.snd,
        lambda sp, p, p2: p2,
        name or f"focus-of({c0.name})",
    )


FOCUS_LIST = focus(LIST)


# Morphism catalogue (lists are non-empty unless stated).

HEAD = ContainerMorphism(NELIST, UNIT_CONTAINER, lambda s: UNIT, lambda s, p: 0, "head")
TAIL = ContainerMorphism(NELIST, LIST, lambda s: s, lambda s, p: p + 1, "tail")
DROP_EVEN = ContainerMorphism(NELIST, NELIST, lambda s: s // 2, lambda s, p: p * 2, "drop-even")
SELF_APPEND = ContainerMorphism(NELIST, NELIST, lambda s: s * 2 + 1, lambda s, p: p % (s + 1), "self-append")
REVERSAL = ContainerMorphism(NELIST, NELIST, lambda s: s, lambda s, p: s - p, "reversal")
# Tail between non-empty lists, clamped at the last element so it is total.
TAIL_CLAMPED = ContainerMorphism(
    NELIST, NELIST, lambda s: max(s - 1, 0), lambda s, p: min(p + 1, s), "tail-clamped"
)

MORPHISMS = {h.name: h for h in (HEAD, TAIL, DROP_EVEN, SELF_APPEND, REVERSAL, TAIL_CLAMPED)}


def over(h: ContainerMorphism, source: DirectedContainer, target: DirectedContainer) -> DCMorphism:
    """View a container morphism as a candidate morphism of directed containers."""
    return DCMorphism(source, target, h)


def zipper_to_focus() -> DCMorphism:
    return dc_morphism(
        ZIPPER_DC,
        FOCUS_LIST,
        lambda s: Pair(s.fst + s.snd + 1, s.fst),
        lambda s, p: p - s.fst,
        "zipper-to-focus",
    )


def focus_to_zipper() -> DCMorphism:
    return dc_morphism(
        FOCUS_LIST,
        ZIPPER_DC,
        lambda sp: Pair(sp.snd, sp.fst - 1 - sp.snd),
        lambda sp, p: p + sp.snd,
        "focus-to-zipper",
    )


_BUILTINS: dict = {
    "nonempty-suffix": lambda: SUFFIX,
    "nonempty-cyclic": lambda: CYCLIC,
    "stream": lambda: STREAM_DC,
    "list-zipper": lambda: ZIPPER_DC,
    "identity": lambda: IDENTITY_DC,
    "focus-of(list)": lambda: FOCUS_LIST,
}


def register_builtin(name: str, factory: Callable[[], DirectedContainer]) -> None:
    _BUILTINS[name] = factory


def builtin_names() -> list:
    from . import constructions  # noqa: F401  (registers its builtins)

    names = list(_BUILTINS)
    names += [f"focus-of({c})" for c in _FOCUSABLE if f"focus-of({c})" not in _BUILTINS]
    names += [f"monoid({m})" for m in MONOIDS]
    return names


_FOCUSABLE = {"list": LIST, "nelist": NELIST, "maybe": MAYBE, "stream": STREAM, "cId": UNIT_CONTAINER}
_FOCUS_CACHE: dict = {}


def builtin(name: str, arg: Any = None) -> DirectedContainer:
    """Look up a catalogue entry such as ``nonempty-suffix`` or ``monoid(z2)``."""
    from . import constructions  # noqa: F401

    if name in _BUILTINS:
        return _BUILTINS[name]()
    head, _, rest = name.partition("(")
    inner = rest[:-1] if rest.endswith(")") else None
    if head == "focus-of":
        c0 = arg if isinstance(arg, Container) else _FOCUSABLE.get(inner or "")
        if c0 is None:
            raise UnknownName(f"focus-of needs a container, got {inner!r}")
        hit = _FOCUS_CACHE.get(c0.name)
        if hit is None:
            hit = _FOCUS_CACHE[c0.name] = focus(c0)
        return hit
    if head == "monoid":
        m = arg if isinstance(arg, Monoid) else MONOIDS.get(inner or "")
        if m is None:
            raise UnknownName(f"unknown monoid {inner!r}")
        return monoid_dc(m)
    raise UnknownName(f"no builtin directed container named {name!r}")
