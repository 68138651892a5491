"""Constructions of directed containers and their universal morphisms.

Corecursive shapes (node-labelled trees) are values ``Pair(root, children)``
where ``children`` is a ``Seq`` indexed by the root's position enumeration,
or a suspension of one.  Inductive (``recursive``) trees are plain finite
values; coinductive ones are unfolded on demand and observed under fuel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, Optional

from .containers import MAYBE, Container, ContainerMorphism
from .directed import (
    SUFFIX,
    DCMorphism,
    DirectedContainer,
    dc_morphism,
    register_builtin,
)
from .errors import FuelExhausted, NonWellfounded, ShapeNotInContainer
from .values import (
    EMPTY,
    NAT,
    NOTHING,
    UNIT,
    UNIT_SET,
    Enumeration,
    Inl,
    Inr,
    Just,
    Pair,
    Seq,
    Susp,
    Symbol,
    coproduct,
    finite,
    int_range,
    lazy_table,
    lexicographic,
    options,
    product,
    render,
    sigma,
    table_get,
    take_bounded,
)


@dataclass(frozen=True, eq=False)
class UniversalBundle:
    """A constructed object, its structure maps and its mediating-map builder."""

    kind: str
    object: Any
    legs: Dict[str, Any]
    mediator: Callable[..., DCMorphism]
    components: tuple = ()
    extra: Dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# coproducts


def dc_coproduct(e0: DirectedContainer, e1: DirectedContainer) -> UniversalBundle:
    def positions(s):
        if isinstance(s, Inl):
            return e0.positions(s.value)
        if isinstance(s, Inr):
            return e1.positions(s.value)
        return EMPTY

    base = Container(f"({e0.base.name}+{e1.base.name})", coproduct(e0.shapes, e1.shapes), positions)

    def side(s):
        return (e0, Inl) if isinstance(s, Inl) else (e1, Inr)

    def down(s, p):
        e, tag = side(s)
        return tag(e.down(s.value, p))

    def root(s):
        return side(s)[0].root(s.value)

    def plus(s, p, p2):
        return side(s)[0].plus(s.value, p, p2)

    obj = DirectedContainer(base, down, root, plus, f"({e0.name}+{e1.name})")
    inl = dc_morphism(e0, obj, Inl, lambda s, p: p, "inl")
    inr = dc_morphism(e1, obj, Inr, lambda s, p: p, "inr")

    def mediator(f0: DCMorphism, f1: DCMorphism) -> DCMorphism:
        def t(s):
            return (f0 if isinstance(s, Inl) else f1).t(s.value)

        def q(s, p):
            return (f0 if isinstance(s, Inl) else f1).q(s.value, p)

        return dc_morphism(obj, f0.target, t, q, f"[{f0.name},{f1.name}]")

    return UniversalBundle("coproduct", obj, {"inl": inl, "inr": inr}, mediator, (e0, e1))


# ---------------------------------------------------------------------------
# strict directed containers


@dataclass(frozen=True, eq=False)
class StrictDirectedContainer:
    shapes: Enumeration
    positions_of: Callable[[Any], Enumeration]
    down: Callable[[Any, Any], Any]
    plus: Callable[[Any, Any, Any], Any]
    name: str = "strict"
    _cache: dict = field(default_factory=dict, repr=False)

    def positions(self, s: Any) -> Enumeration:
        try:
            hit = self._cache.get(s)
        except TypeError:
            return self.positions_of(s)
        if hit is None:
            hit = self._cache[s] = self.positions_of(s)
        return hit

    def __repr__(self) -> str:
        return f"StrictDirectedContainer({self.name})"


def strict_to_dc(k: StrictDirectedContainer, name: Optional[str] = None) -> DirectedContainer:
    """Adjoin ``nothing`` as the root position of every shape."""
    base = Container(f"maybe+({k.name})", k.shapes, lambda s: options(k.positions(s)))

    def down(s, p):
        return s if p is NOTHING else k.down(s, p.value)

    def plus(s, p, p2):
        if p is NOTHING:
            return p2
        if p2 is NOTHING:
            return p
        return Just(k.plus(s, p.value, p2.value))

    return DirectedContainer(base, down, lambda s: NOTHING, plus, name or f"dc({k.name})")


STRICT_SUFFIX = StrictDirectedContainer(
    NAT, lambda s: int_range(1, s), lambda s, p: s - p, lambda s, p, p2: p + p2, "strict-suffix"
)
STRICT_CAPPED = StrictDirectedContainer(
    UNIT_SET, lambda s: finite((1, 2)), lambda s, p: UNIT, lambda s, p, p2: min(p + p2, 2), "capped-add"
)
_A, _B = Symbol("a"), Symbol("b")
STRICT_LEFT_ZERO = StrictDirectedContainer(
    UNIT_SET, lambda s: finite((_A, _B)), lambda s, p: UNIT, lambda s, p, p2: p, "left-zero"
)
STRICT = {k.name: k for k in (STRICT_SUFFIX, STRICT_CAPPED, STRICT_LEFT_ZERO)}


def suffix_renumbering() -> tuple:
    """Mutually inverse morphisms between suffix and the option-rooted strict suffix."""
    e = strict_to_dc(STRICT_SUFFIX)
    to_strict = dc_morphism(
        SUFFIX, e, lambda s: s, lambda s, p: 0 if p is NOTHING else p.value, "suffix-to-strict"
    )
    from_strict = dc_morphism(
        e, SUFFIX, lambda s: s, lambda s, p: NOTHING if p == 0 else Just(p), "strict-to-suffix"
    )
    return to_strict, from_strict


# ---------------------------------------------------------------------------
# trees shared by the cofree and strict-product constructions


def _index(enum: Enumeration, p: Any) -> int:
    if enum.cardinality is not None:
        return enum.index(p)
    for i, x in enumerate(enum):
        if x == p:
            return i
    raise KeyError(p)  # pragma: no cover - unbounded search never ends


def child(tree: Pair, positions: Enumeration, p: Any) -> Any:
    return table_get(tree.snd, _index(positions, p))


def _table(positions: Enumeration, make: Callable[[Any], Any]) -> Any:
    """Children of a node: a suspended ``Seq`` or, for infinite fan-out, a lazy stream."""
    if positions.cardinality is not None:
        return Susp(lambda: Seq(tuple(make(p) for p in positions)))
    return lazy_table(make(p) for p in positions)


def _truncated_subtree(depth: int) -> Susp:
    def boom():
        raise FuelExhausted(f"tree observed beyond depth {depth}")

    return Susp(boom)


# ---------------------------------------------------------------------------
# strict product


@dataclass(frozen=True, eq=False)
class StrictProduct:
    """The product strict directed container together with its helpers."""

    strict: StrictDirectedContainer
    left: StrictDirectedContainer
    right: StrictDirectedContainer
    fuel: int
    down_side: Callable[[int, Any, Any], Any]
    plus_side: Callable[[int, Any, Any, Any], Any]
    side_positions: Callable[[int, Any], Enumeration]


def _alternation_depth(p: Any) -> int:
    depth = 1
    while isinstance(p.snd, Just):
        inner = p.snd.value
        p = inner.value if isinstance(inner, (Inl, Inr)) else inner
        depth += 1
    return depth


def strict_product(k0: StrictDirectedContainer, k1: StrictDirectedContainer, fuel: int = 2) -> UniversalBundle:
    """Product of two strict directed containers, observed under ``fuel``.

    Shapes are pairs of mutually corecursive trees.  The enumeration offers
    trees whose nodes down to depth ``fuel`` carry one of the first
    ``fuel + 1`` component shapes, continuing below with the first component
    shape everywhere.  Positions are listed by alternation depth; asking for
    positions deeper than ``fuel`` raises ``FuelExhausted``.
    """
    ks = (k0, k1)

    def node_positions(side: int, tree: Pair) -> Enumeration:
        return ks[side].positions(tree.fst)

    def sub(side: int, tree: Pair, p: Any) -> Any:
        return child(tree, node_positions(side, tree), p)

    def shifted(side: int, tree: Pair, p: Any) -> Pair:
        # (s ↓ p, λp'. v (p ⊕ p')) on one side
        k = ks[side]
        s = tree.fst
        s2 = k.down(s, p)
        return Pair(s2, _table(k.positions(s2), lambda p2: sub(side, tree, k.plus(s, p, p2))))

    def down_side(side: int, tree: Pair, pos: Pair) -> Pair:
        p, rest = pos.fst, pos.snd
        if rest is NOTHING:
            here, other = shifted(side, tree, p), sub(side, tree, p)
            return Pair(here, other) if side == 0 else Pair(other, here)
        return down_side(1 - side, sub(side, tree, p), rest.value)

    def down(shape: Pair, pos: Any) -> Pair:
        if isinstance(pos, Inl):
            return down_side(0, shape.fst, pos.value)
        return down_side(1, shape.snd, pos.value)

    def plus_side(side: int, tree: Pair, pos: Pair, pos2: Any) -> Pair:
        p, rest = pos.fst, pos.snd
        own = Inl if side == 0 else Inr
        if rest is NOTHING:
            if isinstance(pos2, own):
                return Pair(ks[side].plus(tree.fst, p, pos2.value.fst), pos2.value.snd)
            return Pair(p, Just(pos2.value))
        return Pair(p, Just(plus_side(1 - side, sub(side, tree, p), rest.value, pos2)))

    def plus(shape: Pair, pos: Any, pos2: Any) -> Any:
        if isinstance(pos, Inl):
            return Inl(plus_side(0, shape.fst, pos.value, pos2))
        return Inr(plus_side(1, shape.snd, pos.value, pos2))

    def level(side: int, tree: Pair, k: int) -> Iterator[Pair]:
        for p in node_positions(side, tree):
            if k == 1:
                yield Pair(p, NOTHING)
            else:
                for q in level(1 - side, sub(side, tree, p), k - 1):
                    yield Pair(p, Just(q))

    def _nonempty(it: Iterator) -> bool:
        for _ in it:
            return True
        return False

    def side_positions(side: int, tree: Pair) -> Enumeration:
        def produce():
            for k in range(1, fuel + 1):
                yield from level(side, tree, k)
            if _nonempty(level(side, tree, fuel + 1)):
                raise FuelExhausted(f"positions beyond alternation depth {fuel}")

        return Enumeration(produce, None, None, f"P+{side}")

    def positions(shape: Any) -> Enumeration:
        if not isinstance(shape, Pair):
            return EMPTY

        def produce():
            for k in range(1, fuel + 1):
                for x in level(0, shape.fst, k):
                    yield Inl(x)
                for x in level(1, shape.snd, k):
                    yield Inr(x)
            if _nonempty(level(0, shape.fst, fuel + 1)) or _nonempty(level(1, shape.snd, fuel + 1)):
                raise FuelExhausted(f"positions beyond alternation depth {fuel}")

        def contains(v):
            if isinstance(v, Inl):
                return _valid_side(0, shape.fst, v.value)
            if isinstance(v, Inr):
                return _valid_side(1, shape.snd, v.value)
            return False

        return Enumeration(produce, None, contains, "P+")

    def _valid_side(side: int, tree: Pair, pos: Any) -> bool:
        if not isinstance(pos, Pair):
            return False
        if not node_positions(side, tree).member(pos.fst):
            return False
        if pos.snd is NOTHING:
            return True
        return isinstance(pos.snd, Just) and _valid_side(1 - side, sub(side, tree, pos.fst), pos.snd.value)

    # shape enumeration: explicit prefix down to depth ``fuel``, canonical below
    roots = [k.shapes.take(fuel + 1) for k in ks]
    canonical: list = [None, None]

    def canon(side: int) -> Pair:
        if canonical[side] is None:
            s = roots[side][0]
            canonical[side] = Pair(s, _table(ks[side].positions(s), lambda _p: canon(1 - side)))
        return canonical[side]

    tree_cache: dict = {}

    def trees(side: int, depth: int) -> list:
        key = (side, depth)
        if key in tree_cache:
            return tree_cache[key]
        out = []
        for s in roots[side]:
            ps = ks[side].positions(s)
            if ps.cardinality is None:
                continue
            n = ps.cardinality
            if depth == 0:
                out.append(Pair(s, Seq(tuple(canon(1 - side) for _ in range(n)))))
            else:
                for kids in itertools.product(trees(1 - side, depth - 1), repeat=n):
                    out.append(Pair(s, Seq(kids)))
        tree_cache[key] = out
        return out

    def shapes_producer():
        left, right = finite(trees(0, fuel)), finite(trees(1, fuel))
        return iter(product(left, right))

    def shape_contains(v):
        return (
            isinstance(v, Pair)
            and isinstance(v.fst, Pair)
            and isinstance(v.snd, Pair)
            and k0.shapes.member(v.fst.fst)
            and k1.shapes.member(v.snd.fst)
        )

    shapes = Enumeration(shapes_producer, None, shape_contains, f"({k0.name}x{k1.name})")
    strict = StrictDirectedContainer(shapes, positions, down, plus, f"({k0.name}x{k1.name})")
    obj = strict_to_dc(strict)
    e0, e1 = strict_to_dc(k0), strict_to_dc(k1)

    pi0 = dc_morphism(
        obj, e0, lambda sh: sh.fst.fst,
        lambda sh, p: NOTHING if p is NOTHING else Just(Inl(Pair(p.value, NOTHING))), "pi0",
    )
    pi1 = dc_morphism(
        obj, e1, lambda sh: sh.snd.fst,
        lambda sh, p: NOTHING if p is NOTHING else Just(Inr(Pair(p.value, NOTHING))), "pi1",
    )

    def mediator(f0: DCMorphism, f1: DCMorphism) -> DCMorphism:
        src = f0.source
        fs = (f0, f1)
        memo: dict = {}

        def tbar(side: int, s: Any) -> Pair:
            key = (side, s)
            try:
                hit = memo.get(key)
            except TypeError:
                hit = None
            if hit is not None:
                return hit
            f = fs[side]
            root = f.t(s)
            node = Pair(
                root,
                _table(ks[side].positions(root), lambda p: tbar(1 - side, src.down(s, f.q(s, Just(p))))),
            )
            try:
                memo[key] = node
            except TypeError:
                pass
            return node

        def qbar(side: int, s: Any, pos: Pair) -> Any:
            f = fs[side]
            first = f.q(s, Just(pos.fst))
            if pos.snd is NOTHING:
                return first
            return src.plus(s, first, qbar(1 - side, src.down(s, first), pos.snd.value))

        def t(s):
            return Pair(tbar(0, s), tbar(1, s))

        def q(s, p):
            if p is NOTHING:
                return src.root(s)
            inner = p.value
            if isinstance(inner, Inl):
                return qbar(0, s, inner.value)
            return qbar(1, s, inner.value)

        return dc_morphism(src, obj, t, q, f"<{f0.name},{f1.name}>")

    helper = StrictProduct(strict, k0, k1, fuel, down_side, plus_side, side_positions)
    return UniversalBundle(
        "strict_product", obj, {"pi0": pi0, "pi1": pi1}, mediator, (e0, e1),
        {"strict": strict, "helper": helper, "alternation_depth": _alternation_depth},
    )


# ---------------------------------------------------------------------------
# cofree directed containers


def cofree(c0: Container, mode: str = "recursive", fuel: int = 4) -> UniversalBundle:
    """The cofree directed container on ``c0``.

    ``recursive`` uses well-founded (finite) trees; ``depth_bounded`` uses
    arbitrary trees, enumerated with subtrees below depth ``fuel`` left
    unobservable.
    """
    if mode not in ("recursive", "depth_bounded"):
        raise ValueError(f"unknown cofree mode {mode!r}")
    recursive = mode == "recursive"

    def kid(tree: Pair, p: Any) -> Any:
        return child(tree, c0.positions(tree.fst), p)

    def positions(tree: Any) -> Enumeration:
        if not isinstance(tree, Pair):
            return EMPTY
        here = c0.positions(tree.fst)
        below_family = lambda p: positions(kid(tree, p))  # noqa: E731
        if recursive and here.cardinality is not None:
            below = lexicographic(here, below_family)
        else:
            below = sigma(here, below_family, count=False)

        def produce():
            yield Inl(UNIT)
            for pq in below:
                yield Inr(pq)

        card = None if below.cardinality is None else below.cardinality + 1

        def contains(v):
            if isinstance(v, Inl):
                return v.value is UNIT
            if isinstance(v, Inr) and isinstance(v.value, Pair):
                p, rest = v.value.fst, v.value.snd
                return here.member(p) and positions(kid(tree, p)).member(rest)
            return False

        return Enumeration(produce, card, contains, "paths")

    def down(tree: Pair, path: Any) -> Pair:
        while isinstance(path, Inr):
            tree = kid(tree, path.value.fst)
            path = path.value.snd
        return tree

    def plus(tree: Pair, path: Any, path2: Any) -> Any:
        if isinstance(path, Inl):
            return path2
        p, rest = path.value.fst, path.value.snd
        return Inr(Pair(p, plus(kid(tree, p), rest, path2)))

    shape_enum = _cofree_shapes(c0, recursive, fuel)
    base = Container(f"cofree-{mode}({c0.name})", shape_enum, positions)
    obj = DirectedContainer(base, down, lambda tree: Inl(UNIT), plus, f"cofree-{mode}({c0.name})")
    pi = ContainerMorphism(base, c0, lambda tree: tree.fst, lambda tree, p: Inr(Pair(p, Inl(UNIT))), "pi")

    def mediator(f0: ContainerMorphism, source: DirectedContainer) -> DCMorphism:
        memo: dict = {}

        def build(s: Any, path: tuple) -> Pair:
            try:
                hit = memo.get(s)
            except TypeError:
                hit = None
            if hit is not None:
                return hit
            root = f0.shape_map(s)
            ps = c0.positions(root)
            if recursive:
                if s in path:
                    raise NonWellfounded(f"unfolding revisits shape {render(s)}")
                if ps.cardinality is None:
                    raise NonWellfounded(f"shape {render(root)} has infinitely many positions")
                kids = tuple(build(source.down(s, f0.position_map(s, p)), path + (s,)) for p in ps)
                node = Pair(root, Seq(kids))
            else:
                node = Pair(root, _table(ps, lambda p: build(source.down(s, f0.position_map(s, p)), ())))
            try:
                memo[s] = node
            except TypeError:
                pass
            return node

        def q(s: Any, path: Any) -> Any:
            if isinstance(path, Inl):
                return source.root(s)
            p, rest = path.value.fst, path.value.snd
            first = f0.position_map(s, p)
            return source.plus(s, first, q(source.down(s, first), rest))

        return dc_morphism(source, obj, lambda s: build(s, ()), q, f"cofree[{f0.name}]")

    return UniversalBundle("cofree", obj, {"pi": pi}, mediator, (c0,), {"mode": mode, "fuel": fuel})


def _cofree_shapes(c0: Container, recursive: bool, fuel: int) -> Enumeration:
    """Trees ordered by rank: the larger of height and root-shape index."""
    memo: dict = {}

    def upto(r: int, depth: int) -> list:
        key = (r, depth)
        if key in memo:
            return memo[key]
        out = []
        for s in c0.shapes.take(r + 1):
            ps = c0.positions(s)
            n = ps.cardinality
            if n == 0:
                out.append(Pair(s, Seq(())))
                continue
            if not recursive and depth >= fuel:
                out.append(Pair(s, _truncated_subtree(fuel)))
                continue
            if r == 0 and recursive:
                continue
            below = upto(r - 1 if recursive else r, depth + 1)
            if n is None:
                for k in below:
                    out.append(Pair(s, lazy_table(itertools.repeat(k))))
            else:
                for kids in itertools.product(below, repeat=n):
                    out.append(Pair(s, Seq(kids)))
        memo[key] = out
        return out

    def produce():
        seen: set = set()
        limit = c0.shapes.cardinality
        for r in itertools.count(0):
            fresh = 0
            for tree in upto(r, 0):
                key = _tree_key(tree)
                if key in seen:
                    continue
                seen.add(key)
                fresh += 1
                yield tree
            if limit is not None:
                if not recursive and r + 1 >= limit:
                    return
                if recursive and fresh == 0 and r >= limit:
                    return

    def contains(v):
        if not isinstance(v, Pair) or not c0.shapes.member(v.fst):
            return False
        if recursive:
            kids = v.snd
            if not isinstance(kids, Seq):
                return False
            n = c0.positions(v.fst).cardinality
            return n == len(kids) and all(contains(k) for k in kids)
        return True

    return Enumeration(produce, None, contains, "trees")


def _tree_key(tree: Any) -> Any:
    """Structural identity of an enumerated tree, treating truncation as a leaf marker."""
    kids = tree.snd
    if isinstance(kids, Seq):
        return (tree.fst, tuple(_tree_key(k) for k in kids))
    if isinstance(kids, Susp) and not kids.forced:
        try:
            kids.force()
        except FuelExhausted:
            return (tree.fst, "...")
        return _tree_key(tree)
    first = table_get(kids, 0)
    return (tree.fst, "repeat", _tree_key(first))


def cofree_maybe_to_suffix(bundle: UniversalBundle) -> DCMorphism:
    """Inverse of the ``next`` mediator into the cofree recursive maybe container."""
    obj = bundle.object

    def length(tree):
        n = 0
        while isinstance(tree.fst, Inr):
            tree = tree.snd.items[0]
            n += 1
        return n

    def path(k):
        out: Any = Inl(UNIT)
        for _ in range(k):
            out = Inr(Pair(UNIT, out))
        return out

    return dc_morphism(obj, SUFFIX, length, lambda tree, k: path(k), "chain-length")


def maybe_next() -> ContainerMorphism:
    """``next : nelist → maybe``: is there a position after the root?"""
    return ContainerMorphism(
        SUFFIX.base, MAYBE, lambda s: Inl(UNIT) if s == 0 else Inr(UNIT), lambda s, p: 1, "next"
    )


_COFREE_MAYBE: list = []


def cofree_recursive_maybe() -> UniversalBundle:
    if not _COFREE_MAYBE:
        _COFREE_MAYBE.append(cofree(MAYBE, "recursive"))
    return _COFREE_MAYBE[0]


register_builtin("cofree-recursive(maybe)", lambda: cofree_recursive_maybe().object)


# ---------------------------------------------------------------------------
# restriction to a finite, subshape-closed set of shapes


def restrict(e: DirectedContainer, shapes: list, name: Optional[str] = None, check_limit: int = 64) -> DirectedContainer:
    """The sub-directed-container on ``shapes``; they must be closed under ``down``."""
    allowed = list(shapes)
    enum = finite(allowed, f"{e.shapes.name}|{len(allowed)}")
    for s in allowed:
        items, _ = take_bounded(e.positions(s), check_limit)
        for p in items:
            s2 = e.down(s, p)
            if not any(s2 == x for x in allowed):
                raise ShapeNotInContainer(
                    f"restriction of {e.name} not closed: {render(s)} down {render(p)} = {render(s2)}"
                )
    base = Container(f"{e.base.name}|{len(allowed)}", enum, e.base.positions)
    return DirectedContainer(base, e.down, e.root, e.plus, name or f"{e.name}|{len(allowed)}")
