import dataclasses

import pytest

from dcont.constructions import (
    STRICT_CAPPED,
    STRICT_LEFT_ZERO,
    STRICT_SUFFIX,
    cofree,
    cofree_maybe_to_suffix,
    cofree_recursive_maybe,
    dc_coproduct,
    maybe_next,
    restrict,
    strict_product,
    strict_to_dc,
    suffix_renumbering,
)
from dcont.containers import MAYBE, Container, ContainerMorphism
from dcont.directed import CYCLIC, FOCUS_LIST, SUFFIX, Z2, dc_morphism, focus, monoid_dc
from dcont.errors import NonWellfounded
from dcont.laws import (
    Bounds,
    UniversalProbe,
    check_dc_iso,
    check_dc_laws,
    check_strict_laws,
    check_universal,
    enumerate_dc_morphisms,
)
from dcont.values import EQUAL, NOTHING, UNIT, UNIT_SET, Inl, Inr, Just, Pair, fin, take, take_bounded, value_eq


# --- coproduct -----------------------------------------------------------------


def test_coproduct_operations():
    obj = dc_coproduct(SUFFIX, CYCLIC).object
    assert obj.root(Inl(2)) == 0
    assert obj.down(Inl(4), 3) == Inl(1)
    for s in range(4):
        for p in range(s + 1):
            assert obj.down(Inr(s), p) == Inr(CYCLIC.down(s, p))
            assert obj.plus(Inr(s), p, s) == CYCLIC.plus(s, p, s)


def test_coproduct_laws_on_both_sides():
    obj = dc_coproduct(SUFFIX, CYCLIC).object
    # 12 shapes in the fair interleaving reach shape 5 on each side
    assert take(obj.shapes, 12)[-2:] == [Inl(5), Inr(5)]
    report = check_dc_laws(obj, Bounds(12, 8, 3))
    assert report.all_pass, report.describe()


def _z2_coproduct():
    left, right = restrict(SUFFIX, [0, 1, 2]), restrict(CYCLIC, [0, 1, 2, 3])
    bundle = dc_coproduct(left, right)
    target = monoid_dc(Z2)
    zero = dc_morphism(left, target, lambda s: UNIT, lambda s, p: 0, "zero")
    half_turn = dc_morphism(
        right, target, lambda s: UNIT, lambda s, p: (s + 1) // 2 if p == 1 and s % 2 == 1 else 0, "half-turn"
    )
    return bundle, target, zero, half_turn


def test_coproduct_universal_with_enumerated_competitors(bounds):
    bundle, target, zero, half_turn = _z2_coproduct()
    candidates = list(enumerate_dc_morphisms(bundle.object, target, [UNIT]))
    assert len(candidates) == 4
    report = check_universal("coproduct", bundle, [UniversalProbe((zero, half_turn), candidates, label="z2")], bounds)
    assert report.all_pass, report.describe()


def test_coproduct_wrong_mediator_breaks_triangle(bounds):
    bundle, target, zero, half_turn = _z2_coproduct()
    lying = dataclasses.replace(bundle, mediator=lambda f0, f1: bundle.mediator(f0, zero_right(f1)))
    report = check_universal("coproduct", lying, [UniversalProbe((zero, half_turn), label="z2")], bounds)
    assert report.entry("triangles-commute").status == "fail"


def zero_right(f1):
    return dc_morphism(f1.source, f1.target, lambda s: UNIT, lambda s, p: 0, "zero-right")


def test_copairing_injections_is_identity(bounds):
    bundle = dc_coproduct(SUFFIX, CYCLIC)
    report = check_universal(
        "coproduct", bundle, [UniversalProbe((bundle.legs["inl"], bundle.legs["inr"]), label="injections")], bounds
    )
    assert report.all_pass, report.describe()


# --- strict directed containers -------------------------------------------------


def test_strict_to_dc_clauses():
    e = strict_to_dc(STRICT_SUFFIX)
    assert e.root(4) is NOTHING
    assert e.plus(4, NOTHING, Just(2)) == Just(2)
    assert e.plus(4, Just(2), NOTHING) == Just(2)
    assert e.plus(4, Just(1), Just(2)) == Just(3)
    assert e.down(4, NOTHING) == 4 and e.down(4, Just(3)) == 1


@pytest.mark.parametrize("k", [STRICT_SUFFIX, STRICT_CAPPED, STRICT_LEFT_ZERO], ids=lambda k: k.name)
def test_strict_instances(k, bounds):
    assert check_strict_laws(k, bounds).all_pass
    assert check_dc_laws(strict_to_dc(k), bounds).all_pass


def test_strict_suffix_renumbers_to_suffix():
    to_strict, from_strict = suffix_renumbering()
    report = check_dc_iso("renumbering", to_strict, from_strict, Bounds(7, 8, 3))
    assert report.all_pass, report.describe()


def test_strict_product_projection_and_plus():
    bundle = strict_product(STRICT_SUFFIX, STRICT_SUFFIX, fuel=2)
    shape = take(bundle.object.shapes, 3)[-1]
    pi0 = bundle.legs["pi0"]
    assert pi0.q(shape, Just(1)) == Just(Inl(Pair(1, NOTHING)))
    assert pi0.q(shape, NOTHING) is NOTHING
    helper = bundle.extra["helper"]
    tree = shape.fst
    p1 = Pair(1, NOTHING)
    assert helper.plus_side(0, tree, Pair(2, NOTHING), Inr(p1)) == Pair(2, Just(p1))


def test_strict_product_laws_within_fuel():
    bundle = strict_product(STRICT_SUFFIX, STRICT_SUFFIX, fuel=2)
    strict = bundle.extra["strict"]
    report = check_strict_laws(strict, Bounds(12, 64, 3))
    assert report.ok, report.describe()
    depth = bundle.extra["alternation_depth"]
    for shape in take(strict.shapes, 12):
        items, _ = take_bounded(strict.positions(shape), 64)
        assert all(depth(p.value) <= 2 for p in items)


def _restricted_identity_probe(bundle):
    e = strict_to_dc(STRICT_SUFFIX)
    src = restrict(e, [0, 1, 2])
    f0 = dc_morphism(src, e, lambda s: s, lambda s, p: p, "id0")
    f1 = dc_morphism(src, e, lambda s: s, lambda s, p: p, "id1")
    return src, f0, f1


def _observable_shapes(obj, n):
    return [x for x in take(obj.shapes, n) if not take_bounded(obj.positions(x), 64)[1]]


def test_strict_product_universal(bounds):
    bundle = strict_product(STRICT_SUFFIX, STRICT_SUFFIX, fuel=2)
    src, f0, f1 = _restricted_identity_probe(bundle)
    med = bundle.mediator(f0, f1)
    targets = [med.t(s) for s in (0, 1, 2)] + _observable_shapes(bundle.object, 200)
    candidates = list(
        enumerate_dc_morphisms(
            src, bundle.object, targets, shape_ok=lambda s, ts: ts.fst.fst == s and ts.snd.fst == s
        )
    )
    assert any(value_eq(c.t(2), med.t(2)) is EQUAL for c in candidates)
    report = check_universal("strict_product", bundle, [UniversalProbe((f0, f1), candidates, label="ids")], bounds)
    assert report.all_pass, report.describe()


# --- cofree -----------------------------------------------------------------------


def test_cofree_root_and_down():
    bundle = cofree_recursive_maybe()
    obj = bundle.object
    for tree in take(obj.shapes, 5):
        assert obj.root(tree) == Inl(UNIT)
        assert obj.down(tree, Inl(UNIT)) is tree
    assert bundle.legs["pi"].q(take(obj.shapes, 2)[1], UNIT) == Inr(Pair(UNIT, Inl(UNIT)))


def test_cofree_maybe_is_suffix(bounds):
    bundle = cofree_recursive_maybe()
    forward = bundle.mediator(maybe_next(), SUFFIX)
    report = check_dc_iso("cofree-maybe", forward, cofree_maybe_to_suffix(bundle), Bounds(7, 8, 3))
    assert report.all_pass, report.describe()
    assert check_dc_laws(bundle.object, bounds).all_pass


def test_cofree_universal_with_enumerated_competitors(bounds):
    bundle = cofree_recursive_maybe()
    src = restrict(SUFFIX, [0, 1, 2, 3])
    nxt = maybe_next()
    f0 = ContainerMorphism(src.base, MAYBE, nxt.shape_map, nxt.position_map, "next")
    targets = take(bundle.object.shapes, 5)
    candidates = list(enumerate_dc_morphisms(src, bundle.object, targets, shape_ok=lambda s, ts: ts.fst == nxt.t(s)))
    assert candidates
    probes = [
        UniversalProbe((f0, src), candidates, label="next"),
        UniversalProbe((bundle.legs["pi"], bundle.object), label="pi"),
    ]
    report = check_universal("cofree", bundle, probes, bounds)
    assert report.all_pass, report.describe()


def test_recursive_cofree_rejects_cycles():
    bundle = cofree_recursive_maybe()
    med = bundle.mediator(maybe_next(), CYCLIC)
    with pytest.raises(NonWellfounded):
        med.t(1)


def _path(letters):
    out = Inl(UNIT)
    for x in reversed(letters):
        out = Inr(Pair(x, out))
    return out


def test_single_shape_cofree_is_free_monoid():
    import itertools

    bundle = cofree(Container("two", UNIT_SET, lambda s: fin(2)), "depth_bounded", fuel=13)
    obj = bundle.object
    tree = take(obj.shapes, 1)[0]
    words = [w for n in range(5) for w in itertools.product((0, 1), repeat=n)]
    for u in words:
        assert obj.plus(tree, _path(u), Inl(UNIT)) == _path(u)
        assert obj.plus(tree, Inl(UNIT), _path(u)) == _path(u)
        for v in words:
            assert obj.plus(tree, _path(u), _path(v)) == _path(u + v)
    for u, v, w in itertools.product(words[:15], repeat=3):
        left = obj.plus(tree, obj.plus(tree, _path(u), _path(v)), _path(w))
        right = obj.plus(tree, _path(u), obj.plus(tree, _path(v), _path(w)))
        assert left == right


def test_cofree_mode_is_validated():
    with pytest.raises(ValueError):
        cofree(MAYBE, "lazy")


# --- focus -------------------------------------------------------------------------


def test_focus_operations():
    e = focus(MAYBE)
    assert e.root(Pair(Inr(UNIT), 0)) == 0
    assert FOCUS_LIST.root(Pair(4, 2)) == 2
    assert FOCUS_LIST.plus(Pair(4, 2), 1, 3) == 3
    assert FOCUS_LIST.down(Pair(4, 2), 3) == Pair(4, 3)
    # the empty list contributes no focussed shapes
    assert all(s.fst > 0 for s in take(FOCUS_LIST.shapes, 10))
