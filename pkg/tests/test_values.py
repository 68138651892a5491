import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dcont.constructions import cofree
from dcont.containers import STREAM, ZIPPER, identity_morphism
from dcont.directed import STREAM_DC
from dcont.values import (
    EQUAL,
    EXHAUSTED,
    INTEGERS,
    NAT,
    NOTHING,
    UNEQUAL,
    UNIT,
    Inl,
    Inr,
    Just,
    Pair,
    Seq,
    Susp,
    Symbol,
    coproduct,
    fin,
    lazy_table,
    options,
    product,
    quantify,
    render,
    sigma,
    table_get,
    take,
    take_bounded,
    tuples,
    value_eq,
    whnf,
)

import oracles


def test_value_eq_examples():
    assert value_eq(Inl(2), Inl(2), 1) is EQUAL
    assert value_eq(Just(0), NOTHING, 1) is UNEQUAL
    assert value_eq(Inl(2), Inr(2)) is UNEQUAL
    assert value_eq(True, 1) is UNEQUAL
    assert value_eq(Seq((1, 2)), Seq((1,))) is UNEQUAL


def test_enumerate_examples():
    assert take(fin(3), 10) == [0, 1, 2]
    assert take(NAT, 4) == [0, 1, 2, 3]
    zipper_positions = take(ZIPPER.positions(Pair(5, 6)), 100)
    assert sorted(zipper_positions) == list(range(-5, 7))
    assert len(zipper_positions) == 12


def test_integer_order_is_zigzag():
    assert take(INTEGERS, 7) == [0, 1, -1, 2, -2, 3, -3]


def test_product_order_is_fair():
    first = take(product(NAT, NAT), 6)
    assert first == [Pair(0, 0), Pair(0, 1), Pair(1, 0), Pair(0, 2), Pair(1, 1), Pair(2, 0)]


def test_finite_products_and_options_are_complete():
    assert len(take(product(fin(3), fin(4)), 100)) == 12
    assert take(options(fin(2)), 5) == [NOTHING, Just(0), Just(1)]
    assert len(take(coproduct(fin(2), NAT), 6)) == 6


def test_quantify_takes_all_of_a_finite_set():
    items, truncated = quantify(fin(20), 8)
    assert len(items) == 20 and not truncated
    items, truncated = quantify(NAT, 8)
    assert len(items) == 8 and truncated


def test_render_forms():
    assert render(Pair(UNIT, Symbol("a"))) == "(*,a)"
    assert render(Inl(Pair(1, 2))) == "inl (1,2)"
    assert render(Just(Inr(3))) == "just (inr 3)"
    assert render(Seq((1, Symbol("b")))) == "[1,b]"


def test_susp_forces_once_across_threads():
    calls = []
    lock = threading.Lock()

    def produce():
        with lock:
            calls.append(1)
        return Pair(1, 2)

    s = Susp(produce)
    threads = [threading.Thread(target=s.force) for _ in range(16)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(calls) == 1
    assert value_eq(s.force(), s.force()) is EQUAL


def test_lazy_table_is_indexable():
    t = lazy_table(iter(range(100)))
    assert table_get(t, 0) == 0
    assert table_get(t, 41) == 41
    assert whnf(t).fst == 0


def _stream_shapes():
    """Two cofree-on-stream shapes unfolded from the same generator, built independently."""
    shapes = []
    for _ in range(2):
        bundle = cofree(STREAM, "depth_bounded", fuel=3)
        mediator = bundle.mediator(identity_morphism(STREAM), STREAM_DC)
        shapes.append(mediator.t(UNIT))
    return shapes


def test_cofree_stream_shapes_compare_exhausted():
    a, b = _stream_shapes()
    assert a is not b
    assert value_eq(a, b, 3) is EXHAUSTED

    def children(tree, i):
        return table_get(tree.snd, i)

    # independent unfolder: root labels agree level by level to depth 3
    assert oracles.unfold(a, 3, 3, children) == oracles.unfold(b, 3, 3, children)


# --- properties -----------------------------------------------------------

atoms = st.one_of(
    st.integers(-50, 50),
    st.just(UNIT),
    st.just(NOTHING),
    st.sampled_from("abc").map(Symbol),
)
values = st.recursive(
    atoms,
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: Pair(*t)),
        inner.map(Inl),
        inner.map(Inr),
        inner.map(Just),
        st.lists(inner, max_size=3).map(lambda xs: Seq(tuple(xs))),
    ),
    max_leaves=12,
)


@given(values)
def test_value_eq_reflexive(v):
    assert value_eq(v, v, 1) is EQUAL


@given(values, values)
def test_value_eq_matches_structure_on_finite_values(a, b):
    expected = EQUAL if a == b else UNEQUAL
    assert value_eq(a, b, 64) is expected
    assert value_eq(b, a, 64) is expected


@given(values, values, values)
def test_value_eq_transitive(a, b, c):
    if value_eq(a, b) is EQUAL and value_eq(b, c) is EQUAL:
        assert value_eq(a, c) is EQUAL


enumerations = st.sampled_from(
    [
        NAT,
        INTEGERS,
        fin(5),
        product(NAT, NAT),
        product(fin(2), NAT),
        coproduct(NAT, fin(3)),
        options(NAT),
        sigma(NAT, lambda n: fin(n + 1)),
        tuples(fin(3), 2),
    ]
)


@given(enumerations, st.integers(0, 40), st.integers(0, 40))
def test_enumeration_prefix_monotone_and_duplicate_free(e, n, m):
    lo, hi = sorted((n, m))
    short, long_ = take(e, lo), take(e, hi)
    assert long_[: len(short)] == short
    assert len(set(long_)) == len(long_)
    items, truncated = take_bounded(e, hi)
    assert items == long_
    if e.cardinality is not None:
        assert truncated == (e.cardinality > hi)


def test_enumeration_determinism():
    assert take(sigma(NAT, lambda n: fin(n + 1)), 30) == take(sigma(NAT, lambda n: fin(n + 1)), 30)


def test_index_rejects_unbounded():
    with pytest.raises(ValueError):
        NAT.index(3)
