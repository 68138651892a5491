"""Acceptance criteria 1 to 10, one PASS/FAIL line each.

Tolerances are exact throughout: every comparison is tri-state value
equality, and a criterion passes only when no case reports ``fail``.
``exhausted`` (fuel ran out before a difference showed) is not a failure.
Bounds are pinned per criterion in ``BOUNDS`` below.

Run with ``pytest tests/test_acceptance.py -v`` to see the verdict lines.
"""

import os

import pytest

from dcont.cli import run_command
from dcont.constructions import (
    STRICT_CAPPED,
    STRICT_LEFT_ZERO,
    STRICT_SUFFIX,
    cofree_maybe_to_suffix,
    cofree_recursive_maybe,
    maybe_next,
    restrict,
    strict_product,
)
from dcont.containers import MAYBE, ContainerMorphism
from dcont.directed import (
    CYCLIC,
    DROP_EVEN,
    HEAD,
    IDENTITY_DC,
    MORPHISMS,
    REVERSAL,
    SELF_APPEND,
    SUFFIX,
    TAIL_CLAMPED,
    ZIPPER_DC,
    builtin,
    builtin_names,
    over,
)
from dcont.laws import (
    Bounds,
    UniversalProbe,
    check_comonad_laws,
    check_dc_iso,
    check_dc_laws,
    check_dc_morphism_laws,
    check_list_monoid_laws,
    check_quote_roundtrip,
    check_roundtrips,
    check_universal,
    check_update_monad_laws,
    enumerate_dc_morphisms,
    replay,
)
from dcont.monadic import LIST_MONOID
from dcont.values import NOTHING, UNEQUAL, Inl, Pair, Symbol, take, take_bounded

import oracles
from conftest import EXAMPLES, GOLDEN
from test_cli import golden_path
from test_constructions import _observable_shapes, _restricted_identity_probe, _z2_coproduct

BOUNDS = {
    "laws": Bounds(6, 8, 3),
    "cofree-iso": Bounds(7, 8, 3),  # shapes 0..6, i.e. chains up to length 6
    "universal": Bounds(6, 8, 3),
}
CORE_BUILTINS = [
    "nonempty-suffix",
    "nonempty-cyclic",
    "stream",
    "list-zipper",
    "focus-of(list)",
    "cofree-recursive(maybe)",
]


@pytest.fixture
def verdict(capsys):
    def emit(n: int, failures: list, detail: str) -> None:
        line = f"[acceptance {n}] {'PASS' if not failures else 'FAIL'}: {detail}"
        if failures:
            line += " | " + "; ".join(failures)
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line

    return emit


def _failures(label: str, report) -> list:
    first = report.first_failure()
    if first is None:
        return []
    where = ", ".join(f"{k}={v}" for k, v in first.counterexample.items())
    return [f"{label}: {first.law_id} at {where}"]


def test_criterion_1_dc_laws(verdict):
    b = BOUNDS["laws"]
    failures, exhausted = [], 0
    for name in CORE_BUILTINS:
        report = check_dc_laws(builtin(name), b)
        failures += _failures(name, report)
        exhausted += sum(e.status == "exhausted" for e in report.entries)
    verdict(1, failures, f"5 laws x {len(CORE_BUILTINS)} builtins at {b}, {exhausted} entries exhausted by fuel")


def test_criterion_2_comonad_laws(verdict):
    b = BOUNDS["laws"]
    failures = []
    for name in builtin_names():
        failures += _failures(name, check_comonad_laws(builtin(name), b))
    verdict(2, failures, f"counit x2 and coassociativity for {len(builtin_names())} builtins at {b}")


def test_criterion_3_roundtrips(verdict):
    b = BOUNDS["laws"]
    failures, ids = [], set()
    for name in builtin_names():
        report = check_roundtrips(builtin(name), b)
        ids |= {e.law_id for e in report.entries}
        failures += _failures(name, report)
    assert "shape-preservation" in ids
    verdict(3, failures, f"{sorted(ids)} for every builtin at {b}")


def test_criterion_4_morphism_classification(verdict):
    b = BOUNDS["laws"]
    failures = []
    # tail has no lawful reading between suffix containers: list carries no
    # directed structure, so the clamped total variant stands in and is expected
    # to fail here (see the decisions ledger)
    for h in (over(HEAD, SUFFIX, IDENTITY_DC), over(TAIL_CLAMPED, SUFFIX, SUFFIX),
              over(DROP_EVEN, SUFFIX, SUFFIX), over(SELF_APPEND, CYCLIC, CYCLIC)):
        failures += _failures(f"{h.name} should pass", check_dc_morphism_laws(h, b))
    for h in (over(REVERSAL, SUFFIX, SUFFIX), over(SELF_APPEND, SUFFIX, SUFFIX)):
        bad = [e for e in check_dc_morphism_laws(h, b).entries if e.status == "fail"]
        if not bad or replay(bad[0]) is not UNEQUAL:
            failures.append(f"{h.name} over suffix should fail with a replayable counterexample")
    verdict(4, failures, f"m1-m3 at {b}")


def test_criterion_5_worked_numbers(verdict):
    checks = {
        "suffix 5 down 2 = 3": SUFFIX.down(5, 2) == 3,
        "suffix 2 plus 1 = 3": SUFFIX.plus(5, 2, 1) == 3,
        "zipper 4 plus -7 = -3": ZIPPER_DC.plus(Pair(5, 6), 4, -7) == -3,
        "zipper (5,6) down 4 = (9,2)": ZIPPER_DC.down(Pair(5, 6), 4) == Pair(9, 2),
        "zipper (5,6) down -3 = (2,9)": ZIPPER_DC.down(Pair(5, 6), ZIPPER_DC.plus(Pair(5, 6), 4, -7)) == Pair(2, 9),
        "cyclic 4 plus 3 at 5 = 1": CYCLIC.plus(5, 4, 3) == 1,
    }
    verdict(5, [k for k, ok in checks.items() if not ok], f"{len(checks)} exact values")


def test_criterion_6_constructions(verdict):
    b = BOUNDS["universal"]
    failures = []

    bundle, _target, zero, half_turn = _z2_coproduct()
    competitors = list(enumerate_dc_morphisms(bundle.object, _target, [take(_target.shapes, 1)[0]]))
    failures += _failures("coproduct", check_universal(
        "coproduct", bundle, [UniversalProbe((zero, half_turn), competitors, label="z2")], b))

    product = strict_product(STRICT_SUFFIX, STRICT_SUFFIX, fuel=2)
    src, f0, f1 = _restricted_identity_probe(product)
    med = product.mediator(f0, f1)
    targets = [med.t(s) for s in (0, 1, 2)] + _observable_shapes(product.object, 200)
    competitors = list(enumerate_dc_morphisms(
        src, product.object, targets, shape_ok=lambda s, ts: ts.fst.fst == s and ts.snd.fst == s))
    failures += _failures("strict product", check_universal(
        "strict_product", product, [UniversalProbe((f0, f1), competitors, label="ids")], b))

    chains = cofree_recursive_maybe()
    src = restrict(SUFFIX, [0, 1, 2, 3])
    nxt = maybe_next()
    g0 = ContainerMorphism(src.base, MAYBE, nxt.shape_map, nxt.position_map, "next")
    competitors = list(enumerate_dc_morphisms(
        src, chains.object, take(chains.object.shapes, 5), shape_ok=lambda s, ts: ts.fst == nxt.t(s)))
    failures += _failures("cofree", check_universal("cofree", chains, [
        UniversalProbe((g0, src), competitors, label="next"),
        UniversalProbe((chains.legs["pi"], chains.object), label="pi"),
    ], b))

    forward = chains.mediator(maybe_next(), SUFFIX)
    iso = check_dc_iso("cofree-maybe", forward, cofree_maybe_to_suffix(chains), BOUNDS["cofree-iso"])
    failures += _failures("cofree(maybe) vs suffix", iso)
    verdict(6, failures, f"three universal properties at {b}; chains iso to suffix at {BOUNDS['cofree-iso']}")


def _word(p) -> tuple:
    side, x, out = (0 if isinstance(p, Inl) else 1), p.value, []
    while True:
        out.append((side, x.fst))
        if x.snd is NOTHING:
            return tuple(out)
        x, side = x.snd.value, 1 - side


def test_criterion_7_strict_product_oracle(verdict):
    bundle = strict_product(STRICT_CAPPED, STRICT_LEFT_ZERO, fuel=2)
    strict = bundle.extra["strict"]
    shape = take(strict.shapes, 1)[0]
    positions, _ = take_bounded(strict.positions(shape), 64)
    words = [_word(p) for p in positions]
    ops = (lambda x, y: min(x + y, 2), lambda x, y: x)
    expected = oracles.alternating_words([[1, 2], [Symbol("a"), Symbol("b")]], 2)
    failures = []
    if sorted(map(repr, words)) != sorted(map(repr, expected)):
        failures.append(f"position set differs: {len(words)} vs {len(expected)}")
    for p in positions:
        for q in positions:
            got = _word(strict.plus(shape, p, q))
            want = oracles.free_product_mul(ops, _word(p), _word(q))
            if got != want:
                failures.append(f"{_word(p)} + {_word(q)}: {got} != {want}")
    verdict(7, failures, f"{len(positions)} positions, {len(positions) ** 2}-entry table vs free product")


def test_criterion_8_monad_side(verdict):
    b = BOUNDS["laws"]
    failures = []
    for name in builtin_names():
        failures += _failures(name, check_update_monad_laws(builtin(name), b))
    monoid = check_list_monoid_laws(LIST_MONOID, b, max_outer=4, max_inner=3)
    failures += _failures("list monoid", monoid)
    verdict(8, failures, f"update monad for every builtin at {b}; list flatten {monoid.entry('flatten-is-concatenation').cases} cases")


def test_criterion_9_quote_roundtrip(verdict):
    b = BOUNDS["laws"]
    entry = check_quote_roundtrip(list(MORPHISMS.values()), b)
    failures = [f"{entry.law_id} at {entry.counterexample}"] if entry.status == "fail" else []
    verdict(9, failures, f"quote after interpret for {len(MORPHISMS)} catalogue morphisms, {entry.cases} cases")


def test_criterion_10_cli(verdict, monkeypatch):
    monkeypatch.delenv("DCONT_DEFAULT_BOUNDS", raising=False)
    failures = []
    code, out = run_command(["check", EXAMPLES])
    if code != 0:
        failures.append(f"examples directory exit {code}")
    code, out = run_command(["check", os.path.join(EXAMPLES, "broken", "bad.dcont")])
    if code != 1 or "first failure: bad dc-law-1 at s=1" not in out:
        failures.append(f"bad.dcont exit {code}")
    for name in builtin_names():
        first = run_command(["check", "--builtin", name, "--json"])[1]
        second = run_command(["check", "--builtin", name, "--json"])[1]
        with open(golden_path(name), encoding="utf-8") as fh:
            stored = fh.read()
        if not first == second == stored:
            failures.append(f"golden {name} unstable")
    verdict(10, failures, f"directory exit 0, bad.dcont exit 1 at s=1, {len(builtin_names())} goldens stable in {GOLDEN}")
