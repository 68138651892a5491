import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dcont.constructions import strict_to_dc, StrictDirectedContainer
from dcont.containers import NELIST
from dcont.directed import CYCLIC, SUFFIX, DirectedContainer, over, REVERSAL
from dcont.laws import (
    Bounds,
    check_comonad_laws,
    check_dc_laws,
    check_dc_morphism_laws,
    check_roundtrips,
    check_strict_laws,
    replay,
)
from dcont.values import NAT, UNEQUAL, int_range


def perturbed(shift: int, root_cap: int, bump: int) -> DirectedContainer:
    """Suffix with three knobs; (0, 0, 0) is the lawful original."""
    return DirectedContainer(
        NELIST,
        lambda s, p: max(s - p - shift, 0),
        lambda s: min(root_cap, s),
        lambda s, p, q: p + q + (bump if p > 0 and q > 0 else 0),
        f"perturbed({shift},{root_cap},{bump})",
    )


knobs = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))


def test_bounds_validation(monkeypatch):
    with pytest.raises(ValueError):
        Bounds(0, 8, 3)
    monkeypatch.setenv("DCONT_DEFAULT_BOUNDS", "4,5,6")
    assert Bounds.from_env() == Bounds(4, 5, 6)
    monkeypatch.setenv("DCONT_DEFAULT_BOUNDS", "4,5")
    with pytest.raises(ValueError):
        Bounds.from_env()
    monkeypatch.delenv("DCONT_DEFAULT_BOUNDS")
    assert Bounds.from_env() == Bounds(6, 8, 3)


def test_report_json_schema(bounds):
    report = check_dc_laws(perturbed(0, 1, 0), bounds)
    data = report.as_json()
    assert list(data) == ["object", "bounds", "laws"]
    assert data["bounds"] == {"shapes": 6, "fuel": 8, "payloads": 3}
    first = data["laws"][0]
    assert first == {"id": "dc-law-1", "status": "fail", "cases": 2, "counterexample": {"s": "1"}}
    assert all(set(x) <= {"id", "status", "cases", "counterexample"} for x in data["laws"])


def test_staging_skips_dependent_laws(bounds):
    report = check_dc_laws(perturbed(0, 2, 0), bounds)
    assert report.entry("dc-law-1").status == "fail"
    law4 = report.entry("dc-law-4")
    assert law4.status == "exhausted" and law4.cases == 0 and "dc-law-1" in law4.note


def test_strict_staging(bounds):
    broken = StrictDirectedContainer(
        NAT, lambda s: int_range(1, s), lambda s, p: s - p, lambda s, p, q: p + q + 1, "overshoot"
    )
    report = check_strict_laws(broken, bounds)
    assert report.entry("strict-law-1").status == "fail"
    assert report.entry("strict-law-2").status == "exhausted"
    assert check_dc_laws(strict_to_dc(broken), bounds).ok is False


def test_reports_are_deterministic(bounds):
    def run():
        reports = [
            check_dc_laws(perturbed(1, 0, 1), bounds),
            check_comonad_laws(CYCLIC, bounds),
            check_roundtrips(SUFFIX, bounds),
            check_dc_morphism_laws(over(REVERSAL, SUFFIX, SUFFIX), bounds),
        ]
        return json.dumps([r.as_json() for r in reports], sort_keys=True)

    assert run() == run()


@given(knobs)
def test_every_counterexample_replays(k):
    report = check_dc_laws(perturbed(*k), Bounds(5, 8, 3))
    for entry in report.entries:
        if entry.status == "fail":
            assert replay(entry) is UNEQUAL
    if k == (0, 0, 0):
        assert report.all_pass


@given(knobs, st.integers(2, 5), st.integers(0, 3), st.integers(1, 4))
def test_failures_persist_under_larger_bounds(k, shapes, extra_shapes, fuel):
    small = Bounds(shapes, fuel, 3)
    large = Bounds(shapes + extra_shapes, fuel + 2, 3)
    e = perturbed(*k)
    before, after = check_dc_laws(e, small), check_dc_laws(e, large)
    for x, y in zip(before.entries, after.entries):
        if x.status == "fail":
            assert y.status == "fail"
            # shapes come out in the same order, so the witness shape cannot move later
            assert y.counterexample["s"] <= x.counterexample["s"]


def test_comonad_failure_under_broken_root(bounds):
    report = check_comonad_laws(perturbed(0, 1, 0), bounds)
    entry = report.entry("comonad-right-counit")
    assert entry.status == "fail" and replay(entry) is UNEQUAL


def test_replay_needs_a_failure(bounds):
    entry = check_dc_laws(SUFFIX, bounds).entries[0]
    with pytest.raises(ValueError):
        replay(entry)
