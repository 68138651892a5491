"""Bounded exhaustive law checking.

Every law is a family of cases produced in canonical enumeration order.  A
case evaluates to ``EQUAL``, ``UNEQUAL`` or ``EXHAUSTED``; the first
``UNEQUAL`` case becomes the reported counterexample.  A law whose position
quantifiers were cut short by fuel, or whose cases ran out of fuel, is
reported as ``exhausted`` instead of ``pass``.  Truncating the shape
enumeration at ``shape_bound`` is the intended finitization and does not by
itself make a law ``exhausted``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .containers import (
    Container,
    ContainerMorphism,
    DataStructure,
    apply_morphism,
    compose_morphisms,
    ds_eq,
    identity_morphism,
    interpret_map,
    morphism_eq,
    quote_transformation,
    same_container,
)
from .directed import (
    MORPHISMS,
    ComonadWitness,
    DCMorphism,
    DirectedContainer,
    dc_from_comonad,
    interpret,
)
from .errors import DcontError, FuelExhausted
from .monadic import (
    ContainerMonoid,
    list_items,
    list_structure,
    monoid_flatten,
    monoid_map,
    monoid_unit,
    update_eta,
    update_map,
    update_mu,
)
from .values import (
    EQUAL,
    EXHAUSTED,
    UNEQUAL,
    EqResult,
    Pair,
    Symbol,
    render,
    quantify,
    take_bounded,
    value_eq,
)

PASS, FAIL, EXHAUST = "pass", "fail", "exhausted"


@dataclass(frozen=True)
class Bounds:
    shape_bound: int = 6
    position_fuel: int = 8
    payload_samples: int = 3

    def __post_init__(self):
        for name in ("shape_bound", "position_fuel", "payload_samples"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_env(cls, var: str = "DCONT_DEFAULT_BOUNDS") -> "Bounds":
        raw = os.environ.get(var)
        if not raw:
            return cls()
        parts = [int(x) for x in raw.split(",")]
        if len(parts) != 3:
            raise ValueError(f"{var} must be 'shapes,fuel,payloads'")
        return cls(*parts)

    def as_json(self) -> dict:
        return {"shapes": self.shape_bound, "fuel": self.position_fuel, "payloads": self.payload_samples}


@dataclass
class LawEntry:
    law_id: str
    status: str
    cases: int
    counterexample: Optional[dict] = None
    note: Optional[str] = None
    replay: Optional[Callable[[], EqResult]] = field(default=None, repr=False, compare=False)

    def rendered_counterexample(self) -> Optional[dict]:
        if self.counterexample is None:
            return None
        return {k: render(v) for k, v in self.counterexample.items()}

    def as_json(self) -> dict:
        out: dict = {"id": self.law_id, "status": self.status, "cases": self.cases}
        if self.counterexample is not None:
            out["counterexample"] = self.rendered_counterexample()
        return out

    def describe(self) -> str:
        text = f"{self.law_id}: {self.status} ({self.cases} cases)"
        if self.counterexample is not None:
            text += " at " + ", ".join(f"{k}={v}" for k, v in self.rendered_counterexample().items())
        if self.note:
            text += f" [{self.note}]"
        return text


@dataclass
class LawReport:
    subject: str
    bounds: Bounds
    entries: List[LawEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    @property
    def all_pass(self) -> bool:
        return all(e.status == PASS for e in self.entries)

    def entry(self, law_id: str) -> LawEntry:
        for e in self.entries:
            if e.law_id == law_id:
                return e
        raise KeyError(law_id)

    def first_failure(self) -> Optional[LawEntry]:
        return next((e for e in self.entries if e.status == FAIL), None)

    def extend(self, other: "LawReport") -> "LawReport":
        self.entries.extend(other.entries)
        return self

    def as_json(self) -> dict:
        return {"object": self.subject, "bounds": self.bounds.as_json(), "laws": [e.as_json() for e in self.entries]}

    def describe(self) -> str:
        lines = [f"{self.subject}:"] + [f"  {e.describe()}" for e in self.entries]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# engine


class Scope:
    """Bounded quantifiers that remember whether anything was cut short."""

    def __init__(self, bounds: Bounds):
        self.bounds = bounds
        self.truncated = False

    def shapes(self, c: Any) -> list:
        enum = c.shapes if hasattr(c, "shapes") else c
        try:
            items, _ = take_bounded(enum, self.bounds.shape_bound)
        except FuelExhausted:
            self.truncated = True
            return []
        return items

    def positions(self, c: Any, s: Any) -> list:
        try:
            items, truncated = quantify(c.positions(s), self.bounds.position_fuel)
        except FuelExhausted:
            self.truncated = True
            return []
        if truncated:
            self.truncated = True
        return items

    def value(self, thunk: Callable[[], Any]) -> Any:
        """Evaluate a quantifier-building expression; ``_SKIP`` if out of fuel."""
        try:
            return thunk()
        except FuelExhausted:
            self.truncated = True
            return _SKIP


_SKIP = object()

Case = Tuple[dict, Callable[[], Any]]


def _outcome(raw: Any) -> Tuple[EqResult, Optional[str]]:
    if isinstance(raw, tuple):
        return raw
    if isinstance(raw, bool):
        return (EQUAL if raw else UNEQUAL), None
    return raw, None


def run_law(law_id: str, generate: Callable[[Scope], Iterator[Case]], bounds: Bounds,
            skip_because: Optional[str] = None) -> LawEntry:
    if skip_because is not None:
        return LawEntry(law_id, EXHAUST, 0, note=skip_because)
    scope = Scope(bounds)
    cases = 0
    exhausted = False
    try:
        for assignment, check in generate(scope):
            cases += 1
            try:
                result, note = _outcome(check())
            except FuelExhausted:
                exhausted = True
                continue
            except (DcontError, ArithmeticError, IndexError, KeyError, TypeError, AttributeError) as err:
                return LawEntry(law_id, FAIL, cases, dict(assignment), f"ill-typed: {err}", check)
            if result is UNEQUAL:
                return LawEntry(law_id, FAIL, cases, dict(assignment), note, check)
            if result is EXHAUSTED:
                exhausted = True
    except FuelExhausted:
        exhausted = True
    status = EXHAUST if (exhausted or scope.truncated) else PASS
    return LawEntry(law_id, status, cases)


def replay(entry: LawEntry) -> EqResult:
    """Re-evaluate a failing case on its own."""
    if entry.replay is None:
        raise ValueError(f"{entry.law_id} has no recorded case")
    try:
        result, _ = _outcome(entry.replay())
    except FuelExhausted:
        return EXHAUSTED
    except (DcontError, ArithmeticError, IndexError, KeyError, TypeError, AttributeError):
        return UNEQUAL
    return result


def _typed(c: Any, s: Any, p: Any, what: str) -> Optional[Tuple[EqResult, str]]:
    """A failing outcome when ``p`` is decidably not a position of ``s``."""
    if c.has_position(s, p) is False:
        return UNEQUAL, f"{what} = {render(p)} is not a position of {render(s)}"
    return None


def _eq(a: Any, b: Any, fuel: int) -> EqResult:
    return value_eq(a, b, fuel)


# ---------------------------------------------------------------------------
# directed container laws


def check_dc_laws(e: DirectedContainer, b: Bounds = Bounds()) -> LawReport:
    fuel = b.position_fuel
    base = e.base
    report = LawReport(e.name, b)

    def law1(sc: Scope):
        for s in sc.shapes(base):
            def check(s=s):
                o = e.root(s)
                bad = _typed(base, s, o, "root")
                return bad or _eq(e.down(s, o), s, fuel)
            yield {"s": s}, check

    def law2(sc: Scope):
        for s in sc.shapes(base):
            for p in sc.positions(base, s):
                s1 = sc.value(lambda: e.down(s, p))
                if s1 is _SKIP:
                    continue
                for p1 in sc.positions(base, s1):
                    def check(s=s, p=p, s1=s1, p1=p1):
                        q = e.plus(s, p, p1)
                        bad = _typed(base, s, q, "p (+) p1")
                        return bad or _eq(e.down(s, q), e.down(s1, p1), fuel)
                    yield {"s": s, "p": p, "p1": p1}, check

    def law3(sc: Scope):
        for s in sc.shapes(base):
            for p in sc.positions(base, s):
                def check(s=s, p=p):
                    return _eq(e.plus(s, p, e.root(e.down(s, p))), p, fuel)
                yield {"s": s, "p": p}, check

    def law4(sc: Scope):
        for s in sc.shapes(base):
            for p in sc.positions(base, s):
                def check(s=s, p=p):
                    return _eq(e.plus(s, e.root(s), p), p, fuel)
                yield {"s": s, "p": p}, check

    def law5(sc: Scope):
        for s in sc.shapes(base):
            for p in sc.positions(base, s):
                s1 = sc.value(lambda: e.down(s, p))
                if s1 is _SKIP:
                    continue
                for p1 in sc.positions(base, s1):
                    s2 = sc.value(lambda: e.down(s1, p1))
                    if s2 is _SKIP:
                        continue
                    for p2 in sc.positions(base, s2):
                        def check(s=s, p=p, s1=s1, p1=p1, p2=p2):
                            left = e.plus(s, e.plus(s, p, p1), p2)
                            right = e.plus(s, p, e.plus(s1, p1, p2))
                            return _eq(left, right, fuel)
                        yield {"s": s, "p": p, "p1": p1, "p2": p2}, check

    r1 = run_law("dc-law-1", law1, b)
    r2 = run_law("dc-law-2", law2, b)
    r3 = run_law("dc-law-3", law3, b)
    r4 = run_law("dc-law-4", law4, b, "skipped: dc-law-1 failed" if r1.status == FAIL else None)
    r5 = run_law("dc-law-5", law5, b, "skipped: dc-law-2 failed" if r2.status == FAIL else None)
    report.entries += [r1, r2, r3, r4, r5]
    return report


def check_dc_morphism_laws(h: DCMorphism, b: Bounds = Bounds()) -> LawReport:
    fuel = b.position_fuel
    src, tgt = h.source, h.target
    report = LawReport(h.name, b)

    def m1(sc: Scope):
        for s in sc.shapes(src.base):
            ts = sc.value(lambda: h.t(s))
            if ts is _SKIP:
                continue
            for p in sc.positions(tgt.base, ts):
                def check(s=s, ts=ts, p=p):
                    qp = h.q(s, p)
                    bad = _typed(src.base, s, qp, "q p")
                    return bad or _eq(h.t(src.down(s, qp)), tgt.down(ts, p), fuel)
                yield {"s": s, "p": p}, check

    def m2(sc: Scope):
        for s in sc.shapes(src.base):
            def check(s=s):
                return _eq(src.root(s), h.q(s, tgt.root(h.t(s))), fuel)
            yield {"s": s}, check

    def m3(sc: Scope):
        for s in sc.shapes(src.base):
            ts = sc.value(lambda: h.t(s))
            if ts is _SKIP:
                continue
            for p in sc.positions(tgt.base, ts):
                ts1 = sc.value(lambda: tgt.down(ts, p))
                if ts1 is _SKIP:
                    continue
                for p1 in sc.positions(tgt.base, ts1):
                    def check(s=s, ts=ts, p=p, p1=p1):
                        qp = h.q(s, p)
                        left = src.plus(s, qp, h.q(src.down(s, qp), p1))
                        right = h.q(s, tgt.plus(ts, p, p1))
                        return _eq(left, right, fuel)
                    yield {"s": s, "p": p, "p1": p1}, check

    r1 = run_law("dc-morphism-m1", m1, b)
    r2 = run_law("dc-morphism-m2", m2, b)
    r3 = run_law("dc-morphism-m3", m3, b, "skipped: dc-morphism-m1 failed" if r1.status == FAIL else None)
    report.entries += [r1, r2, r3]
    return report


def check_morphism_typing(h: ContainerMorphism, b: Bounds = Bounds()) -> LawReport:
    """Shape map lands in target shapes, position map lands in source positions."""
    report = LawReport(h.name, b)

    def typing(sc: Scope):
        for s in sc.shapes(h.source):
            ts = sc.value(lambda: h.t(s))
            if ts is _SKIP:
                continue

            def shape_ok(s=s, ts=ts):
                if not h.target.has_shape(ts):
                    return UNEQUAL, f"t s = {render(ts)} is not a target shape"
                return EQUAL
            yield {"s": s}, shape_ok
            for p in sc.positions(h.target, ts):
                def pos_ok(s=s, p=p):
                    return _typed(h.source, s, h.q(s, p), "q p") or EQUAL
                yield {"s": s, "p": p}, pos_ok

    report.entries.append(run_law("morphism-typing", typing, b))
    return report


# ---------------------------------------------------------------------------
# comonad laws


def sample_assignment(j: int) -> Callable[[Any], Any]:
    """The ``j``-th injective payload assignment ``p ↦ (xj, p)``."""
    tag = Symbol(f"x{j}")
    return lambda p: Pair(tag, p)


def _witness(w: Any) -> ComonadWitness:
    return interpret(w) if isinstance(w, DirectedContainer) else w


def check_comonad_laws(w: Any, b: Bounds = Bounds()) -> LawReport:
    w = _witness(w)
    c = w.container
    fuel, lim = b.position_fuel, b.position_fuel
    report = LawReport(w.name, b)

    def samples(sc: Scope):
        for s in sc.shapes(c):
            for j in range(b.payload_samples):
                yield s, j, DataStructure(c, s, sample_assignment(j))

    def right_counit(sc: Scope):
        for s, j, d in samples(sc):
            dd = sc.value(lambda: w.comult(d))
            if dd is _SKIP:
                continue
            for p in sc.positions(c, s):
                def check(d=d, dd=dd, p=p):
                    r = _eq(dd.shape, d.shape, fuel)
                    return r & _eq(w.counit(dd.assignment(p)), d.assignment(p), fuel)
                yield {"s": s, "sample": j, "p": p}, check

    def left_counit(sc: Scope):
        for s, j, d in samples(sc):
            for p in sc.positions(c, s):
                def check(d=d, p=p):
                    back = w.counit(w.comult(d))
                    if not isinstance(back, DataStructure):
                        return UNEQUAL, "counit of comult is not a structure"
                    r = _eq(back.shape, d.shape, fuel)
                    return r & _eq(back.assignment(p), d.assignment(p), fuel)
                yield {"s": s, "sample": j, "p": p}, check

    def coassociativity(sc: Scope):
        for s, j, d in samples(sc):
            dd = sc.value(lambda: w.comult(d))
            if dd is _SKIP:
                continue
            left = interpret_map(c, w.comult, dd)
            right = w.comult(dd)
            for p in sc.positions(c, s):
                def check(left=left, right=right, p=p):
                    r = _eq(left.shape, right.shape, fuel)
                    return r & ds_eq(left.assignment(p), right.assignment(p), fuel, lim)
                yield {"s": s, "sample": j, "p": p}, check

    report.entries += [
        run_law("comonad-right-counit", right_counit, b),
        run_law("comonad-left-counit", left_counit, b),
        run_law("comonad-coassociativity", coassociativity, b),
    ]
    return report


# ---------------------------------------------------------------------------
# round trips between directed containers, comonads and morphisms


def catalogue_for(c: Container) -> list:
    hits = [h for h in MORPHISMS.values() if same_container(h.source, c)]
    return [identity_morphism(c)] + hits


def check_quote_roundtrip(morphisms: Sequence[ContainerMorphism], b: Bounds = Bounds(),
                          law_id: str = "quote-interpret-morphism") -> LawEntry:
    fuel = b.position_fuel

    def cases(sc: Scope):
        for h in morphisms:
            quoted = quote_transformation(lambda d, h=h: apply_morphism(h, d), h.source, h.target, f"quote({h.name})")
            for s in sc.shapes(h.source):
                ts = sc.value(lambda: h.t(s))
                if ts is _SKIP:
                    continue

                def shape_check(h=h, quoted=quoted, s=s, ts=ts):
                    return _eq(quoted.t(s), ts, fuel)
                yield {"morphism": Symbol(h.name), "s": s}, shape_check
                for p in sc.positions(h.target, ts):
                    def pos_check(h=h, quoted=quoted, s=s, p=p):
                        return _eq(quoted.q(s, p), h.q(s, p), fuel)
                    yield {"morphism": Symbol(h.name), "s": s, "p": p}, pos_check

    return run_law(law_id, cases, b)


def check_roundtrips(e: Any, b: Bounds = Bounds(), morphisms: Optional[Sequence[ContainerMorphism]] = None) -> LawReport:
    """Directed container to comonad and back, in both directions."""
    if isinstance(e, ComonadWitness):
        return _check_witness_roundtrip(e, b)
    fuel = b.position_fuel
    base = e.base
    w = interpret(e)
    report = LawReport(e.name, b)
    report.entries.append(check_quote_roundtrip(morphisms if morphisms is not None else catalogue_for(base), b))

    def preservation(sc: Scope):
        for s in sc.shapes(base):
            def check(s=s):
                from .containers import identity_structure
                return _eq(w.comult(identity_structure(base, s)).shape, s, fuel)
            yield {"s": s}, check

    report.entries.append(run_law("shape-preservation", preservation, b))
    back = dc_from_comonad(w, check_bound=b.shape_bound)

    def dc_roundtrip(sc: Scope):
        for s in sc.shapes(base):
            yield {"s": s, "op": Symbol("root")}, (lambda s=s: _eq(back.root(s), e.root(s), fuel))
            for p in sc.positions(base, s):
                yield {"s": s, "p": p, "op": Symbol("down")}, (
                    lambda s=s, p=p: _eq(back.down(s, p), e.down(s, p), fuel)
                )
                s1 = sc.value(lambda: e.down(s, p))
                if s1 is _SKIP:
                    continue
                for p1 in sc.positions(base, s1):
                    yield {"s": s, "p": p, "p1": p1, "op": Symbol("plus")}, (
                        lambda s=s, p=p, p1=p1: _eq(back.plus(s, p, p1), e.plus(s, p, p1), fuel)
                    )

    report.entries.append(run_law("dc-roundtrip", dc_roundtrip, b))
    report.entries.append(_comonad_roundtrip_entry(w, interpret(back), b))
    return report


def _comonad_roundtrip_entry(w: ComonadWitness, w2: ComonadWitness, b: Bounds) -> LawEntry:
    fuel, lim = b.position_fuel, b.position_fuel
    c = w.container

    def cases(sc: Scope):
        for s in sc.shapes(c):
            for j in range(b.payload_samples):
                d = DataStructure(c, s, sample_assignment(j))
                yield {"s": s, "sample": j, "op": Symbol("counit")}, (
                    lambda d=d: _eq(w2.counit(d), w.counit(d), fuel)
                )
                for p in sc.positions(c, s):
                    def check(d=d, p=p):
                        x, y = w2.comult(d), w.comult(d)
                        r = _eq(x.shape, y.shape, fuel)
                        return r & ds_eq(x.assignment(p), y.assignment(p), fuel, lim)
                    yield {"s": s, "sample": j, "p": p, "op": Symbol("comult")}, check

    return run_law("comonad-roundtrip", cases, b)


def _check_witness_roundtrip(w: ComonadWitness, b: Bounds) -> LawReport:
    report = LawReport(w.name, b)
    report.entries.append(_comonad_roundtrip_entry(w, interpret(dc_from_comonad(w, b.shape_bound)), b))
    return report


# ---------------------------------------------------------------------------
# strict directed containers


def check_strict_laws(k: Any, b: Bounds = Bounds()) -> LawReport:
    fuel = b.position_fuel
    report = LawReport(k.name, b)

    def law1(sc: Scope):
        for s in sc.shapes(k):
            for p in sc.positions(k, s):
                s1 = sc.value(lambda: k.down(s, p))
                if s1 is _SKIP:
                    continue
                for p1 in sc.positions(k, s1):
                    def check(s=s, p=p, s1=s1, p1=p1):
                        return _eq(k.down(s, k.plus(s, p, p1)), k.down(s1, p1), fuel)
                    yield {"s": s, "p": p, "p1": p1}, check

    def law2(sc: Scope):
        for s in sc.shapes(k):
            for p in sc.positions(k, s):
                s1 = sc.value(lambda: k.down(s, p))
                if s1 is _SKIP:
                    continue
                for p1 in sc.positions(k, s1):
                    s2 = sc.value(lambda: k.down(s1, p1))
                    if s2 is _SKIP:
                        continue
                    for p2 in sc.positions(k, s2):
                        def check(s=s, p=p, s1=s1, p1=p1, p2=p2):
                            left = k.plus(s, k.plus(s, p, p1), p2)
                            right = k.plus(s, p, k.plus(s1, p1, p2))
                            return _eq(left, right, fuel)
                        yield {"s": s, "p": p, "p1": p1, "p2": p2}, check

    r1 = run_law("strict-law-1", law1, b)
    r2 = run_law("strict-law-2", law2, b, "skipped: strict-law-1 failed" if r1.status == FAIL else None)
    report.entries += [r1, r2]
    return report


# ---------------------------------------------------------------------------
# universal properties


@dataclass
class UniversalProbe:
    """Inputs to a mediator plus candidate morphisms to test uniqueness against."""

    inputs: tuple
    candidates: Sequence[DCMorphism] = ()
    bounds: Optional[Bounds] = None
    label: str = "probe"


def _worst(entries: Iterable[LawEntry]) -> str:
    statuses = [e.status for e in entries]
    if FAIL in statuses:
        return FAIL
    if EXHAUST in statuses:
        return EXHAUST
    return PASS


def _fold(law_id: str, parts: List[Tuple[dict, LawEntry]]) -> LawEntry:
    """Combine sub-reports into one entry, keeping the first failure."""
    cases = sum(e.cases for _, e in parts)
    for context, e in parts:
        if e.status == FAIL:
            ce = dict(context)
            ce.update(e.counterexample or {})
            return LawEntry(law_id, FAIL, cases, ce, e.note or e.law_id, e.replay)
    return LawEntry(law_id, _worst(e for _, e in parts) if parts else EXHAUST, cases)


def _is_dc_morphism(h: DCMorphism, b: Bounds) -> LawReport:
    return check_dc_morphism_laws(h, b)


def _triangles(kind: str, bundle: Any, med: DCMorphism, inputs: tuple) -> List[Tuple[str, ContainerMorphism, ContainerMorphism]]:
    if kind == "coproduct":
        f0, f1 = inputs
        return [
            ("inl", compose_morphisms(med.underlying, bundle.legs["inl"].underlying), f0.underlying),
            ("inr", compose_morphisms(med.underlying, bundle.legs["inr"].underlying), f1.underlying),
        ]
    if kind == "strict_product":
        f0, f1 = inputs
        return [
            ("pi0", compose_morphisms(bundle.legs["pi0"].underlying, med.underlying), f0.underlying),
            ("pi1", compose_morphisms(bundle.legs["pi1"].underlying, med.underlying), f1.underlying),
        ]
    if kind == "cofree":
        f0, _source = inputs
        return [("pi", compose_morphisms(bundle.legs["pi"], med.underlying), f0)]
    raise ValueError(f"unknown universal kind {kind!r}")


def _mediator(kind: str, bundle: Any, inputs: tuple) -> DCMorphism:
    return bundle.mediator(*inputs)


def _morphism_cases(label: str, h: ContainerMorphism, g: ContainerMorphism, b: Bounds) -> Callable[[Scope], Iterator[Case]]:
    fuel = b.position_fuel

    def cases(sc: Scope):
        for s in sc.shapes(h.source):
            hs = sc.value(lambda: h.t(s))
            if hs is _SKIP:
                continue
            yield {"triangle": Symbol(label), "s": s}, (lambda s=s, hs=hs: _eq(hs, g.t(s), fuel))
            for p in sc.positions(h.target, hs):
                yield {"triangle": Symbol(label), "s": s, "p": p}, (
                    lambda s=s, p=p: _eq(h.q(s, p), g.q(s, p), fuel)
                )

    return cases


def check_universal(kind: str, bundle: Any, probes: Sequence[UniversalProbe], b: Bounds = Bounds()) -> LawReport:
    report = LawReport(f"{kind}:{bundle.object.name}", b)

    legs: List[Tuple[dict, LawEntry]] = []
    for name, leg in bundle.legs.items():
        sub = check_dc_morphism_laws(leg, b) if isinstance(leg, DCMorphism) else check_morphism_typing(leg, b)
        legs += [({"leg": Symbol(name)}, e) for e in sub.entries]
    report.entries.append(_fold("legs-are-dc-morphisms", legs))

    lawful: List[Tuple[dict, LawEntry]] = []
    triangles: List[Tuple[dict, LawEntry]] = []
    unique: List[Tuple[dict, LawEntry]] = []
    for probe in probes:
        pb = probe.bounds or b
        med = _mediator(kind, bundle, probe.inputs)
        ctx = {"probe": Symbol(probe.label)}
        lawful += [(ctx, e) for e in check_dc_morphism_laws(med, pb).entries]
        for label, lhs, rhs in _triangles(kind, bundle, med, probe.inputs):
            triangles.append((ctx, run_law("triangle", _morphism_cases(label, lhs, rhs, pb), pb)))
        unique.append((ctx, _uniqueness(kind, bundle, med, probe, pb)))
    report.entries.append(_fold("mediator-is-dc-morphism", lawful))
    report.entries.append(_fold("triangles-commute", triangles))
    report.entries.append(_fold("mediator-unique-within-bounds", unique))
    return report


def _uniqueness(kind: str, bundle: Any, med: DCMorphism, probe: UniversalProbe, b: Bounds) -> LawEntry:
    candidates = list(probe.candidates) or [med]

    def cases(sc: Scope):
        for i, g in enumerate(candidates):
            def check(g=g):
                if not check_dc_morphism_laws(g, b).ok:
                    return EQUAL  # not a competitor
                for _label, lhs, rhs in _triangles(kind, bundle, g, probe.inputs):
                    if morphism_eq(lhs, rhs, b.shape_bound, b.position_fuel, b.position_fuel) is UNEQUAL:
                        return EQUAL
                r = morphism_eq(g.underlying, med.underlying, b.shape_bound, b.position_fuel, b.position_fuel)
                if r is UNEQUAL:
                    return UNEQUAL, f"candidate {g.name} also commutes but differs from the mediator"
                return r
            yield {"candidate": i}, check

    return run_law("unique", cases, b)


def enumerate_dc_morphisms(
    source: DirectedContainer,
    target: DirectedContainer,
    target_shapes: Sequence[Any],
    shape_ok: Optional[Callable[[Any, Any], bool]] = None,
    position_ok: Optional[Callable[[Any, Any, Any, Any], bool]] = None,
    limit: int = 64,
) -> Iterator[DCMorphism]:
    """Every morphism between finite directed containers that satisfies m1-m3.

    ``shape_ok(s, ts)`` and ``position_ok(s, ts, p, q)`` prune the search
    (they typically encode the triangles of a universal property).
    """
    shapes, truncated = take_bounded(source.shapes, limit)
    if truncated:
        raise ValueError("candidate enumeration needs a finite source")
    options_t = []
    for s in shapes:
        opts = [ts for ts in target_shapes if shape_ok is None or shape_ok(s, ts)]
        options_t.append(opts)

    def pos_list(c, s):
        items, trunc = take_bounded(c.positions(s), limit)
        if trunc:
            raise ValueError("candidate enumeration needs finite position sets")
        return items

    index = {s: i for i, s in enumerate(shapes)}
    for choice in itertools.product(*options_t):
        t_table = dict(zip(shapes, choice))
        per_shape = []
        for s in shapes:
            ts = t_table[s]
            tps = pos_list(target.base, ts)
            sps = pos_list(source.base, s)
            valid = []
            for qs in itertools.product(sps, repeat=len(tps)):
                q_table = dict(zip(tps, qs))
                if value_eq(q_table.get(target.root(ts)), source.root(s)) is not EQUAL:
                    continue
                ok = True
                for p, qp in q_table.items():
                    if position_ok is not None and not position_ok(s, ts, p, qp):
                        ok = False
                        break
                    s2 = source.down(s, qp)
                    if s2 not in index or value_eq(t_table[s2], target.down(ts, p)) is not EQUAL:
                        ok = False
                        break
                if ok:
                    valid.append(q_table)
            per_shape.append(valid)
        for qs in itertools.product(*per_shape):
            q_tables = dict(zip(shapes, qs))
            if all(_m3_holds(source, target, t_table, q_tables, s) for s in shapes):
                yield _tabulated(source, target, t_table, q_tables)


def _m3_holds(source, target, t_table, q_tables, s) -> bool:
    ts = t_table[s]
    q = q_tables[s]
    for p, qp in q.items():
        s1 = source.down(s, qp)
        q1 = q_tables[s1]
        for p1, qp1 in q1.items():
            joined = target.plus(ts, p, p1)
            if value_eq(source.plus(s, qp, qp1), q.get(joined)) is not EQUAL:
                return False
    return True


_CANDIDATES = itertools.count()


def _tabulated(source, target, t_table: dict, q_tables: dict) -> DCMorphism:
    from .directed import dc_morphism

    return dc_morphism(
        source, target, lambda s: t_table[s], lambda s, p: q_tables[s][p], f"candidate-{next(_CANDIDATES)}"
    )


# ---------------------------------------------------------------------------
# monad-side laws


def _pick(e: DirectedContainer, s: Any, k: int, fuel: int) -> Any:
    items, _ = take_bounded(e.positions(s), fuel)
    return items[k % len(items)]


def check_update_monad_laws(e: DirectedContainer, b: Bounds = Bounds()) -> LawReport:
    fuel = b.position_fuel
    report = LawReport(f"update[{e.name}]", b)
    ks = range(b.payload_samples)

    def element(k: int) -> Callable[[Any], Pair]:
        return lambda s: Pair(_pick(e, s, k, fuel), Pair(Symbol(f"x{k}"), s))

    def left_unit(sc: Scope):
        for s in sc.shapes(e):
            for k in ks:
                u = element(k)
                yield {"s": s, "sample": k}, (
                    lambda s=s, u=u: _eq(update_mu(e, update_eta(e, u))(s), u(s), fuel)
                )

    def right_unit(sc: Scope):
        for s in sc.shapes(e):
            for k in ks:
                u = element(k)
                lifted = update_map(lambda x: update_eta(e, x), u)
                yield {"s": s, "sample": k}, (
                    lambda s=s, u=u, lifted=lifted: _eq(update_mu(e, lifted)(s), u(s), fuel)
                )

    def nested(k1: int, k2: int, k3: int) -> Callable[[Any], Pair]:
        def level3(s0, s1):
            return lambda s2: Pair(_pick(e, s2, k3, fuel), Pair(s0, Pair(s1, s2)))

        def level2(s0):
            return lambda s1: Pair(_pick(e, s1, k2, fuel), level3(s0, s1))

        return lambda s0: Pair(_pick(e, s0, k1, fuel), level2(s0))

    def associativity(sc: Scope):
        for s in sc.shapes(e):
            for k1, k2, k3 in itertools.product(ks, repeat=3):
                f = nested(k1, k2, k3)
                yield {"s": s, "k1": k1, "k2": k2, "k3": k3}, (
                    lambda s=s, f=f: _eq(
                        update_mu(e, update_mu(e, f))(s),
                        update_mu(e, update_map(lambda g: update_mu(e, g), f))(s),
                        fuel,
                    )
                )

    report.entries += [
        run_law("update-left-unit", left_unit, b),
        run_law("update-right-unit", right_unit, b),
        run_law("update-associativity", associativity, b),
    ]
    return report


def _nested_lists(lengths: Sequence[int], counter: Iterator[int]) -> list:
    return [[Symbol(f"y{next(counter)}") for _ in range(n)] for n in lengths]


def check_list_monoid_laws(m: ContainerMonoid, b: Bounds = Bounds(), max_outer: int = 4, max_inner: int = 3) -> LawReport:
    report = LawReport(f"monoid[{m.name}]", b)

    def shapes_of(outer: int, inner: int) -> Iterator[tuple]:
        for n in range(outer + 1):
            yield from itertools.product(range(inner + 1), repeat=n)

    def to_structure(nested: list) -> DataStructure:
        return list_structure([list_structure(xs) for xs in nested])

    def concatenation(sc: Scope):
        for lengths in shapes_of(max_outer, max_inner):
            nested = _nested_lists(lengths, itertools.count())

            def check(nested=nested):
                flat = monoid_flatten(m, to_structure(nested))
                expected = [x for xs in nested for x in xs]
                return _eq(Pair(flat.shape, tuple(list_items(flat))), Pair(len(expected), tuple(expected)), 4)
            yield {"lengths": Pair(len(lengths), tuple(lengths))}, check

    def flat_items(d: DataStructure) -> tuple:
        return tuple(list_items(d))

    def left_unit(sc: Scope):
        for n in range(b.shape_bound):
            d = list_structure([Symbol(f"y{i}") for i in range(n)])
            yield {"length": n}, (lambda d=d: flat_items(monoid_flatten(m, monoid_unit(m, d))) == flat_items(d))

    def right_unit(sc: Scope):
        for n in range(b.shape_bound):
            d = list_structure([Symbol(f"y{i}") for i in range(n)])
            yield {"length": n}, (
                lambda d=d: flat_items(monoid_flatten(m, monoid_map(m, lambda x: monoid_unit(m, x), d))) == flat_items(d)
            )

    def associativity(sc: Scope):
        for outer in range(4):
            for mids in itertools.product(range(3), repeat=outer):
                inner_shapes = [list(itertools.product(range(3), repeat=k)) for k in mids]
                for inners in itertools.product(*inner_shapes):
                    counter = itertools.count()
                    triple = list_structure([
                        list_structure([list_structure([Symbol(f"y{next(counter)}") for _ in range(n)]) for n in block])
                        for block in inners
                    ])

                    def check(triple=triple):
                        a = monoid_flatten(m, monoid_flatten(m, triple))
                        b2 = monoid_flatten(m, monoid_map(m, lambda d: monoid_flatten(m, d), triple))
                        return flat_items(a) == flat_items(b2)
                    yield {"shape": Pair(outer, tuple(mids))}, check

    report.entries += [
        run_law("flatten-is-concatenation", concatenation, b),
        run_law("monoid-left-unit", left_unit, b),
        run_law("monoid-right-unit", right_unit, b),
        run_law("monoid-associativity", associativity, b),
    ]
    return report


# ---------------------------------------------------------------------------
# functor laws and monoidal coherence


def check_functor_laws(c: Container, b: Bounds = Bounds()) -> LawReport:
    fuel, lim = b.position_fuel, b.position_fuel
    report = LawReport(f"functor[{c.name}]", b)
    f = lambda x: Pair(Symbol("f"), x)  # noqa: E731
    g = lambda x: Pair(Symbol("g"), x)  # noqa: E731

    def identity(sc: Scope):
        for s in sc.shapes(c):
            for j in range(b.payload_samples):
                d = DataStructure(c, s, sample_assignment(j))
                yield {"s": s, "sample": j}, (lambda d=d: ds_eq(interpret_map(c, lambda x: x, d), d, fuel, lim))

    def composition(sc: Scope):
        for s in sc.shapes(c):
            for j in range(b.payload_samples):
                d = DataStructure(c, s, sample_assignment(j))
                yield {"s": s, "sample": j}, (
                    lambda d=d: ds_eq(
                        interpret_map(c, lambda x: f(g(x)), d),
                        interpret_map(c, f, interpret_map(c, g, d)),
                        fuel,
                        lim,
                    )
                )

    report.entries += [run_law("functor-identity", identity, b), run_law("functor-composition", composition, b)]
    return report


def check_iso(label: str, forward: ContainerMorphism, backward: ContainerMorphism, b: Bounds = Bounds()) -> LawReport:
    """Both composites of a pair of morphisms are identities on bounded shapes."""
    report = LawReport(label, b)
    there = compose_morphisms(backward, forward)
    back = compose_morphisms(forward, backward)
    report.entries.append(
        run_law(f"{label}-inverse-left", _morphism_cases("left", there, identity_morphism(forward.source), b), b)
    )
    report.entries.append(
        run_law(f"{label}-inverse-right", _morphism_cases("right", back, identity_morphism(backward.source), b), b)
    )
    return report


def check_morphisms_equal(label: str, h: ContainerMorphism, g: ContainerMorphism, b: Bounds = Bounds()) -> LawEntry:
    return run_law(label, _morphism_cases(label, h, g, b), b)


def check_dc_iso(label: str, forward: DCMorphism, backward: DCMorphism, b: Bounds = Bounds()) -> LawReport:
    report = check_dc_morphism_laws(forward, b)
    for entry in report.entries:
        entry.law_id = f"forward-{entry.law_id}"
    for entry in check_dc_morphism_laws(backward, b).entries:
        entry.law_id = f"backward-{entry.law_id}"
        report.entries.append(entry)
    report.extend(check_iso(label, forward.underlying, backward.underlying, b))
    report.subject = label
    return report
