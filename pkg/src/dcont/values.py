"""Universal immutable values, bounded enumerations and fuel-bounded equality.

Shapes, positions and payloads are all drawn from one small value universe:

* unit (``UNIT``), booleans and Python ints (signed, unbounded),
* ``Symbol`` for interned names,
* ``Pair``, ``Inl``/``Inr``, ``Nothing``/``Just`` and ``Seq``,
* ``Susp`` for lazily produced values (corecursive shapes).

Equality between values that may hide suspensions is only semi-decidable, so
``value_eq`` is tri-state and never turns an unobserved difference into
``EQUAL``.
"""

from __future__ import annotations

import enum
import itertools
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

from .errors import FuelExhausted


class Unit:
    """The single element of the one-point set."""

    _instance: Optional["Unit"] = None

    def __new__(cls) -> "Unit":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNIT"

    def __reduce__(self):
        return (Unit, ())


UNIT = Unit()


@dataclass(frozen=True)
class Symbol:
    name: str

    def __repr__(self) -> str:
        return f"Symbol({self.name!r})"


@dataclass(frozen=True)
class Pair:
    fst: Any
    snd: Any


@dataclass(frozen=True)
class Inl:
    value: Any


@dataclass(frozen=True)
class Inr:
    value: Any


class NothingType:
    _instance: Optional["NothingType"] = None

    def __new__(cls) -> "NothingType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOTHING"


NOTHING = NothingType()


@dataclass(frozen=True)
class Just:
    value: Any


@dataclass(frozen=True)
class Seq:
    items: tuple

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __iter__(self):
        return iter(self.items)


def seq(items: Iterable[Any]) -> Seq:
    return Seq(tuple(items))


class Susp:
    """A deferred value; the producer runs at most once, even across threads."""

    __slots__ = ("_thunk", "_value", "_done", "_lock")

    def __init__(self, thunk: Callable[[], Any]):
        self._thunk = thunk
        self._value = None
        self._done = False
        self._lock = threading.Lock()

    @property
    def forced(self) -> bool:
        return self._done

    def force(self) -> Any:
        if not self._done:
            with self._lock:
                if not self._done:
                    self._value = self._thunk()
                    self._done = True
                    self._thunk = None
        return self._value

    def __repr__(self) -> str:
        return "Susp(...)" if not self._done else f"Susp({self._value!r})"


def truncated(depth: int) -> Susp:
    """A suspension standing for the part of a tree beyond ``depth``."""

    def boom():
        raise FuelExhausted(f"shape unfolding beyond depth {depth}")

    return Susp(boom)


def whnf(v: Any) -> Any:
    """Strip every suspension layer off the top of ``v``."""
    while isinstance(v, Susp):
        v = v.force()
    return v


def inl(v: Any) -> Inl:
    return Inl(v)


def inr(v: Any) -> Inr:
    return Inr(v)


def just(v: Any) -> Just:
    return Just(v)


def sym(name: str) -> Symbol:
    return Symbol(name)


# ---------------------------------------------------------------------------
# equality


class EqResult(enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    EXHAUSTED = "exhausted"

    def __and__(self, other: "EqResult") -> "EqResult":
        if EqResult.UNEQUAL in (self, other):
            return EqResult.UNEQUAL
        if EqResult.EXHAUSTED in (self, other):
            return EqResult.EXHAUSTED
        return EqResult.EQUAL


EQUAL, UNEQUAL, EXHAUSTED = EqResult.EQUAL, EqResult.UNEQUAL, EqResult.EXHAUSTED


def _kind(v: Any) -> str:
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    return type(v).__name__


def value_eq(a: Any, b: Any, fuel: int = 8) -> EqResult:
    """Compare two values, forcing at most ``fuel`` nested suspensions.

    ``EXHAUSTED`` means no difference was seen but some suspension was left
    unforced (or could not be forced) within the budget.
    """
    if a is b:
        return EQUAL
    if isinstance(a, Susp) or isinstance(b, Susp):
        if fuel <= 0:
            return EXHAUSTED
        try:
            a2 = a.force() if isinstance(a, Susp) else a
            b2 = b.force() if isinstance(b, Susp) else b
        except FuelExhausted:
            return EXHAUSTED
        return value_eq(a2, b2, fuel - 1)
    ka, kb = _kind(a), _kind(b)
    if ka != kb:
        return UNEQUAL
    if isinstance(a, (Pair,)):
        return _and_lazy(lambda: value_eq(a.fst, b.fst, fuel), lambda: value_eq(a.snd, b.snd, fuel))
    if isinstance(a, (Inl, Inr, Just)):
        return value_eq(a.value, b.value, fuel)
    if isinstance(a, Seq):
        if len(a.items) != len(b.items):
            return UNEQUAL
        result = EQUAL
        for x, y in zip(a.items, b.items):
            r = value_eq(x, y, fuel)
            if r is UNEQUAL:
                return UNEQUAL
            result = result & r
        return result
    return EQUAL if a == b else UNEQUAL


def _and_lazy(first: Callable[[], EqResult], second: Callable[[], EqResult]) -> EqResult:
    r = first()
    if r is UNEQUAL:
        return r
    return r & second()


def is_finite_value(v: Any) -> bool:
    """True when ``v`` contains no suspension (forced or not)."""
    if isinstance(v, Susp):
        return False
    if isinstance(v, Pair):
        return is_finite_value(v.fst) and is_finite_value(v.snd)
    if isinstance(v, (Inl, Inr, Just)):
        return is_finite_value(v.value)
    if isinstance(v, Seq):
        return all(is_finite_value(x) for x in v.items)
    return True


# ---------------------------------------------------------------------------
# rendering


def render(v: Any, depth: int = 6) -> str:
    """Compact human-readable text for a value (suspensions shown to ``depth``)."""
    if isinstance(v, Susp):
        if depth <= 0:
            return "..."
        try:
            return render(v.force(), depth - 1)
        except FuelExhausted:
            return "..."
    if v is UNIT:
        return "*"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Symbol):
        return v.name
    if isinstance(v, Pair):
        return f"({render(v.fst, depth)},{render(v.snd, depth)})"
    if isinstance(v, Inl):
        return f"inl {_atom(v.value, depth)}"
    if isinstance(v, Inr):
        return f"inr {_atom(v.value, depth)}"
    if v is NOTHING:
        return "nothing"
    if isinstance(v, Just):
        return f"just {_atom(v.value, depth)}"
    if isinstance(v, Seq):
        return "[" + ",".join(render(x, depth) for x in v.items) + "]"
    render_hook = getattr(v, "render", None)
    if render_hook is not None:
        return render_hook()
    return repr(v)


def _atom(v: Any, depth: int) -> str:
    text = render(v, depth)
    if " " in text and not text.startswith(("(", "[")):
        return f"({text})"
    return text


# ---------------------------------------------------------------------------
# lazy tables: finite tuples or suspended cons-streams of values


def lazy_table(items: Iterable[Any]) -> Susp:
    """A suspended cons-stream ``Pair(head, Susp(tail))`` ending in ``NOTHING``."""
    it = iter(items)

    def step():
        try:
            head = next(it)
        except StopIteration:
            return NOTHING
        return Pair(head, Susp(step))

    return Susp(step)


def table_get(table: Any, index: int) -> Any:
    """Entry ``index`` of a ``Seq`` or of a (possibly suspended) cons-stream."""
    table = whnf(table)
    if isinstance(table, Seq):
        return table.items[index]
    for _ in range(index):
        if not isinstance(table, Pair):
            raise IndexError(index)
        table = whnf(table.snd)
    if not isinstance(table, Pair):
        raise IndexError(index)
    return table.fst


# ---------------------------------------------------------------------------
# enumerations


@dataclass(frozen=True, eq=False)
class Enumeration:
    """A deterministic, duplicate-free stream of values.

    ``cardinality`` is the exact size when known to be finite and ``None``
    otherwise.  ``contains`` is an optional membership test; without one,
    membership falls back to a bounded search.
    """

    producer: Callable[[], Iterator[Any]]
    cardinality: Optional[int] = None
    contains: Optional[Callable[[Any], bool]] = None
    name: str = "?"
    _cache: dict = field(default_factory=dict, repr=False)

    def __iter__(self) -> Iterator[Any]:
        return self.producer()

    @property
    def finite(self) -> bool:
        return self.cardinality is not None

    def take(self, limit: int) -> list:
        if limit <= 0:
            return []
        if self.cardinality is not None and limit >= self.cardinality:
            cached = self._cache.get("all")
            if cached is None:
                cached = list(self.producer())
                self._cache["all"] = cached
            return list(cached)
        return list(itertools.islice(self.producer(), limit))

    def truncated_at(self, limit: int) -> bool:
        """Whether ``take(limit)`` misses elements of this enumeration."""
        if self.cardinality is None:
            return len(self.take(limit + 1)) > limit
        return self.cardinality > limit

    def member(self, v: Any, search_limit: int = 256) -> bool:
        if self.contains is not None:
            return self.contains(v)
        limit = self.cardinality if self.cardinality is not None else search_limit
        return any(value_eq(v, x) is EQUAL for x in self.take(limit))

    def index(self, v: Any) -> int:
        """Position of ``v`` in enumeration order (finite enumerations only)."""
        table = self._cache.get("index")
        if table is None:
            if self.cardinality is None:
                raise ValueError(f"cannot index into unbounded enumeration {self.name}")
            table = {x: i for i, x in enumerate(self.take(self.cardinality))}
            self._cache["index"] = table
        try:
            return table[v]
        except (KeyError, TypeError):
            raise KeyError(v) from None

    def __repr__(self) -> str:
        return f"Enumeration({self.name}, cardinality={self.cardinality})"


def take(e: Enumeration, limit: int) -> list:
    """The first ``min(limit, cardinality)`` values of ``e``."""
    return e.take(limit)


def finite(values: Iterable[Any], name: str = "finite") -> Enumeration:
    items = tuple(values)
    keyed = set()
    try:
        keyed = set(items)
    except TypeError:
        keyed = None
    contains = (lambda v: v in keyed) if keyed is not None else None
    return Enumeration(lambda: iter(items), len(items), contains, name)


def fin(n: int) -> Enumeration:
    n = max(n, 0)
    return Enumeration(
        lambda: iter(range(n)),
        n,
        lambda v: _is_int(v) and 0 <= v < n,
        f"fin({n})",
    )


def int_range(lo: int, hi: int) -> Enumeration:
    """Integers ``lo..hi`` inclusive, ascending."""
    size = max(hi - lo + 1, 0)
    return Enumeration(
        lambda: iter(range(lo, hi + 1)),
        size,
        lambda v: _is_int(v) and lo <= v <= hi,
        f"int-range({lo},{hi})",
    )


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


NAT = Enumeration(
    lambda: itertools.count(0), None, lambda v: _is_int(v) and v >= 0, "nat"
)


def _integers() -> Iterator[int]:
    yield 0
    for n in itertools.count(1):
        yield n
        yield -n


INTEGERS = Enumeration(_integers, None, _is_int, "int")

UNIT_SET = Enumeration(lambda: iter((UNIT,)), 1, lambda v: v is UNIT, "unit")

EMPTY = Enumeration(lambda: iter(()), 0, lambda v: False, "empty")

BOOLS = Enumeration(
    lambda: iter((False, True)), 2, lambda v: isinstance(v, bool), "bool"
)


class _Memo:
    """Shares the prefix of an iterator between several readers."""

    def __init__(self, it: Iterator[Any]):
        self._it = it
        self.items: list = []
        self.done = False

    def get(self, i: int) -> bool:
        while len(self.items) <= i and not self.done:
            try:
                self.items.append(next(self._it))
            except StopIteration:
                self.done = True
        return i < len(self.items)


def _mul(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a == 0 or b == 0:
        return 0
    if a is None or b is None:
        return None
    return a * b


def _add(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None or b is None:
        return None
    return a + b


def diagonal(a: Enumeration, b: Enumeration) -> Iterator[tuple]:
    """Fair (Cantor) enumeration of all pairs drawn from two enumerations."""
    ma, mb = _Memo(iter(a)), _Memo(iter(b))
    if not ma.get(0) or not mb.get(0):
        return
    for n in itertools.count(0):
        for i in range(n + 1):
            if not ma.get(i):
                break
            if mb.get(n - i):
                yield ma.items[i], mb.items[n - i]
        if ma.done and mb.done and n >= len(ma.items) + len(mb.items) - 2:
            return


def product(a: Enumeration, b: Enumeration, name: Optional[str] = None) -> Enumeration:
    """``a × b`` as ``Pair`` values in diagonal order."""

    def produce():
        for x, y in diagonal(a, b):
            yield Pair(x, y)

    def contains(v):
        return isinstance(v, Pair) and a.member(v.fst) and b.member(v.snd)

    return Enumeration(produce, _mul(a.cardinality, b.cardinality), contains, name or f"{a.name}*{b.name}")


def coproduct(a: Enumeration, b: Enumeration, name: Optional[str] = None) -> Enumeration:
    """``a + b`` as ``Inl``/``Inr`` values, interleaved."""

    def produce():
        ia, ib = iter(a), iter(b)
        live_a = live_b = True
        while live_a or live_b:
            if live_a:
                try:
                    yield Inl(next(ia))
                except StopIteration:
                    live_a = False
            if live_b:
                try:
                    yield Inr(next(ib))
                except StopIteration:
                    live_b = False

    def contains(v):
        if isinstance(v, Inl):
            return a.member(v.value)
        if isinstance(v, Inr):
            return b.member(v.value)
        return False

    return Enumeration(produce, _add(a.cardinality, b.cardinality), contains, name or f"{a.name}+{b.name}")


def options(a: Enumeration) -> Enumeration:
    """``Maybe a``: ``nothing`` first, then ``just x`` in ``a``'s order."""

    def produce():
        yield NOTHING
        for x in a:
            yield Just(x)

    def contains(v):
        return v is NOTHING or (isinstance(v, Just) and a.member(v.value))

    return Enumeration(produce, _add(a.cardinality, 1), contains, f"maybe({a.name})")


def sigma(a: Enumeration, family: Callable[[Any], Enumeration], name: Optional[str] = None,
          count: bool = True, contains: Optional[Callable[[Any], bool]] = None) -> Enumeration:
    """Dependent pairs ``Σ x : a. family(x)`` in fair diagonal order.

    With ``count=False`` the cardinality is left unknown instead of being
    computed by visiting every fibre (needed when fibres unfold lazily).
    """

    def produce():
        outer = _Memo(iter(a))
        inners: list = []
        for n in itertools.count(0):
            progressed = False
            for i in range(n + 1):
                if not outer.get(i):
                    break
                if len(inners) <= i:
                    inners.append(_Memo(iter(family(outer.items[i]))))
                inner = inners[i]
                j = n - i
                if inner.get(j):
                    progressed = True
                    yield Pair(outer.items[i], inner.items[j])
                elif not inner.done:
                    progressed = True
            if outer.done and not progressed:
                if all(m.done for m in inners) and n >= len(outer.items) + max(
                    (len(m.items) for m in inners), default=0
                ):
                    return

    cardinality: Optional[int] = None
    if count and a.cardinality is not None:
        total = 0
        for x in a.take(a.cardinality):
            c = family(x).cardinality
            if c is None:
                total = None
                break
            total += c
        cardinality = total

    def default_contains(v):
        return isinstance(v, Pair) and a.member(v.fst) and family(v.fst).member(v.snd)

    return Enumeration(produce, cardinality, contains or default_contains, name or f"sigma({a.name})")


def lexicographic(a: Enumeration, family: Callable[[Any], Enumeration], name: Optional[str] = None) -> Enumeration:
    """Dependent pairs in plain nested order; every fibre must be finite."""

    def produce():
        for x in a:
            for y in family(x):
                yield Pair(x, y)

    cardinality: Optional[int] = None
    if a.cardinality is not None:
        cardinality = sum(family(x).cardinality or 0 for x in a.take(a.cardinality))

    def contains(v):
        return isinstance(v, Pair) and a.member(v.fst) and family(v.fst).member(v.snd)

    return Enumeration(produce, cardinality, contains, name or f"sigma({a.name})")


def dependent_pairs(a: Enumeration, family: Callable[[Any], Enumeration], name: Optional[str] = None) -> Enumeration:
    """Lexicographic order when everything is finite, fair diagonal order otherwise."""
    if a.cardinality is not None and all(
        family(x).cardinality is not None for x in a.take(a.cardinality)
    ):
        return lexicographic(a, family, name)
    return sigma(a, family, name)


def take_bounded(e: Enumeration, limit: int) -> tuple:
    """``(items, truncated)``: at most ``limit`` items, and whether more exist.

    Producers that hit a fuel limit part-way raise ``FuelExhausted``; that
    is reported as truncation rather than propagated.
    """
    items: list = []
    it = iter(e)
    try:
        for x in it:
            if len(items) == limit:
                return items, True
            items.append(x)
    except FuelExhausted:
        return items, True
    return items, False


FINITE_CAP = 4096


def quantify(e: Enumeration, fuel: int, cap: int = FINITE_CAP) -> tuple:
    """Domain of a bounded quantifier: all of a known-finite set, else ``fuel`` items."""
    if e.cardinality is not None and e.cardinality <= cap:
        return take_bounded(e, e.cardinality)
    return take_bounded(e, fuel)


def tuples(a: Enumeration, k: int) -> Enumeration:
    """All ``Seq`` of length ``k`` over ``a`` (fair order for infinite ``a``)."""
    if k == 0:
        return Enumeration(lambda: iter((Seq(()),)), 1, lambda v: v == Seq(()), f"{a.name}^0")
    rest = tuples(a, k - 1)

    def produce():
        for x, r in diagonal(a, rest):
            yield Seq((x,) + r.items)

    def contains(v):
        return isinstance(v, Seq) and len(v.items) == k and all(a.member(x) for x in v.items)

    card = a.cardinality ** k if a.cardinality is not None else None
    return Enumeration(produce, card, contains, f"{a.name}^{k}")


def mapped(a: Enumeration, f: Callable[[Any], Any], name: Optional[str] = None,
           contains: Optional[Callable[[Any], bool]] = None) -> Enumeration:
    """Image of ``a`` under an injective ``f``."""
    return Enumeration(lambda: (f(x) for x in a), a.cardinality, contains, name or a.name)
