"""Containers, directed containers and the comonads they denote.

The library represents shapes, positions and payloads as plain Python
values, checks the defining laws by bounded exhaustive enumeration, and
builds the standard constructions (coproducts, strict products, cofree
directed containers, focussing) together with their mediating maps.
"""

from .containers import (
    CONTAINERS,
    LIST,
    MAYBE,
    NELIST,
    STREAM,
    UNIT_CONTAINER,
    ZIPPER,
    Container,
    ContainerMorphism,
    DataStructure,
    apply_morphism,
    compose_morphisms,
    container_compose,
    container_coproduct,
    container_exponential,
    container_product,
    ds_eq,
    identity_morphism,
    identity_structure,
    interpret_map,
    morphism_eq,
    quote_transformation,
    render_structure,
    structure,
)
from .constructions import (
    STRICT,
    STRICT_CAPPED,
    STRICT_LEFT_ZERO,
    STRICT_SUFFIX,
    StrictDirectedContainer,
    UniversalBundle,
    cofree,
    cofree_recursive_maybe,
    dc_coproduct,
    restrict,
    strict_product,
    strict_to_dc,
)
from .directed import (
    CYCLIC,
    FOCUS_LIST,
    IDENTITY_DC,
    MORPHISMS,
    STREAM_DC,
    SUFFIX,
    ZIPPER_DC,
    ComonadWitness,
    DCMorphism,
    DirectedContainer,
    builtin,
    builtin_names,
    dc_comult,
    dc_counit,
    dc_extend,
    dc_from_comonad,
    dc_morphism,
    focus,
    interpret,
    over,
)
from .errors import (
    ContainerMismatch,
    DcontError,
    EvalError,
    FuelExhausted,
    MalformedNesting,
    NonWellfounded,
    ParseError,
    PositionOutOfRange,
    ShapeNotInContainer,
    ShapeNotPreserved,
    UnknownName,
)
from .laws import (
    Bounds,
    LawEntry,
    LawReport,
    UniversalProbe,
    check_comonad_laws,
    check_dc_laws,
    check_dc_morphism_laws,
    check_roundtrips,
    check_strict_laws,
    check_universal,
    check_update_monad_laws,
)
from .monadic import LIST_MONOID, ContainerMonoid, monoid_flatten, monoid_unit, update_eta, update_mu
from .values import (
    EQUAL,
    EXHAUSTED,
    NOTHING,
    UNEQUAL,
    UNIT,
    Enumeration,
    EqResult,
    Inl,
    Inr,
    Just,
    Pair,
    Seq,
    Symbol,
    render,
    take,
    value_eq,
)

__version__ = "0.1.0"
