"""Exact orbit computations for the Hecke group H(lambda_4) acting on Q*(sqrt(-n))."""

from .classification import (
    CanonicalClass,
    ClassKind,
    ElementClass,
    Quadruplet,
    classify,
    is_tn_quadruplet,
    quadruplet,
    quadruplet_profile,
)
from .core import (
    GroupWord,
    QElement,
    apply_word,
    apply_x,
    apply_y,
    apply_y_power,
    conjugate,
    is_squarefree,
    make_element,
    transform_direct,
)
from .counting import (
    OrbitReport,
    Signature,
    correction_term,
    divisor_count,
    divisor_count_at_most,
    orbit_count_closed_form,
    orbit_count_enumerative,
    pi_pairs,
    signature_set,
    signature_set_for_a,
)
from .errors import (
    ArithmeticOverflow,
    DomainError,
    HeckeError,
    InternalCheckError,
    MismatchedField,
    NotEven,
    NotIntegral,
    NotSquareFree,
    ValidationError,
)
from .reduction import (
    ReductionTrace,
    canonical_class,
    enumerate_canonical_classes,
    local_orbit_graph,
    reduce_to_canonical,
    same_orbit,
    sample_elements,
)

__version__ = "0.1.0"
