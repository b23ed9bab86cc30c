"""Symbolic and numeric workbench for the Cuntz algebra O_n.

Reduce words in the generators, evaluate pure product states of the UHF
core and all of their extensions to O_n, decide conjugacy of the induced
endomorphisms, and cross-check everything against an exact model of the
underlying representations.
"""

from .algebra import (
    AlgebraElement,
    AmbientMismatch,
    Monomial,
    adjoint,
    conditional_expectation,
    elem_mul,
    gauge_auto,
    gauge_degree,
    mono_mul,
    quasi_free_auto,
    render,
)
from .classifier import (
    ConjugacyVerdict,
    LineTuple,
    Witness,
    cuntz_state_conjugate,
    endo_conjugate,
    ergodic_conjugate,
    extension_compare,
    line_tuple_equiv,
)
from .extensions import (
    CircleMeasure,
    ExtensionState,
    extend_eval,
    gauge_on_measure,
    is_pure_extension,
    measures_disjoint,
    measures_equivalent,
    moment,
    translate_equivalent,
)
from .gns import (
    Dyad,
    SimContext,
    SimVector,
    apply_element,
    apply_generator,
    apply_generator_adjoint,
    check_relations,
    endo_apply,
    make_xi,
    vector_state,
)
from .parser import parse_element
from .product_states import (
    NotInCore,
    ProductState,
    QuasiOrbitRep,
    VectorSequence,
    eval_product_state,
    period,
    quasi_orbit_rep,
    same_quasi_orbit,
    shift_back,
    shift_forward,
    shifts_unitarily_equivalent,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AmbientMismatch",
    "CircleMeasure",
    "ConjugacyVerdict",
    "Dyad",
    "ExtensionState",
    "LineTuple",
    "Monomial",
    "NotInCore",
    "ProductState",
    "QuasiOrbitRep",
    "SimContext",
    "SimVector",
    "VectorSequence",
    "Witness",
    "adjoint",
    "apply_element",
    "apply_generator",
    "apply_generator_adjoint",
    "check_relations",
    "conditional_expectation",
    "cuntz_state_conjugate",
    "elem_mul",
    "endo_apply",
    "endo_conjugate",
    "ergodic_conjugate",
    "eval_product_state",
    "extend_eval",
    "extension_compare",
    "gauge_auto",
    "gauge_degree",
    "gauge_on_measure",
    "is_pure_extension",
    "line_tuple_equiv",
    "make_xi",
    "measures_disjoint",
    "measures_equivalent",
    "moment",
    "mono_mul",
    "parse_element",
    "period",
    "quasi_free_auto",
    "quasi_orbit_rep",
    "render",
    "same_quasi_orbit",
    "shift_back",
    "shift_forward",
    "shifts_unitarily_equivalent",
    "translate_equivalent",
    "vector_state",
]
