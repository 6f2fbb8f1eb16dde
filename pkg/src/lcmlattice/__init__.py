"""Exact and certified tools for GCD/LCM matrices on GCD-closed sets.

The divisibility order of a GCD-closed set is a meet semilattice; this
package enumerates such semilattices, computes Möbius functions and the Psi
values whose vanishing makes power LCM matrices singular, and searches for
real exponents at which that happens.
"""

from .alpha_search import (
    AlphaBracket,
    SearchReport,
    bisect_root,
    construct_singular_instance,
    find_sign_change,
    h_derivative_at_zero,
    h_eval,
)
from .canonical import are_isomorphic, canonical_form, canonical_poset
from .certified import CertifiedReal
from .enumeration import (
    classify_8,
    enumerate_meet_semilattices,
    enumerate_posets,
    filter_max_cover_at_least,
    filter_no_prunable_zero,
    pipeline,
)
from .integer_sets import (
    ODD_COUNTEREXAMPLE,
    GcdClosedSet,
    dual_lcm_closed,
    gcd_closure,
    inflate,
    q_modified_counterexample,
    realize_squarefree,
)
from .matrices import (
    ArithFn,
    det_direct,
    det_product,
    is_singular_power_lcm,
    join_matrix,
    meet_matrix,
    psi,
    psi_dirichlet,
    psi_vector,
)
from .poset import MobiusTable, Poset, from_covers

__version__ = "0.1.0"
