"""Symbolic calculator for subtle Stiefel-Whitney classes.

Bigraded polynomial rings over F2 with a weight generator tau, Steenrod
squares via the Wu and Cartan rules, Groebner bases with exact bigraded
Hilbert series, regular-sequence certification, and the classifying-space
presentations and tables built on top of them.
"""

__version__ = "0.1.0"

from .poly import (
    INHOMOGENEOUS,
    MAX_EXPONENT,
    ZERO_DEGREE,
    Bidegree,
    ExponentOverflow,
    ParseError,
    Poly,
    Ring,
    RingError,
    RingMap,
    apply_map,
    bidegree_of,
    bo_ring,
    bo_top_ring,
    bso_ring,
    bso_top_ring,
    parse_poly,
    ring_new,
)
from .grobner import (
    DEFAULT_BUDGET,
    Budget,
    BudgetExceeded,
    GroebnerBasis,
    HilbertSeries,
    InhomogeneousError,
    RegularSequenceChecker,
    groebner_basis,
    hilbert_series,
    ideal_member,
    is_regular_sequence,
    krull_dimension,
    normal_form,
)
from .steenrod import (
    SteenrodContext,
    ThomModuleElement,
    binom_mod2,
    bo_context,
    bo_top_context,
    bso_context,
    bso_top_context,
    cartan,
    sq,
    theta,
    thom_element,
    thom_sq,
)
from .formsf2 import (
    BilinearFormF2,
    Field2e,
    Subspace,
    beta_map,
    field_modulus,
    form_ring,
    frobenius_stable,
    h_expected,
    h_of,
    pair_ring,
    quillen_form,
    right_radical,
    twisted_sequence,
)
from .spaces import (
    FAMILIES,
    Presentation,
    TableReport,
    TorsorRow,
    g2_gysin_check,
    h_row,
    htable,
    h_map,
    i_map,
    j_lower_bound,
    k_computed,
    k_expected,
    k_row,
    ktable,
    poincare,
    present,
    t_map,
    torsor_relations,
    verify_theta,
)
from . import backend

__all__ = [name for name in dir() if not name.startswith("_")]
