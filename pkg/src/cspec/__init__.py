"""Complementarity spectra of digraphs, the SCD3 families, and exact Perron-root algebra."""
from __future__ import annotations

from .digraph import (
    Digraph,
    are_isomorphic,
    directed_cycle,
    directed_path,
    enumerate_induced_sc_subsets,
    find_isomorphism,
    format_edge_list,
    from_arc_list,
    induced_subdigraph,
    is_acyclic,
    is_strongly_connected,
    parse_edge_list,
    strongly_connected_components,
)
from .errors import AlgebraError, CapabilityError, ContractError, CSpecError, InputError, InternalError
from .exactpoly import (
    IntPolynomial,
    RationalInterval,
    TrinomialFactorization,
    descartes_sign_changes,
    exact_divide,
    factor_trinomial,
    min_poly_perron,
    perron_roots_equal,
    primitive_gcd,
    sturm_count,
)
from .families import (
    FamilyDescriptor,
    Infinity,
    Theta,
    Type1a,
    Type1b,
    Type2,
    Type3,
    Type4,
    Type5,
    build,
    classify_scd3,
    descriptors_isomorphic,
    family_char_poly,
    type4_pair,
    type5_cycle_sizes,
)
from .radius import (
    AlgebraicRadius,
    Order,
    char_poly,
    collatz_wielandt_interval,
    compare_radii,
    refine_root,
    spectral_radius,
)
from .spectrum import (
    CardinalityClass,
    ComplementaritySpectrum,
    complementarity_spectrum,
    is_in_scd3,
    spectra_equal,
    spectrum_cardinality_class,
)
from .verify import Status, VerificationReport, run_claim

__version__ = "0.1.0"
