"""Moduli complexes of weighted stable tropical curves and their symmetries."""

from .complex import (
    ComplexAutomorphism,
    SymmetricDeltaComplex,
    apply_injection,
    aut_complex,
    build_delta,
    is_flag_g0,
    one_skeleton_g0,
    sn_induced_automorphism,
    v_subcomplex,
)
from .errors import CapacityError, DomainError, InputError, TropicalHassettError
from .graphs import (
    EdgeLabelledGraph,
    MarkedGraph,
    automorphisms,
    bridges,
    canonical,
    contract,
    contract_complement,
    cycle_index_sets,
    deck,
    enumerate_stable_graphs,
    first_betti,
    is_w_stable,
    make_B,
    make_rose,
    one_edge_expansions,
    weak_isomorphic,
)
from .io import parse_weights
from .permgroup import PermutationGroup
from .verify import CHECKS, CheckReport, run_check
from .weights import (
    Rational,
    WeightVector,
    admissible_transpositions,
    aut_kw,
    aut_mbar,
    classify_heavy_light,
    is_transposition_automorphism,
    kw_contains,
    kw_facets,
    kw_has_one_dimensional_facet,
    realize_product,
    symmetrize,
    weight_of_subset,
)

__all__ = [name for name in dir() if not name.startswith("_")]
