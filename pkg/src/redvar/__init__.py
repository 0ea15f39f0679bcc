"""Exact combinatorics of reductive varieties and pairs.

Root systems and Weyl groups, admissible polytopes and W-complexes,
character groups of automorphisms and moduli, coherent degenerations,
fiber polytopes and representation-theoretic counts, all in exact
rational and integer arithmetic.
"""
from .abgroup import FGAbelianGroup, GroupMap, smith_normal_form
from .admissible import (MarkedType, WComplex, check_admissible, check_marking, check_wcomplex,
                         is_multiplicity_free, make_wcomplex, orbit_complex, orbit_count, type_leq)
from .degen import degenerate, degenerate_complex, is_coherent, minimal_integrality
from .moduli import (aut_character_group, aut_complex_cohomology, enumerate_strata, fiber_polytope,
                     global_fiber_polytope, k_delta, pair_moduli_cohomology, pair_sequence,
                     stratum_dimension_general)
from .polytope import LatticePolytope, convex_hull, lower_envelope
from .reps import character, hilbert_function, tensor_decompose, verify_tensor_power_lemma, weyl_dim
from .rootsys import RootSystem, build_root_system

__version__ = "0.1.0"

__all__ = [
    "FGAbelianGroup", "GroupMap", "LatticePolytope", "MarkedType", "RootSystem", "WComplex",
    "aut_character_group", "aut_complex_cohomology", "build_root_system", "character",
    "check_admissible", "check_marking", "check_wcomplex", "convex_hull", "degenerate",
    "degenerate_complex", "enumerate_strata", "fiber_polytope", "global_fiber_polytope",
    "hilbert_function", "is_coherent", "is_multiplicity_free", "k_delta", "lower_envelope",
    "make_wcomplex", "minimal_integrality", "orbit_complex", "orbit_count",
    "pair_moduli_cohomology", "pair_sequence", "smith_normal_form", "stratum_dimension_general",
    "tensor_decompose", "type_leq", "verify_tensor_power_lemma", "weyl_dim",
]
