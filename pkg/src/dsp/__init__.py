"""Derived series exploration for finitely presented groups."""

from dsp.presentation import (
    Presentation,
    commutator,
    cyclically_reduce,
    free_reduce,
    inverse,
    parse_presentation,
    serialize_presentation,
)
from dsp.coset_enum import CosetTable, coset_action, enumerate_cosets, is_normal, verify_table
from dsp.subgroup_rewriting import (
    rewrite_subgroup_presentation,
    schreier_transversal,
    simplify_presentation,
)
from dsp.abelianization import (
    AbelianInvariants,
    IntegerMatrix,
    SmithForm,
    abelian_invariants,
    abelian_quotient_map,
    abelianized_relation_matrix,
    smith_normal_form,
)
from dsp.derived_series import (
    DerivedSeriesReport,
    DerivedStep,
    Limits,
    Outcome,
    classify_outcome,
    derived_subgroup_presentation,
    explore_derived_series,
)
from dsp.finite_quotients import (
    FiniteGroupRep,
    GaloisCoverDatum,
    corollary_check,
    galois_closure,
    is_binary_icosahedral,
    is_perfect_finite,
    low_index_subgroups,
    permutation_image,
)

__version__ = "0.1.0"
