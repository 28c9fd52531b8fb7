"""Exact computer algebra for Hermite trace polynomials indexed by permutations."""

from .characters import (CharTable, IntPartition, central_projection, char_table, chi_q_decompose,
                         dim_hook, irr_character, restricted_character, ssyt_count)
from .fock import FockBasis, create_annihilate, dgamma, field_operator, operator_matrix
from .group_algebra import (GAElement, chi_q, contract_perm, gram_matrix, jucys_murphy,
                            kernel_generator, laplacian_exp)
from .gue import evaluate_trace_monomial, mc_check, wick_matrix_moment, wick_moment
from .perm import (Matching, PartialPerm, Perm, close_partial, cycle_stats, enumerate_matchings,
                   perm_arith, restrict_relabel, union)
from .scalar import ExactMatrix, LaurentScalar, eval_at_q, laurent_arith, sym_rank_psd
from .textio import format_element, parse_element
from .trace_algebra import (TraceElement, apply_euler_laplacian, conditional_expectation,
                            hermite_transform, inner_product_q, linearized_moments, multiply,
                            r_map, state_phi, symmetrize, tilde_ops)

__version__ = "0.1.0"

__all__ = [
    "apply_euler_laplacian",
    "central_projection",
    "char_table",
    "CharTable",
    "chi_q",
    "chi_q_decompose",
    "close_partial",
    "conditional_expectation",
    "contract_perm",
    "create_annihilate",
    "cycle_stats",
    "dgamma",
    "dim_hook",
    "enumerate_matchings",
    "eval_at_q",
    "evaluate_trace_monomial",
    "ExactMatrix",
    "field_operator",
    "FockBasis",
    "format_element",
    "GAElement",
    "gram_matrix",
    "hermite_transform",
    "inner_product_q",
    "IntPartition",
    "irr_character",
    "jucys_murphy",
    "kernel_generator",
    "laplacian_exp",
    "laurent_arith",
    "LaurentScalar",
    "linearized_moments",
    "Matching",
    "mc_check",
    "multiply",
    "operator_matrix",
    "parse_element",
    "PartialPerm",
    "Perm",
    "perm_arith",
    "r_map",
    "restrict_relabel",
    "restricted_character",
    "ssyt_count",
    "state_phi",
    "sym_rank_psd",
    "symmetrize",
    "tilde_ops",
    "TraceElement",
    "union",
    "wick_matrix_moment",
    "wick_moment",
]

