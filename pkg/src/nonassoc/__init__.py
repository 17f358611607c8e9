"""Exact-arithmetic tools for triple systems and noncommutative Jordan algebras."""
from .algebra import (
    Algebra,
    QuadraticStructure,
    associator,
    check_cyclic_identity,
    d_operator,
    direct_product,
    field_algebra,
    is_flexible,
    is_in_variety_V,
    is_noncommutative_jordan,
    left_mult,
    multiply,
    norm_trace_involution,
    quadratic_algebra,
    quadratic_structure,
    right_mult,
    scalar_mutation,
    scale_form,
)
from .analysis import (
    certify_simplicity,
    ideal_closure_algebra,
    ideal_closure_triple,
    invariant_report,
    verify_isomorphism,
)
from .correspondence import (
    InvolutiveAlgebra,
    bfkts_to_quadratic,
    homotope,
    quadratic_to_bfkts,
    tilde_system,
    triple_from_involutive,
)
from .families import (
    build_color,
    build_d_mu,
    build_f_type,
    build_g_type,
    build_orthogonal,
    build_symplectic,
    build_unitarian,
    cayley_dickson,
    check_colo,
    check_quaca,
    minimal_instances,
    split_cayley,
    split_symplectic_module,
    split_unitarian_module,
    verify_g_iso,
)
from .kernel import BilinearForm, Check, PreconditionError, StructureError, kernel_basis, solve, span_closure
from .triple import TripleSystem, check_balanced, check_fkts, check_gjts, check_jts, k_op, l_op, triple_product

__all__ = [
    "Algebra",
    "BilinearForm",
    "Check",
    "InvolutiveAlgebra",
    "PreconditionError",
    "QuadraticStructure",
    "StructureError",
    "TripleSystem",
    "associator",
    "bfkts_to_quadratic",
    "build_color",
    "build_d_mu",
    "build_f_type",
    "build_g_type",
    "build_orthogonal",
    "build_symplectic",
    "build_unitarian",
    "cayley_dickson",
    "certify_simplicity",
    "check_balanced",
    "check_colo",
    "check_cyclic_identity",
    "check_fkts",
    "check_gjts",
    "check_jts",
    "check_quaca",
    "d_operator",
    "direct_product",
    "field_algebra",
    "homotope",
    "ideal_closure_algebra",
    "ideal_closure_triple",
    "invariant_report",
    "is_flexible",
    "is_in_variety_V",
    "is_noncommutative_jordan",
    "k_op",
    "kernel_basis",
    "l_op",
    "left_mult",
    "minimal_instances",
    "multiply",
    "norm_trace_involution",
    "quadratic_algebra",
    "quadratic_structure",
    "quadratic_to_bfkts",
    "right_mult",
    "scalar_mutation",
    "scale_form",
    "solve",
    "span_closure",
    "split_cayley",
    "split_symplectic_module",
    "split_unitarian_module",
    "tilde_system",
    "triple_from_involutive",
    "triple_product",
    "verify_g_iso",
    "verify_isomorphism",
]
