"""Picard groupoids from two-term integer complexes, their integer-matrix
2-algebras, and exact checks of every coherence and round-trip identity."""

from .algebra import (
    HatAlgebra,
    PowerGroupoid,
    ReconstructedModel,
    apply_matrix_arrows,
    apply_matrix_objects,
    check_algebra_morphism,
    check_hat,
    check_modification,
    hat,
    hat_functor,
    hat_modification,
    reconstruct,
    round_trip_hom,
)
from .complexes import (
    ComplexMorphism,
    TwoTermComplex,
    is_quasi_iso,
    make_complex,
    make_complex_morphism,
    pi0,
    pi1,
    trivial_complex,
)
from .expr import Add, Neg, Var, Zero, canonical_form, eval_expr, parse_expr
from .picard import (
    PArrow,
    PObject,
    SkeletalModel,
    StrictModel,
    check_additive_functor,
    check_additive_transformation,
    check_picard_axioms,
    check_unitors,
    derive_left_unitor,
    functor_from_complex_morphism,
    skeletal_model,
    strict_model,
)
from .report import CheckResult, Report
from .rewrite import coherence_iso, normalize_with_witness
from .theory import OneCell, compose_cells, neutral_cell, parse_matrix, terminal_cell, two_cell
from .zlin import FgAbelianGroup, GroupElement, GroupHom, IntMatrix, smith_normal_form

__version__ = "0.1.0"
