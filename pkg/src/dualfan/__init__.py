"""Exact-arithmetic toolkit for dual fans and mirror constructions."""

from .fans import (
    DualFanReport,
    Fan,
    FanValidation,
    is_complete,
    is_dual_pair,
    is_smooth,
    k_cones,
    orthant_fan,
    projective_space_fan,
    quotient_fan,
    relabel_fan,
    validate_fan,
)
from .groups import FiniteAbelianGroup, normalize_phase
from .lattice import (
    LatticeMap,
    SmithDecomposition,
    annihilator_lattice,
    cokernel,
    column_lattice_basis,
    hnf,
    int_inverse,
    kernel_basis,
    rational_inverse,
    saturate_column_lattice,
    smith_diagonal,
    snf,
    solve_integer,
    solve_integer_matrix,
)
from .mirrors import (
    BhkCriterionReport,
    GorensteinReport,
    MirrorReport,
    ReflexiveReport,
    bb_mirror_pair,
    bhk_pair,
    dual_splittings,
    givental_mirror,
    hori_vafa_mirror,
    is_gorenstein,
    is_reflexive,
    krawitz_dual_group,
    phase_symmetries,
    quintic_pipeline,
    splitting_basis,
    support_partition,
    verify_bhk_criterion,
)
from .polyhedra import Cone, Polytope, dual_cone, primitive_vector
from .symbols import ParamPoly, Potential
from .toric_lg import (
    AuxiliaryLG,
    BaseChangeReport,
    CartierData,
    CIData,
    DualityError,
    Specialization,
    ToricDivisor,
    ToricLGModel,
    apply_specialization,
    auxiliary_lg_from_ci,
    auxiliary_lg_from_potential,
    base_change_check,
    is_cartier,
    is_regular_character,
    lg_from_dual_fans,
    line_bundle_fan,
    recover_ci_data,
    section_polytope,
    split_bundle_fan,
)

__all__ = [
    "AuxiliaryLG",
    "BaseChangeReport",
    "BhkCriterionReport",
    "CIData",
    "CartierData",
    "Cone",
    "DualFanReport",
    "DualityError",
    "Fan",
    "FanValidation",
    "FiniteAbelianGroup",
    "GorensteinReport",
    "LatticeMap",
    "MirrorReport",
    "ParamPoly",
    "Polytope",
    "Potential",
    "ReflexiveReport",
    "SmithDecomposition",
    "Specialization",
    "ToricDivisor",
    "ToricLGModel",
    "annihilator_lattice",
    "apply_specialization",
    "auxiliary_lg_from_ci",
    "auxiliary_lg_from_potential",
    "base_change_check",
    "bb_mirror_pair",
    "bhk_pair",
    "cokernel",
    "column_lattice_basis",
    "dual_cone",
    "dual_splittings",
    "givental_mirror",
    "hnf",
    "hori_vafa_mirror",
    "int_inverse",
    "is_cartier",
    "is_complete",
    "is_dual_pair",
    "is_gorenstein",
    "is_reflexive",
    "is_regular_character",
    "is_smooth",
    "k_cones",
    "kernel_basis",
    "krawitz_dual_group",
    "lg_from_dual_fans",
    "line_bundle_fan",
    "normalize_phase",
    "orthant_fan",
    "phase_symmetries",
    "primitive_vector",
    "projective_space_fan",
    "quintic_pipeline",
    "quotient_fan",
    "rational_inverse",
    "recover_ci_data",
    "relabel_fan",
    "saturate_column_lattice",
    "section_polytope",
    "smith_diagonal",
    "snf",
    "solve_integer",
    "solve_integer_matrix",
    "splitting_basis",
    "split_bundle_fan",
    "support_partition",
    "validate_fan",
    "verify_bhk_criterion",
]
