"""Exact separable algebras, ring splittings and splitting towers."""

from .algebra import (
    Algebra,
    AlgebraHom,
    base_change,
    check_homomorphism,
    make_algebra,
    matrix_algebra,
    opposite_enveloping,
    product_algebra,
    split_algebra,
    tensor_algebra,
    unit_algebra,
    zero_algebra,
)
from .constructors import GroupSpec, coset_algebra, cyclic_algebra, is_squarefree_poly, parse_permutation
from .decompose import decompose
from .errors import SeptowerError
from .fields import QQ, PrimeField, Rationals, SimpleExtension, field_from_json, field_to_json
from .linalg import Matrix, image_basis, inverse, kernel_basis, rref, solve_affine, split_idempotent
from .modules import (
    ModuleRec,
    RelativeAlgebra,
    absolute,
    extend_along_hom,
    free_module,
    make_module,
    make_relative,
    projection_formula_witness,
    regular_module,
    relative_tensor,
    relative_tensor_algebra,
    tensor_over_modules,
    v_idempotent,
)
from .separability import SeparabilityData, is_separability_idempotent, separability_idempotent
from .splitting import (
    SplitDecomposition,
    bimodule_section_of_epi,
    normalize_split_iso,
    prime_construction,
    split_from_retraction,
    unit_power_splitting_oracle,
)
from .tower import TowerLevel, TowerReport, degree, is_degree_one, relative_degree, splitting_tower

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
