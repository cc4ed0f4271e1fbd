"""Generalized Reed-Muller codes over small finite fields and the structure of
their minimum-weight codewords."""

from .code import (
    BudgetExceededError,
    Codeword,
    GrmParams,
    affine_orbit,
    canonical_min_word,
    canonical_min_words,
    contains,
    decompose_order,
    dimension,
    enumerate_min_words,
    min_weight,
    weight,
)
from .field import GF, FieldElement, FieldSpec, ff_add, ff_enumerate, ff_inv, ff_mul
from .geometry import (
    AffineMap,
    AffineSpace,
    Flat,
    Hyperplane,
    affine_hull_rank,
    apply_affine,
    find_avoiding_hyperplane,
    flats_union_classify,
    is_flat,
    parallel_class,
)
from .poly import (
    NotVanishingError,
    ReducedPoly,
    complement_factor,
    divide_linear,
    format_poly,
    parse_poly,
    rp_affine_substitute,
    rp_degree,
    rp_eval,
    rp_interpolate,
    rp_mul,
    rp_to_table,
)
from .structure import (
    Branch,
    NotACodewordError,
    NotMinimalError,
    check_lemma4,
    check_lemma5,
    classify_min_word,
    verify_theorem,
)

__version__ = "0.1.0"
