"""Exact invariants of a chain of characteristic-2 symmetric tensor categories.

The package computes, in exact integer/cyclotomic arithmetic, the fusion
rings, dimension values, tilting-character calculus, Cartan and
first-extension data, and counting invariants attached to a doubling chain
of tensor categories, and cross-verifies every quantity along at least two
independent routes.
"""

from .chebyshev import cheb_q, eval_poly, split_signs
from .cyclotomic import (
    RING_LEVEL_CAP,
    CycInt,
    CycRat,
    IntPoly,
    conjugate_floats,
    d_basis_element,
    delta_float,
    divide_exact,
    embed,
    eval_min_poly_at_matrix,
    min_poly,
    min_poly_root_gap,
    to_d_basis,
)
from .errors import (
    Char2CatError,
    DimensionMismatch,
    GeneratorOutOfRange,
    LabelOutOfRange,
    LevelMismatch,
    LevelTooLarge,
    NotIntegral,
    NotTiltingCharacter,
    OrderTooLarge,
    SubsetOutOfRange,
)
from .fusion import (
    STRUCTURE_LEVEL_CAP,
    FusionElt,
    SimpleIndex,
    fpdim,
    frobenius_twist,
    fusion_elt,
    gen_mul,
    generator_matrix,
    mult_matrix,
    product,
    simple_elt,
    structure_tensor,
    unit,
)
from .homology import (
    CATEGORY_INDEX_CAP,
    algebra_fpdim,
    block_components,
    cartan,
    category_fpdim,
    ext1_dim,
    ext1_matrix,
    proj_fpdim,
)
from .invariants import (
    SERIES_ORDER_CAP,
    PowerSeries,
    d_recursive,
    hom_invariants_dim,
    path_count,
    series_f,
    verlinde_product,
    verlinde_qdim,
)
from .tilting import (
    TiltSum,
    WeightChar,
    decompose,
    functor_to_fusion,
    in_T1_polynomial,
    quotient_reduce,
    simple_char,
    steinberg_dim,
    tensor_power_decompose,
    tilt_char,
    tilt_tensor_v,
    twist_char,
    weyl_char,
)

__version__ = "0.1.0"
