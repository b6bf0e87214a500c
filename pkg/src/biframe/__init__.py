"""Biframes in Hilbert C*-modules over full matrix algebras."""

from .algebra import (
    DEFAULT_TOL,
    NotPositiveDefiniteError,
    ToleranceConfig,
    abs_element,
    adjoint,
    frac_power,
    is_positive,
    loewner_leq,
    operator_norm,
)
from .constructions import (
    ConstructionError,
    FactorizationInput,
    NotABiframeError,
    ParsevalTransformInput,
    canonical_dual,
    extract_factors,
    factorize_operators,
    is_orthonormal_basis,
    is_riesz_basis,
    parseval_from_pair,
    parseval_transform,
    reconstruct,
    riesz_companion,
    transform_biframe,
    transform_operators,
)
from .frames import (
    BiframePair,
    ClassificationReport,
    FrameBounds,
    FrameFamily,
    biframe_check,
    biframe_form,
    biframe_operator,
    controlled_frame_check,
    extreme_witnesses,
    frame_bounds,
    frame_operator,
    is_biorthogonal,
    is_dual_pair,
    is_pair_frame,
    swap,
)
from .hmodule import (
    ModuleElement,
    ModuleOperator,
    ModuleSpace,
    SpaceMismatchError,
    a_valued_modulus,
    act,
    adjoint_op,
    apply,
    compose,
    inner,
    is_bounded_below,
    is_positive_op,
    module_norm,
    op_from_basis_images,
    op_inverse,
    op_power,
)

__version__ = "0.1.0"
