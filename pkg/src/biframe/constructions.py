"""Constructions built from biframes.

Reconstruction, canonical duals, the ``U T1 S* = T2`` factorization,
transformed and Parseval-transformed biframes, and Riesz-basis tests.
All operator algebra is written with :func:`compose` so formulas read in
operator order regardless of the right-action matrix layout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .algebra import DEFAULT_TOL, ToleranceConfig, operator_norm
from .frames import (
    BiframePair,
    FrameFamily,
    biframe_check,
    biframe_operator,
    frame_bounds,
    frame_operator,
    is_biorthogonal,
    is_dual_pair,
)
from .hmodule import (
    ModuleElement,
    ModuleOperator,
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

__all__ = [
    "ConstructionError",
    "NotABiframeError",
    "FactorizationInput",
    "ParsevalTransformInput",
    "reconstruct",
    "canonical_dual",
    "factorize_operators",
    "extract_factors",
    "transform_biframe",
    "transform_operators",
    "parseval_transform",
    "parseval_from_pair",
    "is_orthonormal_basis",
    "is_riesz_basis",
    "riesz_companion",
]


class ConstructionError(ValueError):
    """A constructed identity failed to hold within tolerance."""


class NotABiframeError(ValueError):
    pass


def _require_biframe(pair: BiframePair, tol: ToleranceConfig):
    report = biframe_check(pair, tol)
    if not report.is_biframe:
        raise NotABiframeError("pair is not a biframe: " + "; ".join(report.diagnostics))
    return report


def _op_residual(a: ModuleOperator, b: ModuleOperator) -> float:
    return operator_norm(a.big - b.big)


def _hermitian_op(T: ModuleOperator) -> ModuleOperator:
    return ModuleOperator(T.space, 0.5 * (T.big + T.big.conj().T))


def reconstruct(
    x: ModuleElement,
    pair: BiframePair,
    side: Literal["left", "right"] = "left",
    tol: ToleranceConfig = DEFAULT_TOL,
) -> ModuleElement:
    """Recover ``x`` from its biframe coefficients.

    ``left``:  ``sum_i <x, S_{Upsilon,Xi}^{-1} xi_i> eta_i``
    ``right``: ``sum_i <x, xi_i> S_{Xi,Upsilon}^{-1} eta_i``
    """
    _require_biframe(pair, tol)
    S = biframe_operator(pair.xi, pair.upsilon)
    out = np.zeros_like(x.mat)
    if side == "left":
        S_swap_inv = op_inverse(adjoint_op(S), tol)
        for xi_i, eta_i in zip(pair.xi, pair.upsilon):
            out += inner(x, apply(S_swap_inv, xi_i)) @ eta_i.mat
    elif side == "right":
        S_inv = op_inverse(S, tol)
        for xi_i, eta_i in zip(pair.xi, pair.upsilon):
            out += inner(x, xi_i) @ apply(S_inv, eta_i).mat
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return ModuleElement(x.space, out)


def canonical_dual(xi: FrameFamily, tol: ToleranceConfig = DEFAULT_TOL) -> FrameFamily:
    """``{S_Xi^{-1} xi_i}``."""
    if frame_bounds(xi, tol).lower is None:
        raise NotABiframeError("family is not a frame; no canonical dual")
    return xi.map(op_inverse(frame_operator(xi), tol))


@dataclass(frozen=True)
class FactorizationInput:
    """Data for ``S = T2^s P T1^-q`` and ``U = T2^r Q T1^-p``."""

    t1: ModuleOperator
    t2: ModuleOperator
    p_op: ModuleOperator
    q_op: ModuleOperator
    p: float = 0.5
    q: float = 0.5
    r: float = 0.5
    s: float = 0.5

    def validate(self, tol: ToleranceConfig = DEFAULT_TOL):
        if abs(self.p + self.q - 1) > 1e-12 or abs(self.r + self.s - 1) > 1e-12:
            raise ValueError("exponents must satisfy p + q = 1 and r + s = 1")
        for name, T in (("t1", self.t1), ("t2", self.t2)):
            if not is_positive_op(T, tol) or not is_bounded_below(T, tol)[0]:
                raise ValueError(f"{name} must be positive and invertible")
        qp = compose(self.q_op, adjoint_op(self.p_op))
        err = np.max(np.abs(qp.big - np.eye(qp.space.n)))
        if err > tol.eq_tol * max(1.0, self.p_op.norm * self.q_op.norm):
            raise ValueError(f"Q P* must equal the identity (max deviation {err:.3e})")


def factorize_operators(
    inp: FactorizationInput, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[ModuleOperator, ModuleOperator]:
    """Build ``(S, U)`` with ``U T1 S* = T2``; raises if the identity fails numerically."""
    inp.validate(tol)
    S = compose(op_power(inp.t2, inp.s, tol), compose(inp.p_op, op_power(inp.t1, -inp.q, tol)))
    U = compose(op_power(inp.t2, inp.r, tol), compose(inp.q_op, op_power(inp.t1, -inp.p, tol)))
    lhs = compose(U, compose(inp.t1, adjoint_op(S)))
    scale = max(1.0, U.norm * inp.t1.norm * S.norm, inp.t2.norm)
    residual = _op_residual(lhs, inp.t2)
    if residual > 10 * tol.eq_tol * scale:
        raise ConstructionError(f"factorization residual {residual:.3e} above tolerance")
    return S, U


def extract_factors(
    S: ModuleOperator,
    U: ModuleOperator,
    t1: ModuleOperator,
    t2: ModuleOperator,
    p: float,
    q: float,
    r: float,
    s: float,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[ModuleOperator, ModuleOperator]:
    """Converse direction: ``P = T2^-s S T1^q`` and ``Q = T2^-r U T1^p``.

    If ``U T1 S* = T2`` then the returned pair satisfies ``Q P* = I``.
    """
    P = compose(op_power(t2, -s, tol), compose(S, op_power(t1, q, tol)))
    Q = compose(op_power(t2, -r, tol), compose(U, op_power(t1, p, tol)))
    return P, Q


def transform_biframe(
    pair: BiframePair,
    p_op: ModuleOperator,
    q_op: ModuleOperator,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[BiframePair, ModuleOperator]:
    """``(P Xi, Q Upsilon)`` and its mixed operator, checked against ``Q S P*``."""
    new = BiframePair(pair.xi.map(p_op), pair.upsilon.map(q_op))
    S_new = biframe_operator(new.xi, new.upsilon)
    S_old = biframe_operator(pair.xi, pair.upsilon)
    expected = compose(q_op, compose(S_old, adjoint_op(p_op)))
    scale = max(1.0, q_op.norm * S_old.norm * p_op.norm)
    residual = _op_residual(S_new, expected)
    if residual > 10 * tol.eq_tol * scale:
        raise ConstructionError(f"transformed operator deviates from Q S P* by {residual:.3e}")
    return new, S_new


def transform_operators(
    pair: BiframePair,
    R: ModuleOperator,
    M: ModuleOperator,
    N: ModuleOperator,
    p: float = 0.5,
    r: float = 0.5,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[ModuleOperator, ModuleOperator]:
    """``P = R^r N S^-p`` and ``Q = R^t M S^-q`` with ``q = 1 - p``, ``t = 1 - r``.

    With ``M N* = I`` and ``R`` positive invertible, ``(P Xi, Q Upsilon)`` is a
    biframe whose operator is ``R``.
    """
    _require_biframe(pair, tol)
    S = _hermitian_op(biframe_operator(pair.xi, pair.upsilon))
    q, t = 1.0 - p, 1.0 - r
    P = compose(op_power(R, r, tol), compose(N, op_power(S, -p, tol)))
    Q = compose(op_power(R, t, tol), compose(M, op_power(S, -q, tol)))
    return P, Q


@dataclass(frozen=True)
class ParsevalTransformInput:
    """Data for ``U = P S^-p`` and ``Q = T S^-q`` with ``T P* = I``."""

    pair: BiframePair
    p_op: ModuleOperator
    t_op: ModuleOperator
    p: float = 0.5
    q: float = 0.5


def parseval_transform(inp: ParsevalTransformInput, tol: ToleranceConfig = DEFAULT_TOL) -> BiframePair:
    if abs(inp.p + inp.q - 1) > 1e-12:
        raise ValueError("exponents must satisfy p + q = 1")
    _require_biframe(inp.pair, tol)
    tp = compose(inp.t_op, adjoint_op(inp.p_op))
    err = np.max(np.abs(tp.big - np.eye(tp.space.n)))
    if err > tol.eq_tol * max(1.0, inp.t_op.norm * inp.p_op.norm):
        raise ValueError(f"T P* must equal the identity (max deviation {err:.3e})")
    S = _hermitian_op(biframe_operator(inp.pair.xi, inp.pair.upsilon))
    U = compose(inp.p_op, op_power(S, -inp.p, tol))
    Q = compose(inp.t_op, op_power(S, -inp.q, tol))
    out = BiframePair(inp.pair.xi.map(U), inp.pair.upsilon.map(Q))
    report = biframe_check(out, tol)
    if not report.is_parseval:
        raise ConstructionError(
            f"transformed pair is not Parseval (defect {report.parseval_defect:.3e})"
        )
    return out


def is_orthonormal_basis(fam: FrameFamily, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``len == m`` and ``<e_i, e_j> = delta_ij 1_A``."""
    return len(fam) == fam.space.m and is_biorthogonal(BiframePair(fam, fam), tol)


def parseval_from_pair(
    p_op: ModuleOperator,
    q_op: ModuleOperator,
    base: Literal["orthonormal", "dual", "biorthogonal"],
    pair: BiframePair | None = None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[BiframePair, bool, bool]:
    """Transform a Parseval base by ``(P, Q)``.

    Returns ``(new_pair, is_parseval, qp_is_identity)``. For every admissible
    base the two flags coincide; a disagreement raises ConstructionError.
    ``pair`` may be omitted for the orthonormal base (the standard basis of
    ``p_op.space`` is used).
    """
    if base == "orthonormal":
        if pair is None:
            fam = FrameFamily.standard_basis(p_op.space)
            pair = BiframePair(fam, fam)
        elif not (is_orthonormal_basis(pair.xi, tol) and is_orthonormal_basis(pair.upsilon, tol)
                  and is_biorthogonal(pair, tol)):
            raise ValueError("base pair is not an orthonormal basis paired with itself")
    elif base == "dual":
        if pair is None or not is_dual_pair(pair, tol):
            raise ValueError("base pair is not a dual frame pair")
    elif base == "biorthogonal":
        if pair is None or not is_biorthogonal(pair, tol):
            raise ValueError("base pair is not biorthogonal")
        if frame_bounds(pair.xi, tol).lower is None or frame_bounds(pair.upsilon, tol).lower is None:
            raise ValueError("biorthogonal base families must be frames")
    else:
        raise ValueError(f"unknown base {base!r}")

    new = BiframePair(pair.xi.map(p_op), pair.upsilon.map(q_op))
    parseval = biframe_check(new, tol).is_parseval
    qp = compose(q_op, adjoint_op(p_op))
    qp_identity = operator_norm(qp.big - np.eye(qp.space.n)) <= tol.psd_tol * max(1.0, qp.norm)
    if parseval != qp_identity:
        raise ConstructionError(
            f"Parseval flag {parseval} disagrees with Q P* = I flag {qp_identity}"
        )
    return new, parseval, qp_identity


def is_riesz_basis(fam: FrameFamily, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Image of the standard basis under an invertible operator (square families only)."""
    if len(fam) != fam.space.m:
        return False
    ok, _ = is_bounded_below(op_from_basis_images(list(fam)), tol)
    return ok


def riesz_companion(pair: BiframePair, tol: ToleranceConfig = DEFAULT_TOL) -> ModuleOperator:
    """``U = S_{Xi,Upsilon} (Theta*)^{-1}`` with ``Theta e_i = xi_i``.

    ``U e_j = eta_j`` and ``U`` is invertible, so ``Upsilon`` is a Riesz basis.
    """
    _require_biframe(pair, tol)
    if not is_riesz_basis(pair.xi, tol):
        raise ValueError("Xi is not a Riesz basis")
    theta = op_from_basis_images(list(pair.xi))
    S = biframe_operator(pair.xi, pair.upsilon)
    U = compose(S, op_inverse(adjoint_op(theta), tol))
    space = pair.space
    scale = max(1.0, U.norm)
    for j, eta_j in enumerate(pair.upsilon):
        err = module_norm(apply(U, space.basis(j)) - eta_j)
        if err > 10 * tol.eq_tol * scale:
            raise ConstructionError(f"U e_{j} differs from eta_{j} by {err:.3e}")
    if not is_bounded_below(U, tol)[0]:
        raise ConstructionError("companion operator is not invertible")
    return U
