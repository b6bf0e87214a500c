"""Frames, biframe pairs, their operators and classification.

For families ``Xi = {xi_i}`` and ``Upsilon = {eta_i}`` in ``A^m`` the
mixed operator ``S_{Xi,Upsilon}(x) = sum_i <x, xi_i> eta_i`` has matrix
``G = sum_i Xi_i^H H_i``, and the middle term of the biframe inequality is
``sum_i <x, xi_i><eta_i, x> = X G X^H``. The optimal biframe constants are
therefore the extreme eigenvalues of ``G`` once ``G`` is Hermitian.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from .algebra import DEFAULT_TOL, ToleranceConfig, adjoint, hermitian_part, operator_norm
from .hmodule import (
    ModuleElement,
    ModuleOperator,
    ModuleSpace,
    SpaceMismatchError,
    apply,
    inner,
    is_bounded_below,
)

__all__ = [
    "FrameFamily",
    "BiframePair",
    "FrameBounds",
    "ClassificationReport",
    "frame_operator",
    "biframe_operator",
    "biframe_form",
    "frame_bounds",
    "biframe_check",
    "is_pair_frame",
    "controlled_frame_check",
    "is_dual_pair",
    "is_biorthogonal",
    "swap",
    "extreme_witnesses",
]


class FrameFamily:
    """An ordered, non-empty finite family of elements of one module."""

    __slots__ = ("space", "elements")

    def __init__(self, elements: Sequence[ModuleElement], space: ModuleSpace | None = None):
        elements = tuple(elements)
        if not elements:
            raise ValueError("a frame family must be non-empty")
        space = elements[0].space if space is None else space
        for i, x in enumerate(elements):
            if x.space != space:
                raise SpaceMismatchError(f"element {i} lives in {x.space}, expected {space}")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "elements", elements)

    def __setattr__(self, name, value):
        raise AttributeError("FrameFamily is immutable")

    @classmethod
    def standard_basis(cls, space: ModuleSpace) -> "FrameFamily":
        return cls(space.standard_basis(), space)

    @classmethod
    def from_scalar_rows(cls, rows) -> "FrameFamily":
        """d = 1 family from a list of coordinate rows."""
        return cls([ModuleElement.from_scalars(r) for r in rows])

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def stack(self) -> np.ndarray:
        """Element matrices stacked into shape ``(k, d, m*d)``."""
        return np.stack([x.mat for x in self.elements])

    def map(self, T: ModuleOperator) -> "FrameFamily":
        """``{T xi_i}``."""
        return FrameFamily([apply(T, x) for x in self.elements], self.space)

    def __repr__(self):
        return f"FrameFamily(d={self.space.d}, m={self.space.m}, len={len(self)})"


@dataclass(frozen=True)
class BiframePair:
    xi: FrameFamily
    upsilon: FrameFamily

    def __post_init__(self):
        if len(self.xi) != len(self.upsilon):
            raise ValueError(
                f"families must have equal length, got {len(self.xi)} and {len(self.upsilon)}"
            )
        if self.xi.space != self.upsilon.space:
            raise SpaceMismatchError(f"space mismatch: {self.xi.space} vs {self.upsilon.space}")

    @property
    def space(self) -> ModuleSpace:
        return self.xi.space

    def __len__(self):
        return len(self.xi)


@dataclass(frozen=True)
class FrameBounds:
    """Optimal constants; ``lower`` is None when no positive lower bound exists."""

    lower: Optional[float]
    upper: float

    def __post_init__(self):
        if self.lower is not None and self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


@dataclass
class ClassificationReport:
    is_bessel: bool
    is_frame: bool
    is_pair_frame: bool
    is_biframe: bool
    is_tight: Optional[float]
    is_parseval: bool
    bounds: Optional[FrameBounds]
    hermitian_defect: float
    parseval_defect: float = float("nan")
    frame_bounds: Optional[FrameBounds] = None
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("bounds", "frame_bounds"):
            b = getattr(self, key)
            out[key] = None if b is None else {"lower": b.lower, "upper": b.upper}
        return out


def _family_matrices(fam: FrameFamily | Sequence[ModuleElement]) -> np.ndarray:
    return fam.stack() if isinstance(fam, FrameFamily) else np.stack([x.mat for x in fam])


def frame_operator(xi: FrameFamily) -> ModuleOperator:
    """``S(x) = sum_i <x, xi_i> xi_i``; matrix ``sum_i Xi_i^H Xi_i``."""
    return biframe_operator(xi, xi)


def biframe_operator(xi: FrameFamily, upsilon: FrameFamily) -> ModuleOperator:
    """``S_{Xi,Upsilon}(x) = sum_i <x, xi_i> eta_i``."""
    if len(xi) != len(upsilon):
        raise ValueError(f"families must have equal length, got {len(xi)} and {len(upsilon)}")
    if xi.space != upsilon.space:
        raise SpaceMismatchError(f"space mismatch: {xi.space} vs {upsilon.space}")
    n = xi.space.n
    X = _family_matrices(xi).reshape(-1, n)
    H = _family_matrices(upsilon).reshape(-1, n)
    # fixed operand order so that S_{Upsilon,Xi} is bitwise the adjoint of S_{Xi,Upsilon}
    if X.tobytes() <= H.tobytes():
        big = adjoint(X) @ H
    else:
        big = adjoint(adjoint(H) @ X)
    return ModuleOperator(xi.space, big)


def biframe_form(pair: BiframePair, x: ModuleElement) -> np.ndarray:
    """``sum_i <x, xi_i><eta_i, x>`` summed term by term."""
    total = np.zeros((x.space.d, x.space.d), dtype=complex)
    for a, b in zip(pair.xi, pair.upsilon):
        total += inner(x, a) @ inner(b, x)
    return total


def _scale(G: np.ndarray) -> float:
    return max(1.0, operator_norm(G))


def frame_bounds(xi: FrameFamily, tol: ToleranceConfig = DEFAULT_TOL) -> FrameBounds:
    """Optimal frame bounds ``(lambda_min, lambda_max)`` of the frame operator.

    The lower bound is None when ``lambda_min`` does not clear ``inv_tol``,
    i.e. the family is Bessel but not a frame.
    """
    G = frame_operator(xi).big
    w = np.linalg.eigvalsh(hermitian_part(G))
    lower = float(w[0]) if w[0] > tol.inv_tol * _scale(G) else None
    return FrameBounds(lower, float(w[-1]))


def is_pair_frame(pair: BiframePair, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Mixed operator invertible (well-defined and adjointable come for free)."""
    ok, _ = is_bounded_below(biframe_operator(pair.xi, pair.upsilon), tol)
    return ok


def biframe_check(pair: BiframePair, tol: ToleranceConfig = DEFAULT_TOL) -> ClassificationReport:
    G_op = biframe_operator(pair.xi, pair.upsilon)
    G = G_op.big
    scale = _scale(G)
    diagnostics: list[str] = []

    defect = operator_norm(G - adjoint(G))
    hermitian = defect <= tol.eq_tol * scale
    w = np.linalg.eigvalsh(hermitian_part(G))
    lam_min, lam_max = float(w[0]), float(w[-1])
    pair_frame, _ = is_bounded_below(G_op, tol)
    fb = FrameBounds(lam_min, lam_max) if pair.xi is pair.upsilon else frame_bounds(pair.xi, tol)
    is_frame = fb.lower is not None
    parseval_defect = operator_norm(G - np.eye(G.shape[0]))

    is_biframe = False
    bounds = None
    tight = None
    parseval = False
    if not hermitian:
        diagnostics.append(
            f"biframe operator is not self-adjoint (defect {defect:.3e}); "
            "the middle term is not Hermitian-valued for every x"
        )
    elif lam_min <= tol.inv_tol * scale:
        diagnostics.append(
            f"no positive lower bound: smallest eigenvalue {lam_min:.6g} of the biframe operator"
        )
    else:
        is_biframe = True
        bounds = FrameBounds(lam_min, lam_max)
        if lam_max - lam_min <= 2 * tol.psd_tol * scale:
            tight = 0.5 * (lam_min + lam_max)
            parseval = abs(tight - 1.0) <= tol.psd_tol * scale
    if not is_biframe and is_frame:
        bounds = fb
        diagnostics.append("bounds reported are the frame bounds of Xi alone")
    if not pair_frame:
        diagnostics.append("mixed operator is not invertible")
    if not is_frame:
        diagnostics.append("Xi is a Bessel family without a positive lower frame bound")

    return ClassificationReport(
        is_bessel=bool(np.isfinite(fb.upper)),
        is_frame=is_frame,
        is_pair_frame=pair_frame,
        is_biframe=is_biframe,
        is_tight=tight,
        is_parseval=parseval,
        bounds=bounds,
        hermitian_defect=defect,
        parseval_defect=parseval_defect,
        frame_bounds=fb,
        diagnostics=diagnostics,
    )


def controlled_frame_check(
    xi: FrameFamily,
    c1: ModuleOperator,
    c2: ModuleOperator,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> ClassificationReport:
    """Classify ``Xi`` as a ``(C1, C2)``-controlled frame via the pair ``(C1 Xi, C2 Xi)``."""
    for name, c in (("C1", c1), ("C2", c2)):
        ok, smin = is_bounded_below(c, tol)
        if not ok:
            raise ValueError(f"controller {name} is not invertible (sigma_min={smin:.3e})")
    return biframe_check(BiframePair(xi.map(c1), xi.map(c2)), tol)


def is_dual_pair(pair: BiframePair, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``sum_i <x, eta_i> xi_i = x`` for all x, i.e. ``S_{Upsilon,Xi} = I``."""
    G = biframe_operator(pair.upsilon, pair.xi).big
    err = np.max(np.abs(G - np.eye(G.shape[0])))
    return bool(err <= tol.eq_tol * _scale(G))


def is_biorthogonal(pair: BiframePair, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``<xi_i, eta_j> = delta_ij 1_A`` for all i, j."""
    X = pair.xi.stack()
    H = pair.upsilon.stack()
    d = pair.space.d
    gram = np.einsum("iab,jcb->iajc", X, H.conj())
    k = len(pair)
    target = np.einsum("ij,ac->iajc", np.eye(k), np.eye(d))
    return bool(np.max(np.abs(gram - target)) <= tol.eq_tol)


def swap(pair: BiframePair) -> BiframePair:
    return BiframePair(pair.upsilon, pair.xi)


def extreme_witnesses(G) -> tuple[ModuleElement, ModuleElement, float, float]:
    """Elements realising the extreme eigenvalues of ``sym(G)``.

    Returns ``(x_low, x_high, lam_min, lam_max)`` where
    ``<S x_low, x_low> = lam_min <x_low, x_low>`` and likewise for ``x_high``.
    """
    if isinstance(G, ModuleOperator):
        space, G = G.space, G.big
    else:
        G = np.asarray(G, dtype=complex)
        space = ModuleSpace(1, G.shape[0])
    w, v = np.linalg.eigh(hermitian_part(G))

    def _elem(u):
        mat = np.zeros((space.d, space.n), dtype=complex)
        mat[0] = u.conj()
        return ModuleElement(space, mat)

    return _elem(v[:, 0]), _elem(v[:, -1]), float(w[0]), float(w[-1])
