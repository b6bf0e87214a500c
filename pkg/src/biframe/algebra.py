"""The coefficient C*-algebra: d x d complex matrices.

Algebra elements are plain 2-D complex numpy arrays. The helpers here
cover the involution, the modulus ``|a| = (a* a)^(1/2)``, positivity and
the Loewner order, the operator norm and fractional powers of positive
definite elements.

Every numerical decision is governed by a :class:`ToleranceConfig`; the
tolerances are relative to ``max(1, ||a||)`` of the matrices involved.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "as_element",
    "identity",
    "adjoint",
    "hermitian_part",
    "abs_element",
    "is_hermitian",
    "min_eigenvalue",
    "is_positive",
    "loewner_leq",
    "operator_norm",
    "frac_power",
    "NotPositiveDefiniteError",
]


class NotPositiveDefiniteError(ValueError):
    """Raised when a fractional power is requested of a non-PD element."""


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances.

    eq_tol
        absolute entrywise equality tolerance (scaled by the operand norm).
    psd_tol
        eigenvalue floor used to decide positivity.
    inv_tol
        smallest-singular-value floor used to decide invertibility.
    """

    eq_tol: float = 1e-9
    psd_tol: float = 1e-9
    inv_tol: float = 1e-9

    def __post_init__(self):
        for name in ("eq_tol", "psd_tol", "inv_tol"):
            value = getattr(self, name)
            if not (0.0 < value <= 1e-3):
                raise ValueError(f"{name} must lie in (0, 1e-3], got {value!r}")

    def with_eq_tol(self, eq_tol: float) -> "ToleranceConfig":
        return replace(self, eq_tol=eq_tol)

    @classmethod
    def from_env(cls, var: str = "BIFRAME_TOL") -> "ToleranceConfig":
        """Default tolerances, with ``eq_tol`` overridden by ``$BIFRAME_TOL``."""
        raw = os.environ.get(var)
        if raw is None or raw.strip() == "":
            return cls()
        return cls(eq_tol=float(raw))


DEFAULT_TOL = ToleranceConfig()


def as_element(a, name: str = "a") -> np.ndarray:
    """Validate and return ``a`` as a square, finite complex matrix."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def identity(d: int) -> np.ndarray:
    """The unit ``1_A`` of the d x d matrix algebra."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return np.eye(d, dtype=complex)


def adjoint(a) -> np.ndarray:
    return np.conj(np.asarray(a, dtype=complex)).T


def hermitian_part(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return 0.5 * (a + adjoint(a))


def operator_norm(a) -> float:
    """Largest singular value."""
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def _scale(*mats) -> float:
    return max([1.0] + [operator_norm(m) for m in mats])


def is_hermitian(a, tol: ToleranceConfig = DEFAULT_TOL, scale: float | None = None) -> bool:
    a = np.asarray(a, dtype=complex)
    scale = _scale(a) if scale is None else scale
    return bool(np.max(np.abs(a - adjoint(a)), initial=0.0) <= tol.eq_tol * scale)


def min_eigenvalue(a) -> float:
    """Smallest eigenvalue of the Hermitian part of ``a``."""
    return float(np.linalg.eigvalsh(hermitian_part(a))[0])


def abs_element(a) -> np.ndarray:
    """``|a| = (a* a)^(1/2)``, the positive square root of ``a* a``.

    Taken from the SVD ``a = W diag(s) V*`` as ``V diag(s) V*``; forming
    ``a* a`` first would square the conditioning near singular ``a``.
    """
    a = as_element(a)
    _, s, vh = np.linalg.svd(a)
    r = (adjoint(vh) * s) @ vh
    return hermitian_part(r)


def is_positive(a, tol: ToleranceConfig = DEFAULT_TOL, scale: float | None = None) -> bool:
    """True iff ``a`` is Hermitian and its smallest eigenvalue is >= -psd_tol.

    Both thresholds are multiplied by ``scale`` (default ``max(1, ||a||)``).
    """
    a = np.asarray(a, dtype=complex)
    scale = _scale(a) if scale is None else scale
    if not is_hermitian(a, tol, scale):
        return False
    return min_eigenvalue(a) >= -tol.psd_tol * scale


def loewner_leq(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``a <= b`` in the Loewner order, i.e. ``b - a`` is positive."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return is_positive(b - a, tol, scale=_scale(a, b))


def frac_power(a, p: float, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``a^p`` for Hermitian positive definite ``a`` via ``eigh``.

    Raises ValueError for a non-Hermitian input and
    NotPositiveDefiniteError when an eigenvalue is at or below the floor.
    """
    a = as_element(a)
    scale = _scale(a)
    if not is_hermitian(a, tol, scale):
        raise ValueError("frac_power requires a Hermitian element")
    w, v = np.linalg.eigh(hermitian_part(a))
    if w[0] <= tol.psd_tol * scale:
        raise NotPositiveDefiniteError(
            f"smallest eigenvalue {w[0]:.3e} is below the positivity floor"
        )
    if p == 1:
        return hermitian_part(a)
    return (v * w ** float(p)) @ adjoint(v)
