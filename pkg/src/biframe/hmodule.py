"""The standard left Hilbert module ``H = A^m`` over ``A = M_d(C)``.

An element of ``H`` is stored as a ``d x (m*d)`` matrix whose ``m``
horizontal blocks are its algebra coordinates. With that layout

* the left action of ``a in A`` is the matrix product ``a @ X``,
* the A-valued inner product is ``<X, Y> = X @ Y^H`` (linear in the
  first slot),
* an adjointable operator is an ``(m*d) x (m*d)`` matrix acting on the
  right, ``X -> X @ big``; its adjoint is ``big^H``.

Composition therefore reverses matrix order: ``(T o S).big = S.big @ T.big``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    ToleranceConfig,
    adjoint,
    as_element,
    frac_power,
    hermitian_part,
    is_positive,
    operator_norm,
)

__all__ = [
    "ModuleSpace",
    "ModuleElement",
    "ModuleOperator",
    "SpaceMismatchError",
    "inner",
    "module_norm",
    "a_valued_modulus",
    "act",
    "apply",
    "adjoint_op",
    "compose",
    "op_power",
    "op_inverse",
    "is_positive_op",
    "is_bounded_below",
    "op_from_basis_images",
]


class SpaceMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleSpace:
    d: int
    m: int

    def __post_init__(self):
        if int(self.d) < 1 or int(self.m) < 1:
            raise ValueError(f"d and m must be >= 1, got d={self.d}, m={self.m}")

    @property
    def n(self) -> int:
        """Size of the underlying matrices, ``m * d``."""
        return self.d * self.m

    def zero(self) -> "ModuleElement":
        return ModuleElement(self, np.zeros((self.d, self.n), dtype=complex))

    def basis(self, i: int) -> "ModuleElement":
        """Standard basis element ``e_i`` (0-based): block ``i`` is ``1_A``."""
        if not 0 <= i < self.m:
            raise IndexError(f"basis index {i} out of range for m={self.m}")
        mat = np.zeros((self.d, self.n), dtype=complex)
        mat[:, i * self.d:(i + 1) * self.d] = np.eye(self.d)
        return ModuleElement(self, mat)

    def standard_basis(self) -> list["ModuleElement"]:
        return [self.basis(i) for i in range(self.m)]

    def identity(self) -> "ModuleOperator":
        return ModuleOperator(self, np.eye(self.n, dtype=complex))

    def scalar(self, c) -> "ModuleOperator":
        return ModuleOperator(self, complex(c) * np.eye(self.n, dtype=complex))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


class ModuleElement:
    """An element of ``A^m`` held as a ``d x (m*d)`` complex matrix."""

    __slots__ = ("space", "mat")

    def __init__(self, space: ModuleSpace, mat):
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (space.d, space.n):
            raise ValueError(
                f"element matrix must have shape {(space.d, space.n)}, got {mat.shape}"
            )
        if not np.all(np.isfinite(mat)):
            raise ValueError("element has non-finite entries")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "mat", _frozen(mat))

    def __setattr__(self, name, value):
        raise AttributeError("ModuleElement is immutable")

    @classmethod
    def from_blocks(cls, blocks) -> "ModuleElement":
        blocks = [as_element(b, "block") for b in blocks]
        if not blocks:
            raise ValueError("need at least one block")
        d = blocks[0].shape[0]
        if any(b.shape != (d, d) for b in blocks):
            raise ValueError("all blocks must share the same d x d shape")
        return cls(ModuleSpace(d, len(blocks)), np.hstack(blocks))

    @classmethod
    def from_scalars(cls, values) -> "ModuleElement":
        """Element of ``C^m`` (d = 1) from a list of numbers."""
        values = np.asarray(values, dtype=complex).reshape(1, -1)
        return cls(ModuleSpace(1, values.shape[1]), values)

    def blocks(self) -> list[np.ndarray]:
        d = self.space.d
        return [self.mat[:, i * d:(i + 1) * d] for i in range(self.space.m)]

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        _check_space(self.space, other.space)
        return ModuleElement(self.space, self.mat + other.mat)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        _check_space(self.space, other.space)
        return ModuleElement(self.space, self.mat - other.mat)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.space, -self.mat)

    def __mul__(self, c) -> "ModuleElement":
        if not np.isscalar(c):
            return NotImplemented
        return ModuleElement(self.space, c * self.mat)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "ModuleElement":
        return ModuleElement(self.space, self.mat / c)

    def allclose(self, other: "ModuleElement", atol: float = 1e-9) -> bool:
        return self.space == other.space and np.allclose(self.mat, other.mat, rtol=0, atol=atol)

    def __repr__(self):
        return f"ModuleElement(d={self.space.d}, m={self.space.m}, mat={self.mat.tolist()!r})"


class ModuleOperator:
    """Adjointable operator on ``A^m``: ``X -> X @ big``."""

    __slots__ = ("space", "big")

    def __init__(self, space: ModuleSpace, big):
        big = np.asarray(big, dtype=complex)
        if big.shape != (space.n, space.n):
            raise ValueError(
                f"operator matrix must have shape {(space.n, space.n)}, got {big.shape}"
            )
        if not np.all(np.isfinite(big)):
            raise ValueError("operator has non-finite entries")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "big", _frozen(big))

    def __setattr__(self, name, value):
        raise AttributeError("ModuleOperator is immutable")

    def __call__(self, x: ModuleElement) -> ModuleElement:
        return apply(self, x)

    @property
    def norm(self) -> float:
        return operator_norm(self.big)

    def allclose(self, other: "ModuleOperator", atol: float = 1e-9) -> bool:
        return self.space == other.space and np.allclose(self.big, other.big, rtol=0, atol=atol)

    def __repr__(self):
        return f"ModuleOperator(d={self.space.d}, m={self.space.m}, big={self.big.tolist()!r})"


def _check_space(a: ModuleSpace, b: ModuleSpace):
    if a != b:
        raise SpaceMismatchError(f"space mismatch: {a} vs {b}")


def inner(x: ModuleElement, y: ModuleElement) -> np.ndarray:
    """A-valued inner product ``<x, y> = X Y^H``."""
    _check_space(x.space, y.space)
    return x.mat @ adjoint(y.mat)


def module_norm(x: ModuleElement) -> float:
    """``||x|| = ||<x, x>||^(1/2)``."""
    return float(np.sqrt(operator_norm(inner(x, x))))


def a_valued_modulus(x: ModuleElement) -> np.ndarray:
    """``|x| = <x, x>^(1/2)``, i.e. ``W diag(s) W*`` from the SVD of ``X``."""
    w, s, _ = np.linalg.svd(x.mat, full_matrices=False)
    return hermitian_part((w * s) @ adjoint(w))


def act(a, x: ModuleElement) -> ModuleElement:
    """Left module action ``a . x``."""
    a = as_element(a)
    if a.shape[0] != x.space.d:
        raise SpaceMismatchError(f"algebra dimension {a.shape[0]} does not match d={x.space.d}")
    return ModuleElement(x.space, a @ x.mat)


def apply(T: ModuleOperator, x: ModuleElement) -> ModuleElement:
    _check_space(T.space, x.space)
    return ModuleElement(x.space, x.mat @ T.big)


def adjoint_op(T: ModuleOperator) -> ModuleOperator:
    return ModuleOperator(T.space, adjoint(T.big))


def compose(T: ModuleOperator, S: ModuleOperator) -> ModuleOperator:
    """``T o S``, i.e. apply ``S`` first."""
    _check_space(T.space, S.space)
    return ModuleOperator(T.space, S.big @ T.big)


def op_power(T: ModuleOperator, p: float, tol: ToleranceConfig = DEFAULT_TOL) -> ModuleOperator:
    """Fractional power of a positive invertible operator."""
    return ModuleOperator(T.space, frac_power(T.big, p, tol))


def op_inverse(T: ModuleOperator, tol: ToleranceConfig = DEFAULT_TOL) -> ModuleOperator:
    ok, smin = is_bounded_below(T, tol)
    if not ok:
        raise np.linalg.LinAlgError(f"operator is not invertible (sigma_min={smin:.3e})")
    return ModuleOperator(T.space, np.linalg.inv(T.big))


def is_positive_op(T: ModuleOperator, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``<T x, x> >= 0`` for every x, which holds iff ``big`` is Hermitian PSD."""
    return is_positive(T.big, tol)


def is_bounded_below(T: ModuleOperator, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[bool, float]:
    """Return ``(sigma_min > inv_tol * max(1, ||T||), sigma_min)``.

    In finite dimension bounded below is the same as invertible.
    """
    sv = np.linalg.svd(T.big, compute_uv=False)
    smin = float(sv[-1])
    return smin > tol.inv_tol * max(1.0, float(sv[0])), smin


def op_from_basis_images(images) -> ModuleOperator:
    """The operator ``Theta`` with ``Theta e_i = images[i]``."""
    images = list(images)
    if not images:
        raise ValueError("need at least one image")
    space = images[0].space
    for x in images:
        _check_space(space, x.space)
    if len(images) != space.m:
        raise ValueError(f"expected exactly m={space.m} images, got {len(images)}")
    return ModuleOperator(space, np.vstack([x.mat for x in images]))
