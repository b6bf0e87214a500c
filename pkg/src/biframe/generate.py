"""Seeded random operators, frames and biframes for tests and the CLI.

Biframes are built directly rather than by rejection sampling: draw a
random frame ``Xi`` and a random positive definite target ``R``, then set
``eta_i = W xi_i`` with ``W = R o S_Xi^{-1}`` so the mixed operator is ``R``.
"""

from __future__ import annotations

import numpy as np

from .frames import BiframePair, FrameFamily, frame_operator
from .hmodule import ModuleElement, ModuleOperator, ModuleSpace, adjoint_op, compose, op_inverse

__all__ = [
    "random_matrix",
    "random_unitary",
    "random_invertible",
    "random_pd",
    "random_element",
    "random_operator",
    "random_invertible_op",
    "random_pd_op",
    "random_frame",
    "random_riesz",
    "random_biframe",
    "random_parseval",
]


def random_matrix(rng: np.random.Generator, rows: int, cols: int, real: bool = False) -> np.ndarray:
    a = rng.standard_normal((rows, cols))
    if real:
        return a.astype(complex)
    return (a + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_matrix(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_invertible(rng, n: int, smin: float = 0.5, smax: float = 2.0) -> np.ndarray:
    """Random matrix with singular values in ``[smin, smax]``."""
    s = rng.uniform(smin, smax, size=n)
    return (random_unitary(rng, n) * s) @ random_unitary(rng, n)


def random_pd(rng, n: int, lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """Random Hermitian matrix with eigenvalues in ``[lo, hi]``."""
    u = random_unitary(rng, n)
    a = (u * rng.uniform(lo, hi, size=n)) @ u.conj().T
    return 0.5 * (a + a.conj().T)


def random_element(rng, space: ModuleSpace) -> ModuleElement:
    return ModuleElement(space, random_matrix(rng, space.d, space.n))


def random_operator(rng, space: ModuleSpace) -> ModuleOperator:
    return ModuleOperator(space, random_matrix(rng, space.n, space.n))


def random_invertible_op(rng, space: ModuleSpace, smin=0.5, smax=2.0) -> ModuleOperator:
    return ModuleOperator(space, random_invertible(rng, space.n, smin, smax))


def random_pd_op(rng, space: ModuleSpace, lo=0.5, hi=2.0) -> ModuleOperator:
    return ModuleOperator(space, random_pd(rng, space.n, lo, hi))


def random_frame(rng, space: ModuleSpace, count: int) -> FrameFamily:
    """Random family whose frame operator has a lower bound of at least 0.25."""
    if count < space.m:
        raise ValueError(f"a frame for A^{space.m} needs at least m={space.m} elements")
    while True:
        fam = FrameFamily([random_element(rng, space) for _ in range(count)], space)
        w = np.linalg.eigvalsh(frame_operator(fam).big)
        if w[0] >= 0.25:
            return fam


def random_riesz(rng, space: ModuleSpace) -> FrameFamily:
    theta = random_invertible(rng, space.n)
    return FrameFamily([ModuleElement(space, theta[i * space.d:(i + 1) * space.d])
                        for i in range(space.m)], space)


def random_biframe(
    rng,
    space: ModuleSpace,
    count: int | None = None,
    target: ModuleOperator | None = None,
    xi: FrameFamily | None = None,
) -> BiframePair:
    """Biframe whose mixed operator equals ``target`` (random PD by default)."""
    if xi is None:
        xi = random_frame(rng, space, space.m if count is None else count)
    if target is None:
        target = random_pd_op(rng, space)
    W = compose(target, op_inverse(frame_operator(xi)))
    return BiframePair(xi, xi.map(W))


def random_parseval(rng, space: ModuleSpace, count: int) -> BiframePair:
    """Parseval biframe ``(U Xi, Q Upsilon)`` from a random biframe and ``T = (P*)^{-1}``."""
    from .constructions import ParsevalTransformInput, parseval_transform

    pair = random_biframe(rng, space, count)
    P = random_invertible_op(rng, space)
    T = op_inverse(adjoint_op(P))
    return parseval_transform(ParsevalTransformInput(pair, P, T, 0.5, 0.5))
