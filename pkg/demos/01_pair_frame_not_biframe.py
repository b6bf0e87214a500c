"""
A pair frame that is not a biframe
==================================

Two bases of C^2 whose mixed operator is invertible but indefinite.
"""

import math

import numpy as np

from biframe import BiframePair, FrameFamily, ModuleElement, biframe_check, biframe_form, biframe_operator

xi = FrameFamily.from_scalar_rows([[1, 2], [3, 4]])
upsilon = FrameFamily.from_scalar_rows([[1, 1], [1, -1]])
pair = BiframePair(xi, upsilon)

# The mixed operator acts on row vectors: x -> x @ G.
G = biframe_operator(xi, upsilon).big.real
print("operator matrix (column convention):")
print(G.T)
print("determinant:", np.linalg.det(G))

# Invertible, so a pair frame. The middle term is an indefinite form, though.
x = ModuleElement.from_scalars([(-1 + math.sqrt(3)) / 2, 1.0])
print("middle term at the witness:", biframe_form(pair, x)[0, 0].real)

report = biframe_check(pair)
print("pair frame:", report.is_pair_frame, " biframe:", report.is_biframe)
for note in report.diagnostics:
    print("  note:", note)
