"""
Turning a biframe into a Parseval biframe
=========================================

Scale by fractional powers of the biframe operator and twist by (P, T)
with T P* = I. The resulting operator is the identity.
"""

import numpy as np

from biframe import ParsevalTransformInput, biframe_check, parseval_transform
from biframe.generate import random_biframe, random_invertible_op
from biframe.hmodule import ModuleSpace, adjoint_op, op_inverse

rng = np.random.default_rng(1)
space = ModuleSpace(2, 2)
pair = random_biframe(rng, space, count=4)
print("before:", biframe_check(pair).bounds)

P = random_invertible_op(rng, space)
T = op_inverse(adjoint_op(P))
for p in (0.5, 0.3):
    out = parseval_transform(ParsevalTransformInput(pair, P, T, p, 1 - p))
    rep = biframe_check(out)
    print(f"p={p}: parseval={rep.is_parseval} defect={rep.parseval_defect:.2e}")
