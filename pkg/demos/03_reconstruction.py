"""
Reconstruction from a random biframe
====================================

Both reconstruction formulas recover a vector from its biframe coefficients.
"""

import numpy as np

from biframe import ModuleSpace, biframe_check, module_norm, reconstruct
from biframe.generate import random_biframe, random_element

rng = np.random.default_rng(0)
space = ModuleSpace(d=2, m=3)  # A = M_2(C), module A^3
pair = random_biframe(rng, space, count=5)
report = biframe_check(pair)
print("biframe:", report.is_biframe, " bounds:", report.bounds)

x = random_element(rng, space)
for side in ("left", "right"):
    y = reconstruct(x, pair, side)
    print(f"{side:>5} formula, relative error {module_norm(y - x) / module_norm(x):.2e}")
