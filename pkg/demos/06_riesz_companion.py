"""
Riesz bases are preserved
=========================

If Xi is a Riesz basis and (Xi, Upsilon) is a biframe, an invertible U maps
the standard basis onto Upsilon, so Upsilon is a Riesz basis too.
"""

import numpy as np

from biframe import is_riesz_basis, module_norm, riesz_companion
from biframe.generate import random_biframe, random_riesz
from biframe.hmodule import ModuleSpace

rng = np.random.default_rng(3)
space = ModuleSpace(2, 3)
pair = random_biframe(rng, space, xi=random_riesz(rng, space))

U = riesz_companion(pair)
err = max(module_norm(U(space.basis(j)) - eta) for j, eta in enumerate(pair.upsilon))
print("max_j |U e_j - eta_j| =", err)
print("smallest singular value of U:", np.linalg.svd(U.big, compute_uv=False)[-1])
print("Upsilon is a Riesz basis:", is_riesz_basis(pair.upsilon))
