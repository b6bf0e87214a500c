"""
Factoring a positive operator
=============================

Given positive invertible T1, T2 and Q P* = I, the operators
S = T2^s P T1^-q and U = T2^r Q T1^-p satisfy U T1 S* = T2.
Going back, P and Q are recovered from S and U.
"""

import numpy as np

from biframe import FactorizationInput, extract_factors, factorize_operators
from biframe.algebra import operator_norm
from biframe.generate import random_invertible_op, random_pd_op
from biframe.hmodule import ModuleSpace, adjoint_op, compose, op_inverse

rng = np.random.default_rng(2)
space = ModuleSpace(2, 3)
t1, t2 = random_pd_op(rng, space), random_pd_op(rng, space)
P = random_invertible_op(rng, space)
Q = op_inverse(adjoint_op(P))

S, U = factorize_operators(FactorizationInput(t1, t2, P, Q, 0.3, 0.7, 0.4, 0.6))
print("||U T1 S* - T2|| =", operator_norm(compose(U, compose(t1, adjoint_op(S))).big - t2.big))

P2, Q2 = extract_factors(S, U, t1, t2, 0.3, 0.7, 0.4, 0.6)
print("||Q P* - I||     =", operator_norm(compose(Q2, adjoint_op(P2)).big - np.eye(space.n)))
