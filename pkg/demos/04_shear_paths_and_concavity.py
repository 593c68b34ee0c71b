# # Shear paths and the Morse concavity
#
# For gamma(t) = [[I, 0], [P(t), I]] the index counts how the positive
# inertia of P restricted to S changes. Nested boundary conditions
# R1 ⊆ R2 differ in index by a concavity term computed at the end point.

import numpy as np

from maslov_flow import MatrixPath, dirichlet, free, iW, shear_path
from maslov_flow.harness import concavity_correction, concavity_instance, verify_concavity, verify_thm2

# ## The scalar case P(t) = t - 1
#
# P changes sign once at t = 1, so the index on [0, 2] is 1.

P = MatrixPath.poly([[[-1.0]], [[1.0]]])
rep = verify_thm2(P, dirichlet(1), 2.0)
print("P(t) = t - 1:", rep.lhs, "=", rep.rhs)

# ## The concavity term
#
# With P(0) = 0, R1 = Dirichlet and R2 = everything, the correction is
# dim S - m+(P(T)|_S).

P = MatrixPath.poly([np.zeros((2, 2)), np.diag([1.0, -2.0])])
C, info = concavity_correction(shear_path(P, 1.0).end(), dirichlet(2), free(2))
print("concavity", C, "expected", 2 - 1)

# A random nested pair: the index difference matches the correction.
for seed in range(3):
    rep = verify_concavity(*concavity_instance(seed, 2))
    print(f"seed {seed}: iW(R2) - iW(R1) = {rep.lhs}, C + correction = {rep.rhs}, C = {rep.evidence['C']}")
