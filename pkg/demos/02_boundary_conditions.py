# # Boundary conditions and their companion subspaces
#
# A boundary condition is a subspace R of C^{2n} holding (x(0), x(T)).
# From it come R^b (the natural condition on momenta), the Lagrangian
# W(R) of the doubled space, and S = {x : (x, x) in R^b}.

import numpy as np

from maslov_flow import boundary_derive, dirichlet, free, periodic
from maslov_flow.symplectic import lagrangian_check

for name, bc in [("dirichlet", dirichlet(2)), ("periodic", periodic(2)), ("free", free(2))]:
    _, res = lagrangian_check(bc.W.frame, bc.W.space)
    print(f"{name:10s} dim R = {bc.dim}  dim R^b = {bc.Rb.shape[1]}  dim S = {bc.dim_S}  "
          f"Lagrangian residual {res:.1e}")

# ## A random condition
#
# Any spanning set works; rank is decided with the configured tolerance and
# redundant rows are discarded.

rng = np.random.default_rng(4)
rows = rng.normal(size=(2, 4)) + 1j * rng.normal(size=(2, 4))
rows = np.vstack([rows, rows[0] + 2 * rows[1]])
bc = boundary_derive(rows, 2)
print("\nrandom: dim R =", bc.dim, " dim S =", bc.dim_S)

# R^b is orthogonal to D R with D = diag(I, -I).
D = np.diag([1, 1, -1, -1])
print("max |<R^b, D R>| =", np.abs(bc.Rb.conj().T @ D @ bc.R).max())
