# # Conjugate points of a pendulum-like Jacobi equation
#
# The scalar form  I(x, x) = ∫ |x'|^2 - |x|^2 dt  on [0, 4] with Dirichlet
# ends has eigenvalues (k pi / 4)^2 - 1, so exactly one of them is negative.
# Conjugate points of t = 0 sit at multiples of pi, and the Maslov-type
# index of the fundamental solution counts them together with the start.

import numpy as np

from maslov_flow import CoefficientPath, MatrixPath, dirichlet, fundamental_solution, iW, morse_index
from maslov_flow.index_form import discrete_kernel, kernel_lift

C = lambda x: MatrixPath.constant([[x]])
coeffs = CoefficientPath(1, 4.0, C(1.0), C(0.0), C(-1.0))
bc = dirichlet(1)

# ## Morse index from the Galerkin discretisation
#
# The mesh is doubled until two consecutive meshes report the same inertia.

mi = morse_index(coeffs, bc)
print("Morse index", mi.m_minus, "nullity", mi.m_zero, "at N =", mi.N)
for row in mi.trace:
    print("   ", row)

# ## Maslov-type index of the fundamental solution
#
# Two independent algorithms run here (crossing forms and eigenphase winding)
# and must agree. Each crossing reports its time, dimension and signature.

gamma = fundamental_solution(coeffs, 1.0)
res = iW(gamma, bc)
print("\nMaslov-type index", res.index, "via", res.method)
for c in res.crossings:
    print(f"    t = {c.t_star:.10f}  dim {c.dim}  signature {c.signature}  ({c.location})")
print("    pi =", np.pi)

# The Morse index equals the Maslov-type index minus dim S (here S = C).
print("\nm- =", mi.m_minus, "=", res.index, "-", bc.dim_S)

# ## A Jacobi field at the conjugate time
#
# On [0, pi] the form has a one-dimensional kernel, sin t. Lifting the
# discrete kernel vector to (p x' + q x, x) recovers gamma(t) u0.

coeffs_pi = CoefficientPath(1, np.pi, C(1.0), C(0.0), C(-1.0))
gal, V, w = discrete_kernel(coeffs_pi, bc)
lift = kernel_lift(V[:, 0], gal, coeffs_pi, 1.0, fundamental_solution(coeffs_pi, 1.0))
print("\nkernel eigenvalue", w, "fit residual", f"{lift.residual:.1e}", "boundary gap", f"{lift.boundary_gap:.1e}")
