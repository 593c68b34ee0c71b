# # Finite-dimensional spectral flow
#
# The relative Morse index of a compression P A P against A follows from the
# inertia of A on the form-orthogonal complement. The anti-diagonal block
# family [[0, A(s)*], [A(s), 0]] has flow equal to the kernel change of A.

import numpy as np

from maslov_flow import HermitianFamily, spectral_flow
from maslov_flow.harness import block_flow_instance, morse_formula_instance
from maslov_flow.spectral_flow import block_flow_check, morse_formula_check

# Two eigenvalues climb through zero and one falls, so the flow is +1.
res = spectral_flow(HermitianFamily.segment(np.diag([2.0, -1.0, -0.5]), np.diag([-1.0, 1.0, 0.5])))
changes = [(round(a["s"], 3), b["m_minus"]) for a, b in zip(res.trace, res.trace[1:]) if a["m_minus"] != b["m_minus"]]
print("segment flow", res.sf, "negative count changes near", changes)

for seed in range(4):
    A, P = morse_formula_instance(seed)
    print(f"compression seed {seed}: d = {A.shape[0]}, both sides {morse_formula_check(A, P)}")

for seed in range(4):
    A0, A1 = block_flow_instance(seed)
    print(f"block family seed {seed}: shape {A0.shape}, both sides",
          block_flow_check(lambda s: (1 - s) * A0 + s * A1))
