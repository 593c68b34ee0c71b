# # Changing the moving frame
#
# Writing x(t) = a(t) y(t) for an invertible a(t) transforms the index form
# and its fundamental solution. The boundary condition is pulled back by
# (a(0), a(T)) and the index shifts by a computable dimension difference.
# The transformed path is produced twice, by conjugation and by integrating
# the transformed coefficients, and the two must agree.

from maslov_flow.harness import lemma45_instance, thm3_instance, verify_lemma45, verify_thm3

for seed in range(3):
    rep = verify_thm3(thm3_instance(seed, 2))
    ev = rep.evidence
    print(f"seed {seed}: index shift {rep.lhs} = {ev['dim_GrI_R_new']} - {ev['dim_GrI_R']}  "
          f"(routes differ by {ev['route_difference']:.1e})")

# ## Block-diagonal frame paths
#
# diag(a*, a^-1) has an index given by dimensions at the two ends only.

for seed in range(3):
    rep = verify_lemma45(*lemma45_instance(seed, 2))
    print(f"seed {seed}: index {rep.lhs}, end-point dimensions {rep.evidence['dim_start']} - {rep.evidence['dim_end']}")
