"""End-to-end toy run of the equation-system reduction.

Builds the gadget graph for a small instance, audits its structure, shows
the polarized closed form against brute-force enumeration, brackets the
full partition sum by the per-assignment restricted sums, and runs the
decoder on the exact value.

Everything here is desk scale.  The published construction needs block size
t = m and degrees in the billions for its guarantees; with toy constants the
decoder output is reported next to the true optimum without any claimed
ordering between them.
"""

from twospin import (GadgetParams, SpinParams, SplitCase, audit_reduction_graph,
                     best_assignment, bounds_constants, build_reduction_graph,
                     decode_satisfied_estimate, log_partition,
                     log_polarized_sum_brute, log_polarized_sum_closed,
                     sandwich_check)
from twospin.e2lin2 import E2Lin2Instance, satisfied_count

# Two variables, two contradictory equations: the optimum satisfies one.
inst = E2Lin2Instance(2, ((0, 1, 0), (0, 1, 1)))
best, witness = best_assignment(inst)
print(f"instance: n={inst.num_vars} m={inst.num_equations} "
      f"optimum={best} at {witness}")

# Published shape uses t = m; that keeps the toy graph at 4m^2 = 16 vertices.
params = GadgetParams(delta=2, delta_prime=1, block_size=inst.num_equations,
                      seed=7)
rg = build_reduction_graph(inst, params)
audit = audit_reduction_graph(rg)
print(f"graph: {rg.graph.num_vertices} vertices, "
      f"{audit.degree}-regular={audit.regular}, audit passed={audit.passed}")

p = SpinParams(beta=0.25, gamma=0.5)

# The fully polarized restricted sum has a closed form; enumeration agrees.
print("\npolarized sums (closed form vs brute force):")
for enc in range(4):
    bits = (enc & 1, (enc >> 1) & 1)
    closed = log_polarized_sum_closed(rg, bits, p)
    brute = log_polarized_sum_brute(rg, bits, p)
    theta = satisfied_count(inst, bits)
    print(f"  S={bits} theta={theta}: closed={closed:+.9f} "
          f"brute={brute:+.9f} gap={abs(closed - brute):.1e}")

# Any single restricted sum is a lower bound; their total is an upper bound.
rep = sandwich_check(rg, p)
print("\nsandwich bracketing of log Z:")
print(f"  max_S log Z(G,S)  = {rep.log_max_restricted:+.6f}")
print(f"  log Z(G)          = {rep.log_total:+.6f}")
print(f"  log sum_S Z(G,S)  = {rep.log_sum_restricted:+.6f}")
print(f"  bracketing holds: {rep.passed}")

# Decode the exact log Z back into an equation-count estimate.
bc = bounds_constants(p, params.delta, params.delta_prime,
                      SplitCase.BETA_BELOW_HALF)
log_z = log_partition(rg.graph, p)
estimate = decode_satisfied_estimate(log_z, inst.num_vars, inst.num_equations,
                                     bc)
print(f"\ndecoder on the exact partition sum: estimate={estimate:.4f} "
      f"(true optimum {best})")
print("toy constants void the published bound, so no ordering is asserted;")
print("at published scale the estimate provably traps the optimum within")
print("a factor sharper than 11/12.")
