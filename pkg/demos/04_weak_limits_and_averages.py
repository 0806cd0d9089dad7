"""Weak operator limits, Cesaro averages, and the averaging inequality.

Three exact computations around the same machinery:

1. the finite-stage decomposition of T^{H_0} over the stage-0 subtowers,
   term for term, on a partially-high staircase with d_0 / r_0 = 1/3;
2. squared norms of Cesaro averages (1/l) sum U^{-ik} 1_B;
3. the averaging inequality relating a step-1 average to a step-r average,
   decided from exact square-root enclosures.
"""

from fractions import Fraction

from cfrank import (
    CylinderSet,
    Schedule,
    WeakLimitTarget,
    build_levels,
    cesaro_norm,
    check_averaging_inequality,
    const,
    explicit,
    stage_term_decomposition,
)
from cfrank.mixing import weak_limit_discrepancy_bounds

# first of three subtowers carries a flat prefix: d_0 = 1, r_0 = 3
sched = Schedule("partial", h0=6, r=const(3), z=const(4),
                 d=explicit([1], tail=const(0)))
levels = build_levels(sched, depth=5)
print("C_1 =", levels.offsets[0], " H_0 =", levels.bigH[0])

A = CylinderSet.from_points(0, [3])
B = CylinderSet.from_points(0, [3])
dec = stage_term_decomposition(0, A, B, levels, max_depth=5)
print("\nT^{H_0} decomposition for A = B = [{3}]_0:")
print("  lhs  corr(H_0, A, B)      =", dec.lhs)
print("  (d/r) adjoint term        =", dec.prefix_term)
print("  tail terms (shifts 0..)   =", [str(t) for t in dec.tail_terms])
print("  top subtower spill        =", dec.top_term)
print("  identity holds:", dec.lhs == dec.rhs)

# discrepancy against the limit target (1/3) U^{-1} at time H_0
target = WeakLimitTarget({1: Fraction(1, 3)})
tests = [(CylinderSet.from_points(0, [a]), CylinderSet.from_points(0, [b]))
         for a in range(6) for b in range(6)]
(lo, hi), = weak_limit_discrepancy_bounds([levels.bigH[0]], target, tests, levels, 5)
print(f"\nsup discrepancy vs (1/3) U^-1 at m = H_0: [{lo}, {hi}]")

# Cesaro averages of an indicator shrink in norm when the step hits
# correlation zeros
b = CylinderSet.from_points(0, [0])
for k, l in [(1, 1), (1, 2), (2, 2), (1, 4)]:
    print(f"||(1/{l}) sum U^(-i*{k}) 1_B||^2 =", cesaro_norm(k, l, b, levels, 5))

rep = check_averaging_inequality(6, 2, 2, b, levels, 5)
print("\naveraging inequality R=6, L=2, r=2:")
print("  lhs in", [str(x) for x in rep.lhs])
print("  rhs in", [str(x) for x in rep.rhs])
print("  holds:", rep.holds, f"({rep.decided_by})")
