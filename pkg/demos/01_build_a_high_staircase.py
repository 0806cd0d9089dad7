"""Build a high staircase tower and inspect its exact invariants.

A schedule fixes the cut counts r_n, the flat spacer layer z_n, and the
initial height h0.  Materializing it gives exact integer heights h_n, the
offset sets C_n locating each subtower copy, and exact rational measures
under the convention that every level of the initial tower has measure 1.
"""

from fractions import Fraction

from cfrank import (
    Schedule,
    affine,
    build_levels,
    check_restricted_growth,
    const,
    measure_report,
)

# r = 3 cuts forever, spacer layers 1, 2, 3, ... growing with the stage
sched = Schedule("demo", h0=1, r=const(3), z=affine(1, 1))
levels = build_levels(sched, depth=6)

print("heights h_n:     ", list(levels.h))
print("H_n = h_n + z_n: ", list(levels.bigH))
print("offsets C_1:     ", levels.offsets[0])
print("offsets C_2:     ", levels.offsets[1])

# each stage-n level has measure 1 / (r_0 ... r_{n-1})
print("\nlevel measure at stage 3:", levels.level_measure(3))

rep = measure_report(levels)
print("\nmu(X_n):        ", [str(m) for m in rep.mu])
print("sum z_k/h_k so far:", [str(s) for s in rep.partial_sums])
print("divergence verdict:", rep.verdict)

growth = check_restricted_growth(levels, threshold=Fraction(1))
print("\nrestricted growth g_n = r_n^2/(r_0...r_{n-1}):")
for n, g in zip(growth.stages, growth.g):
    print(f"  n={n}: {g} ~ {float(g):.6f}")
print("verdict:", growth.verdict)
print("note:", growth.note)
