"""Scan correlation decay over the candidate mixing intervals [h_n, 2 H_n).

For a high staircase with growing cuts the maximum correlation over these
intervals trends downward with the stage; the scan samples each interval
deterministically (endpoints, H_n, and an even grid in both halves of the
k H_n + t split) and records exact values, or exact [lower, upper]
enclosures where the depth budget leaves a residual.
"""

from cfrank import Schedule, affine, build_levels, canonical_test_set, const, scan_mixing_intervals

sched = Schedule("scan-demo", h0=1, r=affine(3, 1), z=const(1))
levels = build_levels(sched, depth=7)
tests = canonical_test_set(levels)
print(f"canonical test set: {len(tests)} singleton pairs at stage 1")

report = scan_mixing_intervals(levels, tests, stages=[1, 2, 3], samples_per_stage=6,
                               power=1, max_depth=7)
for sd in report.stages:
    print(f"\nstage {sd.stage}, interval [{sd.interval[0]}, {sd.interval[1]}):")
    for m, (lo, hi) in zip(sd.times, sd.values):
        tag = "" if lo == hi else f" (+{hi - lo} unresolved)"
        print(f"  m={m:>5}: max corr = {lo}{tag}")
    print(f"  stage max: [{float(sd.max_lower):.6f}, {float(sd.max_upper):.6f}]")

# the same scan for a power of the map: T^2 over the same intervals
report2 = scan_mixing_intervals(levels, tests, stages=[1, 2], samples_per_stage=4,
                                power=2, max_depth=7)
for sd in report2.stages:
    print(f"power 2, stage {sd.stage}: max in [{float(sd.max_lower):.6f}, "
          f"{float(sd.max_upper):.6f}]")
