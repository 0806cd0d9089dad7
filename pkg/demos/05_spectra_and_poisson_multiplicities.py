"""Autocorrelation sequences and exp-operator multiplicity sets.

The sequence m -> <U^m 1_f, 1_f> is the Fourier transform of the spectral
measure of the indicator; for mixing constructions it decays.  The two
multiplicity computations give the exact sets realized by Poisson
suspensions of a symmetric square and of a product with a finite identity,
conditional on the simple-spectrum hypothesis for the exp operator.
"""

from cfrank import (
    CylinderSet,
    Schedule,
    affine,
    build_levels,
    const,
    exp_multiplicities_identity_product,
    exp_multiplicities_symmetric_square,
    spectral_sequence,
)
from cfrank.oracle import oracle_correlation_bounds

sched = Schedule("spec-demo", h0=1, r=const(3), z=affine(1, 1))
levels = build_levels(sched, depth=6)

f = CylinderSet.from_points(0, [0])
seq = spectral_sequence(f, M=12, levels=levels, max_depth=6)
print("autocorrelations of 1_f, f = [{0}]_0:")
for m in range(13):
    print(f"  m={m:>2}: {seq.at(m)}")
print("symmetric:", all(seq.at(-m) == seq.at(m) for m in range(13)))

# independent cross-check of a few values with the point-orbit oracle
for m in (1, 2, 5, 9):
    lo, hi = oracle_correlation_bounds(m, 0, [0], 0, [0], levels, 5)
    assert lo <= seq.at(m) <= hi
print("oracle cross-check ok")

print("\nsymmetric-square multiplicities (2n)!/(2^n n!):")
print(" ", exp_multiplicities_symmetric_square(6))
print("identity-product multiplicities p^k for p = 2, 3:")
print(" ", exp_multiplicities_identity_product(2, 6))
print(" ", exp_multiplicities_identity_product(3, 4))
