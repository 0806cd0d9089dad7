"""Exception types shared across the library."""

from __future__ import annotations

from fractions import Fraction


class CFRankError(Exception):
    """Base class for all library errors."""


class InvalidSchedule(CFRankError):
    """A schedule parameter breaks a construction invariant (e.g. r_n < 2)."""


class OffsetOverlap(InvalidSchedule):
    """Explicit prefix offsets would make translated tower copies overlap."""


class EmptyFragmentList(CFRankError):
    """concatenate() was called with no fragments."""


class DepthUnavailable(CFRankError):
    """An operation needs tower levels deeper than what was materialized."""


class InvalidP(CFRankError):
    """Identity-product multiplicities need p > 1."""


class DepthExhausted(CFRankError):
    """Spillover could not be fully resolved within the allowed depth.

    Carries the exactly resolved part and the unresolved residual measure,
    so the true value lies in [lower, lower + residual].
    """

    def __init__(self, lower: Fraction, residual: Fraction, message: str | None = None):
        self.lower = Fraction(lower)
        self.residual = Fraction(residual)
        super().__init__(
            message
            or f"unresolved residual {self.residual} (resolved lower bound {self.lower})"
        )

    @property
    def upper(self) -> Fraction:
        return self.lower + self.residual

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.lower, self.upper)
