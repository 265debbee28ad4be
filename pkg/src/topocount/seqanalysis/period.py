"""Eventual periodicity of residue sequences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MIN_COVERED_PERIODS = 3


@dataclass(frozen=True)
class PeriodReport:
    """s(n + period) = s(n) for preperiod <= n on the observed prefix."""

    modulus: int
    preperiod: int
    period: int
    length: int

    @property
    def confidence(self) -> Fraction:
        return Fraction(self.length - self.preperiod, self.period)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "preperiod": self.preperiod,
            "period": self.period,
            "confidence": float(self.confidence),
        }


def periodic_from(s, p: int) -> int:
    """Smallest q such that s[n + p] == s[n] for every n >= q in range."""
    q = len(s) - p
    while q > 0 and s[q - 1 + p] == s[q - 1]:
        q -= 1
    return max(q, 0)


def detect_eventual_period(residues, m: int, min_periods: int = MIN_COVERED_PERIODS):
    """Minimal (preperiod, period) covered at least ``min_periods`` times, else None.

    The smallest period wins, then the smallest preperiod for it.
    """
    s = [v % m for v in residues]
    N = len(s)
    for p in range(1, N // min_periods + 1):
        q = periodic_from(s, p)
        if N - q >= min_periods * p:
            return PeriodReport(m, q, p, N)
    return None


def is_consistent_period(s, q: int, p: int) -> bool:
    return all(s[n + p] == s[n] for n in range(q, len(s) - p))
