"""Linear recurrences with constant rational coefficients, by exact solving."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Recurrence:
    """s(n + order) = sum_i coefficients[i] * s(n + i) for all n >= offset."""

    order: int
    offset: int
    coefficients: tuple[Fraction, ...]

    def replay(self, seed, length: int) -> list[Fraction]:
        out = [Fraction(v) for v in seed[: self.offset + self.order]]
        while len(out) < length:
            window = out[len(out) - self.order:]
            out.append(sum((c * v for c, v in zip(self.coefficients, window)), Fraction(0)))
        return out[:length]

    def holds_on(self, values) -> bool:
        return self.replay(values, len(values)) == [Fraction(v) for v in values]

    def to_json(self) -> dict:
        return {"order": self.order, "offset": self.offset,
                "coefficients": [str(c) for c in self.coefficients]}


@dataclass(frozen=True)
class NoRecurrence:
    """Search failure, with the rank of the order-d system (offset 0) for each d."""

    max_order: int
    rank_profile: tuple[int, ...]

    def to_json(self) -> dict:
        return {"max_order": self.max_order, "rank_profile": list(self.rank_profile)}


def _eliminate(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of an augmented matrix with ``ncols`` unknowns.

    A pivot in column ``ncols`` means the system is inconsistent.
    """
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols + 1):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _system(s, d: int, q: int) -> list[list[Fraction]]:
    return [[Fraction(s[n + i]) for i in range(d)] + [Fraction(s[n + d])]
            for n in range(q, len(s) - d)]


def solve_order(s, d: int, q: int) -> tuple[Fraction, ...] | None:
    """Coefficients of an order-d recurrence valid from q, if the system is consistent."""
    rows, pivots = _eliminate(_system(s, d, q), d)
    if d in pivots:
        return None
    coeffs = [Fraction(0)] * d
    for row, c in zip(rows, pivots):
        coeffs[c] = row[d]
    return tuple(coeffs)


def system_rank(s, d: int, q: int = 0) -> int:
    _, pivots = _eliminate(_system(s, d, q), d)
    return sum(1 for c in pivots if c < d)


def find_integer_recurrence(values, max_order: int):
    """Lowest-order recurrence over Q valid on the whole prefix.

    Offsets up to len // 4 are tried smallest first, and a candidate needs at
    least ``2 * order + 1`` terms after its offset so that the solution is
    overdetermined.  Returns a Recurrence or a NoRecurrence carrying the
    rank profile.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    s = [int(v) for v in values]
    N = len(s)
    if N < 2 * max_order + 2:
        raise ValueError(f"prefix of {N} terms is too short for max_order {max_order}")
    for d in range(1, max_order + 1):
        for q in range(N // 4 + 1):
            if N - q < 2 * d + 1:
                break
            coeffs = solve_order(s, d, q)
            if coeffs is None:
                continue
            rec = Recurrence(d, q, coeffs)
            if not rec.holds_on(s):
                raise ArithmeticError("synthesized recurrence fails replay")
            return rec
    profile = tuple(system_rank(s, d) for d in range(1, max_order + 1))
    return NoRecurrence(max_order, profile)
