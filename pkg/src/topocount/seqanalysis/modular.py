"""Shortest linear recurrences modulo m.

Sequences are handled in shift-register form: a connection polynomial
``a = [1, a_1, ..., a_L]`` of length ``L`` annihilates ``s`` when
``s[k] + a_1 s[k-1] + ... + a_L s[k-L] = 0 (mod m)`` for every ``L <= k < N``.
Trailing coefficients may vanish, so a register of length L can encode a
lower-order recurrence that only starts later.

* prime m: Berlekamp-Massey over GF(p);
* prime powers p^e: the Reeds-Sloane algorithm;
* other m: the prime-power registers are merged coefficientwise by CRT.

``minimal_length_oracle`` decides the same question by solving linear
systems over Z/p^e and is kept for cross-checking.
"""
from __future__ import annotations

from dataclasses import dataclass


def factorize(m: int) -> list[tuple[int, int]]:
    """Prime factorization as [(p, e), ...], ascending."""
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def reduce_mod(values, m: int) -> list[int]:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    return [v % m for v in values]


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def register_length(a: list[int], b: list[int]) -> int:
    """max(deg a, deg b + 1) with the zero polynomial of degree -infinity."""
    da = len(_trim(a[:])) - 1
    db = len(_trim(b[:])) - 1
    return max(da if da >= 0 else -10**9, db + 1 if db >= 0 else -10**9, 0)


def berlekamp_massey(s: list[int], p: int) -> tuple[list[int], int]:
    """Shortest register for ``s`` over GF(p): (connection poly, length)."""
    s = [v % p for v in s]
    c, bpoly = [1], [1]
    length, shift, last = 0, 1, 1
    for k, sk in enumerate(s):
        d = sk
        for i in range(1, length + 1):
            if i < len(c):
                d = (d + c[i] * s[k - i]) % p
        if d == 0:
            shift += 1
            continue
        coef = d * pow(last, -1, p) % p
        new = c + [0] * max(0, len(bpoly) + shift - len(c))
        for i, bv in enumerate(bpoly):
            new[i + shift] = (new[i + shift] - coef * bv) % p
        if 2 * length <= k:
            bpoly, last = c, d
            length = k + 1 - length
            shift = 1
        else:
            shift += 1
        c = new
    c = _trim(c[:]) or [1]
    return c + [0] * (length + 1 - len(c)), length


def reeds_sloane(s: list[int], p: int, e: int) -> tuple[list[int], int]:
    """Shortest register for ``s`` over Z/p^e: (connection poly, length).

    For each eta < e a pair (a_eta, b_eta) with a_eta(0) = p^eta and
    a_eta * S = b_eta (mod x^k) is kept, together with the last pair before
    each length change, whose discrepancy is reused to cancel later ones.
    """
    mod = p ** e
    s = [v % mod for v in s]
    pw = [p ** i for i in range(e + 1)]
    if not s:
        return [1], 0

    def split(d: int) -> tuple[int, int]:
        if d == 0:
            return 1, e
        u = 0
        while d % p == 0:
            d //= p
            u += 1
        return d, u

    a = [[pw[i]] for i in range(e)]
    b = [[0] for _ in range(e)]
    an = [[pw[i]] for i in range(e)]
    bn = [[s[0] * pw[i] % mod] for i in range(e)]
    t, u = [0] * e, [0] * e
    for i in range(e):
        t[i], u[i] = split(s[0] * pw[i] % mod)
    ao: list[list[int]] = [[] for _ in range(e)]
    bo: list[list[int]] = [[] for _ in range(e)]
    to, uo, r = [1] * e, [0] * e, [0] * e

    for k in range(1, len(s)):
        for g in range(e):
            if register_length(an[g], bn[g]) > register_length(a[g], b[g]):
                j = e - 1 - u[g]
                ao[g], bo[g] = a[j][:], b[j][:]
                to[g], uo[g] = t[j], u[j]
                r[g] = k - 1
        a = [x[:] for x in an]
        b = [x[:] for x in bn]
        for o in range(e):
            d = 0
            for i in range(min(len(a[o]), k + 1)):
                d += a[o][i] * s[k - i]
            d %= mod
            t[o], u[o] = split(d)
            if d == 0:
                continue
            g = e - 1 - u[o]
            if register_length(a[g], b[g]) == 0:
                bn[o] += [0] * (k + 1 - len(bn[o]))
                bn[o][k] = (bn[o][k] + d) % mod
                continue
            if uo[g] > u[o]:
                raise ArithmeticError("Reeds-Sloane invariant violated")
            coef = t[o] * pow(to[g], -1, mod) * pw[u[o] - uo[g]] % mod
            shift = k - r[g]
            for poly, old in ((an[o], ao[g]), (bn[o], bo[g])):
                need = len(old) + shift
                if len(poly) < need:
                    poly += [0] * (need - len(poly))
                for i, v in enumerate(old):
                    poly[i + shift] = (poly[i + shift] - coef * v) % mod
                _trim(poly)
    length = register_length(an[0], bn[0])
    poly = an[0] + [0] * (length + 1 - len(an[0]))
    return poly[: length + 1], length


def shortest_register(s: list[int], m: int) -> tuple[list[int], int]:
    """Shortest register mod m (prime, prime power, or CRT-merged)."""
    parts = factorize(m)
    if len(parts) == 1:
        p, e = parts[0]
        return berlekamp_massey(s, p) if e == 1 else reeds_sloane(s, p, e)
    polys = []
    for p, e in parts:
        poly, length = shortest_register(s, p ** e)
        polys.append((p ** e, poly, length))
    return merge_registers(polys)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x = r1 (mod m1), x = r2 (mod m2) for coprime m1, m2."""
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def merge_registers(parts: list[tuple[int, list[int], int]]) -> tuple[list[int], int]:
    length = max(L for _, _, L in parts)
    merged, mod = [0] * (length + 1), 1
    for m, poly, _ in parts:
        padded = poly + [0] * (length + 1 - len(poly))
        merged = [crt_pair(x, mod, y % m, m) for x, y in zip(merged, padded)]
        mod *= m
    return merged, length


def register_annihilates(s: list[int], poly: list[int], length: int, m: int) -> bool:
    for k in range(length, len(s)):
        acc = 0
        for i in range(1, length + 1):
            acc += poly[i] * s[k - i]
        if (s[k] + acc) % m:
            return False
    return True


@dataclass(frozen=True)
class ModularRecurrence:
    """s(n + order) = sum_i coefficients[i] * s(n + i) (mod modulus) for all n >= offset."""

    modulus: int
    order: int
    offset: int
    coefficients: tuple[int, ...]

    def step(self, window) -> int:
        return sum(c * v for c, v in zip(self.coefficients, window)) % self.modulus

    def replay(self, seed, length: int) -> list[int]:
        out = [v % self.modulus for v in seed[: self.offset + self.order]]
        while len(out) < length:
            out.append(self.step(out[len(out) - self.order:]))
        return out[:length]

    def holds_on(self, residues) -> bool:
        res = [v % self.modulus for v in residues]
        return self.replay(res, len(res)) == res

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "order": self.order, "offset": self.offset,
                "coefficients": list(self.coefficients)}


def _as_recurrence(m: int, poly: list[int], length: int, offset: int) -> ModularRecurrence:
    if length == 0:
        # zero tail: s(n + 1) = 0 * s(n)
        return ModularRecurrence(m, 1, offset, (0,))
    coeffs = tuple((-poly[length - j]) % m for j in range(length))
    return ModularRecurrence(m, length, offset, coeffs)


def _best_offset(s: list[int], m: int, max_order: int, offsets: range):
    best = None
    for q in offsets:
        tail = s[q:]
        poly, length = shortest_register(tail, m)
        order = max(length, 1)
        # a register of length L is only evidence with L + 1 checked terms
        if order > max_order or len(tail) < 2 * order + 1:
            continue
        if best is None or order < max(best[2], 1):
            best = (q, poly, length)
            if order == 1:
                break
    return best


def find_modular_recurrence(residues, m: int, max_order: int) -> ModularRecurrence | None:
    """Lowest-order recurrence mod m holding on the whole prefix, or None.

    Offsets 0 .. len // 4 are tried; among the lowest orders, the smallest
    offset wins.  Composite moduli are solved per prime power and merged
    by CRT, which may not give the lowest order mod m.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    s = [v % m for v in residues]
    if len(s) < 2 * max_order + 4:
        raise ValueError(f"prefix of {len(s)} terms is too short for max_order {max_order}")
    offsets = range(len(s) // 4 + 1)
    parts = factorize(m)
    if len(parts) == 1:
        best = _best_offset(s, m, max_order, offsets)
        if best is None:
            return None
        q, poly, length = best
        rec = _as_recurrence(m, poly, length, q)
    else:
        found = []
        for p, e in parts:
            pe = p ** e
            best = _best_offset(s, pe, max_order, offsets)
            if best is None:
                return None
            found.append((pe,) + best)
        # register in original indexing is valid for k >= q + L
        width = max(L for _, _, _, L in found)
        start = max(q + L for _, q, _, L in found)
        merged, _ = merge_registers([(pe, poly, L) for pe, _, poly, L in found])
        rec = _as_recurrence(m, merged, width, start - width)
    if not rec.holds_on(s):
        raise ArithmeticError(f"synthesized recurrence fails replay mod {m}")
    return rec


# Oracle: linear algebra over Z/p^e.

def _valuation(x: int, p: int, e: int) -> int:
    if x == 0:
        return e
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def solve_mod_prime_power(A: list[list[int]], rhs: list[int], p: int, e: int) -> list[int] | None:
    """Some x with A x = rhs (mod p^e), or None.

    Full pivoting on the entry of least p-adic valuation keeps every other
    entry of the working submatrix divisible by the pivot.
    """
    mod = p ** e
    rows = [[v % mod for v in row] + [c % mod] for row, c in zip(A, rhs)]
    ncols = len(A[0]) if A else 0
    cols = list(range(ncols))
    pivots = []
    rank = 0
    while rank < len(rows) and rank < ncols:
        best = None
        for i in range(rank, len(rows)):
            for j in range(rank, ncols):
                v = rows[i][cols[j]]
                if v:
                    val = _valuation(v, p, e)
                    if best is None or val < best[0]:
                        best = (val, i, j)
        if best is None:
            break
        val, i, j = best
        rows[rank], rows[i] = rows[i], rows[rank]
        cols[rank], cols[j] = cols[j], cols[rank]
        c = cols[rank]
        unit = rows[rank][c] // p ** val
        inv = pow(unit, -1, mod)
        rows[rank] = [v * inv % mod for v in rows[rank]]
        for i2 in range(len(rows)):
            if i2 != rank and rows[i2][c]:
                f = rows[i2][c] // p ** val
                rows[i2] = [(x - f * y) % mod for x, y in zip(rows[i2], rows[rank])]
        pivots.append((c, val))
        rank += 1
    for i in range(rank, len(rows)):
        if rows[i][-1] % mod:
            return None
    x = [0] * ncols
    for i in reversed(range(rank)):
        c, val = pivots[i]
        acc = rows[i][-1]
        for j in range(ncols):
            if j != c:
                acc -= rows[i][j] * x[j]
        acc %= mod
        if acc % p ** val:
            return None
        x[c] = (acc // p ** val) % p ** (e - val)
    return x


def minimal_length_oracle(s: list[int], m: int) -> int:
    """Shortest register length mod a prime power by direct solving."""
    (p, e), = factorize(m)
    s = [v % m for v in s]
    for L in range(len(s) + 1):
        A = [[s[k - i] for i in range(1, L + 1)] for k in range(L, len(s))]
        rhs = [-s[k] for k in range(L, len(s))]
        if not A or L == 0:
            if all(v == 0 for v in rhs) or not A:
                return L
            continue
        if solve_mod_prime_power(A, rhs, p, e) is not None:
            return L
    return len(s)


def brute_force_minimal_order(residues, m: int, max_order: int, max_offset: int):
    """Exhaustive (order, offset) search over all coefficient vectors.

    Feasible for m ** max_order up to a few thousand; returns the
    lexicographically least (order, offset) or None.
    """
    import itertools

    s = [v % m for v in residues]
    N = len(s)
    for p_ in range(1, max_order + 1):
        for q in range(max_offset + 1):
            if N - q < 2 * p_ + 1:
                continue
            for coeffs in itertools.product(range(m), repeat=p_):
                if all(
                    s[n + p_] == sum(c * s[n + i] for i, c in enumerate(coeffs)) % m
                    for n in range(q, N - p_)
                ):
                    return p_, q
    return None
