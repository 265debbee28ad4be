"""Classical combinatorial sequences with exact integer arithmetic."""
from __future__ import annotations

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("negative argument")
    if k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell_numbers(count: int) -> list[int]:
    """B(0), ..., B(count - 1) via the Bell triangle."""
    if count <= 0:
        return []
    out = [1]
    row = [1]
    while len(out) < count:
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
        out.append(row[0])
    return out


def bell(n: int) -> int:
    if n < 0:
        raise ValueError("negative argument")
    return bell_numbers(n + 1)[n]


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("negative argument")
    return comb(2 * n, n) // (n + 1)


def half_central_binomial(n: int) -> int:
    """binom(2n, n) / 2, defined for n >= 1."""
    if n < 1:
        raise ValueError("half_central_binomial needs n >= 1")
    return comb(2 * n, n) // 2


@lru_cache(maxsize=None)
def r_stirling(n: int, k: int, r: int) -> int:
    """Partitions of [n] into k blocks with 1..r in distinct blocks."""
    if n < 0 or k < 0 or r < 0:
        raise ValueError("negative argument")
    if r <= 1:
        return stirling2(n, k)
    if n < r:
        return 0
    if n == r:
        return int(k == r)
    return k * r_stirling(n - 1, k, r) + (r_stirling(n - 1, k - 1, r) if k else 0)


def r_bell(n: int, r: int) -> int:
    return sum(r_stirling(n, k, r) for k in range(n + 1))


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def is_mersenne(n: int) -> bool:
    """n = 2^j - 1 for some j >= 0 (so 0 counts)."""
    return n >= 0 and (n + 1) & n == 0


CLASSICAL_KINDS = ("bell", "stirling2", "catalan", "half_central_binomial", "r_bell", "r_stirling")


def classical_number(kind: str, *params: int) -> int:
    funcs = {
        "bell": bell,
        "stirling2": stirling2,
        "catalan": catalan,
        "half_central_binomial": half_central_binomial,
        "r_bell": r_bell,
        "r_stirling": r_stirling,
    }
    if kind not in funcs:
        raise ValueError(f"unknown kind {kind!r}")
    return funcs[kind](*params)
