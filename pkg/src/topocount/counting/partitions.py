"""Set-partition counts: non-crossing partitions and topological partitions."""
from __future__ import annotations

from ..structures import (
    CapExceeded, Topology, bits, enumerate_structures, full_mask, set_partitions,
)

NONCROSSING_CAP = 12
TOPOLOGICAL_PARTITION_CAP = 5

BLOCK_CONDITIONS = ("connected", "open", "closed")


def blocks_cross(a: int, b: int) -> bool:
    """a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2 for some members."""
    xs = sorted([(p, 0) for p in bits(a)] + [(p, 1) for p in bits(b)])
    # an alternating subsequence of length 4 exists iff the block labels,
    # with runs collapsed, alternate at least four times
    runs = []
    for _, lab in xs:
        if not runs or runs[-1] != lab:
            runs.append(lab)
    return len(runs) >= 4


def is_noncrossing(blocks: list[int]) -> bool:
    return not any(
        blocks_cross(blocks[i], blocks[j])
        for i in range(len(blocks))
        for j in range(i + 1, len(blocks))
    )


def count_noncrossing_partitions(n: int, cap: int = NONCROSSING_CAP) -> int:
    if n < 0:
        raise ValueError("negative size")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cap {cap}")
    return sum(1 for blocks in set_partitions(n) if is_noncrossing(blocks))


def _subspace_connected(t: Topology, block: int) -> bool:
    traces = {u & block for u in t.opens}
    return not any(tr and tr != block and (block & ~tr) in traces for tr in traces)


def block_ok(t: Topology, block: int, condition: str) -> bool:
    if condition == "open":
        return t.is_open(block)
    if condition == "closed":
        return t.is_open(full_mask(t.n) & ~block)
    if condition == "connected":
        return _subspace_connected(t, block)
    raise ValueError(f"unknown block condition {condition!r}; use one of {BLOCK_CONDITIONS}")


def count_topological_partitions(
    n: int,
    block_condition: str,
    k: int | None = None,
    verbose: bool = False,
    cap: int = TOPOLOGICAL_PARTITION_CAP,
):
    """Pairs (partition of [n], topology on [n]) with every block satisfying
    ``block_condition`` in the topology; only ``k``-block partitions if given.

    With ``verbose`` returns ``(total, breakdown)`` where ``breakdown`` maps
    each partition (as a tuple of 1-based blocks) to its topology count.
    """
    if block_condition not in BLOCK_CONDITIONS:
        raise ValueError(f"unknown block condition {block_condition!r}")
    if n < 0:
        raise ValueError("negative size")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds cap {cap}")
    parts = [b for b in set_partitions(n) if k is None or len(b) == k]
    per = [0] * len(parts)
    for t in enumerate_structures("topology", n):
        for i, blocks in enumerate(parts):
            if all(block_ok(t, b, block_condition) for b in blocks):
                per[i] += 1
    total = sum(per)
    if not verbose:
        return total
    breakdown = {
        tuple(tuple(p + 1 for p in bits(b)) for b in blocks): c
        for blocks, c in zip(parts, per)
    }
    return total, breakdown
