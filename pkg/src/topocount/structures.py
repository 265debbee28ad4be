"""Labeled finite topologies, preorders and posets on small ground sets.

Points are 0-indexed internally; point ``i`` is shown as ``i + 1`` in every
external form (JSON, error messages) so that the ground set reads as [n].
Subsets of the ground set are plain ``int`` bit-masks.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

#: Default largest ground set for exhaustive enumeration (Q(7) = 9,535,241).
DEFAULT_ENUMERATION_CAP = 7


class StructureError(ValueError):
    """Invalid structure input."""


class CapExceeded(StructureError):
    pass


class InvalidTopology(StructureError):
    """A family of sets violating one of the topology axioms.

    ``axiom`` names the violated axiom and ``witness`` holds the offending
    sets (as bit-masks), e.g. a pair whose union is missing.
    """

    def __init__(self, axiom: str, witness: tuple[int, ...], n: int):
        self.axiom = axiom
        self.witness = witness
        shown = ", ".join(format_set(w, n) for w in witness)
        super().__init__(f"{axiom} (witness: {shown})" if witness else axiom)


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def format_set(mask: int, n: int | None = None) -> str:
    return "{" + ",".join(str(p + 1) for p in bits(mask)) + "}"


def full_mask(n: int) -> int:
    return (1 << n) - 1


def _mask_from_external(points: Iterable[int], n: int) -> int:
    m = 0
    for p in points:
        if not isinstance(p, int) or not 1 <= p <= n:
            raise StructureError(f"point {p!r} outside [1..{n}]")
        m |= 1 << (p - 1)
    return m


class StructureKind(str, enum.Enum):
    PREORDER = "preorder"
    POSET = "poset"
    TOPOLOGY = "topology"
    T0_TOPOLOGY = "t0-topology"


@dataclass(frozen=True)
class Topology:
    """A finite topology: ``opens`` is sorted ascending by mask value."""

    n: int
    opens: tuple[int, ...]

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    def is_open(self, mask: int) -> bool:
        return mask in self.open_set

    def to_json(self) -> dict:
        return {"n": self.n, "opens": [[p + 1 for p in bits(u)] for u in self.opens]}

    def __str__(self) -> str:
        return "{" + ", ".join(format_set(u) for u in self.opens) + "}"


@dataclass(frozen=True)
class Preorder:
    """A reflexive transitive relation; ``below[y]`` is the mask {x : x <= y}."""

    n: int
    below: tuple[int, ...]

    def leq(self, x: int, y: int) -> bool:
        return bool(self.below[y] >> x & 1)

    def is_antisymmetric(self) -> bool:
        return all(
            not (self.below[y] >> x & 1 and self.below[x] >> y & 1)
            for x in range(self.n)
            for y in range(x + 1, self.n)
        )

    def code(self) -> int:
        """Rows concatenated, row 0 most significant."""
        c = 0
        for row in self.below:
            c = (c << self.n) | row
        return c

    def to_json(self) -> dict:
        return {"n": self.n, "below": [[p + 1 for p in bits(b)] for b in self.below]}


def check_preorder(n: int, below: Sequence[int]) -> Preorder:
    if len(below) != n:
        raise StructureError(f"expected {n} rows, got {len(below)}")
    full = full_mask(n)
    for y, row in enumerate(below):
        if row & ~full:
            raise StructureError(f"row {y + 1} uses points outside [1..{n}]")
        if not row >> y & 1:
            raise StructureError(f"not reflexive at {y + 1}")
    for z, row in enumerate(below):
        for y in bits(row):
            if below[y] & ~row:
                x = next(bits(below[y] & ~row))
                raise StructureError(f"not transitive: {x + 1}<={y + 1}<={z + 1}")
    return Preorder(n, tuple(below))


def validate_topology(n: int, opens: Iterable[int], cap: int | None = None) -> Topology:
    """Check the three topology axioms and return the canonical form.

    Raises :class:`InvalidTopology` naming the first violated axiom.
    """
    if n < 0:
        raise StructureError("negative ground-set size")
    if cap is not None and n > cap:
        raise CapExceeded(f"n={n} exceeds cap {cap}")
    full = full_mask(n)
    family = sorted(set(opens))
    for u in family:
        if u < 0 or u & ~full:
            raise StructureError(f"set {u:#b} does not fit in {n} points")
    members = set(family)
    if 0 not in members:
        raise InvalidTopology("empty set missing", (), n)
    if full not in members:
        raise InvalidTopology("full set missing", (), n)
    for i, u in enumerate(family):
        for v in family[i + 1:]:
            if u | v not in members:
                raise InvalidTopology("not closed under union", (u, v), n)
            if u & v not in members:
                raise InvalidTopology("not closed under intersection", (u, v), n)
    return Topology(n, tuple(family))


def topology_from_json(obj: dict) -> Topology:
    n = obj["n"]
    return validate_topology(n, [_mask_from_external(s, n) for s in obj["opens"]])


def preorder_from_json(obj: dict) -> Preorder:
    n = obj["n"]
    return check_preorder(n, [_mask_from_external(s, n) for s in obj["below"]])


def structure_from_json(obj: dict) -> Topology | Preorder:
    if "opens" in obj:
        return topology_from_json(obj)
    if "below" in obj:
        return preorder_from_json(obj)
    raise StructureError("structure JSON needs an 'opens' or 'below' field")


def load_structure(path: str) -> Topology | Preorder:
    with open(path) as fh:
        return structure_from_json(json.load(fh))


# Named small spaces, mostly for tests and the CLI.

def discrete(n: int) -> Topology:
    return Topology(n, tuple(range(1 << n)))


def indiscrete(n: int) -> Topology:
    return Topology(n, (0,) if n == 0 else (0, full_mask(n)))


def sierpinski() -> Topology:
    return Topology(2, (0b00, 0b01, 0b11))


# The Alexandroff maps.

def minimal_open_set(t: Topology, x: int) -> int:
    """U_x, the intersection of all opens containing ``x``."""
    if not 0 <= x < t.n:
        raise StructureError(f"point {x + 1} outside [1..{t.n}]")
    u = full_mask(t.n)
    for v in t.opens:
        if v >> x & 1:
            u &= v
    return u


def alpha(t: Topology) -> Preorder:
    return Preorder(t.n, tuple(minimal_open_set(t, x) for x in range(t.n)))


def down_sets(n: int, below: Sequence[int]) -> tuple[int, ...]:
    """All down-sets of a preorder, in ascending mask order."""
    result = []
    for m in range(1 << n):
        rest = m
        while rest:
            low = rest & -rest
            if below[low.bit_length() - 1] & ~m:
                break
            rest ^= low
        else:
            result.append(m)
    return tuple(result)


def alpha_prime(q: Preorder) -> Topology:
    return Topology(q.n, down_sets(q.n, q.below))


def minimal_basis(t: Topology) -> list[int]:
    return sorted({minimal_open_set(t, x) for x in range(t.n)})


def is_open_substructure(t: Topology, t2: Topology, embedding: Sequence[int]) -> bool:
    """Whether ``t`` sits in ``t2`` as an open subspace via ``embedding``.

    ``embedding[i]`` is the (0-indexed) image of point ``i`` of ``t``.
    """
    if len(embedding) != t.n:
        raise StructureError("embedding must map every point of the subspace")
    if len(set(embedding)) != len(embedding):
        raise StructureError("embedding is not injective")
    if any(not 0 <= y < t2.n for y in embedding):
        raise StructureError("embedding leaves the larger ground set")
    image = mask_of(embedding)
    if not t2.is_open(image):
        return False
    back = {y: i for i, y in enumerate(embedding)}
    traces = set()
    for v in t2.opens:
        traces.add(mask_of(back[y] for y in bits(v & image)))
    return traces == t.open_set


# Enumeration.

def set_partitions(n: int) -> Iterator[list[int]]:
    """Set partitions of range(n) as lists of block masks (restricted growth order)."""
    if n == 0:
        yield []
        return
    labels = [0] * n

    def rec(i: int, k: int) -> Iterator[list[int]]:
        if i == n:
            blocks = [0] * k
            for p, b in enumerate(labels):
                blocks[b] |= 1 << p
            yield blocks
            return
        for b in range(k + 1):
            labels[i] = b
            yield from rec(i + 1, max(k, b + 1))

    labels[0] = 0
    yield from rec(1, 1)


def _posets(n: int) -> Iterator[tuple[int, ...]]:
    """Labeled posets on range(n) as tuples of reflexive down-masks.

    Points are added one at a time.  The new point k picks a down-set D of
    the current poset (strictly below k) and an up-set A (strictly above k)
    with every member of D below every member of A; this produces each
    labeled poset on range(k + 1) exactly once from its restriction.
    """
    if n == 0:
        yield ()
        return

    def rec(k: int, below: list[int], above: list[int]) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(below)
            return
        for dn in down_sets(k, below):
            # candidates for A: points above everything in dn
            cand = 0
            for u in range(k):
                if below[u] & dn == dn and not dn >> u & 1:
                    cand |= 1 << u
            sub = cand
            while True:
                up = sub
                if all(above[u] & ~up == 0 for u in bits(up)):
                    nb = below[:]
                    na = above[:]
                    for u in bits(up):
                        nb[u] |= dn | (1 << k)
                    for d in bits(dn):
                        na[d] |= up | (1 << k)
                    nb.append(dn | (1 << k))
                    na.append(up | (1 << k))
                    yield from rec(k + 1, nb, na)
                if sub == 0:
                    break
                sub = (sub - 1) & cand

    yield from rec(1, [1], [1])


_POSET_CACHE: dict[int, list[tuple[int, ...]]] = {}


def posets_on(k: int, cache: bool = True) -> Iterable[tuple[int, ...]]:
    if not cache:
        return _posets(k)
    if k not in _POSET_CACHE:
        _POSET_CACHE[k] = list(_posets(k))
    return _POSET_CACHE[k]


def _preorders(n: int, index: int = 0, parts: int = 1) -> Iterator[tuple[int, ...]]:
    """Preorders whose stream position is ``index`` mod ``parts``.

    A preorder is a partition of [n] into equivalence blocks plus a poset on
    the blocks.  Positions are skipped before any row is assembled, so a
    shard costs little more than its own share.
    """
    pos = 0
    for blocks in set_partitions(n):
        k = len(blocks)
        if k == n:
            # all singletons, in label order: the poset rows are the preorder
            for p in posets_on(k, cache=False):
                if pos % parts == index:
                    yield p
                pos += 1
            continue
        table = posets_on(k)
        start = (index - pos) % parts
        pos += len(table)
        for p in itertools.islice(table, start, None, parts):
            below = [0] * n
            for j, bj in enumerate(blocks):
                row = 0
                for i in bits(p[j]):
                    row |= blocks[i]
                for x in bits(bj):
                    below[x] = row
            yield tuple(below)


def enumerate_structures(
    kind: StructureKind | str,
    n: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    shard: tuple[int, int] = (0, 1),
) -> Iterator[Preorder | Topology]:
    """Stream every labeled structure of ``kind`` on [n] exactly once.

    ``shard=(i, j)`` keeps only the structures whose position in the full
    deterministic stream is congruent to ``i`` modulo ``j``; the ``j``
    shards partition the stream.
    """
    kind = StructureKind(kind)
    if n < 0:
        raise StructureError("negative ground-set size")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds enumeration cap {cap}")
    index, parts = shard
    if parts < 1 or not 0 <= index < parts:
        raise StructureError(f"bad shard {shard}")
    if kind in (StructureKind.PREORDER, StructureKind.TOPOLOGY):
        raw = _preorders(n, index, parts)
    else:
        raw = itertools.islice(posets_on(n, cache=False), index, None, parts)
    to_topology = kind in (StructureKind.TOPOLOGY, StructureKind.T0_TOPOLOGY)
    for below in raw:
        if to_topology:
            yield Topology(n, down_sets(n, below))
        else:
            yield Preorder(n, below)


def brute_force_preorders(n: int, antisymmetric: bool = False) -> list[Preorder]:
    """Slow oracle: filter all reflexive relations on [n] (use n <= 4)."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    found = []
    for choice in range(1 << len(pairs)):
        below = [1 << y for y in range(n)]
        for i, (x, y) in enumerate(pairs):
            if choice >> i & 1:
                below[y] |= 1 << x
        ok = all(
            not (below[y] >> x & 1) or below[x] & ~below[y] == 0
            for x in range(n)
            for y in range(n)
        )
        if ok and antisymmetric:
            ok = Preorder(n, tuple(below)).is_antisymmetric()
        if ok:
            found.append(Preorder(n, tuple(below)))
    return found


def brute_force_topologies(n: int) -> list[Topology]:
    """Slow oracle: every family of subsets satisfying the axioms (n <= 4)."""
    full = full_mask(n)
    middle = [m for m in range(1, full)]
    found = []
    for choice in range(1 << len(middle)):
        fam = {0, full} | {m for i, m in enumerate(middle) if choice >> i & 1}
        if all(u | v in fam and u & v in fam for u in fam for v in fam):
            found.append(Topology(n, tuple(sorted(fam))))
    return found
