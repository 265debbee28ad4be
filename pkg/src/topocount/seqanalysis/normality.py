"""Block frequencies of residue strings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

MAX_WORDS = 1 << 16


@dataclass(frozen=True)
class ChunkStats:
    base: int
    length: int
    chunks: int
    frequencies: dict[tuple[int, ...], Fraction]
    max_deviation: Fraction

    def to_json(self) -> dict:
        key = (lambda w: "".join(map(str, w))) if self.base <= 10 else (lambda w: ",".join(map(str, w)))
        return {
            "base": self.base,
            "length": self.length,
            "chunks": self.chunks,
            "frequencies": {key(w): float(f) for w, f in self.frequencies.items()},
            "max_deviation": float(self.max_deviation),
        }


def chunk_frequencies(residues, b: int, length: int) -> ChunkStats:
    """Frequencies of the b**length words over non-overlapping blocks.

    A trailing partial block is dropped.
    """
    if b < 2:
        raise ValueError("base must be >= 2")
    if length < 1:
        raise ValueError("block length must be >= 1")
    s = list(residues)
    bad = next((v for v in s if not 0 <= v < b), None)
    if bad is not None:
        raise ValueError(f"residue {bad} outside [0, {b})")
    if b ** length > MAX_WORDS:
        raise ValueError(f"{b}**{length} words exceed the table limit {MAX_WORDS}")
    if len(s) < length:
        raise ValueError(f"prefix of {len(s)} terms is shorter than the block length {length}")
    k = len(s) // length
    counts = {w: 0 for w in itertools.product(range(b), repeat=length)}
    for i in range(k):
        counts[tuple(s[i * length:(i + 1) * length])] += 1
    freqs = {w: Fraction(c, k) for w, c in counts.items()}
    target = Fraction(1, b ** length)
    dev = max(abs(f - target) for f in freqs.values())
    return ChunkStats(b, length, k, freqs, dev)
