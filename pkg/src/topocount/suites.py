"""Self-checks shared by ``topocount verify`` and the test-suite.

Each suite returns a JSON-ready dict with a boolean ``passed``.  Nothing
time- or machine-dependent goes into the result, so the output is
byte-stable across runs.
"""
from __future__ import annotations

import itertools
import random

from .counting import (
    CountQuery, bell_numbers, catalan, count_noncrossing_partitions,
    count_topologies, half_central_binomial, is_mersenne, is_power_of_two,
    verify_stirling_identity,
)
from .evaluator import CompiledFormula, Environment
from .logic import Sort, builtin, builtin_text, parse_formula
from .logic.ast import free_vars
from .structures import (
    Preorder, StructureKind, Topology, alpha, alpha_prime, brute_force_preorders,
    brute_force_topologies, enumerate_structures,
)
from .translation import phi_sharp, psi_sharp

# (name, r, parameters) for the topological side
TOPOLOGICAL_SUITE = (
    ("true", None, {}),
    ("t0", None, {}),
    ("t1", None, {}),
    ("connected", None, {}),
    ("even_set_not_open", None, {}),
    ("minimal_open_const", 1, {}),
    ("pairwise_separated", 2, {}),
    ("different_components", 2, {}),
    ("smallest_open", None, {}),
    ("clopen", None, {}),
    ("same_component", None, {}),
)

# CMSOL formulas about <=, with free-variable sorts
ORDER_SUITE = (
    ("antisymmetric", "all point x. all point y. x <= y & y <= x -> x = y", {}),
    ("total", "all point x. all point y. x <= y | y <= x", {}),
    ("has_bottom", "ex point x. all point y. x <= y", {}),
    ("even_maximal", "count[2,0] x. all point y. x <= y -> y <= x", {}),
    ("chain3", "ex point x. ex point y. ex point z. x <= y & y <= z & ~y <= x & ~z <= y", {}),
    ("const_below", "a1 <= a2", {}),
    ("proper_down_set",
     "ex set S. (ex point x. x in S) & (ex point x. ~x in S) & "
     "(all point x. all point y. y in S & x <= y -> x in S)", {}),
    ("below", "x <= y", {"x": Sort.POINT, "y": Sort.POINT}),
    ("up_closed", "all point x. all point y. x in S & x <= y -> y in S", {"S": Sort.SET}),
)

OEIS_PREFIXES = {
    "A000798": (1, 1, 4, 29, 355, 6942, 209527, 9535241),
    "A001035": (1, 1, 3, 19, 219, 4231, 130023, 6129859),
    "A001929": (1, 1, 3, 19, 233, 4851, 158175, 7724333),
    "A000110": (1, 1, 2, 5, 15, 52, 203, 877),
}

SUITES = (
    "alexandroff-roundtrip", "translation-equivalence", "stirling-identity",
    "catalan-parity", "noncrossing-catalan", "oeis-prefixes",
)


def alexandroff_roundtrip(n: int) -> dict:
    """alpha o alpha' and alpha' o alpha are identities on every size <= n.

    For sizes up to 4 the structures come from the brute-force oracles, so
    the check does not lean on the enumerator it is testing.
    """
    sizes = []
    failures = 0
    for k in range(n + 1):
        if k <= 4:
            preorders = brute_force_preorders(k)
            topologies = brute_force_topologies(k)
        else:
            preorders = list(enumerate_structures(StructureKind.PREORDER, k))
            topologies = list(enumerate_structures(StructureKind.TOPOLOGY, k))
        bad = sum(alpha(alpha_prime(q)) != q for q in preorders)
        bad += sum(alpha_prime(alpha(t)) != t for t in topologies)
        failures += bad
        sizes.append({"n": k, "preorders": len(preorders), "topologies": len(topologies),
                      "failures": bad})
    return {"suite": "alexandroff-roundtrip", "n": n, "sizes": sizes,
            "failures": failures, "passed": failures == 0}


def _assignments(structure, free: dict[str, Sort]):
    """Every binding of the free variables (opens range over the opens)."""
    n = structure.n
    names = sorted(free)
    domains = []
    for name in names:
        sort = free[name]
        if sort is Sort.POINT:
            domains.append(range(n))
        elif sort is Sort.OPEN:
            domains.append(alpha_prime(structure).opens
                           if isinstance(structure, Preorder) else structure.opens)
        else:
            domains.append(range(1 << n))
    for values in itertools.product(*domains):
        yield dict(zip(names, values))


def _random_assignment(structure, free: dict[str, Sort], rng: random.Random) -> dict:
    n = structure.n
    out = {}
    for name in sorted(free):
        sort = free[name]
        if sort is Sort.POINT:
            out[name] = rng.randrange(n)
        elif sort is Sort.OPEN:
            opens = alpha_prime(structure).opens if isinstance(structure, Preorder) else structure.opens
            out[name] = rng.choice(opens)
        else:
            out[name] = rng.randrange(1 << n)
    return out


def translation_pairs():
    """(label, source formula, compiled source, compiled image, free sorts, r, kind)."""
    pairs = []
    for name, r, params in TOPOLOGICAL_SUITE:
        _, free = builtin_text(name, r, **params)
        sigma = builtin(name, r, **params)
        image = psi_sharp(sigma, free)
        pairs.append((name, CompiledFormula(sigma), CompiledFormula(image), free,
                      r or 0, "psi"))
    for name, text, free in ORDER_SUITE:
        theta = parse_formula(text, "CMSOL", free=free)
        image = phi_sharp(theta, free)
        r = 2 if name == "const_below" else 0
        pairs.append((name, CompiledFormula(theta), CompiledFormula(image), free, r, "phi"))
    return pairs


def _agree(src, img, kind: str, structure, env: Environment) -> bool:
    # phi: theta on alpha(t) vs phi#(theta) on t; psi: sigma on alpha'(q) vs psi#(sigma) on q
    if kind == "phi":
        return src.evaluate(alpha(structure), env) == img.evaluate(structure, env)
    return src.evaluate(alpha_prime(structure), env) == img.evaluate(structure, env)


def translation_equivalence(n: int, samples: int = 1000, seed: int = 0) -> dict:
    """Exhaustive on sizes <= min(n, 4) plus ``samples`` random instances at size n."""
    pairs = translation_pairs()
    by_kind = {"phi": StructureKind.TOPOLOGY, "psi": StructureKind.PREORDER}
    checked = mismatches = 0
    examples = []
    for k in range(min(n, 4) + 1):
        pools = {kind: list(enumerate_structures(sk, k)) for kind, sk in by_kind.items()}
        for label, src, img, free, r, kind in pairs:
            if r > k:
                continue
            for s in pools[kind]:
                for binding in _assignments(s, free):
                    checked += 1
                    if not _agree(src, img, kind, s, Environment(binding, tuple(range(r)))):
                        mismatches += 1
                        if len(examples) < 5:
                            examples.append({"formula": label, "structure": s.to_json()})
    sampled = 0
    if n >= 4 and samples > 0:
        rng = random.Random(seed)
        pools = {kind: list(enumerate_structures(sk, n)) for kind, sk in by_kind.items()}
        usable = [p for p in pairs if p[4] <= n]
        for _ in range(samples):
            label, src, img, free, r, kind = rng.choice(usable)
            s = rng.choice(pools[kind])
            env = Environment(_random_assignment(s, free, rng), tuple(range(r)))
            sampled += 1
            if not _agree(src, img, kind, s, env):
                mismatches += 1
                if len(examples) < 5:
                    examples.append({"formula": label, "structure": s.to_json()})
    return {"suite": "translation-equivalence", "n": n, "formulas": len(pairs),
            "exhaustive_checks": checked, "sampled_checks": sampled,
            "mismatches": mismatches, "examples": examples, "passed": mismatches == 0}


def stirling_identity(n: int) -> dict:
    rows = [verify_stirling_identity(k) for k in range(n + 1)]
    for row in rows:
        row["lhs"], row["rhs"] = str(row["lhs"]), str(row["rhs"])
        row["terms"] = [str(t) for t in row["terms"]]
    return {"suite": "stirling-identity", "n": n, "rows": rows,
            "passed": all(row["equal"] for row in rows)}


def catalan_parity(n: int) -> dict:
    """catalan(k) odd iff k = 2^j - 1; binom(2k, k)/2 odd iff k = 2^j."""
    cat_bad = [k for k in range(n + 1) if (catalan(k) % 2 == 1) != is_mersenne(k)]
    half_bad = [k for k in range(1, n + 1)
                if (half_central_binomial(k) % 2 == 1) != is_power_of_two(k)]
    return {"suite": "catalan-parity", "n": n,
            "catalan_odd_at": [k for k in range(n + 1) if catalan(k) % 2],
            "catalan_failures": cat_bad, "half_central_failures": half_bad,
            "passed": not cat_bad and not half_bad}


def noncrossing_catalan(n: int) -> dict:
    rows = [{"n": k, "noncrossing": count_noncrossing_partitions(k), "catalan": catalan(k)}
            for k in range(n + 1)]
    return {"suite": "noncrossing-catalan", "n": n, "rows": rows,
            "passed": all(r["noncrossing"] == r["catalan"] for r in rows)}


def oeis_prefixes(n: int, jobs: int = 1) -> dict:
    """Enumerated and formula-based counts against stored reference prefixes."""
    def count(name: str, k: int) -> int:
        return count_topologies(CountQuery(builtin(name), 0, k), jobs=jobs).count

    def stream(kind: StructureKind, k: int) -> int:
        return sum(1 for _ in enumerate_structures(kind, k))

    top = min(n, len(OEIS_PREFIXES["A000798"]) - 1)
    checks = [
        ("A000798", "preorders", lambda k: stream(StructureKind.PREORDER, k), top),
        ("A000798", "topologies via 'true'", lambda k: count("true", k), top),
        ("A001035", "posets", lambda k: stream(StructureKind.POSET, k), top),
        ("A001035", "topologies via 't0'", lambda k: count("t0", k), min(top, 5)),
        ("A001929", "topologies via 'connected'", lambda k: count("connected", k), min(top, 5)),
        ("A000110", "Bell triangle", lambda k: bell_numbers(k + 1)[k], top),
    ]
    rows = []
    for ref, what, fn, upto in checks:
        got = [fn(k) for k in range(upto + 1)]
        want = list(OEIS_PREFIXES[ref][: upto + 1])
        rows.append({"reference": ref, "source": what, "values": [str(v) for v in got],
                     "match": got == want})
    return {"suite": "oeis-prefixes", "n": n, "rows": rows,
            "passed": all(r["match"] for r in rows)}


def run_suite(name: str, n: int, jobs: int = 1, samples: int = 1000, seed: int = 0) -> dict:
    if name == "alexandroff-roundtrip":
        return alexandroff_roundtrip(n)
    if name == "translation-equivalence":
        return translation_equivalence(n, samples, seed)
    if name == "stirling-identity":
        return stirling_identity(n)
    if name == "catalan-parity":
        return catalan_parity(n)
    if name == "noncrossing-catalan":
        return noncrossing_catalan(n)
    if name == "oeis-prefixes":
        return oeis_prefixes(n, jobs)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
