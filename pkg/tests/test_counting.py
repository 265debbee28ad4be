import itertools
import json

import pytest
from hypothesis import given, strategies as st

from helpers import is_weakly_connected, naive_eval
from topocount.counting import (
    CountError, CountQuery, ResultCache, SequenceRecord, bell, bell_numbers, catalan,
    classical_number, count_noncrossing_partitions, count_sequence, count_topological_partitions,
    count_topologies, half_central_binomial, is_mersenne, is_power_of_two, r_bell, r_stirling,
    stirling2, verify_stirling_identity,
)
from topocount.counting.partitions import blocks_cross
from topocount.logic import builtin, parse_formula
from topocount.structures import CapExceeded, alpha, enumerate_structures, set_partitions

TRUE = builtin("true")


def brute_r_stirling(n, k, r):
    return sum(
        1 for blocks in set_partitions(n)
        if len(blocks) == k and all(
            not any(b >> i & 1 and b >> j & 1 for b in blocks)
            for i in range(r) for j in range(i + 1, r))
    )


class TestClassical:
    def test_examples(self):
        assert catalan(3) == 5
        assert stirling2(3, 2) == 3
        assert bell(5) == 52
        assert r_stirling(3, 2, 2) == 2

    def test_stirling_edges(self):
        assert stirling2(3, 5) == 0
        assert stirling2(0, 0) == 1
        assert stirling2(4, 0) == 0
        with pytest.raises(ValueError):
            stirling2(-1, 0)

    def test_bell_triangle_against_stirling(self):
        assert bell_numbers(15) == [sum(stirling2(n, k) for k in range(n + 1)) for n in range(15)]

    @pytest.mark.parametrize("n", range(9))
    def test_r_stirling_brute_force(self, n):
        for r in range(0, n + 1):
            for k in range(n + 1):
                assert r_stirling(n, k, r) == brute_r_stirling(n, k, r)

    @pytest.mark.parametrize("n", range(10))
    def test_r_degenerates(self, n):
        assert r_bell(n, 0) == bell(n)
        assert r_bell(n, 1) == bell(n)
        for k in range(n + 1):
            assert r_stirling(n, k, 0) == stirling2(n, k)

    def test_parity_laws(self):
        for n in range(65):
            assert (catalan(n) % 2 == 1) == is_mersenne(n)
        for n in range(1, 31):
            assert (half_central_binomial(n) % 2 == 1) == is_power_of_two(n)

    def test_half_central_domain(self):
        with pytest.raises(ValueError):
            half_central_binomial(0)

    def test_dispatch(self):
        assert classical_number("bell", 6) == 203
        assert classical_number("r_stirling", 3, 2, 2) == 2
        with pytest.raises(ValueError):
            classical_number("fibonacci", 3)

    @given(st.integers(0, 300))
    def test_catalan_big_integers(self, n):
        from math import comb
        assert catalan(n) * (n + 1) == comb(2 * n, n)


class TestNoncrossing:
    def test_small(self):
        assert count_noncrossing_partitions(0) == 1
        assert count_noncrossing_partitions(3) == 5
        assert count_noncrossing_partitions(4) == 14

    def test_only_crossing_pair_at_four(self):
        crossing = [b for b in set_partitions(4) if len(b) == 2 and blocks_cross(*b)]
        assert crossing == [[0b0101, 0b1010]]

    @pytest.mark.parametrize("n", range(10))
    def test_catalan(self, n):
        assert count_noncrossing_partitions(n) == catalan(n)

    @given(st.integers(1, 255), st.integers(1, 255))
    def test_cross_definition(self, a, b):
        a &= ~b
        if not a:
            return
        pa = [i for i in range(8) if a >> i & 1]
        pb = [i for i in range(8) if b >> i & 1]
        naive = any(a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2
                    for a1, a2 in itertools.combinations(pa, 2)
                    for b1, b2 in itertools.combinations(pb, 2))
        assert blocks_cross(a, b) == naive

    def test_cap(self):
        with pytest.raises(CapExceeded):
            count_noncrossing_partitions(13)


class TestTopologicalPartitions:
    @pytest.mark.parametrize("cond", ["connected", "open", "closed"])
    def test_one_point(self, cond):
        assert count_topological_partitions(1, cond) == 1

    def test_two_singletons(self):
        assert count_topological_partitions(2, "open", k=2) == 1
        assert count_topological_partitions(2, "closed", k=2) == 1

    def test_open_equals_closed(self):
        # a partition into open blocks is a partition into closed blocks
        for n in range(5):
            assert count_topological_partitions(n, "open") == count_topological_partitions(n, "closed")

    def test_open_partitions_brute_force(self):
        for n in range(4):
            expected = sum(
                all(t.is_open(b) for b in blocks)
                for t in enumerate_structures("topology", n)
                for blocks in set_partitions(n)
            )
            assert count_topological_partitions(n, "open") == expected

    def test_verbose_breakdown(self):
        total, breakdown = count_topological_partitions(2, "open", verbose=True)
        assert total == sum(breakdown.values())
        assert breakdown == {((1, 2),): 4, ((1,), (2,)): 1}

    def test_single_block_connected_is_connected_count(self):
        for n in range(1, 5):
            assert count_topological_partitions(n, "connected", k=1) == \
                count_topologies(CountQuery(builtin("connected"), 0, n)).count

    def test_errors(self):
        with pytest.raises(ValueError):
            count_topological_partitions(2, "compact")
        with pytest.raises(CapExceeded):
            count_topological_partitions(6, "open")


class TestEngine:
    def test_examples(self):
        assert count_topologies(CountQuery(TRUE, 0, 5)).count == 6942
        assert count_topologies(CountQuery(builtin("t0"), 0, 4)).count == 219
        assert count_topologies(CountQuery(builtin("different_components", 2), 2, 0)).count == 1

    @pytest.mark.parametrize("n", range(6))
    def test_true_and_t0_match_streams(self, n):
        assert count_topologies(CountQuery(TRUE, 0, n)).count == \
            sum(1 for _ in enumerate_structures("preorder", n))
        assert count_topologies(CountQuery(builtin("t0"), 0, n)).count == \
            sum(1 for _ in enumerate_structures("poset", n))

    @pytest.mark.slow
    def test_true_at_six(self):
        assert count_topologies(CountQuery(TRUE, 0, 6), jobs=2).count == 209527

    def test_bell_below_posets_below_preorders(self):
        for n in range(6):
            p = sum(1 for _ in enumerate_structures("poset", n))
            q = sum(1 for _ in enumerate_structures("preorder", n))
            assert bell(n) <= p <= q

    def test_sequence_and_residues(self):
        rec = count_sequence(TRUE, range(6), moduli=[5])
        assert rec.values == [1, 1, 4, 29, 355, 6942]
        assert rec.residues[5] == [1, 1, 4, 4, 0, 2]
        rec = count_sequence(builtin("t0"), range(5))
        assert rec.values == [1, 1, 3, 19, 219]

    def test_connected_matches_graph_oracle(self):
        rec = count_sequence(builtin("connected"), range(5))
        expected = [sum(is_weakly_connected(q) for q in enumerate_structures("preorder", n))
                    for n in range(5)]
        assert rec.values == expected

    @pytest.mark.parametrize("r,n", [(1, 0), (1, 2), (2, 1), (2, 0), (1, 3)])
    def test_free_mode_is_sum_over_interpretations(self, r, n):
        f = parse_formula("ex open U. a1 in U & ~a%d in U" % r if r > 1 else
                          "ex open U. ~a1 in U & (ex point x. x in U)", r=r)
        size = r + n
        tops = list(enumerate_structures("topology", size))
        expected = sum(naive_eval(t, f, {}, c) for c in itertools.product(range(size), repeat=r)
                       for t in tops)
        got = count_topologies(CountQuery(f, r, n, mode="free")).count
        assert got == expected
        hard = count_topologies(CountQuery(f, r, n)).count
        assert hard == sum(naive_eval(t, f, {}, tuple(range(r))) for t in tops)

    def test_jobs_do_not_change_counts(self):
        for jobs in (1, 2, 3, 5):
            res = count_topologies(CountQuery(builtin("t0"), 0, 4, (2, 3)), jobs=jobs)
            assert (res.count, res.residues) == (219, {2: 1, 3: 0})

    def test_json_shape(self):
        res = count_topologies(CountQuery(TRUE, 0, 5, (5,)))
        assert res.to_json() == {"formula": "all point x. x = x", "r": 0, "mode": "hard-wired",
                                 "n": 5, "count": "6942", "mod": {"5": 2}}

    def test_validation(self):
        with pytest.raises(CountError, match="free"):
            count_topologies(CountQuery(parse_formula("x = x", free={"x": "point"}), 0, 2))
        with pytest.raises(CountError):
            count_topologies(CountQuery(builtin("minimal_open_const", 2), 1, 2))
        with pytest.raises(CountError):
            CountQuery(TRUE, 0, 2, (1,))
        with pytest.raises(CountError):
            count_topologies(CountQuery(TRUE, 0, 2), jobs=0)
        with pytest.raises(CapExceeded):
            count_topologies(CountQuery(TRUE, 2, 6))

    def test_cache(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        cache = ResultCache(str(path))
        q = CountQuery(builtin("t0"), 0, 4)
        assert count_topologies(q, cache=cache).count == 219
        lines = path.read_text().splitlines()
        assert len(lines) == 1 and json.loads(lines[0])["count"] == "219"
        # a fresh cache object reads the stored value instead of recounting
        fresh = ResultCache(str(path))
        assert fresh.get(q) == 219
        count_topologies(q, cache=fresh)
        assert len(path.read_text().splitlines()) == 1
        assert fresh.get(CountQuery(builtin("t0"), 0, 3)) is None

    def test_stirling_identity(self):
        assert verify_stirling_identity(0)["equal"]
        r3 = verify_stirling_identity(3)
        assert (r3["lhs"], r3["rhs"], r3["terms"]) == (29, 29, [0, 1, 9, 19])
        assert verify_stirling_identity(5)["lhs"] == 6942
        assert verify_stirling_identity(5)["equal"]


class TestSequenceRecord:
    @given(st.lists(st.integers(0, 10**30), max_size=20), st.lists(st.integers(2, 50), max_size=4))
    def test_residues_track_values(self, values, moduli):
        rec = SequenceRecord.with_moduli("s", 0, values, moduli)
        for m in moduli:
            assert rec.residues[m] == [v % m for v in values]
        again = SequenceRecord.from_json(json.loads(json.dumps(rec.to_json())))
        assert again.values == rec.values and again.residues == rec.residues

    def test_inconsistent_track(self):
        with pytest.raises(ValueError):
            SequenceRecord("s", 0, [1, 2], {2: [1, 1]})
