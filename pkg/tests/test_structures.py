import itertools
import json

import pytest
from hypothesis import given, strategies as st

from topocount.structures import (
    CapExceeded, InvalidTopology, Preorder, StructureError, StructureKind, Topology,
    alpha, alpha_prime, brute_force_preorders, brute_force_topologies, check_preorder,
    discrete, enumerate_structures, indiscrete, is_open_substructure, load_structure,
    mask_of, minimal_basis, minimal_open_set, set_partitions, sierpinski,
    structure_from_json, validate_topology,
)
from topocount.counting import bell

Q = [1, 1, 4, 29, 355, 6942]
P = [1, 1, 3, 19, 219, 4231]


def preorder_from_pairs(n, pairs):
    below = [1 << y for y in range(n)]
    for x, y in pairs:
        below[y] |= 1 << x
    return check_preorder(n, below)


class TestValidateTopology:
    def test_indiscrete(self):
        assert validate_topology(2, [0, 0b11]) == indiscrete(2)

    def test_discrete(self):
        assert validate_topology(2, [0, 1, 2, 3]) == discrete(2)

    def test_full_set_missing(self):
        with pytest.raises(InvalidTopology) as exc:
            validate_topology(2, [0, 1, 2])
        assert exc.value.axiom == "full set missing"

    def test_empty_set_missing(self):
        with pytest.raises(InvalidTopology) as exc:
            validate_topology(2, [1, 3])
        assert exc.value.axiom == "empty set missing"

    def test_union_witness(self):
        with pytest.raises(InvalidTopology) as exc:
            validate_topology(3, [0, 0b001, 0b010, 0b111])
        assert exc.value.axiom == "not closed under union"
        assert exc.value.witness == (0b001, 0b010)

    def test_intersection_witness(self):
        with pytest.raises(InvalidTopology) as exc:
            validate_topology(3, [0, 0b011, 0b110, 0b111])
        assert exc.value.axiom == "not closed under intersection"

    def test_canonical_order(self):
        t = validate_topology(2, [3, 1, 0, 1])
        assert t.opens == (0, 1, 3)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            validate_topology(9, [0, 511], cap=7)

    def test_set_too_wide(self):
        with pytest.raises(StructureError):
            validate_topology(2, [0, 3, 4])

    def test_empty_ground_set(self):
        assert validate_topology(0, [0]).opens == (0,)


class TestAlexandroffMaps:
    def test_alpha_indiscrete(self):
        assert alpha(indiscrete(2)).below == (0b11, 0b11)

    def test_alpha_discrete(self):
        assert alpha(discrete(2)).below == (0b01, 0b10)

    def test_alpha_sierpinski(self):
        q = alpha(sierpinski())
        assert q.below == (0b01, 0b11)
        assert q.leq(0, 1) and not q.leq(1, 0)

    def test_alpha_prime_identity(self):
        assert alpha_prime(preorder_from_pairs(2, [])) == discrete(2)

    def test_alpha_prime_complete(self):
        assert alpha_prime(preorder_from_pairs(2, [(0, 1), (1, 0)])) == indiscrete(2)

    def test_alpha_prime_chain(self):
        assert alpha_prime(preorder_from_pairs(2, [(0, 1)])).opens == sierpinski().opens

    def test_minimal_open_set(self):
        assert minimal_open_set(sierpinski(), 1) == 0b11
        assert minimal_open_set(discrete(3), 1) == 0b010
        assert minimal_open_set(indiscrete(3), 0) == 0b111
        with pytest.raises(StructureError):
            minimal_open_set(discrete(2), 2)

    def test_minimal_basis_examples(self):
        assert minimal_basis(discrete(3)) == [1, 2, 4]
        assert minimal_basis(indiscrete(3)) == [7]
        assert minimal_basis(sierpinski()) == [1, 3]

    @pytest.mark.parametrize("n", range(5))
    def test_round_trip_against_oracles(self, n):
        for q in brute_force_preorders(n):
            assert alpha(alpha_prime(q)) == q
        for t in brute_force_topologies(n):
            assert alpha_prime(alpha(t)) == t

    @pytest.mark.parametrize("n", range(5))
    def test_maps_are_injective(self, n):
        qs = list(enumerate_structures("preorder", n))
        ts = list(enumerate_structures("topology", n))
        assert len({alpha_prime(q) for q in qs}) == len(qs)
        assert len({alpha(t) for t in ts}) == len(ts)

    @pytest.mark.parametrize("n", range(5))
    def test_minimal_basis_is_minimal(self, n):
        for t in enumerate_structures("topology", n):
            basis = minimal_basis(t)

            def generated(family):
                out = set()
                for k in range(len(family) + 1):
                    for combo in itertools.combinations(family, k):
                        u = 0
                        for b in combo:
                            u |= b
                        out.add(u)
                return out

            assert generated(basis) == t.open_set
            for i in range(len(basis)):
                assert generated(basis[:i] + basis[i + 1:]) != t.open_set


class TestOpenSubstructure:
    def test_examples(self):
        one = discrete(1)
        assert is_open_substructure(one, sierpinski(), [0])
        assert not is_open_substructure(one, sierpinski(), [1])

    @pytest.mark.parametrize("n", range(4))
    def test_reflexive(self, n):
        for t in enumerate_structures("topology", n):
            assert is_open_substructure(t, t, list(range(n)))

    def test_non_injective(self):
        with pytest.raises(StructureError):
            is_open_substructure(discrete(2), discrete(3), [0, 0])

    def test_trace_mismatch(self):
        # {1} is open in the discrete space but its trace topology is discrete, not indiscrete
        assert not is_open_substructure(indiscrete(2), discrete(3), [0, 1])
        assert is_open_substructure(discrete(2), discrete(3), [2, 0])


class TestEnumeration:
    @pytest.mark.parametrize("n", range(6))
    def test_stream_lengths(self, n):
        assert sum(1 for _ in enumerate_structures("preorder", n)) == Q[n]
        assert sum(1 for _ in enumerate_structures("poset", n)) == P[n]
        assert sum(1 for _ in enumerate_structures("topology", n)) == Q[n]
        assert sum(1 for _ in enumerate_structures("t0-topology", n)) == P[n]

    @pytest.mark.parametrize("n", range(5))
    def test_matches_brute_force(self, n):
        assert set(enumerate_structures("preorder", n)) == set(brute_force_preorders(n))
        assert set(enumerate_structures("poset", n)) == set(brute_force_preorders(n, antisymmetric=True))
        assert set(enumerate_structures("topology", n)) == set(brute_force_topologies(n))

    @pytest.mark.parametrize("n", range(6))
    def test_emitted_structures_are_valid(self, n):
        seen = set()
        for t in enumerate_structures(StructureKind.TOPOLOGY, n):
            assert validate_topology(n, t.opens) == t
            assert t not in seen
            seen.add(t)
        for q in enumerate_structures(StructureKind.PREORDER, n):
            assert check_preorder(n, q.below) == q

    def test_t0_topologies_are_alpha_prime_of_posets(self):
        for t in enumerate_structures("t0-topology", 4):
            assert alpha(t).is_antisymmetric()

    def test_deterministic(self):
        a = [q.code() for q in enumerate_structures("preorder", 4)]
        b = [q.code() for q in enumerate_structures("preorder", 4)]
        assert a == b

    @given(st.integers(1, 6))
    def test_shards_partition_the_stream(self, parts):
        full = list(enumerate_structures("preorder", 4))
        shards = [list(enumerate_structures("preorder", 4, shard=(i, parts))) for i in range(parts)]
        assert sorted(q.code() for s in shards for q in s) == sorted(q.code() for q in full)
        assert sum(len(s) for s in shards) == len(full)

    def test_cap_and_bad_args(self):
        with pytest.raises(CapExceeded):
            list(enumerate_structures("preorder", 8))
        with pytest.raises(StructureError):
            list(enumerate_structures("preorder", -1))
        with pytest.raises(StructureError):
            list(enumerate_structures("preorder", 2, shard=(2, 2)))
        with pytest.raises(ValueError):
            list(enumerate_structures("lattice", 2))

    def test_empty_structure(self):
        assert list(enumerate_structures("topology", 0)) == [Topology(0, (0,))]

    @pytest.mark.parametrize("n", range(7))
    def test_set_partitions(self, n):
        parts = list(set_partitions(n))
        assert len(parts) == bell(n)
        for blocks in parts:
            assert sum(bin(b).count("1") for b in blocks) == n
            u = 0
            for b in blocks:
                assert b and not u & b
                u |= b


class TestPreorderChecks:
    def test_not_reflexive(self):
        with pytest.raises(StructureError, match="reflexive"):
            check_preorder(2, [0b01, 0b00])

    def test_not_transitive(self):
        with pytest.raises(StructureError, match="transitive"):
            check_preorder(3, [0b001, 0b011, 0b110])


class TestJson:
    def test_topology_round_trip(self, tmp_path):
        t = sierpinski()
        path = tmp_path / "s.json"
        path.write_text(json.dumps(t.to_json()))
        assert load_structure(str(path)) == t
        assert t.to_json() == {"n": 2, "opens": [[], [1], [1, 2]]}

    def test_preorder_round_trip(self):
        q = preorder_from_pairs(3, [(0, 2), (1, 2)])
        assert structure_from_json(q.to_json()) == q

    def test_rejects_bad_points(self):
        with pytest.raises(StructureError):
            structure_from_json({"n": 2, "opens": [[], [3], [1, 2]]})
        with pytest.raises(InvalidTopology):
            structure_from_json({"n": 2, "opens": [[], [1], [2]]})
        with pytest.raises(StructureError):
            structure_from_json({"n": 2})

    @given(st.lists(st.integers(0, 5), unique=True))
    def test_mask_of(self, points):
        assert mask_of(points) == sum(1 << p for p in points)
