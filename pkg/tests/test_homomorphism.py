"""Homomorphism search against exhaustive and permutation oracles."""

import itertools

import numpy as np
import pytest

from turan import (
    BlowupSpec,
    BudgetExceededError,
    Hypergraph,
    SizeLimitError,
    VertexMap,
    blowup,
    enumerate_endomorphisms,
    find_homomorphism,
    gamma,
    in_family_FM,
    is_colorable,
    partial_embedding_check,
    search_homomorphism,
)

K4 = Hypergraph.complete(3, 4)
K5 = Hypergraph.complete(3, 5)
C5 = Hypergraph(3, 5, [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4), (0, 1, 4)])


def brute_force_has_hom(source, target):
    """Independent oracle: try every map."""
    for images in itertools.product(range(target.n), repeat=source.n):
        ok = True
        for e in source.edges:
            image = tuple(sorted(images[v] for v in e))
            if len(set(image)) != source.r or image not in set(target.edges):
                ok = False
                break
        if ok:
            return True
    return False


def has_subgraph_copy(small, big):
    """Independent oracle: injective embeddings by permutation."""
    big_edges = set(big.edges)
    for chosen in itertools.permutations(range(big.n), small.n):
        if all(tuple(sorted(chosen[v] for v in e)) in big_edges for e in small.edges):
            return True
    return False


class TestFindHomomorphism:
    def test_complete_into_gamma2(self):
        phi = find_homomorphism(K4, gamma(2))
        assert phi is not None
        assert phi.is_homomorphism(K4, gamma(2))

    def test_k5_not_into_gamma2(self):
        assert find_homomorphism(K5, gamma(2)) is None

    def test_edgeless_source(self):
        source = Hypergraph.empty(3, 3)
        phi = find_homomorphism(source, Hypergraph(3, 3, [(0, 1, 2)]))
        assert phi is not None

    def test_matches_brute_force_on_random_instances(self):
        rng = np.random.default_rng(2)
        for _ in range(40):
            n1, n2 = int(rng.integers(3, 5)), int(rng.integers(3, 6))
            u1 = list(itertools.combinations(range(n1), 3))
            u2 = list(itertools.combinations(range(n2), 3))
            source = Hypergraph(3, n1, [e for e in u1 if rng.random() < 0.5])
            target = Hypergraph(3, n2, [e for e in u2 if rng.random() < 0.5])
            got = find_homomorphism(source, target)
            assert (got is not None) == brute_force_has_hom(source, target)
            if got is not None:
                assert got.is_homomorphism(source, target)

    def test_nodes_expanded_reported(self):
        result = search_homomorphism(K4, gamma(2))
        assert result.found and result.nodes_expanded > 0
        data = result.to_json_dict()
        assert set(data) == {"found", "map", "nodes_expanded"}


class TestColorable:
    def test_blowup_is_colorable(self):
        h = blowup(BlowupSpec(K4, (2, 2, 2, 2)))
        assert is_colorable(h, K4)

    def test_c5_vs_k4(self):
        # oracle: 4^5 maps checked directly
        assert is_colorable(C5, K4) == brute_force_has_hom(C5, K4) == False

    def test_gamma2_vs_k4(self):
        assert is_colorable(gamma(2), K4) == brute_force_has_hom(gamma(2), K4) == False


class TestEnumerate:
    def test_single_edge_endomorphisms(self):
        maps = enumerate_endomorphisms(Hypergraph(3, 3, [(0, 1, 2)]))
        assert len(maps) == 6
        images = [m.images for m in maps]
        assert images == sorted(images)  # lexicographic order

    def test_gamma2_rigidity(self):
        endos = enumerate_endomorphisms(gamma(2))
        assert len(endos) > 0
        for phi in endos:
            assert len(set(phi.images)) == 6
            assert {phi.images[0], phi.images[1]} == {0, 1}
            pairs = {
                frozenset((phi.images[2], phi.images[5])),
                frozenset((phi.images[3], phi.images[4])),
            }
            assert pairs == {frozenset((2, 5)), frozenset((3, 4))}

    def test_gamma3_fixes_inner_head(self):
        for phi in enumerate_endomorphisms(gamma(3)):
            assert {phi.images[0], phi.images[1]} == {0, 1}

    def test_limit_carries_partial(self):
        with pytest.raises(BudgetExceededError) as err:
            enumerate_endomorphisms(Hypergraph(3, 3, [(0, 1, 2)]), limit=4)
        assert len(err.value.partial) == 4

    def test_exact_limit_is_clean(self):
        maps = enumerate_endomorphisms(Hypergraph(3, 3, [(0, 1, 2)]), limit=6)
        assert len(maps) == 6

    def test_size_bound(self):
        with pytest.raises(SizeLimitError):
            enumerate_endomorphisms(Hypergraph.empty(3, 11))


class TestPartialEmbedding:
    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_holds(self, t):
        assert partial_embedding_check(t)

    def test_range_checked(self):
        with pytest.raises(Exception):
            partial_embedding_check(5)


class TestFamilyMembership:
    def test_k5_in_family(self):
        assert in_family_FM(K5, gamma(2), 4 * 6 * 6)

    def test_k4_not_in_family(self):
        assert not in_family_FM(K4, gamma(2), 144)

    def test_vertex_budget(self):
        big = Hypergraph.empty(3, 10)
        assert not in_family_FM(big, gamma(2), 9)


class TestHomProperties:
    def test_composition(self):
        f = blowup(BlowupSpec(K4, (2, 1, 1, 1)))
        phi = find_homomorphism(f, K4)
        psi = find_homomorphism(K4, gamma(2))
        composed = phi.compose(psi)
        assert composed.is_homomorphism(f, gamma(2))

    def test_blowup_invariance_seed(self):
        rng = np.random.default_rng(3)
        target = gamma(1)
        checked = 0
        while checked < 20:
            n = int(rng.integers(3, 5))
            universe = list(itertools.combinations(range(n), 3))
            source = Hypergraph(3, n, [e for e in universe if rng.random() < 0.5])
            if not is_colorable(source, target):
                continue
            sizes = tuple(int(rng.integers(1, 3)) for _ in range(n))
            blown = blowup(BlowupSpec(source, sizes))
            assert is_colorable(blown, target)
            checked += 1

    def test_gamma_blowup_shadows_have_no_large_clique(self):
        rng = np.random.default_rng(4)
        for t in (1, 2, 3):
            base = gamma(t)
            for _ in range(3):
                sizes = tuple(int(rng.integers(0, 3)) for _ in range(base.n))
                h = blowup(BlowupSpec(base, sizes))
                assert h.shadow_clique_free(t + 4)

    def test_two_covered_hom_gives_subgraph_copy(self):
        # for a two-covered source, a homomorphism forces an injective copy
        rng = np.random.default_rng(6)
        sources = [
            Hypergraph(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]),
            Hypergraph(3, 3, [(0, 1, 2)]),
        ]
        checked = 0
        while checked < 12:
            n = int(rng.integers(4, 7))
            universe = list(itertools.combinations(range(n), 3))
            target = Hypergraph(3, n, [e for e in universe if rng.random() < 0.45])
            for source in sources:
                assert source.is_two_covered()
                assert (find_homomorphism(source, target) is not None) == has_subgraph_copy(
                    source, target
                )
            checked += 1


class TestVertexMap:
    def test_validation(self):
        with pytest.raises(Exception):
            VertexMap(3, 2, (0, 1, 2))

    def test_callable(self):
        phi = VertexMap(3, 5, (4, 0, 2))
        assert phi(0) == 4 and phi(2) == 2
