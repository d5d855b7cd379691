"""Structural hypergraph operations against small independent oracles."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from turan import (
    Hypergraph,
    InvalidArgumentError,
    ParseError,
    SizeLimitError,
    UnsupportedUniformityError,
    are_isomorphic,
    gamma,
)

K4 = Hypergraph.complete(3, 4)
# tight 5-cycle, zero-based from the 1-based edge list {123,234,345,451,512}
C5 = Hypergraph(3, 5, [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4), (0, 1, 4)])


def brute_shadow(h: Hypergraph, size: int) -> set:
    out = set()
    for e in h.edges:
        out.update(itertools.combinations(e, size))
    return out


@st.composite
def hypergraphs(draw, max_n=7):
    r = draw(st.integers(2, 3))
    n = draw(st.integers(r, max_n))
    universe = list(itertools.combinations(range(n), r))
    edges = draw(st.lists(st.sampled_from(universe), max_size=12))
    return Hypergraph(r, n, edges)


class TestConstruction:
    def test_canonical_storage(self):
        h = Hypergraph(3, 5, [(4, 2, 0), (0, 2, 4), (1, 3, 2)])
        assert h.edges == ((0, 2, 4), (1, 2, 3))

    def test_duplicate_vertex_in_edge_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Hypergraph(3, 4, [(0, 1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Hypergraph(3, 3, [(0, 1, 3)])

    def test_wrong_arity_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Hypergraph(3, 4, [(0, 1)])

    def test_isolated_vertices_allowed(self):
        h = Hypergraph(3, 9, [(0, 1, 2)])
        assert h.n == 9 and len(h.edges) == 1


class TestShadow:
    def test_single_edge(self):
        h = Hypergraph(3, 3, [(0, 1, 2)])
        assert h.shadow().edges == ((0, 1), (0, 2), (1, 2))

    def test_complete_graph_shadow(self):
        assert K4.shadow() == Hypergraph.complete(2, 4)

    def test_c5_shadow_is_complete(self):
        # oracle: collect the pairs of every edge directly
        assert set(C5.shadow().edges) == brute_shadow(C5, 2)
        assert C5.shadow() == Hypergraph.complete(2, 5)

    def test_steps_bounds(self):
        with pytest.raises(InvalidArgumentError):
            K4.shadow(3)
        with pytest.raises(InvalidArgumentError):
            K4.shadow(0)


class TestLink:
    def test_complete(self):
        assert K4.link(0).edges == ((1, 2), (1, 3), (2, 3))

    def test_c5_vertex_4(self):
        # oracle: scan the edges containing 4
        expect = {tuple(sorted(set(e) - {4})) for e in C5.edges if 4 in e}
        assert set(C5.link(4).edges) == expect == {(2, 3), (0, 3), (0, 1)}

    def test_empty(self):
        assert Hypergraph.empty(3, 5).link(2).edges == ()

    def test_keeps_ambient_vertex_set(self):
        link = C5.link(4)
        assert link.n == 5
        assert all(4 not in e for e in link.edges)

    def test_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            K4.link(4)


class TestCodegree:
    def test_gamma2_special_pairs(self):
        g2 = gamma(2)
        assert g2.codegree((2, 5)).count == 2
        assert g2.codegree((2, 3)).count == 1

    def test_complete(self):
        got = K4.codegree((0, 1))
        assert got.count == 2
        assert got.neighborhood == frozenset({2, 3})

    def test_r2_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Hypergraph.complete(2, 4).codegree((0, 1))

    def test_r4_neighborhood_is_tuples(self):
        h = Hypergraph(4, 5, [(0, 1, 2, 3), (0, 1, 2, 4)])
        got = h.codegree((0, 1))
        assert got.count == 2
        assert got.neighborhood == frozenset({(2, 3), (2, 4)})

    def test_bad_pair(self):
        with pytest.raises(InvalidArgumentError):
            K4.codegree((1, 1))


class TestTwoCovered:
    def test_complete(self):
        assert K4.is_two_covered()

    def test_gamma2(self):
        assert gamma(2).is_two_covered()

    def test_uncovered_vertex(self):
        assert not Hypergraph(3, 4, [(0, 1, 2)]).is_two_covered()


class TestSymmetricPair:
    def test_complete_pair(self):
        assert K4.is_symmetric_pair((2, 3))

    def test_c5_pair_not_symmetric(self):
        # oracle: reduced links computed directly
        left = {tuple(sorted(set(e) - {3})) for e in C5.edges if 3 in e and 4 not in e}
        right = {tuple(sorted(set(e) - {4})) for e in C5.edges if 4 in e and 3 not in e}
        assert left != right
        assert not C5.is_symmetric_pair((3, 4))

    def test_two_edge_base(self):
        base = Hypergraph(3, 4, [(0, 2, 3), (1, 2, 3)])
        assert base.is_symmetric_pair((2, 3))

    def test_non_three_uniform_rejected(self):
        with pytest.raises(UnsupportedUniformityError):
            Hypergraph.complete(2, 4).is_symmetric_pair((0, 1))


class TestInduced:
    def test_gamma2_contains_complete(self):
        sub = gamma(2).induced([0, 1, 2, 5])
        assert are_isomorphic(sub, K4) is not None

    def test_complete_restriction(self):
        assert K4.induced([0, 1, 2]) == Hypergraph(3, 3, [(0, 1, 2)])

    def test_empty_set(self):
        got = K4.induced([])
        assert got.n == 0 and got.edges == ()

    def test_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            K4.induced([0, 9])


class TestIsomorphism:
    def test_relabeled_complete(self):
        relabeled = K4.relabel((2, 0, 3, 1))
        phi = are_isomorphic(K4, relabeled)
        assert phi is not None

    def test_different_sizes(self):
        assert are_isomorphic(K4, C5) is None

    def test_gamma1_clone_pair_swap(self):
        g1 = gamma(1)
        # swap v1 <-> v1' and v2 <-> v2' (positions 2,3 and 4,5)
        swapped = g1.relabel((0, 1, 3, 2, 5, 4))
        assert are_isomorphic(g1, swapped) is not None

    def test_witness_maps_edges(self):
        relabeled = K4.relabel((1, 3, 0, 2))
        phi = are_isomorphic(K4, relabeled)
        mapped = {tuple(sorted(phi[v] for v in e)) for e in K4.edges}
        assert mapped == set(relabeled.edges)

    def test_same_degrees_not_isomorphic(self):
        a = Hypergraph(3, 6, [(0, 1, 2), (3, 4, 5)])
        b = Hypergraph(3, 6, [(0, 1, 2), (2, 3, 4)])
        assert are_isomorphic(a, b) is None

    def test_size_limit(self):
        big = Hypergraph.empty(3, 13)
        with pytest.raises(SizeLimitError):
            are_isomorphic(big, big)
        assert are_isomorphic(big, big, max_vertices=13) is not None


class TestShadowCliqueFree:
    def test_gamma2_blowup(self):
        from turan import BlowupSpec, blowup

        h = blowup(BlowupSpec(gamma(2), (2, 2, 1, 1, 1, 1)))
        assert h.n == 8
        assert h.shadow_clique_free(6)

    def test_complete_seven(self):
        assert not Hypergraph.complete(3, 7).shadow_clique_free(6)

    def test_empty(self):
        empty = Hypergraph.empty(3, 6)
        for m in (1, 2, 5):
            assert empty.shadow_clique_free(m)


class TestDensities:
    def test_complete(self):
        assert K4.densities() == (Fraction(1), Fraction(1))

    def test_single_edge(self):
        assert Hypergraph(3, 3, [(0, 1, 2)]).densities() == (Fraction(1), Fraction(1))

    def test_balanced_blowup(self):
        from turan import BlowupSpec, blowup

        h = blowup(BlowupSpec(K4, (3, 3, 3, 3)))
        edge, shadow = h.densities()
        assert edge == Fraction(108, 220)
        assert shadow == Fraction(54, 66)

    def test_too_few_vertices(self):
        with pytest.raises(InvalidArgumentError):
            Hypergraph.empty(3, 2).densities()


class TestTextFormat:
    def test_round_trip(self):
        text = gamma(2).to_text()
        assert Hypergraph.from_text(text) == gamma(2)
        assert Hypergraph.from_text(text).to_text() == text

    def test_comments_and_blanks(self):
        text = "# header comment\n3 4\n\n0 1 2\n# inline comment line\n0 1 3\n"
        assert Hypergraph.from_text(text) == Hypergraph(3, 4, [(0, 1, 2), (0, 1, 3)])

    def test_parse_error_reports_line(self):
        with pytest.raises(ParseError) as err:
            Hypergraph.from_text("3 4\n0 1 2\n0 1\n")
        assert err.value.line == 3

    def test_non_integer(self):
        with pytest.raises(ParseError):
            Hypergraph.from_text("3 x\n")

    def test_empty_input(self):
        with pytest.raises(ParseError):
            Hypergraph.from_text("# nothing\n")


class TestInvariants:
    @given(hypergraphs())
    @settings(max_examples=120, deadline=None)
    def test_shadow_composition(self, h):
        for steps in range(1, h.r - 1):
            assert h.shadow(1).shadow(steps) == h.shadow(steps + 1)

    @given(hypergraphs())
    @settings(max_examples=120, deadline=None)
    def test_link_sizes_sum_to_r_edges(self, h):
        degrees = [len(h.link(v).edges) for v in range(h.n)]
        assert all(degrees[v] == h.degree(v) for v in range(h.n))
        assert sum(degrees) == h.r * len(h.edges)

    @given(hypergraphs())
    @settings(max_examples=120, deadline=None)
    def test_two_covered_iff_complete_shadow_graph(self, h):
        graph = h if h.r == 2 else h.shadow(h.r - 2)
        complete = graph == Hypergraph.complete(2, h.n)
        assert h.is_two_covered() == complete

    @given(hypergraphs(), st.data())
    @settings(max_examples=120, deadline=None)
    def test_induced_idempotent(self, h, data):
        subset = data.draw(st.lists(st.integers(0, max(h.n - 1, 0)), max_size=h.n))
        if h.n == 0:
            subset = []
        sub = h.induced(subset)
        assert sub.induced(range(sub.n)) == sub

    @given(hypergraphs(max_n=6))
    @settings(max_examples=60, deadline=None)
    def test_isomorphism_reflexive_and_invertible(self, h):
        phi = are_isomorphic(h, h)
        assert phi is not None
        inverse = [0] * h.n
        for v, w in enumerate(phi):
            inverse[w] = v
        assert h.relabel(phi) == h
        assert h.relabel(inverse).relabel(phi) == h
