"""Core r-uniform hypergraph type and structural queries.

Vertices are the 0-based integers ``0 .. n-1`` everywhere in this package
(the combinatorics literature usually writes ``1 .. n``; shift by one when
comparing against hand calculations).  Edges are strictly sorted r-tuples
and the edge set is kept in lexicographic order, so equal hypergraphs
compare equal structurally.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Optional, Sequence

from .common import (
    InvalidArgumentError,
    ParseError,
    SizeLimitError,
    UnsupportedUniformityError,
)

Edge = tuple[int, ...]

#: Default vertex bound for brute-force isomorphism search.
ISO_VERTEX_BOUND = 12


class Codegree(NamedTuple):
    """Completions of a vertex pair: the witnessing sets and how many there are.

    For 3-graphs ``neighborhood`` is a frozenset of vertices; for r >= 4 it
    is a frozenset of sorted (r-2)-tuples.
    """

    neighborhood: frozenset
    count: int


def _check_pair(pair: Sequence[int], n: int) -> tuple[int, int]:
    if len(pair) != 2:
        raise InvalidArgumentError(f"pair must have two vertices, got {pair!r}")
    u, v = int(pair[0]), int(pair[1])
    if u == v:
        raise InvalidArgumentError(f"pair vertices must be distinct, got ({u}, {v})")
    if not (0 <= u < n and 0 <= v < n):
        raise InvalidArgumentError(f"pair ({u}, {v}) out of range for n={n}")
    return (u, v) if u < v else (v, u)


class Hypergraph:
    """Immutable r-uniform hypergraph on vertices ``0 .. n-1``.

    ``n`` may exceed the number of vertices actually covered by edges
    (isolated vertices are allowed).  Edges with a repeated vertex are
    rejected rather than silently deduplicated.
    """

    __slots__ = ("r", "n", "edges")

    def __init__(self, r: int, n: int, edges: Iterable[Sequence[int]] = ()):
        if r < 1:
            raise InvalidArgumentError(f"uniformity must be >= 1, got {r}")
        if n < 0:
            raise InvalidArgumentError(f"vertex count must be >= 0, got {n}")
        canonical = set()
        for raw in edges:
            edge = tuple(sorted(int(v) for v in raw))
            if len(edge) != r:
                raise InvalidArgumentError(
                    f"edge {tuple(raw)!r} has {len(tuple(raw))} vertices, expected {r}"
                )
            if len(set(edge)) != r:
                raise InvalidArgumentError(f"edge {tuple(raw)!r} repeats a vertex")
            if edge and (edge[0] < 0 or edge[-1] >= n):
                raise InvalidArgumentError(f"edge {edge!r} out of range for n={n}")
            canonical.add(edge)
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(canonical)))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Hypergraph is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def empty(cls, r: int, n: int) -> "Hypergraph":
        return cls(r, n, ())

    @classmethod
    def complete(cls, r: int, n: int) -> "Hypergraph":
        """K_n^r: all r-subsets of ``0 .. n-1``."""
        return cls(r, n, itertools.combinations(range(n), r))

    # -- basic dunders ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.r, self.n, self.edges) == (other.r, other.n, other.edges)

    def __hash__(self) -> int:
        return hash((self.r, self.n, self.edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Hypergraph(r={self.r}, n={self.n}, edges={len(self.edges)})"

    # -- structural queries ----------------------------------------------------

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise InvalidArgumentError(f"vertex {v} out of range for n={self.n}")
        return sum(1 for e in self.edges if v in e)

    def covered_vertices(self) -> frozenset:
        """Vertices that belong to at least one edge."""
        out = set()
        for e in self.edges:
            out.update(e)
        return frozenset(out)

    def shadow(self, steps: int = 1) -> "Hypergraph":
        """All (r-steps)-subsets contained in some edge; same vertex set.

        ``steps`` must satisfy ``1 <= steps < r``.
        """
        if steps < 1:
            raise InvalidArgumentError(f"steps must be >= 1, got {steps}")
        if steps >= self.r:
            raise InvalidArgumentError(
                f"cannot take a {steps}-fold shadow of a {self.r}-uniform hypergraph"
            )
        size = self.r - steps
        sub = set()
        for e in self.edges:
            sub.update(itertools.combinations(e, size))
        return Hypergraph(size, self.n, sub)

    def link(self, v: int) -> "Hypergraph":
        """The (r-1)-graph {E - v : v in E}; keeps the ambient vertex set.

        The vertex v itself is isolated in the result, which keeps indices
        stable for any downstream operation.
        """
        if not 0 <= v < self.n:
            raise InvalidArgumentError(f"vertex {v} out of range for n={self.n}")
        return Hypergraph(
            self.r - 1,
            self.n,
            (tuple(w for w in e if w != v) for e in self.edges if v in e),
        )

    def codegree(self, pair: Sequence[int]) -> Codegree:
        """Completions of a pair: requires r >= 3.

        Any vertex of the ambient vertex set may act as a completion,
        including isolated ones (vacuously: they never do).
        """
        if self.r < 3:
            raise InvalidArgumentError("codegree requires uniformity >= 3")
        u, v = _check_pair(pair, self.n)
        completions = []
        for e in self.edges:
            if u in e and v in e:
                rest = tuple(w for w in e if w != u and w != v)
                completions.append(rest[0] if self.r == 3 else rest)
        return Codegree(frozenset(completions), len(completions))

    def pair_in_shadow(self, u: int, v: int) -> bool:
        """Whether some edge contains both u and v."""
        return any(u in e and v in e for e in self.edges)

    def is_two_covered(self) -> bool:
        """True iff every pair of distinct vertices lies in some edge."""
        if self.n < 2:
            return True
        covered = set()
        for e in self.edges:
            covered.update(itertools.combinations(e, 2))
        return len(covered) == comb(self.n, 2)

    def is_symmetric_pair(self, pair: Sequence[int]) -> bool:
        """Whether L(v1) - v2 = L(v2) - v1 (3-graphs only)."""
        if self.r != 3:
            raise UnsupportedUniformityError(
                f"symmetric pairs are defined for 3-graphs, got r={self.r}"
            )
        v1, v2 = _check_pair(pair, self.n)
        left = {e for e in self.link(v1).edges if v2 not in e}
        right = {e for e in self.link(v2).edges if v1 not in e}
        return left == right

    def induced(self, vertices: Iterable[int]) -> "Hypergraph":
        """Induced subgraph on ``vertices``, relabeled 0..k-1 preserving order."""
        subset = sorted(set(int(v) for v in vertices))
        if subset and (subset[0] < 0 or subset[-1] >= self.n):
            raise InvalidArgumentError(f"vertex set {subset!r} out of range for n={self.n}")
        index = {v: i for i, v in enumerate(subset)}
        keep = set(subset)
        return Hypergraph(
            self.r,
            len(subset),
            (tuple(index[w] for w in e) for e in self.edges if keep.issuperset(e)),
        )

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Apply the vertex permutation ``i -> perm[i]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidArgumentError("perm must be a permutation of 0..n-1")
        return Hypergraph(self.r, self.n, (tuple(perm[w] for w in e) for e in self.edges))

    def shadow_clique_free(self, m: int) -> bool:
        """True iff the (r-2)-fold shadow graph has no clique on m+1 vertices."""
        graph = self if self.r == 2 else self.shadow(self.r - 2)
        return not _has_clique(graph, m + 1)

    def densities(self) -> tuple[Fraction, Fraction]:
        """Exact (edge density, shadow density) = (|H|/C(n,r), |dH|/C(n,r-1))."""
        if self.n < self.r:
            raise InvalidArgumentError(
                f"densities need n >= r, got n={self.n}, r={self.r}"
            )
        edge = Fraction(len(self.edges), comb(self.n, self.r))
        shadow = Fraction(len(self.shadow(1).edges), comb(self.n, self.r - 1))
        return edge, shadow

    # -- text format -----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form: ``r n`` then one sorted edge per line."""
        lines = [f"{self.r} {self.n}"]
        lines.extend(" ".join(str(v) for v in e) for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        header: tuple[int, int] | None = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            try:
                values = [int(f) for f in fields]
            except ValueError:
                raise ParseError(f"non-integer token in {line!r}", line=lineno) from None
            if header is None:
                if len(values) != 2:
                    raise ParseError("header must be 'r n'", line=lineno)
                header = (values[0], values[1])
                continue
            if len(values) != header[0]:
                raise ParseError(
                    f"edge has {len(values)} vertices, expected {header[0]}", line=lineno
                )
            try:
                Hypergraph(header[0], header[1], [values])
            except InvalidArgumentError as exc:
                raise ParseError(str(exc), line=lineno) from None
            edges.append(tuple(values))
        if header is None:
            raise ParseError("empty input: missing 'r n' header", line=1)
        return cls(header[0], header[1], edges)


def _has_clique(graph: Hypergraph, size: int) -> bool:
    """Whether the 2-graph contains a clique on ``size`` vertices.

    Branch-and-bound over adjacency bitmasks; a clique on <= 1 vertices
    exists whenever the graph has a vertex.
    """
    if size <= 0:
        return True
    if size == 1:
        return graph.n >= 1
    adj = [0] * graph.n
    for u, v in graph.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    # only vertices of degree >= size-1 can participate
    candidates = 0
    for v in range(graph.n):
        if bin(adj[v]).count("1") >= size - 1:
            candidates |= 1 << v

    def grow(clique_size: int, allowed: int) -> bool:
        if clique_size == size:
            return True
        if clique_size + bin(allowed).count("1") < size:
            return False
        while allowed:
            v = (allowed & -allowed).bit_length() - 1
            allowed &= allowed - 1
            if grow(clique_size + 1, allowed & adj[v]):
                return True
        return False

    return grow(0, candidates)


def are_isomorphic(
    h1: Hypergraph, h2: Hypergraph, max_vertices: int = ISO_VERTEX_BOUND
) -> Optional[tuple[int, ...]]:
    """Brute-force isomorphism search for small hypergraphs.

    Returns a bijection ``phi`` with ``phi[v]`` the image of v, or None.
    Vertices are matched in decreasing-degree order; candidates must agree
    on degree and on pairwise codegrees with all previously mapped vertices.
    """
    if h1.n > max_vertices or h2.n > max_vertices:
        raise SizeLimitError(
            f"isomorphism search limited to {max_vertices} vertices "
            f"(got {h1.n} and {h2.n})"
        )
    if h1.r != h2.r or h1.n != h2.n or len(h1.edges) != len(h2.edges):
        return None
    n = h1.n
    deg1 = [h1.degree(v) for v in range(n)]
    deg2 = [h2.degree(v) for v in range(n)]
    if sorted(deg1) != sorted(deg2):
        return None

    def pair_counts(h: Hypergraph):
        counts = {}
        for e in h.edges:
            for u, v in itertools.combinations(e, 2):
                counts[(u, v)] = counts.get((u, v), 0) + 1
        return counts

    cod1 = pair_counts(h1)
    cod2 = pair_counts(h2)
    edge_set2 = set(h2.edges)
    order = sorted(range(n), key=lambda v: (-deg1[v], v))
    mapping = [-1] * n
    used = [False] * n

    def backtrack(pos: int) -> bool:
        if pos == n:
            return all(
                tuple(sorted(mapping[w] for w in e)) in edge_set2 for e in h1.edges
            )
        v = order[pos]
        for w in range(n):
            if used[w] or deg2[w] != deg1[v]:
                continue
            ok = True
            for u in order[:pos]:
                a = (u, v) if u < v else (v, u)
                mu = mapping[u]
                b = (mu, w) if mu < w else (w, mu)
                if cod1.get(a, 0) != cod2.get(b, 0):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if backtrack(pos + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    if backtrack(0):
        return tuple(mapping)
    return None


def read_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return Hypergraph.from_text(fh.read())


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(h.to_text())
