"""Backtracking homomorphism search, colorability, and family membership.

A homomorphism maps each edge onto an edge *as a set of r distinct
vertices*: maps collapsing an edge are rejected.  Search assigns the
source vertices in decreasing-degree order (ascending candidate images),
pruning any assignment that sends a covered pair of the source onto a
non-covered pair of the target.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .common import BudgetExceededError, InvalidArgumentError, SizeLimitError
from .hypergraph import Hypergraph

ENDOMORPHISM_VERTEX_BOUND = 10


@dataclass(frozen=True)
class VertexMap:
    """A vertex assignment from one hypergraph into another."""

    from_n: int
    to_n: int
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.from_n:
            raise InvalidArgumentError(
                f"need {self.from_n} images, got {len(images)}"
            )
        if any(not 0 <= v < self.to_n for v in images):
            raise InvalidArgumentError("image vertex out of range")

    def __call__(self, v: int) -> int:
        return self.images[v]

    def is_homomorphism(self, source: Hypergraph, target: Hypergraph) -> bool:
        """Direct check that every source edge maps onto a target edge."""
        target_edges = set(target.edges)
        for e in source.edges:
            image = tuple(sorted(self.images[v] for v in e))
            if len(set(image)) != source.r or image not in target_edges:
                return False
        return True

    def compose(self, then: "VertexMap") -> "VertexMap":
        """First this map, then ``then``."""
        if self.to_n != then.from_n:
            raise InvalidArgumentError("maps are not composable")
        return VertexMap(
            self.from_n, then.to_n, tuple(then.images[v] for v in self.images)
        )


@dataclass(frozen=True)
class HomSearchResult:
    map: Optional[VertexMap]
    nodes_expanded: int

    @property
    def found(self) -> bool:
        return self.map is not None

    def to_json_dict(self) -> dict:
        return {
            "found": self.found,
            "map": list(self.map.images) if self.map else None,
            "nodes_expanded": self.nodes_expanded,
        }


def _pair_cover(graph: Hypergraph) -> set[tuple[int, int]]:
    pairs = set()
    for e in graph.edges:
        pairs.update(itertools.combinations(e, 2))
    return pairs


def _search(
    source: Hypergraph,
    target: Hypergraph,
    order: list[int],
    on_solution: Callable[[tuple[int, ...]], bool],
) -> int:
    """Backtracking over the given vertex order.

    ``on_solution`` receives each complete image vector (in vertex order,
    not search order) and returns True to continue enumerating.  Returns
    the number of expanded assignment nodes.
    """
    src_pairs = _pair_cover(source)
    tgt_pairs = _pair_cover(target)
    tgt_edges = set(target.edges)
    position = {v: k for k, v in enumerate(order)}
    # edges become checkable once their last vertex (in search order) is set
    edges_by_last = [[] for _ in order]
    for e in source.edges:
        last = max(e, key=lambda v: position[v])
        edges_by_last[position[last]].append(e)
    # covered source pairs against earlier-assigned vertices
    pair_checks = [[] for _ in order]
    for u, v in src_pairs:
        first, second = sorted((u, v), key=lambda w: position[w])
        pair_checks[position[second]].append(first)

    images = [-1] * source.n
    nodes = 0
    stop = False

    def attempt(pos: int) -> None:
        nonlocal nodes, stop
        if stop:
            return
        if pos == len(order):
            if not on_solution(tuple(images)):
                stop = True
            return
        v = order[pos]
        for w in range(target.n):
            nodes += 1
            ok = True
            for earlier in pair_checks[pos]:
                iw = images[earlier]
                if iw == w or ((iw, w) if iw < w else (w, iw)) not in tgt_pairs:
                    ok = False
                    break
            if not ok:
                continue
            images[v] = w
            complete = True
            for e in edges_by_last[pos]:
                image = tuple(sorted(images[u] for u in e))
                if len(set(image)) != source.r or image not in tgt_edges:
                    complete = False
                    break
            if complete:
                attempt(pos + 1)
                if stop:
                    images[v] = -1
                    return
            images[v] = -1

    attempt(0)
    return nodes


def search_homomorphism(source: Hypergraph, target: Hypergraph) -> HomSearchResult:
    """First homomorphism found (deterministic order), with node count."""
    if source.n == 0:
        return HomSearchResult(VertexMap(0, target.n, ()), 0)
    if not source.edges and target.n >= 1:
        # edge constraints are vacuous; send everything to vertex 0
        return HomSearchResult(VertexMap(source.n, target.n, (0,) * source.n), 0)
    if source.r != target.r or target.n == 0:
        return HomSearchResult(None, 0)
    degrees = [source.degree(v) for v in range(source.n)]
    order = sorted(range(source.n), key=lambda v: (-degrees[v], v))
    found: list[tuple[int, ...]] = []

    def record(images: tuple[int, ...]) -> bool:
        found.append(images)
        return False

    nodes = _search(source, target, order, record)
    if found:
        return HomSearchResult(VertexMap(source.n, target.n, found[0]), nodes)
    return HomSearchResult(None, nodes)


def find_homomorphism(source: Hypergraph, target: Hypergraph) -> Optional[VertexMap]:
    return search_homomorphism(source, target).map


def is_colorable(source: Hypergraph, target: Hypergraph) -> bool:
    """Whether ``source`` occurs in some blowup of ``target``
    (equivalently: admits a homomorphism into it)."""
    return find_homomorphism(source, target) is not None


def enumerate_homomorphisms(
    source: Hypergraph, target: Hypergraph, limit: int | None = None
) -> list[VertexMap]:
    """All homomorphisms in lexicographic image order.

    Raises a budget error carrying the partial list when ``limit`` is hit.
    For edgeless sources every map qualifies, whatever the uniformities.
    """
    if source.n == 0:
        return [VertexMap(0, target.n, ())]
    if target.n == 0:
        return []
    if not source.edges:
        out = [
            VertexMap(source.n, target.n, images)
            for images in itertools.islice(
                itertools.product(range(target.n), repeat=source.n),
                (limit + 1) if limit is not None else None,
            )
        ]
        if limit is not None and len(out) > limit:
            raise BudgetExceededError(
                f"homomorphism enumeration exceeded the limit of {limit}",
                partial=out[:limit],
            )
        return out
    if source.r != target.r:
        return []
    out: list[VertexMap] = []

    def record(images: tuple[int, ...]) -> bool:
        out.append(VertexMap(source.n, target.n, images))
        # allow one extra solution so exactly-limit enumerations finish cleanly
        return limit is None or len(out) <= limit

    # index order makes the DFS emit image vectors lexicographically
    _search(source, target, list(range(source.n)), record)
    if limit is not None and len(out) > limit:
        raise BudgetExceededError(
            f"homomorphism enumeration exceeded the limit of {limit}",
            partial=out[:limit],
        )
    return out


def enumerate_endomorphisms(graph: Hypergraph, limit: int = 1_000_000) -> list[VertexMap]:
    """All homomorphisms of a small hypergraph into itself."""
    if graph.n > ENDOMORPHISM_VERTEX_BOUND:
        raise SizeLimitError(
            f"endomorphism enumeration limited to {ENDOMORPHISM_VERTEX_BOUND} vertices"
        )
    return enumerate_homomorphisms(graph, graph, limit=limit)


def partial_embedding_check(t: int) -> bool:
    """Exhaustively verify how gamma(t) minus one special vertex embeds.

    Deleting the vertex at position t+2 of gamma(t) (one of the two
    middle-block specials) leaves a graph whose every homomorphism back
    into gamma(t) is injective, fixes {0..t-1} setwise, sends the three
    remaining specials into the special block, maps {t, t+3's survivor}
    onto {t, t+3} or {t+1, t+2}, and for t >= 3 fixes {0..t-2} setwise.
    """
    if not 2 <= t <= 4:
        raise InvalidArgumentError(f"supported range is 2 <= t <= 4, got {t}")
    from .constructions import gamma

    big = gamma(t)
    keep = [v for v in range(big.n) if v != t + 2]
    small = big.induced(keep)  # vertex t+3 becomes index t+2
    head = set(range(t))
    inner_head = set(range(t - 1))
    special_targets = set(range(t, t + 4))
    cross_pairs = ({t, t + 3}, {t + 1, t + 2})
    for hom in enumerate_homomorphisms(small, big):
        images = hom.images
        if len(set(images)) != small.n:
            return False
        if {images[v] for v in head} != head:
            return False
        if not {images[t], images[t + 1], images[t + 2]} <= special_targets:
            return False
        if {images[t], images[t + 2]} not in cross_pairs:
            return False
        if t >= 3 and {images[v] for v in inner_head} != inner_head:
            return False
    return True


def in_family_FM(candidate: Hypergraph, target: Hypergraph, max_vertices: int) -> bool:
    """Membership in the family of non-colorable graphs on <= M vertices.

    A pure predicate: the family itself is astronomically large and is
    never enumerated.
    """
    if candidate.n > max_vertices:
        return False
    return not is_colorable(candidate, target)
