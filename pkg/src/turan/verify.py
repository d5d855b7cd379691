"""Runnable verification suite: every advertised identity at its tolerance.

Each criterion is a function returning one line per sub-check; the CLI
``verify`` subcommand and the acceptance tests both run these.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constructions import (
    BlowupSpec,
    blowup,
    blowup_edge_count,
    count_extremal_profiles,
    crossed_blowup,
    double_vertex,
    extremal_blowup_search,
    feasible_limit,
    feasible_point,
    gamma,
    gamma_lagrangian,
    gamma_permutation,
    k_crossed_blowup,
    tight_cycle,
)
from .homomorphism import (
    enumerate_endomorphisms,
    is_colorable,
    partial_embedding_check,
)
from .hypergraph import Hypergraph
from .lagrangian import (
    SimplexPoint,
    fit_weight_profile,
    maximize,
    predicted_segment,
    symmetrize_point,
    verify_segment,
)
from .polynomial import MultilinearPoly


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


def permute_point(point: SimplexPoint, perm) -> SimplexPoint:
    """Coordinate i of the input becomes coordinate perm[i] of the output."""
    coords = list(point.coords)
    out = list(coords)
    for i, target in enumerate(perm):
        out[target] = coords[i]
    return SimplexPoint(out)


# ---------------------------------------------------------------------------
# 1. optimizer targets


def check_lagrangian_targets(seed: int = 0) -> list[CheckResult]:
    tol = 1e-9
    time_budget = 5.0

    def run(name, graph, target):
        started = time.monotonic()
        got = maximize(MultilinearPoly.from_hypergraph(graph), seed=seed)
        elapsed = time.monotonic() - started
        return _result(
            f"{name} = {target}",
            abs(got.value - float(target)) <= tol and elapsed < time_budget,
            f"value {got.value:.12f}, exact {got.exact}, {elapsed:.2f}s",
        )

    out = []
    for t in (1, 2, 3, 4):
        target = gamma_lagrangian(t)
        out.append(run(f"lambda(K_{t + 2}^3)", Hypergraph.complete(3, t + 2), target))
        out.append(run(f"lambda(gamma({t}))", gamma(t), target))
    cycle = tight_cycle(5)
    out.append(run("lambda(C_5^3)", cycle, Fraction(1, 25)))
    out.append(
        run("lambda(C_5^3 crossed on (3,4))", crossed_blowup(cycle, (3, 4)), Fraction(4, 81))
    )
    return out


# ---------------------------------------------------------------------------
# 2. exact segment certificates


def _gamma_base(t: int):
    if t == 1:
        base = Hypergraph(3, 4, [(0, 2, 3), (1, 2, 3)])
        pair = (2, 3)
        z = SimplexPoint([Fraction(1, 6), Fraction(1, 6), Fraction(1, 3), Fraction(1, 3)])
    else:
        base = Hypergraph.complete(3, t + 2)
        pair = (t, t + 1)
        z = SimplexPoint.uniform(t + 2)
    return base, pair, z


def check_segment_certificates(seed: int = 0) -> list[CheckResult]:
    out = []
    for t in (1, 2, 3):
        base, pair, z = _gamma_base(t)
        first, second = predicted_segment(base, pair, z)
        target = gamma_lagrangian(t)
        raw_poly = MultilinearPoly.from_hypergraph(crossed_blowup(base, pair))
        cert = verify_segment(raw_poly, first, second, 11, target)
        out.append(
            _result(
                f"segment of crossed base, t={t}, 11 exact samples = {target}",
                bool(cert),
                f"failing alpha: {cert.failing_alpha}",
            )
        )
        perm = gamma_permutation(t)
        canon_poly = MultilinearPoly.from_hypergraph(gamma(t))
        cert = verify_segment(
            canon_poly, permute_point(first, perm), permute_point(second, perm), 11, target
        )
        out.append(
            _result(
                f"segment under gamma({t}) labels, 11 exact samples = {target}",
                bool(cert),
                f"failing alpha: {cert.failing_alpha}",
            )
        )
    third = Fraction(1, 3)
    zero = Fraction(0)
    corners = [
        SimplexPoint([third, zero, third, zero, zero, third]),
        SimplexPoint([zero, third, third, zero, zero, third]),
        SimplexPoint([zero, third, zero, third, third, zero]),
    ]
    poly1 = MultilinearPoly.from_hypergraph(gamma(1))
    ok = all(poly1.evaluate(c.coords) == Fraction(1, 27) for c in corners)
    for a, b in itertools.combinations(corners, 2):
        mid = [(x + y) / 2 for x, y in zip(a.coords, b.coords)]
        ok = ok and poly1.evaluate(mid) == Fraction(1, 27)
    out.append(
        _result(
            "gamma(1) optimal triangle: 3 corners + 3 midpoints = 1/27 exactly",
            ok,
            "six exact evaluations",
        )
    )
    return out


# ---------------------------------------------------------------------------
# 3. construction fidelity


def check_construction_fidelity(seed: int = 0) -> list[CheckResult]:
    out = []
    crossed = crossed_blowup(Hypergraph(3, 4, [(0, 2, 3), (1, 2, 3)]), (2, 3))
    expected = {
        (0, 2, 3), (0, 2, 5), (0, 3, 4), (0, 4, 5),
        (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5),
    }
    link0 = {e for e in crossed.link(0).edges}
    link1 = {e for e in crossed.link(1).edges}
    bipartite_a = {(2, 3), (2, 5), (3, 4), (4, 5)}  # {2,4} x {3,5}
    bipartite_b = {(2, 4), (2, 5), (3, 4), (3, 5)}  # {2,3} x {4,5}
    out.append(
        _result(
            "two-edge base crossed on (2,3): 8 edges, two complete bipartite links",
            set(crossed.edges) == expected
            and link0 == bipartite_a
            and link1 == bipartite_b,
            f"{len(crossed.edges)} edges",
        )
    )

    g2 = gamma(2)
    t = 2
    expected_codegrees = {}
    for i, j in itertools.combinations(range(t + 4), 2):
        if j < t:
            expected_codegrees[(i, j)] = t + 2
        elif i < t:
            expected_codegrees[(i, j)] = t + 1
        elif {i, j} in ({t, t + 3}, {t + 1, t + 2}):
            expected_codegrees[(i, j)] = t
        elif {i, j} in ({t, t + 2}, {t + 1, t + 3}):
            expected_codegrees[(i, j)] = t - 1
        else:
            expected_codegrees[(i, j)] = 1
    table_ok = all(
        g2.codegree(pair).count == want for pair, want in expected_codegrees.items()
    )
    out.append(
        _result(
            "gamma(2) reproduces the full codegree table",
            table_ok,
            f"{len(expected_codegrees)} pairs checked",
        )
    )

    doubled = double_vertex(Hypergraph(3, 5, [(0, 1, 4), (2, 3, 4)]), 4)
    out.append(
        _result(
            "doubling the shared vertex of {014, 234} gives {014, 015, 234, 235}",
            doubled == Hypergraph(3, 6, [(0, 1, 4), (0, 1, 5), (2, 3, 4), (2, 3, 5)]),
            repr(doubled),
        )
    )

    cube = k_crossed_blowup(Hypergraph(3, 5, [(0, 3, 4), (1, 3, 4), (2, 3, 4)]), (3, 4), 3)
    out.append(
        _result(
            "3-crossed blowup of the three-edge base: 48 edges on 11 vertices",
            cube.n == 11 and len(cube.edges) == 48,
            f"n={cube.n}, edges={len(cube.edges)}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# 4. extremal counts


def check_extremal_counts(seed: int = 0) -> list[CheckResult]:
    out = []
    t = 2
    base = gamma(t)
    for n in (12, 24, 48):
        want = n**3 // 16
        sizes, count = extremal_blowup_search(base, n, mode="exhaustive")
        out.append(
            _result(
                f"exhaustive max blowup of gamma(2) on n={n} has {want} edges",
                count == want,
                f"sizes {sizes}, count {count}",
            )
        )
        profiles = count_extremal_profiles(t, n)
        m = n // (t + 2)
        attained = all(
            blowup_edge_count(BlowupSpec(base, s)) == want for s in profiles.part_sizes
        )
        out.append(
            _result(
                f"n={n}: {m // 2 + 1} optimal profiles, all attaining the maximum,"
                f" count >= n/{2 * (t + 2)}",
                profiles.count == m // 2 + 1
                and attained
                and profiles.count >= Fraction(n, 2 * (t + 2)),
                f"alphas {[str(a) for a in profiles.alphas]}",
            )
        )
    return out


# ---------------------------------------------------------------------------
# 5. homomorphism lemmas by exhaustion


def check_homomorphism_lemmas(seed: int = 0) -> list[CheckResult]:
    out = []
    for t in (2, 3):
        graph = gamma(t)
        head = set(range(t))
        cross = ({t, t + 3}, {t + 1, t + 2})
        endos = enumerate_endomorphisms(graph)
        ok = True
        for phi in endos:
            images = phi.images
            if len(set(images)) != graph.n:
                ok = False
            if {images[v] for v in head} != head:
                ok = False
            image_pairs = {
                frozenset(images[v] for v in cross[0]),
                frozenset(images[v] for v in cross[1]),
            }
            if image_pairs != {frozenset(cross[0]), frozenset(cross[1])}:
                ok = False
            if t >= 3 and {images[v] for v in range(t - 1)} != set(range(t - 1)):
                ok = False
        out.append(
            _result(
                f"all {len(endos)} endomorphisms of gamma({t}) are rigid automorphisms",
                ok and len(endos) > 0,
                f"{len(endos)} endomorphisms",
            )
        )
    for t in (2, 3, 4):
        out.append(
            _result(
                f"partial embeddings of gamma({t}) minus a special vertex are rigid",
                partial_embedding_check(t),
                "exhaustive enumeration",
            )
        )
    out.append(
        _result(
            "K_5^3 is not gamma(2)-colorable",
            not is_colorable(Hypergraph.complete(3, 5), gamma(2)),
            "exhaustive backtracking",
        )
    )
    return out


# ---------------------------------------------------------------------------
# 6. feasible-region convergence


def check_feasible_region(seed: int = 0) -> list[CheckResult]:
    out = []
    t, n = 2, 480
    bound = Fraction(5, n)
    for alpha in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
        point = feasible_point(t, alpha, n)
        limit = feasible_limit(t, alpha)
        ok = (
            abs(point.shadow_density - limit.shadow_density) <= bound
            and abs(point.edge_density - limit.edge_density) <= bound
        )
        out.append(
            _result(
                f"alpha={alpha}: finite n={n} densities within 5/n of the limits",
                ok,
                f"shadow {float(point.shadow_density):.6f} vs {float(limit.shadow_density):.6f}, "
                f"edge {float(point.edge_density):.6f} vs {float(limit.edge_density):.6f}",
            )
        )
    lo = feasible_limit(t, 0).shadow_density
    hi = feasible_limit(t, Fraction(1, 2)).shadow_density
    grid = [feasible_limit(t, Fraction(k, 20)).shadow_density for k in range(11)]
    monotone = all(a <= b for a, b in zip(grid, grid[1:]))
    out.append(
        _result(
            "limit shadow range over alpha in [0, 1/2] is exactly [3/4, 13/16]",
            lo == Fraction(3, 4) and hi == Fraction(13, 16) and monotone,
            f"endpoints {lo}, {hi}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# 7. randomized property suites


def _random_hypergraph(rng, r: int, n: int, density: float = 0.5) -> Hypergraph:
    edges = [e for e in itertools.combinations(range(n), r) if rng.random() < density]
    return Hypergraph(r, n, edges)


def _random_exact_simplex_point(rng, m: int, scale: int = 60) -> SimplexPoint:
    weights = [int(rng.integers(0, scale)) for _ in range(m)]
    if sum(weights) == 0:
        weights[int(rng.integers(0, m))] = 1
    return SimplexPoint.normalized(weights)


def check_property_suites(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    # blowup counting formula, exact
    ok = True
    for _ in range(200):
        base = _random_hypergraph(rng, int(rng.integers(2, 4)), int(rng.integers(2, 6)))
        sizes = tuple(int(rng.integers(0, 4)) for _ in range(base.n))
        spec = BlowupSpec(base, sizes)
        if len(blowup(spec).edges) != blowup_edge_count(spec):
            ok = False
            break
    out.append(_result("blowup edge counts match materialization (200 cases)", ok, ""))

    # continuous bound on blowup sizes
    ok = True
    cases = 0
    for _ in range(20):
        base = _random_hypergraph(rng, 3, int(rng.integers(3, 6)), density=0.6)
        if not base.edges:
            continue
        best = maximize(
            MultilinearPoly.from_hypergraph(base), starts=24, seed=seed, max_iter=900
        )
        for _ in range(6):
            sizes = tuple(int(rng.integers(0, 5)) for _ in range(base.n))
            spec = BlowupSpec(base, sizes)
            if spec.total == 0:
                continue
            cases += 1
            if blowup_edge_count(spec) > (best.value + 1e-6) * spec.total**3:
                ok = False
    out.append(
        _result(f"blowup counts never beat lambda * n^3 ({cases} cases)", ok, "")
    )

    # averaging a symmetric pair never decreases the value (exact)
    cases = 0
    ok = True
    graphs = [
        Hypergraph.complete(3, 4),
        Hypergraph.complete(3, 5),
        Hypergraph.complete(3, 6),
        Hypergraph(3, 4, [(0, 2, 3), (1, 2, 3)]),
        Hypergraph(3, 6, [(0, 1, 2), (0, 1, 3), (2, 3, 4), (2, 3, 5)]),
    ]
    for graph in graphs:
        poly = MultilinearPoly.from_hypergraph(graph)
        sym_pairs = [
            p
            for p in itertools.combinations(range(graph.n), 2)
            if graph.is_symmetric_pair(p)
        ]
        for pair in sym_pairs[:3]:
            for _ in range(10):
                x = _random_exact_simplex_point(rng, graph.n)
                y = symmetrize_point(poly, pair[0], pair[1], x)
                if poly.evaluate(y.coords) < poly.evaluate(x.coords):
                    ok = False
                cases += 1
    out.append(
        _result(
            f"pair averaging is monotone on {cases} exact cases (>= 100)",
            ok and cases >= 100,
            "",
        )
    )

    # quadratic-mean bound for complete 3-graphs, exact arithmetic
    ok = True
    for t in (2, 3, 4):
        poly = MultilinearPoly.from_hypergraph(Hypergraph.complete(3, t + 2))
        cap = Fraction(t * (t + 1), 2 * (t + 2) ** 2)
        slope = Fraction(t, 6 * (t + 2))
        for _ in range(1000):
            y = _random_exact_simplex_point(rng, t + 2)
            spread = sum((c - Fraction(1, t + 2)) ** 2 for c in y.coords)
            if poly.evaluate(y.coords) > cap - slope * spread:
                ok = False
                break
        if not ok:
            break
    out.append(
        _result("complete-graph upper bound holds on 3000 exact samples", ok, "")
    )

    # product-of-two identity, exact
    ok = True
    for _ in range(200):
        x = Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 30)))
        y = Fraction(int(rng.integers(-50, 50)), int(rng.integers(1, 30)))
        if x * y != ((x + y) / 2) ** 2 - ((x - y) / 2) ** 2:
            ok = False
            break
    out.append(_result("xy = ((x+y)/2)^2 - ((x-y)/2)^2 on 200 exact samples", ok, ""))

    # analytic gradient against central differences
    ok = True
    polys = [
        MultilinearPoly.from_hypergraph(Hypergraph.complete(3, 4)),
        MultilinearPoly.from_hypergraph(tight_cycle(5)),
        MultilinearPoly.from_hypergraph(gamma(2)),
    ]
    h = 1e-6
    checked = 0
    for poly in polys:
        for _ in range(34):
            x = rng.dirichlet(np.ones(poly.m)) * 0.96 + 0.02 / poly.m
            g = poly.gradient(x)
            for k in range(poly.m):
                xp, xm = x.copy(), x.copy()
                xp[k] += h
                xm[k] -= h
                fd = (poly.evaluate_float(xp) - poly.evaluate_float(xm)) / (2 * h)
                if abs(g[k] - fd) > 1e-6 * max(1.0, abs(g[k])):
                    ok = False
            checked += 1
    out.append(
        _result(f"gradient matches central differences at {checked} points", ok, "")
    )

    # cloning a vertex never moves the optimum
    ok = True
    worst = 0.0
    for _ in range(20):
        base = _random_hypergraph(rng, 3, int(rng.integers(4, 6)), density=0.7)
        if not base.edges:
            continue
        w = int(rng.integers(0, base.n))
        a = maximize(MultilinearPoly.from_hypergraph(base), starts=32, seed=seed)
        b = maximize(
            MultilinearPoly.from_hypergraph(double_vertex(base, w)), starts=32, seed=seed
        )
        worst = max(worst, abs(a.value - b.value))
        if abs(a.value - b.value) > 2e-9:
            ok = False
    out.append(
        _result(
            "lambda is invariant under vertex doubling (20 cases, tol 2e-9)",
            ok,
            f"worst gap {worst:.2e}",
        )
    )

    # totients of divisors sum back to the number, all m <= 10^4
    limit = 10_000
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for mult in range(p, limit + 1, p):
                phi[mult] -= phi[mult] // p
    sums = [0] * (limit + 1)
    for q in range(1, limit + 1):
        for mult in range(q, limit + 1, q):
            sums[mult] += phi[q]
    ok = all(sums[m] == m for m in range(1, limit + 1))
    out.append(
        _result("divisor totient sums equal m for every m <= 10^4", ok, "")
    )
    return out


# ---------------------------------------------------------------------------
# 8. near-optimal weight profiles


def sample_near_optimal(t: int, delta: float, count: int, seed: int = 0) -> list[np.ndarray]:
    """Simplex points x with the gamma(t) polynomial within delta of optimal.

    Perturbs exact optimal-profile points by mean-zero noise and keeps the
    perturbation only when the value stays above lambda - delta.
    """
    rng = np.random.default_rng(seed)
    poly = MultilinearPoly.from_hypergraph(gamma(t))
    lam = float(gamma_lagrangian(t))
    m = t + 4
    points = []
    while len(points) < count:
        alpha = rng.uniform()
        base = np.empty(m)
        base[:t] = 1.0 / (t + 2)
        base[t] = base[t + 3] = alpha / (t + 2)
        base[t + 1] = base[t + 2] = (1.0 - alpha) / (t + 2)
        noise = rng.normal(size=m)
        noise -= noise.mean()
        scale = 10.0 ** rng.uniform(-9.0, -4.0)
        x = np.clip(base + scale * noise, 0.0, None)
        x /= x.sum()
        if poly.evaluate_float(x) >= lam - delta:
            points.append(x)
    return points


def check_stability_fit(seed: int = 0) -> list[CheckResult]:
    out = []
    delta = 1e-8
    for t in (2, 3):
        eps = 30 * t * delta**0.5
        worst = 0.0
        ok = True
        for x in sample_near_optimal(t, delta, 1000, seed=seed):
            fit = fit_weight_profile(t, x, eps)
            if fit is None:
                ok = False
                break
            worst = max(worst, fit.max_deviation)
        out.append(
            _result(
                f"t={t}: 1000 near-optimal points fit the profile within 30t*sqrt(delta)",
                ok,
                f"worst deviation {worst:.2e} vs allowance {eps:.2e}",
            )
        )
    return out


# ---------------------------------------------------------------------------
# registry


CHECKS = {
    "lagrangian-targets": check_lagrangian_targets,
    "segment-certificates": check_segment_certificates,
    "construction-fidelity": check_construction_fidelity,
    "extremal-counts": check_extremal_counts,
    "homomorphism-lemmas": check_homomorphism_lemmas,
    "feasible-region": check_feasible_region,
    "property-suites": check_property_suites,
    "stability-fit": check_stability_fit,
}


def run_suite(which: str = "all", seed: int = 0) -> list[CheckResult]:
    if which == "all":
        names = list(CHECKS)
    elif which in CHECKS:
        names = [which]
    else:
        from .common import InvalidArgumentError

        raise InvalidArgumentError(
            f"unknown suite {which!r}; choose from {['all', *CHECKS]}"
        )
    results = []
    for name in names:
        results.extend(CHECKS[name](seed=seed))
    return results
