"""Maximization of multilinear polynomials over the standard simplex.

The optimizer is a multistart mirror ascent (multiplicative-weights update
with backtracking step control), cross-checked against an exact-rational
grid enumeration; values that land near a small-denominator rational are
snapped and re-verified exactly.  Where a closed optimal set exists, it is
certified by exact segment evaluation rather than recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import _grid
from .common import (
    AsymmetryError,
    BudgetExceededError,
    InvalidArgumentError,
    PreconditionError,
    effective_budget,
)
from .polynomial import MultilinearPoly

#: Convergence target for the projected-gradient (KKT) residual.
DEFAULT_TOL = 1e-12
#: Largest denominator considered when snapping near-rational optima.
SNAP_DENOMINATOR = 10_000
#: How close a float optimum must be to a snapped rational to attempt it.
SNAP_WINDOW = 1e-7

_FLOAT_SUM_TOL = 1e-12
_ACTIVE_EPS = 1e-9


class SimplexPoint:
    """A point of the standard simplex, in exact-rational or float mode.

    Exact points must have nonnegative Fraction/int coordinates summing to
    exactly 1.  Float points may be off by at most 1e-12 and are
    renormalized on construction.
    """

    __slots__ = ("coords", "exact")

    def __init__(self, coords: Sequence):
        values = list(coords)
        if not values:
            raise InvalidArgumentError("a simplex point needs at least one coordinate")
        if all(isinstance(v, Rational) and not isinstance(v, float) for v in values):
            fracs = tuple(Fraction(v) for v in values)
            if any(v < 0 for v in fracs):
                raise InvalidArgumentError("exact simplex coordinates must be >= 0")
            if sum(fracs) != 1:
                raise InvalidArgumentError(
                    f"exact simplex coordinates must sum to 1, got {sum(fracs)}"
                )
            object.__setattr__(self, "coords", fracs)
            object.__setattr__(self, "exact", True)
        else:
            arr = np.asarray(values, dtype=float)
            if np.any(arr < -_FLOAT_SUM_TOL):
                raise InvalidArgumentError("simplex coordinates must be >= 0")
            arr = np.clip(arr, 0.0, None)
            total = float(arr.sum())
            if abs(total - 1.0) > _FLOAT_SUM_TOL:
                raise InvalidArgumentError(
                    f"float simplex coordinates must sum to 1 within 1e-12, got {total}"
                )
            arr = arr / total
            object.__setattr__(self, "coords", tuple(float(v) for v in arr))
            object.__setattr__(self, "exact", False)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("SimplexPoint is immutable")

    @classmethod
    def uniform(cls, m: int) -> "SimplexPoint":
        if m < 1:
            raise InvalidArgumentError("uniform point needs m >= 1")
        return cls([Fraction(1, m)] * m)

    @classmethod
    def normalized(cls, values: Sequence) -> "SimplexPoint":
        """Exact point proportional to nonnegative rational ``values``."""
        fracs = [Fraction(v) for v in values]
        total = sum(fracs)
        if total <= 0:
            raise InvalidArgumentError("values must have positive sum")
        return cls([v / total for v in fracs])

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplexPoint):
            return NotImplemented
        return self.exact == other.exact and self.coords == other.coords

    def __hash__(self):
        return hash((self.exact, self.coords))

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"SimplexPoint({mode}, {self.coords!r})"

    def as_float_array(self) -> np.ndarray:
        return np.asarray([float(v) for v in self.coords], dtype=float)

    def as_fractions(self) -> tuple[Fraction, ...]:
        if not self.exact:
            raise InvalidArgumentError("not an exact simplex point")
        return self.coords


class GridResult(NamedTuple):
    value: Fraction
    point: SimplexPoint


@dataclass(frozen=True)
class LagrangianResult:
    """Output of :func:`maximize`.

    ``exact`` is set only when the snapped rational value was re-verified by
    exact evaluation at a snapped rational maximizer.  ``kkt_residual`` is
    the largest deviation of an active-coordinate partial derivative from
    the common value x . grad(x), with inactive coordinates contributing
    only upward violations.
    """

    value: float
    exact: Optional[Fraction]
    maximizer: SimplexPoint
    kkt_residual: float
    starts_used: int
    grid_lower_bound: float

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "exact": str(self.exact) if self.exact is not None else None,
            "maximizer": [float(v) for v in self.maximizer],
            "kkt_residual": self.kkt_residual,
            "grid_lower_bound": self.grid_lower_bound,
        }


# ---------------------------------------------------------------------------
# numeric engine


class _Engine:
    """Degree-grouped numpy evaluation of a multilinear polynomial."""

    def __init__(self, poly: MultilinearPoly):
        self.m = poly.m
        self.constant = float(poly.coefficient(()))
        self.groups = []
        by_degree: dict[int, list] = {}
        for subset, coef in poly.terms.items():
            if subset:
                by_degree.setdefault(len(subset), []).append((subset, float(coef)))
        for d, items in sorted(by_degree.items()):
            idx = np.array([s for s, _ in items], dtype=np.intp)
            coefs = np.array([c for _, c in items], dtype=float)
            self.groups.append((d, idx, coefs))

    def value(self, x: np.ndarray) -> float:
        total = self.constant
        for d, idx, coefs in self.groups:
            total += float(np.dot(np.prod(x[idx], axis=1), coefs))
        return total

    def grad(self, x: np.ndarray) -> np.ndarray:
        g = np.zeros(self.m)
        for d, idx, coefs in self.groups:
            if d == 1:
                np.add.at(g, idx[:, 0], coefs)
                continue
            cols = x[idx]
            for pos in range(d):
                others = np.prod(np.delete(cols, pos, axis=1), axis=1)
                np.add.at(g, idx[:, pos], coefs * others)
        return g


def _kkt_residual(x: np.ndarray, g: np.ndarray) -> float:
    c = float(np.dot(x, g))
    active = x > _ACTIVE_EPS
    res = 0.0
    if np.any(active):
        res = float(np.max(np.abs(g[active] - c)))
    if np.any(~active):
        res = max(res, float(np.max(np.clip(g[~active] - c, 0.0, None))))
    return res


def _mirror_ascent(engine: _Engine, x0: np.ndarray, tol: float, max_iter: int = 2500):
    x = np.clip(x0, 1e-300, None)
    x = x / x.sum()
    fx = engine.value(x)
    step = 1.0
    residual = np.inf
    stalled = 0
    anchor = fx
    for it in range(max_iter):
        g = engine.grad(x)
        residual = _kkt_residual(x, g)
        if residual <= tol:
            break
        if it % 50 == 0:
            # sublinear crawls toward a face plateau are not worth finishing
            if it > 0 and fx - anchor < 1e-11:
                break
            anchor = fx
        step = min(step * 2.0, 1e8)
        improved = False
        while step >= 1e-16:
            # multiplicative-weights step; shift keeps the exp bounded
            y = x * np.exp(step * (g - g.max()))
            y = y / y.sum()
            fy = engine.value(y)
            if fy > fx:
                gain = fy - fx
                x, fx = y, fy
                improved = True
                stalled = stalled + 1 if gain < 1e-16 else 0
                break
            step *= 0.5
        if not improved or stalled >= 25:
            break
    return x, fx, residual


# ---------------------------------------------------------------------------
# grid oracle


def _auto_resolution(m: int, cap: int = 120_000) -> int:
    res = 1
    while res < 48 and _grid.composition_count(res + 1, m) <= cap:
        res += 1
    return res


def grid_oracle(
    poly: MultilinearPoly, resolution: int, budget: int | None = None
) -> GridResult:
    """Exact maximum of ``poly`` over the simplex grid with the given resolution.

    Grid points have coordinates k_i / resolution with sum k_i = resolution.
    Integer-safe inputs are scanned in exact int64 arithmetic; otherwise a
    float scan selects near-maximal candidates that are re-evaluated exactly.
    """
    if poly.m < 1:
        raise InvalidArgumentError("grid oracle needs at least one variable")
    if resolution < 1:
        raise InvalidArgumentError(f"resolution must be >= 1, got {resolution}")
    evaluate, to_fraction, max_abs = _grid.integer_poly_evaluator(
        poly, extra_degree_base=resolution
    )
    int_safe = max_abs * (max(resolution, 1) ** poly.degree()) < 2**62
    if int_safe:
        best, row = _grid.scan_compositions(
            resolution, poly.m, evaluate, budget=budget, what="grid oracle"
        )
        value = to_fraction(best)
        point = SimplexPoint([Fraction(k, resolution) for k in row])
        return GridResult(value, point)

    # float scan with exact re-evaluation of near-maximal grid points
    coefs = [(s, float(c)) for s, c in poly.terms.items()]

    def approx(block: np.ndarray) -> np.ndarray:
        xs = block.astype(float) / resolution
        out = np.zeros(block.shape[0])
        for subset, c in coefs:
            if subset:
                prod = xs[:, subset[0]].copy()
                for i in subset[1:]:
                    prod *= xs[:, i]
                out += c * prod
            else:
                out += c
        return out

    count = _grid.composition_count(resolution, poly.m)
    cap = effective_budget(budget)
    if count > cap:
        raise BudgetExceededError(f"grid oracle needs {count} points, budget is {cap}")
    best_float = -np.inf
    candidates: list[tuple[int, ...]] = []
    for block in _grid.iter_composition_blocks(resolution, poly.m):
        vals = approx(block)
        top = float(vals.max())
        if top > best_float:
            best_float = top
        keep = block[vals >= best_float - 1e-9]
        candidates.extend(tuple(int(v) for v in row) for row in keep[:20_000])
    best_val: Fraction | None = None
    best_row: tuple[int, ...] | None = None
    for row in candidates:
        value = poly.evaluate([Fraction(k, resolution) for k in row])
        if best_val is None or value > best_val or (value == best_val and row < best_row):
            best_val, best_row = value, row
    assert best_row is not None and best_val is not None
    return GridResult(best_val, SimplexPoint([Fraction(k, resolution) for k in best_row]))


# ---------------------------------------------------------------------------
# maximize


def maximize(
    poly: MultilinearPoly,
    starts: int | None = None,
    tol: float = DEFAULT_TOL,
    grid_resolution: int | None = None,
    seed: int = 0,
    budget: int | None = None,
    max_iter: int = 2500,
) -> LagrangianResult:
    """Best-effort global maximum of ``poly`` over the standard simplex.

    Deterministic for a fixed seed: the first start is the uniform point and
    the rest are Dirichlet(1) samples.  The reported value is the best of
    all ascent runs and the exact grid enumeration; ties between maximizers
    break toward the lexicographically smallest coordinate vector.
    """
    if poly.m < 1:
        raise InvalidArgumentError("maximize needs at least one variable")
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    m = poly.m
    if starts is None:
        starts = max(50, 10 * m)
    if starts < 1:
        raise InvalidArgumentError("starts must be >= 1")

    if poly.is_zero():
        uniform = SimplexPoint.uniform(m)
        return LagrangianResult(
            value=0.0,
            exact=Fraction(0),
            maximizer=SimplexPoint(uniform.as_float_array().tolist()),
            kkt_residual=0.0,
            starts_used=0,
            grid_lower_bound=0.0,
        )

    resolution = grid_resolution if grid_resolution is not None else _auto_resolution(m)
    grid = grid_oracle(poly, resolution, budget=budget)
    grid_float = float(grid.value)

    engine = _Engine(poly)
    rng = np.random.default_rng(seed)
    best_x: np.ndarray | None = None
    best_f = -np.inf
    best_res = np.inf
    for k in range(starts):
        x0 = np.full(m, 1.0 / m) if k == 0 else rng.dirichlet(np.ones(m))
        x, fx, residual = _mirror_ascent(engine, x0, tol, max_iter=max_iter)
        better = fx > best_f + 1e-15
        tie = abs(fx - best_f) <= 1e-15 and best_x is not None and tuple(x) < tuple(best_x)
        if best_x is None or better or tie:
            best_x, best_f, best_res = x, fx, residual

    assert best_x is not None
    value = best_f
    maximizer = SimplexPoint(best_x.tolist())
    kkt = best_res
    if grid_float > value:
        value = grid_float
        maximizer = SimplexPoint(grid.point.as_float_array().tolist())
        g = engine.grad(maximizer.as_float_array())
        kkt = _kkt_residual(maximizer.as_float_array(), g)

    exact = None
    snapped = _snap(poly, value, best_x)
    if snapped is None and Fraction(value).limit_denominator(SNAP_DENOMINATOR) == grid.value:
        # the grid point itself attains the snapped value exactly
        snapped = (grid.value, grid.point.as_fractions())
    if snapped is not None:
        exact, point = snapped
        value = max(value, float(exact))
        maximizer = SimplexPoint([float(v) for v in point])
    return LagrangianResult(
        value=value,
        exact=exact,
        maximizer=maximizer,
        kkt_residual=kkt,
        starts_used=starts,
        grid_lower_bound=grid_float,
    )


def _snap(
    poly: MultilinearPoly, value: float, x: np.ndarray
) -> Optional[tuple[Fraction, tuple[Fraction, ...]]]:
    """Snap value and maximizer to small-denominator rationals and re-verify.

    Succeeds only when the exact evaluation at a snapped point reproduces
    the snapped value, so a successful snap is a certificate that the
    reported exact value is attained.  Candidate points: roundings to each
    common denominator up to 120 (catches structured optima even when a
    degenerate direction left individual coordinates unstructured), then a
    coordinatewise best-rational rounding.
    """
    target = Fraction(value).limit_denominator(SNAP_DENOMINATOR)
    if abs(float(target) - value) > SNAP_WINDOW:
        return None
    for denom in range(1, 121):
        numerators = [round(float(c) * denom) for c in x]
        if sum(numerators) != denom or any(k < 0 for k in numerators):
            continue
        coords = [Fraction(k, denom) for k in numerators]
        if max(abs(float(c) - float(v)) for c, v in zip(coords, x)) > 0.5 / denom + 1e-9:
            continue
        if poly.evaluate(coords) == target:
            return target, tuple(coords)
    coords = [Fraction(float(c)).limit_denominator(SNAP_DENOMINATOR) for c in x]
    total = sum(coords)
    if total <= 0:
        return None
    coords = [c / total for c in coords]
    if poly.evaluate(coords) != target:
        return None
    return target, tuple(coords)


# ---------------------------------------------------------------------------
# symmetrization and segment certificates


def symmetrize_point(
    poly: MultilinearPoly,
    i: int,
    j: int,
    x: SimplexPoint,
    debug: bool = False,
    rng_seed: int = 0,
) -> SimplexPoint:
    """Replace coordinates i and j of ``x`` by their average.

    Requires ``poly`` symmetric in (i, j).  When the cross coefficient p3 is
    nonnegative on the simplex (caller asserts; sampled when ``debug``),
    the value cannot decrease; in exact mode that monotonicity is verified
    and its failure raises a precondition error.
    """
    if len(x) != poly.m:
        raise InvalidArgumentError("point dimension does not match polynomial")
    witness = poly.asymmetry_witness(i, j)
    if witness is not None:
        raise AsymmetryError(
            f"polynomial is not symmetric in X_{i}, X_{j}; witness term {witness}",
            witness=witness,
        )
    if debug:
        dec = poly.symmetric_decompose(i, j)
        rng = np.random.default_rng(rng_seed)
        for _ in range(50):
            probe = rng.dirichlet(np.ones(poly.m))
            if dec.p3.evaluate_float(probe) < -1e-12:
                raise PreconditionError(
                    "cross coefficient p3 is negative on the simplex"
                )
    if x.exact:
        coords = list(x.as_fractions())
        avg = (coords[i] + coords[j]) / 2
        coords[i] = coords[j] = avg
        result = SimplexPoint(coords)
        if poly.evaluate(result.coords) < poly.evaluate(x.coords):
            raise PreconditionError(
                "averaging decreased the value; p3 is not nonnegative here"
            )
        return result
    coords = list(x.coords)
    avg = (coords[i] + coords[j]) / 2.0
    coords[i] = coords[j] = avg
    return SimplexPoint(coords)


def _check_first_order_maximum(poly: MultilinearPoly, z: SimplexPoint) -> None:
    """Exact stationarity on the simplex: support partials share one value
    that no off-support partial exceeds.  Necessary (not sufficient) for a
    maximizer; rejects points that are obviously not optimal."""
    coords = z.as_fractions()
    grads = []
    for k in range(poly.m):
        g = Fraction(0)
        for subset, coef in poly.terms.items():
            if k not in subset:
                continue
            prod = coef
            for l in subset:
                if l != k:
                    prod *= coords[l]
            g += prod
        grads.append(g)
    support = [k for k in range(poly.m) if coords[k] > 0]
    common = grads[support[0]] if support else Fraction(0)
    if any(grads[k] != common for k in support) or any(
        grads[k] > common for k in range(poly.m) if coords[k] == 0
    ):
        raise PreconditionError("z fails the exact first-order maximality test")


def predicted_segment(
    graph, pair: Sequence[int], z: SimplexPoint
) -> tuple[SimplexPoint, SimplexPoint]:
    """Endpoints of the optimal segment created by crossing a symmetric pair.

    For a 3-graph with symmetric pair (v1, v2) of codegree >= 2 and a
    maximizer z of its edge polynomial, the crossed graph's polynomial is
    constant on the segment between the two returned points of the larger
    simplex.  Clone coordinates are appended (v1' at index n, v2' at n+1),
    matching both the crossed-blowup vertex order and
    :meth:`MultilinearPoly.hat`.  Endpoint one puts the averaged weight on
    (v1, v2'), endpoint two on (v1', v2).
    """
    from .hypergraph import _check_pair

    if graph.r != 3:
        raise PreconditionError(f"segment prediction needs a 3-graph, got r={graph.r}")
    v1, v2 = _check_pair(pair, graph.n)
    if not graph.is_symmetric_pair((v1, v2)):
        raise AsymmetryError(f"pair ({v1}, {v2}) is not symmetric in the graph")
    if graph.codegree((v1, v2)).count < 2:
        raise PreconditionError(f"pair ({v1}, {v2}) needs codegree >= 2")
    if len(z) != graph.n:
        raise InvalidArgumentError("maximizer dimension does not match the graph")
    poly = MultilinearPoly.from_hypergraph(graph)
    if z.exact:
        _check_first_order_maximum(poly, z)
        averaged = symmetrize_point(poly, v1, v2, z)
        if poly.evaluate(z.coords) != poly.evaluate(averaged.coords):
            raise PreconditionError(
                "z is not a maximizer: averaging the pair changes the value"
            )
        zbar = (z.coords[v1] + z.coords[v2]) / 2
    else:
        zbar = (z.coords[v1] + z.coords[v2]) / 2.0
    zero = Fraction(0) if z.exact else 0.0
    first = list(z.coords)
    second = list(z.coords)
    first[v1], first[v2] = zbar, zero
    second[v1], second[v2] = zero, zbar
    first.extend([zero, zbar])
    second.extend([zbar, zero])
    return SimplexPoint(first), SimplexPoint(second)


@dataclass(frozen=True)
class SegmentCertificate:
    """Result of exact sampling along a segment; truthy iff all samples hit."""

    ok: bool
    failing_alpha: Optional[Fraction]
    samples: int
    target: Fraction

    def __bool__(self) -> bool:
        return self.ok


def verify_segment(
    poly: MultilinearPoly,
    y: SimplexPoint,
    z: SimplexPoint,
    samples: int,
    target,
) -> SegmentCertificate:
    """Exactly check poly == target at equally spaced points of [y, z]."""
    if samples < 2:
        raise InvalidArgumentError("need at least 2 samples (the endpoints)")
    if not (y.exact and z.exact):
        raise PreconditionError("segment verification needs exact endpoints")
    if len(y) != poly.m or len(z) != poly.m:
        raise InvalidArgumentError("endpoint dimension does not match polynomial")
    goal = Fraction(target)
    for k in range(samples):
        alpha = Fraction(k, samples - 1)
        point = [
            alpha * a + (1 - alpha) * b for a, b in zip(y.as_fractions(), z.as_fractions())
        ]
        if poly.evaluate(point) != goal:
            return SegmentCertificate(False, alpha, samples, goal)
    return SegmentCertificate(True, None, samples, goal)


# ---------------------------------------------------------------------------
# weight-profile fit


@dataclass(frozen=True)
class WeightProfileFit:
    alpha: float
    max_deviation: float


def fit_weight_profile(t: int, x, eps: float) -> Optional[WeightProfileFit]:
    """Fit a near-optimal weight vector to the two-parameter optimal template.

    The template on t+4 coordinates puts 1/(t+2) on the first t, a/(t+2)
    on positions t and t+3, and (1-a)/(t+2) on positions t+1 and t+2.  The
    least-squares a is clamped to [0,1]; when a and 1-a fit equally well
    the smaller one is returned.  None when the max deviation exceeds eps.
    """
    if t < 2:
        raise InvalidArgumentError(f"profile fit needs t >= 2, got {t}")
    coords = x.as_float_array() if isinstance(x, SimplexPoint) else np.asarray(x, float)
    if coords.shape != (t + 4,):
        raise InvalidArgumentError(
            f"point has {coords.shape[0]} coordinates, expected {t + 4}"
        )

    def deviation(alpha: float) -> float:
        template = np.empty(t + 4)
        template[:t] = 1.0 / (t + 2)
        template[t] = template[t + 3] = alpha / (t + 2)
        template[t + 1] = template[t + 2] = (1.0 - alpha) / (t + 2)
        return float(np.max(np.abs(coords - template)))

    alpha = 0.5 + (t + 2) * (
        coords[t] + coords[t + 3] - coords[t + 1] - coords[t + 2]
    ) / 4.0
    alpha = min(1.0, max(0.0, alpha))
    dev = deviation(alpha)
    mirror = deviation(1.0 - alpha)
    if mirror == dev:
        alpha = min(alpha, 1.0 - alpha)
    elif mirror < dev:
        alpha, dev = 1.0 - alpha, mirror
    if dev > eps:
        return None
    return WeightProfileFit(alpha=alpha, max_deviation=dev)
