"""Multilinear polynomials with exact rational coefficients.

A multilinear polynomial is a finite sum of squarefree monomials
``c * prod(X_i for i in S)``.  Terms are stored as a map from sorted index
tuples to nonzero Fractions; exact arithmetic is the source of truth, with
float evaluation as a derived mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .common import AsymmetryError, InvalidArgumentError, SplitMismatchError

Term = tuple[int, ...]


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise InvalidArgumentError(
            "exact coefficients/coordinates must be Fraction or int, not float"
        )
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InvalidArgumentError(f"cannot interpret {value!r} as an exact rational")


class MultilinearPoly:
    """An m-variable multilinear polynomial over the rationals."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[Term, object] | Iterable = ()):
        if m < 0:
            raise InvalidArgumentError(f"variable count must be >= 0, got {m}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Term, Fraction] = {}
        for subset, coef in items:
            key = tuple(sorted(int(i) for i in subset))
            if len(set(key)) != len(key):
                raise InvalidArgumentError(f"term {key!r} repeats a variable")
            if key and (key[0] < 0 or key[-1] >= m):
                raise InvalidArgumentError(f"term {key!r} out of range for m={m}")
            value = acc.get(key, Fraction(0)) + _as_fraction(coef)
            if value:
                acc[key] = value
            elif key in acc:
                del acc[key]
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "terms", dict(sorted(acc.items())))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MultilinearPoly is immutable")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "MultilinearPoly":
        return cls(m)

    @classmethod
    def constant(cls, m: int, value) -> "MultilinearPoly":
        return cls(m, {(): value})

    @classmethod
    def variable(cls, m: int, i: int) -> "MultilinearPoly":
        return cls(m, {(i,): 1})

    @classmethod
    def monomial(cls, m: int, subset: Sequence[int], coef=1) -> "MultilinearPoly":
        return cls(m, {tuple(subset): coef})

    @classmethod
    def from_hypergraph(cls, graph) -> "MultilinearPoly":
        """Edge polynomial: one coefficient-1 monomial per edge, m = n."""
        return cls(graph.n, {e: 1 for e in graph.edges})

    # -- basics ----------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.m, tuple(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultilinearPoly(m={self.m}, terms={len(self.terms)})"

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(s) for s in self.terms), default=0)

    def variables(self) -> frozenset:
        out = set()
        for s in self.terms:
            out.update(s)
        return frozenset(out)

    def coefficient(self, subset: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(sorted(subset)), Fraction(0))

    # -- arithmetic --------------------------------------------------------

    def _require_same_m(self, other: "MultilinearPoly") -> None:
        if self.m != other.m:
            raise InvalidArgumentError(
                f"variable-count mismatch: {self.m} vs {other.m}"
            )

    def __add__(self, other) -> "MultilinearPoly":
        if isinstance(other, MultilinearPoly):
            self._require_same_m(other)
            acc = dict(self.terms)
            for key, coef in other.terms.items():
                acc[key] = acc.get(key, Fraction(0)) + coef
            return MultilinearPoly(self.m, acc)
        return self + MultilinearPoly.constant(self.m, other)

    def __sub__(self, other) -> "MultilinearPoly":
        return self + (-other if isinstance(other, MultilinearPoly) else -Fraction(other))

    def __neg__(self) -> "MultilinearPoly":
        return MultilinearPoly(self.m, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other) -> "MultilinearPoly":
        if isinstance(other, MultilinearPoly):
            self._require_same_m(other)
            acc: dict[Term, Fraction] = {}
            for s1, c1 in self.terms.items():
                set1 = set(s1)
                for s2, c2 in other.terms.items():
                    if set1.intersection(s2):
                        raise InvalidArgumentError(
                            f"product of terms {s1!r} and {s2!r} is not multilinear"
                        )
                    key = tuple(sorted(s1 + s2))
                    acc[key] = acc.get(key, Fraction(0)) + c1 * c2
            return MultilinearPoly(self.m, acc)
        scale = _as_fraction(other)
        return MultilinearPoly(self.m, {k: scale * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def with_variables(self, m_new: int) -> "MultilinearPoly":
        """Same polynomial viewed in a larger variable space."""
        if m_new < self.m and any(i >= m_new for s in self.terms for i in s):
            raise InvalidArgumentError("cannot shrink below used variables")
        return MultilinearPoly(m_new, self.terms)

    def permuted(self, perm: Sequence[int]) -> "MultilinearPoly":
        """Rename variables by ``i -> perm[i]``."""
        if sorted(perm) != list(range(self.m)):
            raise InvalidArgumentError("perm must be a permutation of 0..m-1")
        return MultilinearPoly(
            self.m, {tuple(perm[i] for i in s): c for s, c in self.terms.items()}
        )

    # -- evaluation --------------------------------------------------------

    def evaluate(self, x: Sequence) -> Fraction:
        """Exact evaluation; coordinates must be Fractions/ints."""
        if len(x) != self.m:
            raise InvalidArgumentError(
                f"point has {len(x)} coordinates, expected {self.m}"
            )
        coords = [_as_fraction(v) for v in x]
        total = Fraction(0)
        for subset, coef in self.terms.items():
            prod = coef
            for i in subset:
                prod *= coords[i]
                if not prod:
                    break
            total += prod
        return total

    def evaluate_float(self, x: Sequence) -> float:
        """Round-to-nearest double evaluation (term-by-term accumulation)."""
        if len(x) != self.m:
            raise InvalidArgumentError(
                f"point has {len(x)} coordinates, expected {self.m}"
            )
        coords = np.asarray(x, dtype=float)
        total = 0.0
        for subset, coef in self.terms.items():
            prod = float(coef)
            for i in subset:
                prod *= coords[i]
            total += prod
        return total

    def gradient(self, x: Sequence) -> np.ndarray:
        """Float gradient vector (d p / d x_k evaluated at x)."""
        if len(x) != self.m:
            raise InvalidArgumentError(
                f"point has {len(x)} coordinates, expected {self.m}"
            )
        coords = np.asarray(x, dtype=float)
        grad = np.zeros(self.m)
        for subset, coef in self.terms.items():
            c = float(coef)
            for pos, k in enumerate(subset):
                prod = c
                for q, i in enumerate(subset):
                    if q != pos:
                        prod *= coords[i]
                grad[k] += prod
        return grad

    # -- symmetry and the hat lift ------------------------------------------

    def asymmetry_witness(self, i: int, j: int):
        """A term whose coefficient changes under swapping X_i and X_j, or None."""
        if not (0 <= i < self.m and 0 <= j < self.m) or i == j:
            raise InvalidArgumentError(f"bad variable pair ({i}, {j}) for m={self.m}")
        swap = {i: j, j: i}
        for subset, coef in self.terms.items():
            image = tuple(sorted(swap.get(k, k) for k in subset))
            if self.terms.get(image) != coef:
                return subset
        return None

    def is_symmetric_in(self, i: int, j: int) -> bool:
        return self.asymmetry_witness(i, j) is None

    def symmetric_decompose(self, i: int, j: int) -> "SymmetricDecomposition":
        """Split a polynomial symmetric in X_i, X_j as p1 + p2(Xi+Xj) + p3 XiXj.

        p1, p2, p3 live in the same m-variable space but never mention X_i
        or X_j; the split is unique and reconstructs the input exactly.
        """
        witness = self.asymmetry_witness(i, j)
        if witness is not None:
            raise AsymmetryError(
                f"polynomial is not symmetric in X_{i}, X_{j}; witness term {witness}",
                witness=witness,
            )
        p1: dict[Term, Fraction] = {}
        p2: dict[Term, Fraction] = {}
        p3: dict[Term, Fraction] = {}
        for subset, coef in self.terms.items():
            has_i, has_j = i in subset, j in subset
            rest = tuple(k for k in subset if k != i and k != j)
            if has_i and has_j:
                p3[rest] = coef
            elif has_i:
                # the matching j-term exists with the same coefficient
                p2[rest] = coef
            elif not has_j:
                p1[subset] = coef
        return SymmetricDecomposition(
            MultilinearPoly(self.m, p1),
            MultilinearPoly(self.m, p2),
            MultilinearPoly(self.m, p3),
        )

    def hat(
        self,
        i: int,
        j: int,
        p4: "MultilinearPoly",
        p5: "MultilinearPoly",
    ) -> "MultilinearPoly":
        """Two-clone lift on the symmetric pair (i, j).

        With p = p1 + p2(Xi+Xj) + p3 XiXj and a caller-chosen split
        p4 + p5 = p3, returns the (m+2)-variable polynomial

            p1 + p2(Xi+Xi'+Xj+Xj') + p4(Xi+Xi')(Xj+Xj') + p5(Xi+Xj)(Xi'+Xj')

        where the clone variables Xi', Xj' are appended as indices m, m+1
        (relabel afterwards if another ordering is wanted).
        """
        dec = self.symmetric_decompose(i, j)
        for name, q in (("p4", p4), ("p5", p5)):
            if q.m != self.m:
                raise InvalidArgumentError(f"{name} must have m={self.m}, got {q.m}")
            if i in q.variables() or j in q.variables():
                raise InvalidArgumentError(f"{name} must not involve X_{i} or X_{j}")
        if p4 + p5 != dec.p3:
            raise SplitMismatchError(
                f"p4 + p5 differs from the cross coefficient on the pair ({i}, {j})"
            )
        big = self.m + 2
        xi = MultilinearPoly.variable(big, i)
        xj = MultilinearPoly.variable(big, j)
        xi2 = MultilinearPoly.variable(big, self.m)
        xj2 = MultilinearPoly.variable(big, self.m + 1)
        return (
            dec.p1.with_variables(big)
            + dec.p2.with_variables(big) * (xi + xi2 + xj + xj2)
            + p4.with_variables(big) * (xi + xi2) * (xj + xj2)
            + p5.with_variables(big) * (xi + xj) * (xi2 + xj2)
        )

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "terms": [
                {"vars": list(subset), "coef": str(coef)}
                for subset, coef in self.terms.items()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "MultilinearPoly":
        return cls(
            int(data["m"]),
            {tuple(t["vars"]): Fraction(t["coef"]) for t in data["terms"]},
        )


@dataclass(frozen=True)
class SymmetricDecomposition:
    """The unique (p1, p2, p3) split of a polynomial symmetric in a pair."""

    p1: MultilinearPoly
    p2: MultilinearPoly
    p3: MultilinearPoly

    def reconstruct(self, i: int, j: int) -> MultilinearPoly:
        m = self.p1.m
        xi = MultilinearPoly.variable(m, i)
        xj = MultilinearPoly.variable(m, j)
        return self.p1 + self.p2 * (xi + xj) + self.p3 * xi * xj
