"""Vectorized enumeration of integer compositions and polynomial scans.

Compositions of ``total`` into ``parts`` nonnegative parts are generated in
lexicographic order as numpy blocks, so "first maximum found" always means
"lexicographically smallest maximizer".
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Optional

import numpy as np

from .common import BudgetExceededError, InvalidArgumentError, effective_budget

_BLOCK_LIMIT = 1 << 20


def composition_count(total: int, parts: int) -> int:
    if parts < 1 or total < 0:
        raise InvalidArgumentError(f"bad composition shape ({total}, {parts})")
    return comb(total + parts - 1, parts - 1)


class _DenseTable:
    """Memoized dense composition arrays keyed by (total, parts).

    Only small arrays are retained: the big ones sit at the top of the
    recursion and are each used exactly once, so caching them would only
    hold memory.
    """

    _CACHE_ROWS = 32_768

    def __init__(self):
        self._memo: dict[tuple[int, int], np.ndarray] = {}

    def dense(self, total: int, parts: int) -> np.ndarray:
        key = (total, parts)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if parts == 1:
            out = np.array([[total]], dtype=np.int64)
        else:
            blocks = []
            for v in range(total + 1):
                sub = self.dense(total - v, parts - 1)
                head = np.full((sub.shape[0], 1), v, dtype=np.int64)
                blocks.append(np.hstack([head, sub]))
            out = np.vstack(blocks)
        if out.shape[0] <= self._CACHE_ROWS:
            self._memo[key] = out
        return out


def iter_composition_blocks(
    total: int,
    parts: int,
    block_limit: int = _BLOCK_LIMIT,
    _table: Optional[_DenseTable] = None,
    _prefix: tuple[int, ...] = (),
) -> Iterator[np.ndarray]:
    """Yield full-width blocks covering all compositions, in lex order."""
    table = _table if _table is not None else _DenseTable()
    count = composition_count(total, parts)
    if count <= block_limit or parts == 1:
        body = table.dense(total, parts)
        if _prefix:
            head = np.tile(np.array(_prefix, dtype=np.int64), (body.shape[0], 1))
            yield np.hstack([head, body])
        else:
            yield body
        return
    for v in range(total + 1):
        yield from iter_composition_blocks(
            total - v, parts - 1, block_limit, table, _prefix + (v,)
        )


def scan_compositions(
    total: int,
    parts: int,
    evaluate: Callable[[np.ndarray], np.ndarray],
    budget: int | None = None,
    what: str = "composition scan",
) -> tuple[object, tuple[int, ...]]:
    """Maximize ``evaluate`` over all compositions; returns (value, row).

    ``evaluate`` maps a (k, parts) int64 block to a length-k value array.
    Ties break toward the lexicographically smallest composition.
    """
    count = composition_count(total, parts)
    cap = effective_budget(budget)
    if count > cap:
        raise BudgetExceededError(
            f"{what} needs {count} points, budget is {cap}"
        )
    best_value = None
    best_row: tuple[int, ...] | None = None
    for block in iter_composition_blocks(total, parts):
        values = evaluate(block)
        k = int(np.argmax(values))
        value = values[k]
        if best_value is None or value > best_value:
            best_value = value
            best_row = tuple(int(x) for x in block[k])
    assert best_row is not None
    return best_value, best_row


def integer_poly_evaluator(poly, extra_degree_base: int = 1):
    """Build a vectorized int64 evaluator for a rational-coefficient polynomial.

    Values are returned scaled by ``L * base**dmax`` where L clears all
    coefficient denominators and ``base`` homogenizes mixed degrees (pass
    the grid resolution when coordinates are numerators over ``base``).
    Returns (evaluate, to_fraction, coefficient_magnitude) where
    ``to_fraction(v)`` undoes the scaling and the magnitude sum supports
    the caller's int64 overflow check.
    """
    dmax = poly.degree()
    lcm = math.lcm(*(c.denominator for c in poly.terms.values()))
    scaled = [
        (subset, int(c * lcm) * extra_degree_base ** (dmax - len(subset)))
        for subset, c in poly.terms.items()
    ]
    scale = lcm * extra_degree_base**dmax

    max_abs = sum(abs(c) for _, c in scaled) or 1

    def evaluate(block: np.ndarray) -> np.ndarray:
        out = np.zeros(block.shape[0], dtype=np.int64)
        for subset, c in scaled:
            if subset:
                prod = block[:, subset[0]].copy()
                for i in subset[1:]:
                    prod *= block[:, i]
                out += c * prod
            else:
                out += c
        return out

    def to_fraction(value) -> Fraction:
        return Fraction(int(value), scale)

    return evaluate, to_fraction, max_abs
