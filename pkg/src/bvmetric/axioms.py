"""Exhaustive certification of the v-point polygon inequality.

For an unordered pair x != y and an ordered tuple (u_1, ..., u_v) of pairwise
distinct points avoiding x and y, the chain sum is

    d(x, u_1) + d(u_1, u_2) + ... + d(u_v, y)

and the space is b_v(s) iff d(x, y) <= s * chain for every such choice.

The table is rescaled by the lcm of its denominators so every comparison is
an exact integer comparison; the chain sums for one endpoint pair are built
as a single v-dimensional numpy block whose C order is the lexicographic
order of the intermediate tuples.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from .core import CERTIFIED, CLAIMED, REFUTED, BMetricError, FiniteSpace, MetricClass, as_rational

DEFAULT_BUDGET = 10**9

VACUOUS = "vacuous"


class BudgetExceededError(BMetricError):
    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"instance needs about {required} tuple evaluations (n^(v+2)), budget is {budget}"
        )


@dataclass(frozen=True)
class ViolationReport:
    endpoints: tuple[int, int]
    chain: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class CertificationResult:
    verdict: str
    witness: Optional[ViolationReport]
    tuples_checked: int
    v: int
    s: Fraction
    n: int

    @property
    def certified(self) -> bool:
        return self.verdict != REFUTED


def tuple_count(n: int, v: int) -> int:
    """Number of (pair, intermediate tuple) combinations on n points."""
    if n < v + 2:
        return 0
    return math.comb(n, 2) * math.perm(n - 2, v)


def check_budget(n: int, v: int, budget: Optional[int]) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    required = n ** (v + 2)
    if required > budget:
        raise BudgetExceededError(required, budget)


class _Chains:
    """Integer-scaled table plus the chain-sum block over all v-tuples."""

    def __init__(self, space: FiniteSpace, v: int, headroom: int = 1):
        n = space.n
        self.n, self.v = n, v
        self.scale = math.lcm(*(q.denominator for row in space.dist for q in row)) if n else 1
        ints = [[int(q * self.scale) for q in row] for row in space.dist]
        top = max((x for row in ints for x in row), default=0)
        # object dtype keeps Python ints when int64 could overflow
        dtype = np.int64 if top * (v + 1) * max(headroom, 1) < 2**62 else object
        self.D = np.array(ints, dtype=dtype).reshape(n, n)

        if v == 1:
            self.inner = np.zeros(n, dtype=dtype)
            self.distinct = np.ones(n, dtype=bool)
        else:
            grids = np.indices((n,) * v, sparse=True)
            inner = np.zeros((n,) * v, dtype=dtype)
            for k in range(v - 1):
                inner = inner + self.D[grids[k], grids[k + 1]]
            distinct = np.ones((n,) * v, dtype=bool)
            for a, b in combinations(range(v), 2):
                distinct &= grids[a] != grids[b]
            self.inner, self.distinct = inner, distinct

    def block(self, x: int, y: int):
        """(others, chain sums, validity mask) for the endpoint pair (x, y)."""
        others = np.array([k for k in range(self.n) if k != x and k != y])
        m, v = len(others), self.v
        sel = np.ix_(*([others] * v))
        inner = self.inner[sel]
        valid = self.distinct[sel]
        head = self.D[x, others].reshape((m,) + (1,) * (v - 1))
        tail = self.D[others, y].reshape((1,) * (v - 1) + (m,))
        return others, head + inner + tail, valid


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _chunks(items: list, workers: int) -> list[list]:
    size = max(1, -(-len(items) // workers))
    return [items[i : i + size] for i in range(0, len(items), size)]


def verify_polygon(
    space: FiniteSpace,
    v: int,
    s,
    *,
    budget: Optional[int] = None,
    workers: int = 1,
) -> CertificationResult:
    """Certify or refute the polygon inequality for ``(v, s)`` by brute force.

    The witness, when present, is the first violation in lexicographic order
    of (x, y) with x < y, then of the intermediate tuple. ``tuples_checked``
    counts enumerated tuples up to and including the witness, so it does not
    depend on ``workers``.
    """
    s = as_rational(s)
    if v < 1:
        raise ValueError("v must be a positive integer")
    if s < 1:
        raise ValueError("s must be at least 1")
    n = space.n
    if n < v + 2:
        return CertificationResult(VACUOUS, None, 0, v, s, n)
    check_budget(n, v, budget)

    ch = _Chains(space, v, headroom=max(s.numerator, s.denominator))
    p, q = s.numerator, s.denominator
    pairs = _pairs(n)
    per_pair = math.perm(n - 2, v)

    def scan(chunk):
        for x, y in chunk:
            others, total, valid = ch.block(x, y)
            bad = valid & (ch.D[x, y] * q > total * p)
            if bad.any():
                flat = int(np.flatnonzero(bad.ravel())[0])
                idx = np.unravel_index(flat, bad.shape)
                rank = int(np.count_nonzero(valid.ravel()[: flat + 1]))
                chain = tuple(int(others[i]) for i in idx)
                csum = Fraction(int(total[idx]), ch.scale)
                return (x, y), chain, rank, csum
        return None

    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = [r for r in pool.map(scan, _chunks(pairs, workers)) if r is not None]
    else:
        found = [r] if (r := scan(pairs)) is not None else []

    if not found:
        return CertificationResult(CERTIFIED, None, len(pairs) * per_pair, v, s, n)
    (x, y), chain, rank, csum = min(found, key=lambda r: r[0])
    checked = pairs.index((x, y)) * per_pair + rank
    witness = ViolationReport((x, y), chain, space.dist[x][y], s * csum)
    return CertificationResult(REFUTED, witness, checked, v, s, n)


@dataclass(frozen=True)
class RatioMaximizer:
    ratio: Fraction
    endpoints: Optional[tuple[int, int]]
    chain: Optional[tuple[int, ...]]
    chain_sum: Optional[Fraction]


def max_ratio(
    space: FiniteSpace, v: int, *, budget: Optional[int] = None, workers: int = 1
) -> RatioMaximizer:
    """Largest d(x, y) / chain over all admissible configurations.

    The maximizer reported is the first pair (in pair order) attaining the
    maximum, with its lexicographically first shortest chain.
    """
    if v < 1:
        raise ValueError("v must be a positive integer")
    n = space.n
    if n < v + 2:
        return RatioMaximizer(Fraction(0), None, None, None)
    check_budget(n, v, budget)
    ch = _Chains(space, v)

    def scan(chunk):
        best = None
        for x, y in chunk:
            others, total, valid = ch.block(x, y)
            masked = np.where(valid, total, total.max() + 1).ravel()
            flat = int(np.argmin(masked))
            r = Fraction(int(ch.D[x, y]), int(masked[flat]))
            if best is None or r > best[0]:
                idx = np.unravel_index(flat, total.shape)
                chain = tuple(int(others[i]) for i in idx)
                best = (r, (x, y), chain, Fraction(int(masked[flat]), ch.scale))
        return best

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = [b for b in pool.map(scan, _chunks(_pairs(n), workers)) if b is not None]
        # earlier chunk wins ties: max() keeps the first maximal element
        best = max(parts, key=lambda b: b[0])
    else:
        best = scan(_pairs(n))
    return RatioMaximizer(*best)


def min_s(space: FiniteSpace, v: int, *, budget: Optional[int] = None, workers: int = 1) -> Fraction:
    """Least s >= 1 for which the space is b_v(s). Exactly 1 when vacuous."""
    return max(Fraction(1), max_ratio(space, v, budget=budget, workers=workers).ratio)


def certify_class(space: FiniteSpace, claim: MetricClass, *, budget: Optional[int] = None) -> MetricClass:
    if claim.status != CLAIMED:
        raise ValueError(f"only a claimed class can be certified, got status {claim.status!r}")
    result = verify_polygon(space, claim.v, claim.s, budget=budget)
    return MetricClass(claim.v, claim.s, CERTIFIED if result.certified else REFUTED)
