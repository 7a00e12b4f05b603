"""Map-level hypotheses: contractivity, the uniform epsilon-delta condition (A),
its orbitwise form (B), orbit bounds and fixed points.

All checks are exact over the finite scope they examine. For (A) and (B) the
reported delta is the largest admissible one: the condition
``d(x, y) < eps + delta  =>  d(Tx, Ty) <= eps`` holds for a given eps exactly
when every pair with ``d(Tx, Ty) > eps`` has ``d(x, y) >= eps + delta``, so the
supremum is ``min(d(x, y) - eps)`` over those pairs, and it is attained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import BMetricError, FiniteSpace, SelfMap, as_rational

# delta when no pair constrains it
UNCONSTRAINED = math.inf

Delta = Union[Fraction, float, None]


class OrbitTooShortError(BMetricError):
    pass


@dataclass(frozen=True)
class ContractivityReport:
    holds: bool
    violations: tuple[tuple[int, int, Fraction, Fraction], ...]
    pairs_checked: int

    @property
    def witness(self):
        return self.violations[0] if self.violations else None


@dataclass(frozen=True)
class ConditionReport:
    """Per-epsilon maximal delta.

    ``delta_at[k]`` is a Fraction, :data:`UNCONSTRAINED` when no pair has an
    image distance above eps, or ``None`` when no positive delta exists.
    ``witness`` is ``(eps, a, b, before, after)`` for the first failing grid
    point, where (a, b) are point indices for (A) and orbit indices for (B).
    """

    condition: str
    epsilon_grid: tuple[Fraction, ...]
    delta_at: tuple[Delta, ...]
    holds: bool
    witness: Optional[tuple]
    horizon: Optional[int] = None
    start: Optional[int] = None


@dataclass(frozen=True)
class BoundReport:
    v: int
    horizon: int
    bound: Fraction
    attained_at: int
    distances: tuple[Fraction, ...] = field(repr=False)
    # smaller than horizon when a partial map leaves its domain first
    effective_horizon: int = 0

    @property
    def truncated(self) -> bool:
        return self.effective_horizon < self.horizon


def check_contractive(space: FiniteSpace, tmap: SelfMap) -> ContractivityReport:
    """All unordered pairs x < y (inside the map's domain) with d(Tx, Ty) >= d(x, y)."""
    dom = tmap.domain
    bad = []
    checked = 0
    for a, x in enumerate(dom):
        for y in dom[a + 1 :]:
            checked += 1
            before = space.dist[x][y]
            after = space.dist[tmap.image[x]][tmap.image[y]]
            if after >= before:
                bad.append((x, y, before, after))
    return ContractivityReport(not bad, tuple(bad), checked)


def default_epsilon_grid(values: Sequence[Fraction], shrink=Fraction(1, 2)) -> list[Fraction]:
    """Each distinct positive value r together with r * shrink, sorted.

    delta(eps) only changes at realized distances, so the grid lands on every
    breakpoint and on one point inside the interval below it.
    """
    shrink = as_rational(shrink)
    if not 0 < shrink < 1:
        raise ValueError("shrink factor must lie strictly between 0 and 1")
    pos = {Fraction(r) for r in values if r > 0}
    return sorted(pos | {r * shrink for r in pos})


def _delta_scan(eps_grid, pairs, condition, default=False, **extra) -> ConditionReport:
    """pairs: iterable of (a, b, before, after) in deterministic order.

    A default grid may come out empty (no positive distance in scope); the
    condition then holds vacuously.
    """
    grid = tuple(as_rational(e) for e in eps_grid)
    if not grid and not default:
        raise ValueError("epsilon grid must be nonempty")
    if any(e <= 0 for e in grid):
        raise ValueError("epsilon grid must be strictly positive")
    pairs = list(pairs)
    deltas = []
    witness = None
    for eps in grid:
        delta: Delta = UNCONSTRAINED
        blocker = None
        for a, b, before, after in pairs:
            if after <= eps:
                continue
            if before <= eps:
                blocker = (eps, a, b, before, after)
                break
            gap = before - eps
            if delta is UNCONSTRAINED or gap < delta:
                delta = gap
        if blocker is not None:
            deltas.append(None)
            if witness is None:
                witness = blocker
        else:
            deltas.append(delta)
    return ConditionReport(condition, grid, tuple(deltas), witness is None, witness, **extra)


def check_condition_A(space: FiniteSpace, tmap: SelfMap, epsilon_grid=None) -> ConditionReport:
    """Exact check of d(x,y) < eps + delta => d(Tx,Ty) <= eps on a finite space."""
    dom = tmap.domain
    pairs = []
    for a, x in enumerate(dom):
        for y in dom[a + 1 :]:
            pairs.append((x, y, space.dist[x][y], space.dist[tmap.image[x]][tmap.image[y]]))
    default = epsilon_grid is None
    if default:
        epsilon_grid = default_epsilon_grid(space.distinct_distances())
    return _delta_scan(epsilon_grid, pairs, "A", default)


def orbit_points(space: FiniteSpace, tmap: SelfMap, x0: int, length: int) -> list[int]:
    """x_0, ..., x_{length-1}; raises OrbitTooShortError if T is undefined on the way."""
    pts = [x0]
    while len(pts) < length:
        nxt = tmap.image[pts[-1]]
        if nxt is None:
            raise OrbitTooShortError(
                f"orbit of {space.labels[x0]} leaves the map's domain after {len(pts) - 1} steps"
            )
        pts.append(nxt)
    return pts


def check_condition_B(
    space: FiniteSpace, tmap: SelfMap, x0: int, epsilon_grid=None, horizon: int = 32
) -> ConditionReport:
    """Condition (B) along the orbit of x0, for index pairs 0 <= i < j < horizon.

    A passing report only means no refutation was found within ``horizon``.
    """
    if horizon < 2:
        raise ValueError("horizon must be at least 2")
    pts = orbit_points(space, tmap, x0, horizon + 1)
    d = space.dist
    pairs = [
        (i, j, d[pts[i]][pts[j]], d[pts[i + 1]][pts[j + 1]])
        for i in range(horizon)
        for j in range(i + 1, horizon)
    ]
    default = epsilon_grid is None
    if default:
        epsilon_grid = default_epsilon_grid([p[2] for p in pairs] + [p[3] for p in pairs])
    return _delta_scan(epsilon_grid, pairs, "B", default, horizon=horizon, start=x0)


def orbit_bound(space: FiniteSpace, tmap: SelfMap, x0: int, v: int, horizon: int) -> BoundReport:
    """max over 0 <= m < horizon of d(x0, T^m x0).

    Writing m = k - v, this is the quantity bounded in the orbit hypothesis for
    all k >= v. On a partial map the orbit is followed only while T is defined.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if v < 1:
        raise ValueError("v must be a positive integer")
    dists = []
    x = x0
    for _ in range(horizon):
        dists.append(space.dist[x0][x])
        x = tmap.image[x]
        if x is None:
            break
    bound = max(dists)
    return BoundReport(v, horizon, bound, dists.index(bound), tuple(dists), len(dists))


def find_fixed_points(space: FiniteSpace, tmap: SelfMap) -> list[int]:
    return [i for i, t in enumerate(tmap.image) if t == i]
