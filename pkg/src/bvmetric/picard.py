"""Picard iteration x_n = T^n x_0 with exact cycle detection and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import BMetricError, FiniteSpace, SelfMap, as_rational


class WindowTooShortError(BMetricError):
    pass


@dataclass(frozen=True)
class OrbitTrace:
    """The points x_0..x_L actually visited, plus the cycle they closed, if any.

    When ``cycle = (entry, period)`` is set, the sequence continues periodically
    and :meth:`at` answers for any index. ``escaped`` marks an orbit that hit a
    point outside a partial map's domain.
    """

    start: int
    points: tuple[int, ...]
    step_dist: tuple[Fraction, ...]
    cycle: Optional[tuple[int, int]]
    escaped: bool = False

    @property
    def last_index(self) -> int:
        return len(self.points) - 1

    @property
    def infinite(self) -> bool:
        return self.cycle is not None

    def at(self, n: int) -> int:
        if n <= self.last_index:
            return self.points[n]
        if self.cycle is None:
            raise IndexError(f"index {n} beyond trace of length {len(self.points)}")
        entry, period = self.cycle
        return self.points[entry + (n - entry) % period]

    @property
    def fixed_point(self) -> Optional[int]:
        if self.cycle is not None and self.cycle[1] == 1:
            return self.points[self.cycle[0]]
        return None


def picard_iterate(space: FiniteSpace, tmap: SelfMap, x0: int, max_steps: int) -> OrbitTrace:
    """Apply T until a point repeats or ``max_steps`` applications are done.

    The repeated point is kept as the final element, so a trace ending in a
    cycle of period p shows the cycle's entry point twice.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    seen = {x0: 0}
    pts = [x0]
    cycle = None
    escaped = False
    for _ in range(max_steps):
        nxt = tmap.image[pts[-1]]
        if nxt is None:
            escaped = True
            break
        pts.append(nxt)
        if nxt in seen:
            entry = seen[nxt]
            cycle = (entry, len(pts) - 1 - entry)
            break
        seen[nxt] = len(pts) - 1
    steps = tuple(space.dist[a][b] for a, b in zip(pts, pts[1:]))
    return OrbitTrace(x0, tuple(pts), steps, cycle, escaped)


@dataclass(frozen=True)
class CauchyReport:
    is_cauchy_at_tolerance: bool
    tolerance: Fraction
    tail_start: int
    max_p: int
    witness: Optional[tuple[int, int, Fraction]]


def _window_end(trace: OrbitTrace, tail_start: int, max_p: int) -> int:
    """Last n to check so that every n > tail_start is represented."""
    if trace.cycle is None:
        if trace.last_index < tail_start + 1 + max_p:
            raise WindowTooShortError(
                f"trace of {len(trace.points)} points cannot cover tail_start={tail_start} "
                f"plus max_p={max_p}"
            )
        return trace.last_index - 1
    # past the cycle entry the sequence repeats with this period
    entry, period = trace.cycle
    return max(trace.last_index, tail_start + 1, entry) + period


def cauchy_check(
    space: FiniteSpace, trace: OrbitTrace, tolerance, tail_start: int, max_p: int
) -> CauchyReport:
    """Exact check of d(x_n, x_{n+p}) < tolerance for n > tail_start, 1 <= p <= max_p.

    The witness is the largest offending distance (first in (n, p) order
    among ties), so it does not depend on where the window starts within a
    cycle.
    """
    tolerance = as_rational(tolerance)
    if max_p < 1:
        raise ValueError("max_p must be at least 1")
    end = _window_end(trace, tail_start, max_p)
    worst = None
    for n in range(tail_start + 1, end + 1):
        a = trace.at(n)
        top = max_p if trace.cycle is not None else min(max_p, trace.last_index - n)
        for p in range(1, top + 1):
            val = space.dist[a][trace.at(n + p)]
            if val >= tolerance and (worst is None or val > worst[2]):
                worst = (n, p, val)
    return CauchyReport(worst is None, tolerance, tail_start, max_p, worst)


def convergence_check(
    space: FiniteSpace, trace: OrbitTrace, z: int, tolerance
) -> tuple[bool, Optional[int]]:
    """Whether d(x_n, z) < tolerance from some index on, and the least such index.

    On a trace without a cycle only the visited window is judged; the last
    visited point must already be within tolerance.
    """
    tolerance = as_rational(tolerance)
    pts = list(trace.points)
    if trace.cycle is not None:
        entry, period = trace.cycle
        if any(space.dist[trace.points[entry + k]][z] >= tolerance for k in range(period)):
            return False, None
    first = None
    for n in range(len(pts) - 1, -1, -1):
        if space.dist[pts[n]][z] < tolerance:
            first = n
        else:
            break
    return (first is not None), first


@dataclass(frozen=True)
class OrbitDiagnostics:
    gap1: tuple[Fraction, ...]
    gap2: tuple[Fraction, ...]
    to_fixed: Optional[tuple[Fraction, ...]]
    gap1_decreasing: bool
    gap1_vanishing: bool
    gap2_vanishing: bool
    s_n_strictly_decreasing_until_fixed: Optional[bool]
    tolerance: Fraction


def _strictly_decreasing_until_zero(seq) -> bool:
    """Strict descent while positive; once a zero appears everything after is zero."""
    for a, b in zip(seq, seq[1:]):
        if a == 0:
            if b != 0:
                return False
        elif not b < a:
            return False
    return True


def orbit_diagnostics(space: FiniteSpace, trace: OrbitTrace, tolerance=Fraction(1, 2**12)) -> OrbitDiagnostics:
    """Step and gap-2 distances along the trace and, when the orbit settles on a
    fixed point z, the distances d(x_n, z).

    On a cyclic trace both gap sequences run over n = 0..last_index, reading
    past the end through the cycle.

    Vanishing means the last value in the window is below ``tolerance``; no
    limit is claimed beyond the trace.
    """
    tolerance = as_rational(tolerance)
    d = space.dist
    at = trace.at
    last = trace.last_index
    if trace.cycle is not None:
        gap1 = tuple(d[at(n)][at(n + 1)] for n in range(last + 1))
        gap2 = tuple(d[at(n)][at(n + 2)] for n in range(last + 1))
    else:
        gap1 = tuple(trace.step_dist)
        gap2 = tuple(d[at(n)][at(n + 2)] for n in range(last - 1))
    z = trace.fixed_point
    to_fixed = tuple(d[x][z] for x in trace.points) if z is not None else None
    return OrbitDiagnostics(
        gap1=gap1,
        gap2=gap2,
        to_fixed=to_fixed,
        gap1_decreasing=_strictly_decreasing_until_zero(gap1),
        gap1_vanishing=bool(gap1) and gap1[-1] < tolerance,
        gap2_vanishing=bool(gap2) and gap2[-1] < tolerance,
        s_n_strictly_decreasing_until_fixed=(
            None if to_fixed is None else _strictly_decreasing_until_zero(to_fixed)
        ),
        tolerance=tolerance,
    )


@dataclass(frozen=True)
class BoundednessReport:
    bounded: bool
    M: Fraction


def boundedness_check(space: FiniteSpace, trace: OrbitTrace) -> BoundednessReport:
    """Max pairwise distance over the visited points (a finite window is always bounded)."""
    pts = sorted(set(trace.points))
    M = max((space.dist[a][b] for a in pts for b in pts), default=Fraction(0))
    return BoundednessReport(True, M)
