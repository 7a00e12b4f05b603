"""Finite truncations of the published example spaces, plus synthetic instances.

Every constructor materializes the full distance table and returns a
:class:`GalleryInstance` carrying the truncation size, the class the example
is claimed to belong to and, where there is one, the self-map studied on it.

Errata found by running the verifiers on these tables (kept, not patched):

* ``union_space``: chains whose index steps are all 1 or 3 cost 1/2 per leg,
  so d(1/2, 1/12) = 10 against a 4-leg chain of total 2. The least s for
  v = 3 grows with N (5 at N = 12); the b_3(2) claim does not hold.
* ``naturals_space``: d(11, 10) = 1/10 (both arguments >= 10) while
  d(T11, T10) = d(10, 30) = 2, so T is not contractive as published.
* ``halving_space``: d(T 2^-(K-1), T 2^-K) = d(2^-K, 0) = d(2^-(K-1), 2^-K);
  the truncation's last pair is mapped isometrically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .axioms import min_s
from .core import (
    CERTIFIED,
    BMetricError,
    FiniteSpace,
    MetricClass,
    SelfMap,
    constant_map,
    make_map,
    make_space,
)


class SizeError(BMetricError, ValueError):
    pass


@dataclass(frozen=True)
class GalleryInstance:
    name: str
    size: int
    space: FiniteSpace
    claim: Optional[MetricClass]
    map: Optional[SelfMap] = None
    # whether T is asserted to be contractive for this example
    claims_contractive: bool = False
    classification: dict = field(default_factory=dict, compare=False)
    notes: tuple[str, ...] = ()
    seed: Optional[int] = None

    def spec(self) -> dict:
        out = {"gallery": self.name, "n": self.size}
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _table(n, fn):
    return [[fn(i, j) for j in range(n)] for i in range(n)]


def union_space(N: int = 12) -> GalleryInstance:
    """X1 = {1/2, ..., 1/N} together with X2 = {0, 1, 2}; claimed b_3(2)."""
    if N < 2:
        raise SizeError("union_space needs N >= 2")
    dens = list(range(2, N + 1))
    labels = [f"1/{k}" for k in dens] + ["0", "1", "2"]
    m = len(dens)

    def d(i, j):
        if i == j:
            return Fraction(0)
        if i < m and j < m:
            gap = abs(dens[i] - dens[j])
            return Fraction(1, 2) if gap in (1, 3) else Fraction(gap)
        if i < m:
            return Fraction(dens[i])
        if j < m:
            return Fraction(dens[j])
        return Fraction(5)

    space = make_space(labels, _table(len(labels), d))
    return GalleryInstance(
        "union_space",
        N,
        space,
        MetricClass(3, Fraction(2)),
        classification={
            "boundedly_compact": True,
            "sequentially_compact": False,
            "inconsistent": True,
        },
        notes=(
            "stated as boundedly compact but not sequentially compact, offered as the "
            "counterexample to 'sequentially compact => boundedly compact'; the stated "
            "implication runs the other way",
        ),
    )


def naturals_space(N: int = 40) -> GalleryInstance:
    """{1, ..., N} with the four-branch metric, claimed b_2(1000), and
    T x = x + 20 for x <= 10, T x = 10 otherwise.

    N >= 30 keeps the truncation closed under T.
    """
    if N < 30:
        raise SizeError("naturals_space needs N >= 30 to be closed under T")

    def d(i, j):
        x, y = i + 1, j + 1
        if x == y:
            return Fraction(0)
        if x < 10 and y < 10:
            return Fraction(10 * abs(x - y))
        if x >= 10 and y >= 10:
            return Fraction(abs(x - y), 10)
        return Fraction(5)

    space = make_space([str(x) for x in range(1, N + 1)], _table(N, d))
    image = [(x + 20 if x <= 10 else 10) - 1 for x in range(1, N + 1)]
    return GalleryInstance(
        "naturals_space",
        N,
        space,
        MetricClass(2, Fraction(1000)),
        make_map(space, image, name="x+20 if x<=10 else 10"),
        claims_contractive=True,
        classification={"boundedly_compact": True, "sequentially_compact": False},
    )


def reciprocal_space(N: int = 10) -> GalleryInstance:
    """{1/2, ..., 1/N}, d = |n - m| or 1/2 when |n - m| = 1; claimed b_3(3); T = 1/4."""
    if N < 4:
        raise SizeError("reciprocal_space needs N >= 4 so that 1/4 is present")
    dens = list(range(2, N + 1))

    def d(i, j):
        gap = abs(dens[i] - dens[j])
        return Fraction(1, 2) if gap == 1 else Fraction(gap)

    space = make_space([f"1/{k}" for k in dens], _table(len(dens), d))
    return GalleryInstance(
        "reciprocal_space",
        N,
        space,
        MetricClass(3, Fraction(3)),
        constant_map(space, space.index("1/4")),
        claims_contractive=True,
        classification={"boundedly_compact": True, "sequentially_compact": False},
    )


def unit_sequence_space(N: int = 25) -> GalleryInstance:
    """Indicator sequences e_1..e_N; claimed b_2(10); T e_i = e_{i+11}.

    For i != j the sum |i x^i_n - j x^j_n| over n equals i + j, giving
    d = 1 + 100/(i+j) when both i, j <= 10 and 1 + 10/(i+j) otherwise
    ("one of i or j > 10" read as "not both <= 10"). The shift leaves the
    truncation for i > N - 11, so the map is partial there rather than wrapped.
    """
    if N < 12:
        raise SizeError("unit_sequence_space needs N >= 12")

    def d(a, b):
        i, j = a + 1, b + 1
        if i == j:
            return Fraction(0)
        if i <= 10 and j <= 10:
            return 1 + Fraction(100, i + j)
        return 1 + Fraction(10, i + j)

    space = make_space([f"e{i}" for i in range(1, N + 1)], _table(N, d))
    image = [i + 11 if i + 11 < N else None for i in range(N)]
    return GalleryInstance(
        "unit_sequence_space",
        N,
        space,
        MetricClass(2, Fraction(10)),
        make_map(space, image, name="shift by 11"),
        claims_contractive=True,
        classification={"boundedly_compact": False, "complete": True},
    )


def halving_space(K: int = 16) -> GalleryInstance:
    """{1, 1/2, ..., 2^-K, 0} with |x - y|, T x = x/2, T 2^-K = 0, T 0 = 0."""
    if K < 2:
        raise SizeError("halving_space needs K >= 2")
    values = [Fraction(1, 2**k) for k in range(K + 1)] + [Fraction(0)]
    labels = ["1"] + [f"1/{2**k}" for k in range(1, K + 1)] + ["0"]
    space = make_space(labels, [[abs(a - b) for b in values] for a in values])
    zero = len(values) - 1
    image = list(range(1, K + 1)) + [zero, zero]
    return GalleryInstance(
        "halving_space",
        K,
        space,
        MetricClass(1, Fraction(1), CERTIFIED),
        make_map(space, image, name="x/2"),
        classification={"compact": True},
    )


def random_space(n: int, seed: int, v: int = 1) -> GalleryInstance:
    """Symmetric table of k/10, k uniform on 1..100, certified at its own min_s."""
    if n < 2:
        raise SizeError("random_space needs n >= 2")
    rng = np.random.default_rng(seed)
    draws = rng.integers(1, 101, size=n * (n - 1) // 2)
    table = [[Fraction(0)] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            table[i][j] = table[j][i] = Fraction(int(draws[k]), 10)
            k += 1
    space = make_space([f"p{i}" for i in range(n)], table)
    return GalleryInstance(
        "random_space", n, space, MetricClass(v, min_s(space, v), CERTIFIED), seed=seed
    )


def random_contractive_map(space: FiniteSpace, seed: int, attempts: int = 200) -> SelfMap:
    """Sample a contractive self-map; fall back to a constant map.

    An attempt visits the points in random order and gives each one an image
    drawn uniformly from those keeping d(Tx, Ty) < d(x, y) against the points
    already assigned. An attempt that gets stuck, or that produces a constant
    map, is rejected; after ``attempts`` rejections a random constant map is
    returned (constant maps are always contractive).
    """
    n = space.n
    if n == 1:
        return make_map(space, [0], name="identity")
    rng = np.random.default_rng(seed)
    d = space.dist
    for _ in range(attempts):
        image = [None] * n
        for x in (int(i) for i in rng.permutation(n)):
            ok = [
                t
                for t in range(n)
                if all(d[t][image[y]] < d[x][y] for y in range(n) if image[y] is not None)
            ]
            if not ok:
                break
            image[x] = ok[int(rng.integers(len(ok)))]
        else:
            if len(set(image)) > 1:
                return make_map(space, image, name="random contractive")
    return constant_map(space, int(rng.integers(0, n)))


FAMILIES = {
    "union_space": union_space,
    "naturals_space": naturals_space,
    "reciprocal_space": reciprocal_space,
    "unit_sequence_space": unit_sequence_space,
    "halving_space": halving_space,
    "random_space": random_space,
}

# truncation sizes at which every branch of each published formula is exercised
ADJUDICATION_SIZES = {
    "union_space": 12,
    "naturals_space": 40,
    "reciprocal_space": 10,
    "unit_sequence_space": 25,
    "halving_space": 16,
}


def build(spec: dict) -> GalleryInstance:
    """Construct from ``{"gallery": name, "n": size}`` (plus ``"seed"``, ``"v"`` for random_space)."""
    name = spec.get("gallery")
    if name not in FAMILIES:
        raise KeyError(f"unknown gallery family {name!r}; choose from {sorted(FAMILIES)}")
    n = spec.get("n", ADJUDICATION_SIZES.get(name))
    if n is None:
        raise SizeError(f"{name} needs an explicit size 'n'")
    if name == "random_space":
        return random_space(int(n), int(spec.get("seed", 0)), int(spec.get("v", 1)))
    return FAMILIES[name](int(n))
