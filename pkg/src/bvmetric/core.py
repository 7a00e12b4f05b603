"""Exact finite spaces, claimed metric classes and self-maps.

Distances are :class:`fractions.Fraction` throughout; a space is a label list
plus a materialized square table. Axioms (i) and (ii) (identity and symmetry)
are enforced on construction. The polygon inequality is not; see
:mod:`bvmetric.axioms`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+)|\.(\d+))?$")


class BMetricError(Exception):
    """Base class for all errors raised by this package."""


class RationalGrammarError(BMetricError, ValueError):
    pass


class SpaceError(BMetricError, ValueError):
    pass


class ShapeError(SpaceError):
    pass


class AsymmetryError(SpaceError):
    def __init__(self, i: int, j: int, labels: Sequence[str]):
        self.pair = (i, j)
        super().__init__(f"d({labels[i]}, {labels[j]}) != d({labels[j]}, {labels[i]})")


class IdentityError(SpaceError):
    def __init__(self, i: int, j: int, labels: Sequence[str]):
        self.pair = (i, j)
        if i == j:
            msg = f"d({labels[i]}, {labels[i]}) must be 0"
        else:
            msg = f"d({labels[i]}, {labels[j]}) = 0 for distinct points"
        super().__init__(msg)


class NegativeDistanceError(SpaceError):
    def __init__(self, i: int, j: int, labels: Sequence[str]):
        self.pair = (i, j)
        super().__init__(f"d({labels[i]}, {labels[j]}) is negative")


class NonPositiveScaleError(BMetricError, ValueError):
    pass


class MapError(BMetricError, ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"``, ``"p/q"`` or a finite decimal ``"p.ddd"`` exactly.

    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    >>> parse_rational("0.125")
    Fraction(1, 8)
    """
    if not isinstance(text, str):
        raise RationalGrammarError(f"expected a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise RationalGrammarError(f"not a rational literal: {text!r}")
    sign, whole, den, frac = m.groups()
    if den is not None:
        if int(den) == 0:
            raise RationalGrammarError(f"zero denominator: {text!r}")
        value = Fraction(int(whole), int(den))
    elif frac is not None:
        value = Fraction(int(whole + frac), 10 ** len(frac))
    else:
        value = Fraction(int(whole))
    return -value if sign == "-" else value


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_rational(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floating-point distances are not accepted; pass a Fraction or a string")
    return Fraction(value)


@dataclass(frozen=True)
class FiniteSpace:
    """A finite set of labelled points with an exact distance table."""

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no point labelled {label!r}") from None

    def distinct_distances(self) -> list[Fraction]:
        """Sorted distinct positive values in the table."""
        vals = {self.dist[i][j] for i in range(self.n) for j in range(i + 1, self.n)}
        return sorted(vals)


def make_space(labels: Iterable[str], dist: Sequence[Sequence]) -> FiniteSpace:
    """Validate and freeze a distance table.

    Raises ShapeError, IdentityError, NegativeDistanceError or AsymmetryError,
    the latter three carrying the offending index pair as ``.pair``.
    """
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if len(set(labels)) != n:
        raise SpaceError("point labels must be unique")
    if len(dist) != n or any(len(row) != n for row in dist):
        raise ShapeError(f"distance table must be {n}x{n}")
    table = tuple(tuple(as_rational(x) for x in row) for row in dist)
    for i in range(n):
        if table[i][i] != 0:
            raise IdentityError(i, i, labels)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if table[i][j] < 0:
                raise NegativeDistanceError(i, j, labels)
            if table[i][j] == 0:
                raise IdentityError(i, j, labels)
            if j > i and table[i][j] != table[j][i]:
                raise AsymmetryError(i, j, labels)
    return FiniteSpace(labels, table)


def scale_space(space: FiniteSpace, c) -> FiniteSpace:
    c = as_rational(c)
    if c <= 0:
        raise NonPositiveScaleError(f"scale factor must be positive, got {c}")
    return FiniteSpace(space.labels, tuple(tuple(x * c for x in row) for row in space.dist))


def subspace(space: FiniteSpace, indices: Sequence[int]) -> FiniteSpace:
    idx = list(indices)
    return FiniteSpace(
        tuple(space.labels[i] for i in idx),
        tuple(tuple(space.dist[i][j] for j in idx) for i in idx),
    )


CLAIMED, CERTIFIED, REFUTED = "claimed", "certified", "refuted"


@dataclass(frozen=True)
class MetricClass:
    """A pair (v, s) together with where it stands: claimed, certified or refuted."""

    v: int
    s: Fraction
    status: str = CLAIMED

    def __post_init__(self):
        object.__setattr__(self, "s", as_rational(self.s))
        if self.v < 1:
            raise ValueError("v must be a positive integer")
        if self.s < 1:
            raise ValueError("s must be at least 1")
        if self.status not in (CLAIMED, CERTIFIED, REFUTED):
            raise ValueError(f"unknown status {self.status!r}")


@dataclass(frozen=True)
class SelfMap:
    """T as an image table. ``None`` marks points outside the map's domain.

    Gallery truncations of infinite examples are sometimes not closed under
    T; those maps are partial and say so via :attr:`partial`.
    """

    image: tuple[Optional[int], ...]
    name: str = field(default="", compare=False)

    def __call__(self, i: int) -> Optional[int]:
        return self.image[i]

    def __len__(self) -> int:
        return len(self.image)

    @property
    def partial(self) -> bool:
        return any(t is None for t in self.image)

    @property
    def domain(self) -> list[int]:
        return [i for i, t in enumerate(self.image) if t is not None]


def make_map(space: FiniteSpace, image: Sequence[Optional[int]], name: str = "") -> SelfMap:
    image = tuple(None if t is None else int(t) for t in image)
    if len(image) != space.n:
        raise MapError(f"map has {len(image)} entries, space has {space.n} points")
    for i, t in enumerate(image):
        if t is not None and not 0 <= t < space.n:
            raise MapError(f"image of {space.labels[i]} is outside the space")
    return SelfMap(image, name)


def constant_map(space: FiniteSpace, target: int) -> SelfMap:
    return make_map(space, [target] * space.n, name=f"const {space.labels[target]}")


def identity_map(space: FiniteSpace) -> SelfMap:
    return make_map(space, range(space.n), name="identity")
