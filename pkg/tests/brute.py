"""Reference implementations for tests: plain loops over Fractions, no numpy.

Deliberately naive so they share no code path with the package.
"""

from fractions import Fraction
from itertools import combinations, permutations


def chain_sum(D, x, chain, y):
    pts = [x, *chain, y]
    return sum((D[a][b] for a, b in zip(pts, pts[1:])), Fraction(0))


def configurations(n, v):
    for x, y in combinations(range(n), 2):
        rest = [k for k in range(n) if k not in (x, y)]
        for t in permutations(rest, v):
            yield x, y, t


def first_violation(D, v, s):
    for x, y, t in configurations(len(D), v):
        c = chain_sum(D, x, t, y)
        if D[x][y] > s * c:
            return (x, y), t, D[x][y], s * c
    return None


def least_s(D, v):
    best = Fraction(1)
    for x, y, t in configurations(len(D), v):
        best = max(best, D[x][y] / chain_sum(D, x, t, y))
    return best


def count_configurations(n, v):
    return sum(1 for _ in configurations(n, v))


def iterate(image, x0, steps):
    out = [x0]
    for _ in range(steps):
        out.append(image[out[-1]])
    return out
