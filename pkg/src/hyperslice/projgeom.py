"""Projective points and hyperplanes over a described field: enumeration,
incidence, exact incidence probabilities, uniform sampling, and span /
span-locus dimensions via Gaussian elimination.

Canonical form: homogeneous coordinate vectors are normalized so the
first nonzero coordinate equals 1.  This single convention backs
hashing, deduplication and every golden file.  Enumeration order: points
with leading-one position 0 first, then position 1, ..., and within one
position the trailing coordinates run code-ascending, rightmost fastest.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence, Tuple

from .errors import DimensionMismatchError, EmptyInputError
from .fields import Field

ProjPoint = Tuple[int, ...]
Hyperplane = Tuple[int, ...]


def num_proj_points(q: int, n: int) -> int:
    return (q ** (n + 1) - 1) // (q - 1)


def normalize(F: Field, vec: Sequence[int]) -> ProjPoint:
    """Scale so the first nonzero coordinate is 1."""
    for i, c in enumerate(vec):
        if c != 0:
            if c == 1:
                return tuple(vec)
            s = F.inv(c)
            return tuple(0 if j < i else F.mul(s, x)
                         for j, x in enumerate(vec))
    raise EmptyInputError("the zero vector is not a projective point")


def enum_points(F: Field, n: int) -> Iterator[ProjPoint]:
    """All (q^(n+1)-1)/(q-1) normalized points of P^n(F), in the
    documented deterministic order."""
    q = F.order
    for lead in range(n + 1):
        head = (0,) * lead + (1,)
        for rest in product(range(q), repeat=n - lead):
            yield head + rest


def enum_hyperplanes(F: Field, n: int) -> Iterator[Hyperplane]:
    """Hyperplanes of P^n parametrized by normalized dual coordinates,
    same order as enum_points."""
    return enum_points(F, n)


def incident(F: Field, y: ProjPoint, H: Hyperplane) -> bool:
    """True iff sum c_i y_i = 0."""
    if len(y) != len(H):
        raise DimensionMismatchError(
            f"point has {len(y)} coordinates, hyperplane {len(H)}")
    acc = 0
    for a, b in zip(y, H):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc == 0


def p1(q: int, n: int) -> Fraction:
    """Probability that a fixed point lies on a uniform hyperplane."""
    return Fraction(q ** n - 1, q ** (n + 1) - 1)


def p2(q: int, n: int) -> Fraction:
    """Probability that two fixed distinct points both lie on a uniform
    hyperplane."""
    return Fraction(q ** (n - 1) - 1, q ** (n + 1) - 1)


def sample_hyperplane(F: Field, n: int, rng: random.Random) -> Hyperplane:
    """Uniform over the dual space: draw a uniform nonzero coordinate
    vector and normalize (each hyperplane has exactly q-1 nonzero
    representatives, so normalization preserves uniformity)."""
    q = F.order
    while True:
        vec = tuple(rng.randrange(q) for _ in range(n + 1))
        if any(vec):
            return normalize(F, vec)


def rank(F: Field, rows: Iterable[Sequence[int]]) -> int:
    """Rank of a matrix over F by Gaussian elimination."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = F.inv(mat[r][col])
        mat[r] = [F.mul(inv, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                c = mat[i][col]
                mat[i] = [F.sub(x, F.mul(c, y))
                          for x, y in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def span_dim(F: Field, points: Sequence[ProjPoint]) -> int:
    """Projective dimension of the linear span of the points."""
    if not points:
        raise EmptyInputError("span of an empty point set")
    return rank(F, points) - 1


def span_locus_dim(F: Field, points: Sequence[ProjPoint]) -> int:
    """Projective dimension of the linear system of hyperplanes that
    contain every given point; -1 when no hyperplane does."""
    if not points:
        raise EmptyInputError("span locus of an empty point set")
    n = len(points[0]) - 1
    return n - rank(F, points)
