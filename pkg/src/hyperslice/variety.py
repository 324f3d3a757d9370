"""Constructible sets and morphisms to P^n as data, brute-force point
counting over F_{q^m}, hyperplane pullback slices, and fiber profiles.

A point of X = V(E) \\ V(G) survives iff every e in E vanishes and
(G is empty or some g in G is nonzero); an empty inequation list removes
nothing.

Counting partitions the enumeration domain into contiguous index ranges
handled by independent workers; partial counts combine by integer
addition, so the result is independent of the worker count.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import islice, product
from typing import Dict, Optional, Tuple

from .errors import (
    BasePointHitError,
    BudgetExceededError,
    DimensionMismatchError,
    FieldMismatchError,
)
from .fields import Field, extend
from .polyexpr import Poly
from .projgeom import ProjPoint, enum_points, normalize, num_proj_points

DEFAULT_BUDGET = 10 ** 9
_BUDGET_ENV = "HYPERSLICE_BUDGET"


def effective_budget(budget: Optional[int]) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(_BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


@lru_cache(maxsize=64)
def _cached_extend(F: Field, m: int, seed: int) -> Field:
    return extend(F, m, seed)


@dataclass(frozen=True)
class Ambient:
    """Affine A^N or projective P^N ambient with named coordinates.

    Projective ambients carry N+1 coordinates (default x0..xN), affine
    ambients N (default x1..xN).
    """

    kind: str
    dim: int
    variables: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("affine", "projective"):
            raise ValueError(f"unknown ambient kind {self.kind!r}")
        if self.dim < 1:
            raise ValueError("ambient dimension must be >= 1")
        nv = self.dim + 1 if self.kind == "projective" else self.dim
        if not self.variables:
            start = 0 if self.kind == "projective" else 1
            object.__setattr__(
                self, "variables",
                tuple(f"x{i}" for i in range(start, start + nv)))
        elif len(self.variables) != nv:
            raise ValueError(
                f"{self.kind} ambient of dimension {self.dim} "
                f"needs {nv} variables")

    @property
    def arity(self) -> int:
        return len(self.variables)


@dataclass(frozen=True)
class ConstructibleSet:
    """Equations that must vanish, minus the locus where all inequations
    vanish (locally closed set)."""

    ambient: Ambient
    equations: Tuple[Poly, ...] = ()
    inequations: Tuple[Poly, ...] = ()

    def __post_init__(self):
        polys = self.equations + self.inequations
        for f in polys:
            if f.variables != self.ambient.variables:
                raise FieldMismatchError(
                    "polynomial variables do not match the ambient")
        fields = {f.field for f in polys}
        if len(fields) > 1:
            raise FieldMismatchError("mixed coefficient fields")
        if self.ambient.kind == "projective":
            for f in polys:
                if not f.is_zero() and f.homogeneous_degree() is None:
                    raise ValueError(
                        "projective ambients need homogeneous polynomials")

    @property
    def field(self) -> Field:
        for f in self.equations + self.inequations:
            return f.field
        raise FieldMismatchError("no polynomials to infer the field from")


@dataclass(frozen=True)
class MorphismToPn:
    """phi: X -> P^n given by n+1 component polynomials."""

    target_dim: int
    components: Tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != self.target_dim + 1:
            raise DimensionMismatchError(
                f"morphism to P^{self.target_dim} needs "
                f"{self.target_dim + 1} components")
        if all(f.is_zero() for f in self.components):
            raise ValueError("morphism components are all zero")

    @property
    def field(self) -> Field:
        return self.components[0].field


@dataclass(frozen=True)
class PointCountRecord:
    m: int
    count: int
    elapsed_ms: float


def _set_field(X: ConstructibleSet, fallback: Field = None) -> Field:
    try:
        return X.field
    except FieldMismatchError:
        if fallback is None:
            raise
        return fallback


def _point_test(equations, inequations, E: Field):
    def test(pt) -> bool:
        for f in equations:
            if f.eval(pt, E) != 0:
                return False
        if inequations:
            return any(g.eval(pt, E) != 0 for g in inequations)
        return True
    return test


def _chunks(total: int, workers: int):
    workers = max(1, min(workers, total)) if total else 1
    step = -(-total // workers)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def count_points(X: ConstructibleSet, m: int = 1, budget: int = None,
                 workers: int = 1, base_field: Field = None,
                 ext_seed: int = 0) -> PointCountRecord:
    """Exact number of F_{q^m}-points of X by full enumeration.

    ``base_field`` supplies the field when X has no polynomials at all
    (e.g. the full affine space).
    """
    start = time.perf_counter()
    F = _set_field(X, base_field)
    E = _cached_extend(F, m, ext_seed)
    arity = X.ambient.arity
    affine = X.ambient.kind == "affine"
    if affine:
        domain_size = E.order ** arity
    else:
        domain_size = num_proj_points(E.order, X.ambient.dim)

    # A nonzero constant equation kills every point; zero equations are
    # vacuous.  Short-circuiting keeps empty-slice probes cheap.
    equations = []
    for f in X.equations:
        if f.is_zero():
            continue
        if len(f.terms) == 1 and not any(f.terms[0][0]):
            return PointCountRecord(
                m, 0, (time.perf_counter() - start) * 1000.0)
        equations.append(f)
    polys = tuple(equations) + X.inequations

    if not polys:
        return PointCountRecord(
            m, domain_size, (time.perf_counter() - start) * 1000.0)

    cost = domain_size * len(polys)
    limit = effective_budget(budget)
    if cost > limit:
        raise BudgetExceededError(cost, limit)

    test = _point_test(tuple(equations), X.inequations, E)

    def run(lo: int, hi: int) -> int:
        if affine:
            it = islice(product(range(E.order), repeat=arity), lo, hi)
        else:
            it = islice(enum_points(E, X.ambient.dim), lo, hi)
        return sum(1 for pt in it if test(pt))

    ranges = _chunks(domain_size, workers)
    if len(ranges) == 1:
        total = run(*ranges[0])
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            total = sum(pool.map(lambda r: run(*r), ranges))
    return PointCountRecord(m, total,
                            (time.perf_counter() - start) * 1000.0)


def hyperplane_slice(X: ConstructibleSet, phi: MorphismToPn,
                     H) -> ConstructibleSet:
    """phi^{-1}H: X with the extra equation sum c_i f_i appended."""
    if len(H) != phi.target_dim + 1:
        raise DimensionMismatchError(
            f"hyperplane has {len(H)} coordinates, expected "
            f"{phi.target_dim + 1}")
    eq = None
    for c, f in zip(H, phi.components):
        if c == 0:
            continue
        part = f.scale(c)
        eq = part if eq is None else eq + part
    if eq is None:
        eq = Poly.zero(phi.field, phi.components[0].variables)
    return ConstructibleSet(X.ambient, X.equations + (eq,), X.inequations)


@dataclass(frozen=True)
class FiberProfile:
    """Exact fiber statistics of phi on X(F_q)."""

    total: int
    image_size: int
    max_fiber: int
    collision_sum: int
    fibers: Dict[ProjPoint, int] = dc_field(default_factory=dict, repr=False)


def fiber_profile(X: ConstructibleSet, phi: MorphismToPn,
                  budget: int = None, base_field: Field = None,
                  ) -> FiberProfile:
    """Map every F_q-point of X through phi and accumulate fiber sizes.

    collision_sum is D = sum over image points y of (fiber size)^2.
    """
    F = _set_field(X, base_field)
    arity = X.ambient.arity
    affine = X.ambient.kind == "affine"
    if affine:
        domain_size = F.order ** arity
    else:
        domain_size = num_proj_points(F.order, X.ambient.dim)
    polys = X.equations + X.inequations
    cost = domain_size * max(1, len(polys) + len(phi.components))
    limit = effective_budget(budget)
    if cost > limit:
        raise BudgetExceededError(cost, limit)

    test = _point_test(X.equations, X.inequations, F)
    fibers: Dict[ProjPoint, int] = {}
    domain = (product(range(F.order), repeat=arity) if affine
              else enum_points(F, X.ambient.dim))
    for pt in domain:
        if not test(pt):
            continue
        values = tuple(f.eval(pt) for f in phi.components)
        if not any(values):
            raise BasePointHitError(pt)
        y = normalize(F, values)
        fibers[y] = fibers.get(y, 0) + 1
    sizes = fibers.values()
    return FiberProfile(
        total=sum(sizes),
        image_size=len(fibers),
        max_fiber=max(sizes, default=0),
        collision_sum=sum(s * s for s in sizes),
        fibers=fibers,
    )


def check_base_point_free(X: ConstructibleSet, phi: MorphismToPn,
                          m: int = 1, budget: int = None,
                          base_field: Field = None, ext_seed: int = 0):
    """(True, None) if no enumerated F_{q^m}-point of X zeroes every
    component of phi; otherwise (False, witness)."""
    F = _set_field(X, base_field)
    E = extend(F, m, ext_seed)
    arity = X.ambient.arity
    affine = X.ambient.kind == "affine"
    domain_size = (E.order ** arity if affine
                   else num_proj_points(E.order, X.ambient.dim))
    cost = domain_size * max(1, len(X.equations) + len(X.inequations)
                             + len(phi.components))
    limit = effective_budget(budget)
    if cost > limit:
        raise BudgetExceededError(cost, limit)
    test = _point_test(X.equations, X.inequations, E)
    domain = (product(range(E.order), repeat=arity) if affine
              else enum_points(E, X.ambient.dim))
    for pt in domain:
        if test(pt) and all(f.eval(pt, E) == 0 for f in phi.components):
            return False, pt
    return True, None
