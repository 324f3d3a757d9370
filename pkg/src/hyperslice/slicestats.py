"""Exact and Monte Carlo statistics of the slice-size random variable
Z = #(phi^{-1}H) for a uniformly random hyperplane H.

Two computation paths are mandatory and cross-checked: ``exact_stats``
enumerates every hyperplane of the dual space (the oracle), while
``predicted_stats`` evaluates the closed forms

    mu      = |X| * p1
    sigma^2 = D*(p1 - p1^2) + (|X|^2 - D)*(p2 - p1^2)

with D the fiber collision sum.  Both are exact rationals; the tests
demand equality with zero tolerance.

Sample variance in ``mc_stats`` uses the unbiased (n-1) denominator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .errors import (
    BudgetExceededError,
    InconsistentDError,
    NonpositiveTError,
)
from .fields import Field
from .projgeom import (
    Hyperplane,
    ProjPoint,
    enum_hyperplanes,
    incident,
    normalize,
    num_proj_points,
    p1,
    p2,
    sample_hyperplane,
)
from .rng import substream
from .variety import (
    ConstructibleSet,
    MorphismToPn,
    count_points,
    effective_budget,
    fiber_profile,
    hyperplane_slice,
)


@dataclass(frozen=True)
class SetMap:
    """A bare map of sets X -> P^n(F_q): the image point of each domain
    element, with no geometry attached."""

    field: Field
    n: int
    images: Tuple[ProjPoint, ...]

    def __post_init__(self):
        for y in self.images:
            if len(y) != self.n + 1:
                raise ValueError("image point of wrong dimension")

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def fiber_counts(self) -> Dict[ProjPoint, int]:
        out: Dict[ProjPoint, int] = {}
        for y in self.images:
            y = normalize(self.field, y)
            out[y] = out.get(y, 0) + 1
        return out


@dataclass(frozen=True)
class SliceStats:
    """Exact slicing statistics: mean, variance, fiber collision sum D,
    max fiber size s, image size, and how many hyperplanes were used."""

    mean: Fraction
    variance: Fraction
    domain_size: int
    collision_sum: int
    max_fiber: int
    image_size: int
    hyperplanes: int


def _fiber_data(target, budget=None) -> Tuple[Field, int, Dict[ProjPoint, int]]:
    """Normalize the two accepted inputs (SetMap, or an (X, phi) pair)
    to (field, n, fiber multiplicity map)."""
    if isinstance(target, SetMap):
        return target.field, target.n, target.fiber_counts()
    X, phi = target
    prof = fiber_profile(X, phi, budget=budget)
    return X.field, phi.target_dim, prof.fibers


def _stats_from_moments(s1: int, s2: int, nh: int,
                        fibers: Dict[ProjPoint, int]) -> SliceStats:
    mean = Fraction(s1, nh)
    variance = Fraction(s2, nh) - mean * mean
    sizes = fibers.values()
    return SliceStats(
        mean=mean,
        variance=variance,
        domain_size=sum(sizes),
        collision_sum=sum(f * f for f in sizes),
        max_fiber=max(sizes, default=0),
        image_size=len(fibers),
        hyperplanes=nh,
    )


def exact_stats(target, budget: int = None,
                via_slices: bool = False) -> SliceStats:
    """Mean and variance of Z over the uniform distribution on ALL
    hyperplanes, as exact rationals.

    The default path computes fiber multiplicities once and sums them
    per hyperplane; ``via_slices=True`` instead counts the points of
    every pullback slice(X, phi, H) one by one (the slowest, most
    independent oracle; geometric targets only).
    """
    F, n, fibers = _fiber_data(target, budget=budget)
    nh = num_proj_points(F.order, n)
    limit = effective_budget(budget)
    if nh * max(1, len(fibers)) > limit:
        raise BudgetExceededError(nh * max(1, len(fibers)), limit)
    s1 = 0
    s2 = 0
    if via_slices:
        X, phi = target
        for H in enum_hyperplanes(F, n):
            z = count_points(hyperplane_slice(X, phi, H),
                             budget=budget).count
            s1 += z
            s2 += z * z
    else:
        items = list(fibers.items())
        for H in enum_hyperplanes(F, n):
            z = sum(mult for y, mult in items if incident(F, y, H))
            s1 += z
            s2 += z * z
    return _stats_from_moments(s1, s2, nh, fibers)


def predicted_stats(domain_size: int, collision_sum: int, q: int,
                    n: int) -> Tuple[Fraction, Fraction]:
    """Closed forms for (mu, sigma^2) from |X| and D; exact, no big-O."""
    if collision_sum > domain_size * domain_size:
        raise InconsistentDError(
            f"D = {collision_sum} exceeds |X|^2 = {domain_size ** 2}")
    a = p1(q, n)
    b = p2(q, n)
    mu = domain_size * a
    var = (collision_sum * (a - a * a)
           + (domain_size * domain_size - collision_sum) * (b - a * a))
    return mu, var


def variance_bound(image_size: int, max_fiber: int, q: int, n: int,
                   collision_sum: Optional[int] = None):
    """The coarse bound #phi(X) * s^2 * p1; when D is supplied, the
    sharper intermediate bound D * p1 is returned alongside."""
    coarse = image_size * max_fiber * max_fiber * p1(q, n)
    if collision_sum is None:
        return coarse, None
    return coarse, collision_sum * p1(q, n)


@dataclass(frozen=True)
class McStats:
    mean: float
    variance: float
    mean_stderr: float
    variance_stderr: float
    samples: int


def mc_stats(target, samples: int, seed: int,
             budget: int = None, exhaustive: bool = False):
    """Unbiased sample mean/variance over seeded uniform hyperplane
    draws.  Sample i is drawn from sub-stream (seed, i), so the output
    is reproducible for a fixed seed regardless of scheduling.

    With ``exhaustive=True`` the sampling is replaced by a full sweep of
    the dual space and the result is exactly ``exact_stats(target)``
    (samples and seed are ignored)."""
    if exhaustive:
        return exact_stats(target, budget=budget)
    if samples < 2:
        raise ValueError("need at least 2 samples")
    F, n, fibers = _fiber_data(target, budget=budget)
    items = list(fibers.items())
    values = []
    for i in range(samples):
        rng = substream(seed, i)
        H = sample_hyperplane(F, n, rng)
        values.append(sum(mult for y, mult in items if incident(F, y, H)))
    mean = sum(values) / samples
    var = sum((v - mean) ** 2 for v in values) / (samples - 1)
    return McStats(
        mean=mean,
        variance=var,
        mean_stderr=math.sqrt(var / samples),
        variance_stderr=var * math.sqrt(2.0 / (samples - 1)),
        samples=samples,
    )


def chebyshev_tail(stats: SliceStats, t: Fraction, q: Optional[int] = None,
                   r: Optional[int] = None):
    """Prob(|Z - mu| >= t*sigma) <= 1/t^2; given q and r, also the
    specialized bound 4*sigma^2 / q^(2r-2)."""
    t = Fraction(t)
    if t <= 0:
        raise NonpositiveTError(f"t must be positive, got {t}")
    generic = 1 / (t * t)
    if q is None or r is None:
        return generic, None
    special = 4 * stats.variance / Fraction(q ** (2 * r - 2))
    return generic, special
