"""Counting, enumeration and uniform sampling of b-regular permutations.

S_b is the set of permutations with pi(i) >= b_i.  Its size factorises as
the product of the per-position slack counts (1 + i - b_i): assigning
positions from n down to 1, the number of still-available values >= b_i is
always exactly i - b_i + 1, whatever was chosen before.  The same fact
drives the enumerator and the uniform sampler below.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .core import CapExceeded, CycleType, Permutation, RestrictionVector, cycle_type
from .permanent import count_with_fixed_points

ENUMERATE_DEFAULT_CAP = 1 << 22


def count_b_regular(b: RestrictionVector) -> int:
    """|S_b| = prod_i (1 + i - b_i), exactly.

    >>> count_b_regular(RestrictionVector.b2(5))
    16
    >>> count_b_regular(RestrictionVector((1, 1, 2, 4, 4)))
    8
    """
    return math.prod(1 + i - bi for i, bi in enumerate(b, start=1))


@dataclass(frozen=True)
class BRegularFamily:
    """A restriction vector together with its exact cardinality."""

    b: RestrictionVector
    cardinality: int

    @classmethod
    def of(cls, b: RestrictionVector) -> "BRegularFamily":
        return cls(b, count_b_regular(b))

    @property
    def n(self) -> int:
        return self.b.n


@dataclass(frozen=True)
class MomentPair:
    mean: Fraction
    variance: Fraction


def enumerate_b_regular(b: RestrictionVector, cap: int = ENUMERATE_DEFAULT_CAP) -> Iterator[Permutation]:
    """Yield every permutation of S_b exactly once.

    Positions are filled from n down to 1; at each position the candidate
    values are tried in increasing order, which fixes a deterministic
    output order.  Cost is linear in the output size.
    """
    n = b.n
    if n < 1:
        raise ValueError("enumeration needs n >= 1")
    total = count_b_regular(b)
    if total > cap:
        raise CapExceeded("enumerate_b_regular output size", total, cap)
    images = [0] * n
    available = list(range(1, n + 1))  # kept sorted

    def fill(i: int) -> Iterator[Permutation]:
        if i == 0:
            yield Permutation(tuple(images))
            return
        lo = bisect_left(available, b[i])
        # iterate over a snapshot; the list mutates across recursive calls
        for idx in range(lo, len(available)):
            v = available.pop(idx)
            images[i - 1] = v
            yield from fill(i - 1)
            available.insert(idx, v)

    return fill(n)


def sample_b_regular(b: RestrictionVector, rng: random.Random | int) -> Permutation:
    """Draw one permutation uniformly from S_b.

    Fills positions from n down to 1, choosing uniformly among the
    still-available values >= b_i.  Every draw sequence has probability
    1/|S_b| because the choice count at position i is i - b_i + 1
    regardless of earlier choices.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    n = b.n
    if n < 1:
        raise ValueError("sampling needs n >= 1")
    available = list(range(1, n + 1))
    images = [0] * n
    for i in range(n, 0, -1):
        lo = bisect_left(available, b[i])
        width = len(available) - lo
        if width <= 0:
            raise RuntimeError(f"no available value >= b_{i}={b[i]}; vector invariant violated")
        images[i - 1] = available.pop(lo + rng.randrange(width))
    return Permutation(tuple(images))


def fixed_point_mean(b: RestrictionVector) -> Fraction:
    """Mean number of fixed points of a uniform draw from S_b.

    Computed as the exact sum of per-position fixed-point probabilities,
    each obtained by one vector reduction.

    >>> fixed_point_mean(RestrictionVector.b2(5))
    Fraction(7, 4)
    """
    total = count_b_regular(b)
    hits = sum(count_with_fixed_points(b, {i}) for i in range(1, b.n + 1))
    return Fraction(hits, total)


def fixed_point_variance(b: RestrictionVector) -> Fraction:
    """Variance of the number of fixed points of a uniform draw from S_b.

    Indicator covariance expansion: sum_i p_i(1-p_i)
    + 2 sum_{i<j} (p_ij - p_i p_j), with every probability an exact ratio
    of reduced-vector counts.

    >>> fixed_point_variance(RestrictionVector.b2(5))
    Fraction(29, 16)
    """
    n = b.n
    total = count_b_regular(b)
    p = [Fraction(count_with_fixed_points(b, {i}), total) for i in range(1, n + 1)]
    var = sum((pi * (1 - pi) for pi in p), Fraction(0))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pij = Fraction(count_with_fixed_points(b, {i, j}), total)
            var += 2 * (pij - p[i - 1] * p[j - 1])
    return var


def fixed_point_moments(b: RestrictionVector) -> MomentPair:
    return MomentPair(fixed_point_mean(b), fixed_point_variance(b))


def count_k_cycles(p: Permutation, k: int) -> int:
    """Number of k-cycles in the orbit decomposition of p."""
    if k < 1:
        raise ValueError(f"cycle length must be >= 1, got {k}")
    return cycle_type(p).multiplicity(k)


def cycle_type_of(p: Permutation) -> CycleType:
    """Convenience re-export of core.cycle_type."""
    return cycle_type(p)
