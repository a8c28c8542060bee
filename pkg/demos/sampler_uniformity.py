#!/usr/bin/env python3
"""Is the sampler really uniform?

The draw fills positions from n down to 1, picking uniformly among the
still-available values meeting the bound; every complete draw then has
probability exactly 1/|S_b|.  This walk checks that claim empirically
with chi-square tests over whole small families.
"""

from __future__ import annotations

import random
from collections import Counter

from scipy import stats

from bregperm import RestrictionVector, count_b_regular, enumerate_b_regular, sample_b_regular


def chi_square_run(b: RestrictionVector, draws: int, seed: int) -> None:
    members = sorted(p.images for p in enumerate_b_regular(b))
    cells = len(members)
    rng = random.Random(seed)
    counts: Counter[tuple[int, ...]] = Counter()
    for _ in range(draws):
        counts[sample_b_regular(b, rng).images] += 1
    expected = draws / cells
    statistic = sum((counts.get(m, 0) - expected) ** 2 / expected for m in members)
    p_value = stats.chi2.sf(statistic, df=cells - 1)
    spread = (min(counts.get(m, 0) for m in members), max(counts.get(m, 0) for m in members))
    print(f"  b = {b.entries}")
    print(f"    {cells} members, {draws:,} draws (seed {seed}), expected {expected:.1f} per member")
    print(f"    observed min/max per member: {spread[0]} / {spread[1]}")
    print(f"    chi-square = {statistic:.2f} on {cells - 1} degrees of freedom, p = {p_value:.3f}")


def main() -> None:
    print("== Uniformity over whole families ==")
    chi_square_run(RestrictionVector.b2(8), draws=100_000, seed=11)
    print()
    chi_square_run(RestrictionVector((1, 1, 1, 1)), draws=100_000, seed=11)
    print()
    chi_square_run(RestrictionVector((1, 2, 2, 3, 5, 5)), draws=60_000, seed=7)

    print("\n== Per-position marginals at a larger size ==")
    b = RestrictionVector.b2(40)
    print(f"  {count_b_regular(b):,} members at n = 40; sampling still costs O(n) per draw")
    rng = random.Random(3)
    fixed = Counter()
    draws = 20_000
    for _ in range(draws):
        p = sample_b_regular(b, rng)
        for i, v in enumerate(p.images, start=1):
            if v == i:
                fixed[i] += 1
    print("  fixed-point frequency by position (first 8 positions):")
    for i in range(1, 9):
        print(f"    position {i}: {fixed[i] / draws:.4f}")
    print("  interior positions hover near 1/4, matching the exact law.")


if __name__ == "__main__":
    main()
