#!/usr/bin/env python3
"""How close is the k-cycle count to a normal law?

The k-cycle count of a uniform one-subdiagonal permutation is a sum of
position indicators with short-range dependence: indicators further than
k apart are exactly independent.  That structure yields an explicit
Wasserstein-distance bound decaying like 1/sqrt(n), a derived Kolmogorov
bound, and seeded sampling runs to compare against.
"""

from __future__ import annotations

import math

from bregperm import (
    clt_empirical_test,
    dependence_threshold,
    indicator_law,
    kolmogorov_from_wasserstein,
    stein_bound_report,
    wasserstein_bound,
)


def main() -> None:
    print("== The indicator structure ==")
    n, k = 14, 2
    law = indicator_law(n, k)
    print(f"  n={n}, k={k}: occurrence probability by start position")
    print("   ", "  ".join(str(p) for p in law.probabilities))
    rep = dependence_threshold(n, k)
    print(f"  pairs of positions are dependent up to distance {rep.threshold - 1}")
    print(f"  and exactly independent from distance {rep.threshold} on "
          f"(witness pair at the edge: {rep.witness})")

    print("\n== The explicit bound at a small size ==")
    bound = stein_bound_report(10, 1)
    print(f"  n={bound.n}, k={bound.k}")
    print(f"  dependency neighbourhood size used in the bound: {bound.dependency_size}")
    print(f"  exact centred third-moment sum:  {bound.third_moment_sum}")
    print(f"  exact centred fourth-moment sum: {bound.fourth_moment_sum}")
    print(f"  sigma = {bound.sigma:.6f}")
    print(f"  Wasserstein bound  dw = {bound.wasserstein:.6f}")
    print(f"  Kolmogorov bound   dk = sqrt(2 dw / sqrt(2 pi)) = {bound.kolmogorov:.6f}")
    print("  (small n: the bound exceeds 1 and is reported as computed;")
    print(f"   with the measured neighbourhood size {bound.measured_dependency_size} "
          f"it would be {bound.wasserstein_at_measured_size:.5f})")

    print("\n== The bound decays like 1/sqrt(n) ==")
    print("      n        dw bound    sqrt(n) * dw")
    for n in (10**3, 10**4, 10**5, 10**6):
        dw = wasserstein_bound(n, 1)
        print(f"  {n:>9,}  {dw:>10.6f}  {math.sqrt(n) * dw:>12.5f}")
    print(f"  derived Kolmogorov bound at n=10^6: "
          f"{kolmogorov_from_wasserstein(wasserstein_bound(10**6, 1)):.6f}")

    print("\n== A seeded sampling run against the standard normal ==")
    rep = clt_empirical_test(2000, 1, 100_000, seed=42)
    se = math.sqrt(float(rep.sigma2) / rep.samples)
    print(f"  n={rep.n}, k={rep.k}, samples={rep.samples:,}, seed={rep.seed}")
    print(f"  exact mean {rep.mu} = {float(rep.mu)}, exact variance {rep.sigma2} = {float(rep.sigma2)}")
    print(f"  empirical mean {rep.emp_mean:.4f} (within {abs(rep.emp_mean - float(rep.mu)) / se:.2f} "
          f"standard errors)")
    print(f"  empirical variance {rep.emp_var:.4f}")
    print(f"  Kolmogorov-Smirnov statistic {rep.ks_stat:.5f}")
    print(f"  (the rigorous dk bound at this size is {rep.dk_bound:.4f}; the")
    print("   measured distance is far smaller, as expected from a bound)")

    print("\n  standardised histogram (60 draws per '#'):")
    for lo, hi, count in rep.histogram:
        if count >= 60:
            print(f"   [{lo:+6.2f}, {hi:+6.2f})  {'#' * (count // 60)}")


if __name__ == "__main__":
    main()
