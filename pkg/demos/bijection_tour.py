#!/usr/bin/env python3
"""A tour of the bijection between one-subdiagonal permutations and
integer compositions.

Permutations with pi(i) >= i - 1 split into cycles on blocks of
consecutive integers; reading the block lengths left to right is a
composition of n, and the construction inverts exactly.  Records
(left-to-right maxima) sit precisely at the block starts, so statistics of
records, cycles, and parts translate into each other.
"""

from __future__ import annotations

from itertools import islice

from bregperm import (
    Composition,
    Permutation,
    RestrictionVector,
    composition_to_perm,
    count_b_regular,
    enumerate_compositions,
    perm_to_composition,
    record_positions,
    total_k_parts,
)


def main() -> None:
    print("== One permutation, read as a composition ==")
    p = Permutation((1, 4, 2, 3, 5, 10, 6, 7, 8, 9))
    prof = record_positions(p)
    c = perm_to_composition(p)
    print(f"  pi           = {p.images}")
    print(f"  records at   = {prof.positions} with values {prof.values}")
    print(f"  cycles       = {p.cycles()}")
    print(f"  composition  = {c.parts}  (gaps between record positions)")
    print(f"  and back     = {composition_to_perm(c).images}")

    print("\n== Every composition builds one member of the family ==")
    n = 5
    b = RestrictionVector.b2(n)
    print(f"  n = {n}: {count_b_regular(b)} permutations with pi(i) >= i-1, "
          f"{2 ** (n - 1)} compositions")
    for c in enumerate_compositions(n):
        p = composition_to_perm(c)
        parts = ",".join(str(v) for v in c.parts)
        print(f"    {parts:>9}  ->  {p.images}")

    print("\n== Cycle sizes are part sizes ==")
    c = Composition((2, 3, 1, 4))
    p = composition_to_perm(c)
    print(f"  parts  {c.parts}")
    print(f"  cycles {tuple(sorted(len(cy) for cy in p.cycles()))} (as a multiset)")
    print(f"  blocks {p.cycles()}")

    print("\n== Totals of size-k parts follow one expression ==")
    print("  over all compositions of n, parts of size k <= n-1 total")
    print("  (n - k + 3) * 2^(n-k-2); the count depends only on n - k.")
    header = "  n\\k " + "".join(f"{k:>6}" for k in range(1, 8))
    print(header)
    for n in range(1, 11):
        row = f"  {n:3d} "
        for k in range(1, 8):
            row += f"{total_k_parts(n, k):>6}" if k <= n else "     ."
        print(row)
    sample = [(5, 1), (9, 5), (12, 8)]
    diffs = ", ".join(f"total({n},{k}) = {total_k_parts(n, k)}" for n, k in sample)
    print(f"  same difference n-k = 4 everywhere: {diffs}")

    print("\n== First few members of a larger family ==")
    for c in islice(enumerate_compositions(12), 5):
        print(f"  {str(c.parts):>24}  ->  {composition_to_perm(c).images}")


if __name__ == "__main__":
    main()
