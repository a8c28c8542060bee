#!/usr/bin/env python3
"""Counting restricted permutations three ways.

A restriction vector b = (b_1, ..., b_n) with 1 <= b_1 <= ... <= b_n and
b_i <= i selects the permutations pi with pi(i) >= b_i.  This walk shows
that the family size is a simple product, that the permanent of the
associated 0/1 staircase matrix gives the same number, and that erasing a
forced fixed point reduces the problem to a smaller vector of the same
kind.
"""

from __future__ import annotations

from bregperm import (
    RestrictionVector,
    count_b_regular,
    count_with_fixed_points,
    matrix_from_vector,
    permanent_enumerate,
    permanent_ryser,
    reduce_vector_on_fixed_point,
)


def show_product(b: RestrictionVector) -> None:
    slacks = [1 + i - bi for i, bi in enumerate(b, start=1)]
    product = " * ".join(str(s) for s in slacks)
    print(f"  b = {b.entries}")
    print(f"  per-position slack counts (1 + i - b_i): {slacks}")
    print(f"  |S_b| = {product} = {count_b_regular(b)}")


def main() -> None:
    print("== The product formula ==")
    print("Assign positions from n down to 1: at position i exactly")
    print("1 + i - b_i values >= b_i are still free, no matter what was")
    print("chosen before.  The count is the product of those slacks.\n")
    show_product(RestrictionVector((1, 1, 2, 4, 4)))
    print()
    show_product(RestrictionVector.b2(6))

    print("\n== The permanent agrees ==")
    print("Row i of the 0/1 matrix has ones in columns b_i..n; its")
    print("permanent counts the same family.")
    for n in (4, 8, 12):
        b = RestrictionVector.b2(n)
        m = matrix_from_vector(b)
        ryser = permanent_ryser(m)
        print(f"  n={n:2d}: product {count_b_regular(b):5d}   permanent {ryser:5d}")
    b = RestrictionVector((1, 2, 2, 3, 5, 5, 6))
    m = matrix_from_vector(b)
    print(f"  irregular b = {b.entries}:")
    print(f"    product {count_b_regular(b)}, inclusion-exclusion {permanent_ryser(m)}, "
          f"enumeration {permanent_enumerate(m)}")

    print("\n== One-step staircases double, two-step staircases triple ==")
    for n in range(2, 9):
        two = count_b_regular(RestrictionVector.b2(n))
        three = count_b_regular(RestrictionVector.br(3, n))
        print(f"  n={n}: pi(i) >= i-1 gives {two:4d} = 2^{n-1};  "
              f"pi(i) >= i-2 gives {three:5d} = 2*3^{n-2}")

    print("\n== Conditioning on a fixed point shrinks the vector ==")
    b = RestrictionVector((1, 1, 2, 4, 4))
    print(f"  start: b = {b.entries}, |S_b| = {count_b_regular(b)}")
    for i in (2, 3):
        reduced = reduce_vector_on_fixed_point(b, i)
        print(f"  demand pi({i}) = {i}: vector becomes {reduced.entries}, "
              f"count {count_b_regular(reduced)}")
    both = count_with_fixed_points(b, {2, 3})
    print(f"  demanding both fixed points at once leaves {both} permutations")


if __name__ == "__main__":
    main()
