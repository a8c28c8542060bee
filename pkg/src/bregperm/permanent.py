"""Exact permanents of 0/1 matrices and fixed-point reduction of restriction vectors.

The permanent of the restriction matrix of b counts S_b, so these routines
double as counting oracles.  All arithmetic is exact (Python integers).
"""

from __future__ import annotations

import math
from itertools import islice, permutations

import numpy as np

from .core import CapExceeded, RestrictionMatrix, RestrictionVector

RYSER_DEFAULT_CAP = 30
ENUMERATE_DEFAULT_CAP = 10

_CHUNK = 200_000


def permanent_ryser(m: RestrictionMatrix, cap: int = RYSER_DEFAULT_CAP) -> int:
    """Permanent via inclusion-exclusion over column subsets, O(n * 2^n).

    Subsets are visited in Gray-code order so each step updates the row sums
    by a single column, keeping the per-step work linear in n.
    """
    n = m.n
    if n > cap:
        raise CapExceeded("permanent_ryser matrix dimension", n, cap)
    # rows containing a 1 in each column, precomputed once
    col_rows: list[list[int]] = [[i for i in range(n) if m.rows[i][j]] for j in range(n)]
    rowsums = [0] * n
    zeros = n
    total = 0
    members = 0  # current subset size
    state = 0  # current Gray code word
    prod = math.prod
    for s in range(1, 1 << n):
        flip = (s & -s).bit_length() - 1  # bit that changes between consecutive Gray words
        bit = 1 << flip
        if state & bit:
            state ^= bit
            members -= 1
            for i in col_rows[flip]:
                rowsums[i] -= 1
                if rowsums[i] == 0:
                    zeros += 1
        else:
            state ^= bit
            members += 1
            for i in col_rows[flip]:
                if rowsums[i] == 0:
                    zeros -= 1
                rowsums[i] += 1
        if zeros == 0:
            term = prod(rowsums)
            total += term if (n - members) % 2 == 0 else -term
    return total


def _permutation_block(start_iter, size: int) -> np.ndarray | None:
    block = list(islice(start_iter, size))
    if not block:
        return None
    return np.array(block, dtype=np.int8)


def permanent_enumerate(m: RestrictionMatrix, cap: int = ENUMERATE_DEFAULT_CAP) -> int:
    """Permanent by summing the product over all n! permutations.

    Independent oracle for permanent_ryser; factorial cost limits n.  For a
    0/1 matrix the sum is the number of permutations whose product is 1, so
    blocks of permutations are checked with vectorised all-ones tests.
    """
    n = m.n
    if n > cap:
        raise CapExceeded("permanent_enumerate matrix dimension", n, cap)
    rows = np.array(m.rows, dtype=np.int8)
    cols = np.arange(n)
    it = permutations(range(n))
    total = 0
    while (block := _permutation_block(it, _CHUNK)) is not None:
        picked = rows[cols, block]  # entry M[i, pi(i)] for each permutation row
        total += int(np.count_nonzero(picked.all(axis=1)))
    return total


def reduce_vector_on_fixed_point(b: RestrictionVector, i: int) -> RestrictionVector:
    """Restriction vector for the permutations of S_b with pi(i) = i, after
    deleting row and column i and relabelling order-preservingly.

    Entry j > i keeps its value when b_j <= i (column i sat inside its ones
    range) and drops by one otherwise.

    >>> reduce_vector_on_fixed_point(RestrictionVector((1, 1, 2, 4, 4)), 2).entries
    (1, 2, 3, 3)
    >>> reduce_vector_on_fixed_point(RestrictionVector((1,)), 1).entries
    ()
    """
    n = b.n
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    entries = b.entries
    reduced = entries[: i - 1] + tuple(v - 1 if v > i else v for v in entries[i:])
    return RestrictionVector(reduced)


def count_with_fixed_points(b: RestrictionVector, fixed: frozenset[int] | set[int]) -> int:
    """Number of permutations in S_b with pi(i) = i for every i in `fixed`.

    Reduces the vector once per fixed label, tracking surviving original
    labels so later labels land on the right position.  The result does not
    depend on the reduction order.

    >>> count_with_fixed_points(RestrictionVector.b2(5), {1})
    8
    >>> count_with_fixed_points(RestrictionVector.b2(5), {2, 3})
    2
    """
    labels = sorted(fixed)
    if labels and not (1 <= labels[0] and labels[-1] <= b.n):
        raise ValueError(f"fixed labels {labels} out of range 1..{b.n}")
    if len(labels) != len(set(labels)):
        raise ValueError("fixed labels must be distinct")
    survivors = list(range(1, b.n + 1))
    current = b
    for lab in labels:
        pos = survivors.index(lab) + 1
        current = reduce_vector_on_fixed_point(current, pos)
        survivors.pop(pos - 1)
    return math.prod(1 + i - bi for i, bi in enumerate(current, start=1))
