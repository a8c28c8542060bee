"""Bijection between one-subdiagonal permutations and integer compositions.

A permutation with pi(i) >= i - 1 decomposes into cycles on blocks of
consecutive integers; reading off the block lengths left to right gives a
composition of n, and the record (left-to-right maximum) positions are
exactly the block starts.  Conversely a composition rebuilds the
permutation by making each block {s, ..., e} the cycle
pi(s) = e, pi(m) = m - 1 for s < m <= e.

Compositions of n are indexed by (n-1)-bit words: bit i-1 (least
significant first) set means "cut after position i", and parts are the
run lengths between cuts.  Word 0 is the single part (n); word 2^(n-1)-1
is all ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import CapExceeded, Composition, Permutation

ENUMERATE_DEFAULT_CAP = 24


@dataclass(frozen=True)
class RecordProfile:
    """Record (left-to-right maximum) positions and values of a permutation."""

    positions: tuple[int, ...]
    values: tuple[int, ...]


def record_positions(p: Permutation) -> RecordProfile:
    """Positions i where pi(i) exceeds every earlier value, with those values.

    >>> record_positions(Permutation((2, 1, 5, 3, 4, 6))).positions
    (1, 3, 6)
    """
    positions: list[int] = []
    values: list[int] = []
    best = 0
    for i, v in enumerate(p.images, start=1):
        if v > best:
            positions.append(i)
            values.append(v)
            best = v
    return RecordProfile(tuple(positions), tuple(values))


def _check_one_subdiagonal(p: Permutation) -> None:
    for i, v in enumerate(p.images, start=1):
        if v < i - 1:
            raise ValueError(f"pi({i}) = {v} < {i - 1}; permutation is not one-subdiagonal")


def perm_to_composition(p: Permutation) -> Composition:
    """Composition of gaps between record positions (last part runs to n).

    >>> perm_to_composition(Permutation((1, 4, 2, 3, 5, 10, 6, 7, 8, 9))).parts
    (1, 3, 1, 5)
    """
    _check_one_subdiagonal(p)
    pos = record_positions(p).positions
    n = p.n
    parts = tuple(pos[t + 1] - pos[t] for t in range(len(pos) - 1)) + (n + 1 - pos[-1],)
    return Composition(parts)


def composition_to_perm(c: Composition) -> Permutation:
    """Inverse map: each part of size m becomes the cycle on the next m
    consecutive integers that sends its start to its end and every other
    element one step down.

    >>> composition_to_perm(Composition((5,))).images
    (5, 1, 2, 3, 4)
    >>> composition_to_perm(Composition((1, 3, 1, 5))).images
    (1, 4, 2, 3, 5, 10, 6, 7, 8, 9)
    """
    n = c.total
    images = [0] * n
    start = 1
    for part in c.parts:
        end = start + part - 1
        images[start - 1] = end
        for m in range(start + 1, end + 1):
            images[m - 1] = m - 1
        start = end + 1
    return Permutation(tuple(images))


def composition_from_index(n: int, index: int) -> Composition:
    """Composition encoded by an (n-1)-bit cut word (see module docstring).

    >>> composition_from_index(4, 0).parts
    (4,)
    >>> composition_from_index(4, 0b101).parts
    (1, 2, 1)
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= index < (1 << (n - 1)):
        raise ValueError(f"index {index} out of range for n={n}")
    parts: list[int] = []
    run = 0
    for i in range(1, n + 1):
        run += 1
        if i == n or (index >> (i - 1)) & 1:
            parts.append(run)
            run = 0
    return Composition(tuple(parts))


def composition_to_index(c: Composition) -> int:
    """Inverse of composition_from_index."""
    index = 0
    pos = 0
    for part in c.parts[:-1]:
        pos += part
        index |= 1 << (pos - 1)
    return index


def enumerate_compositions(n: int, cap: int = ENUMERATE_DEFAULT_CAP) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n in increasing cut-word order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise CapExceeded("enumerate_compositions n", n, cap)
    return (composition_from_index(n, w) for w in range(1 << (n - 1)))


def total_k_parts(n: int, k: int) -> int:
    """Total number of parts equal to k over all compositions of n.

    Equals (n - k + 3) * 2^(n-k-2) whenever k <= n - 1; the two edge values
    are total(n, n) = 1 and total(n, n-1) = 2.

    >>> total_k_parts(5, 1)
    28
    >>> total_k_parts(6, 2)
    28
    """
    if n < 1 or k < 1:
        raise ValueError(f"need n, k >= 1, got n={n}, k={k}")
    if k > n:
        return 0
    m = n - k
    if m == 0:
        return 1
    return (m + 3) * (1 << m) // 4


def count_k_parts(c: Composition, k: int) -> int:
    """Number of parts of c equal to k."""
    return c.count_parts(k)
