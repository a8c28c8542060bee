"""Core value types for permutations with one-sided position restrictions.

A restriction vector b = (b_1, ..., b_n) with 1 <= b_1 <= ... <= b_n and
b_i <= i describes the set S_b of permutations pi of {1, ..., n} with
pi(i) >= b_i for every position i.  All positions and values are 1-based.

Everything here is immutable; instances can be shared freely across
threads.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence


class CapExceeded(RuntimeError):
    """Raised when a computation would exceed a configured resource cap."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what} needs {needed}, exceeding the cap of {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


@dataclass(frozen=True)
class RestrictionVector:
    """Non-decreasing vector b with b_i <= i, the lower bounds pi(i) >= b_i.

    The empty vector is permitted and describes the empty permutation
    (exactly one object, by convention); it arises only from repeated
    fixed-point reduction.

    >>> RestrictionVector((1, 1, 2, 3, 4)).n
    5
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        b = self.entries
        if not isinstance(b, tuple):
            object.__setattr__(self, "entries", tuple(b))
            b = self.entries
        for i, v in enumerate(b, start=1):
            if not isinstance(v, int):
                raise ValueError(f"entry {i} is not an integer: {v!r}")
            if v < 1 or v > i:
                raise ValueError(f"entry {i} must satisfy 1 <= b_{i} <= {i}, got {v}")
            if i > 1 and v < b[i - 2]:
                raise ValueError(f"entries must be non-decreasing, got b_{i}={v} < b_{i-1}={b[i-2]}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        """1-based access: self[i] is b_i."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        return self.entries[i - 1]

    @classmethod
    def of(cls, values: Sequence[int]) -> "RestrictionVector":
        return cls(tuple(values))

    @classmethod
    def b2(cls, n: int) -> "RestrictionVector":
        """The one-subdiagonal staircase (1, 1, 2, 3, ..., n-1): pi(i) >= i-1.

        >>> RestrictionVector.b2(5).entries
        (1, 1, 2, 3, 4)
        """
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        return cls((1,) + tuple(range(1, n)))

    @classmethod
    def br(cls, r: int, n: int) -> "RestrictionVector":
        """The r-subdiagonal staircase: r leading ones, then 2, 3, ..., n-r+1.

        Describes pi(i) >= max(1, i - r + 1).  br(2, n) == b2(n).

        >>> RestrictionVector.br(3, 6).entries
        (1, 1, 1, 2, 3, 4)
        """
        if r < 1:
            raise ValueError(f"r must be >= 1, got {r}")
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        return cls(tuple(max(1, i - r + 1) for i in range(1, n + 1)))


@dataclass(frozen=True)
class RestrictionMatrix:
    """Square 0/1 matrix M; M[i][j] = 1 marks the allowed assignments pi(i) = j.

    Rows with no 1 are legal (the associated permutation set is then empty
    and the permanent is 0).
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = self.rows
        if not isinstance(rows, tuple):
            object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
            rows = self.rows
        n = len(rows)
        if n < 1:
            raise ValueError("matrix must have at least one row")
        for i, row in enumerate(rows, start=1):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for v in row:
                if v not in (0, 1):
                    raise ValueError(f"row {i} contains {v!r}; entries must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """1-based access: entry(i, j) = M_{ij}."""
        return self.rows[i - 1][j - 1]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "RestrictionMatrix":
        return cls(tuple(tuple(r) for r in rows))


def matrix_from_vector(b: RestrictionVector) -> RestrictionMatrix:
    """Row i has ones exactly in columns b_i..n (the staircase of b).

    >>> matrix_from_vector(RestrictionVector((1, 2))).rows
    ((1, 1), (0, 1))
    """
    n = b.n
    if n < 1:
        raise ValueError("cannot build a matrix for the empty vector")
    return RestrictionMatrix(tuple(tuple(1 if j >= bi else 0 for j in range(1, n + 1)) for bi in b))


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1, ..., n} stored as the image tuple (pi(1), ..., pi(n)).

    >>> Permutation((2, 1, 3)).image(1)
    2
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = self.images
        if not isinstance(images, tuple):
            object.__setattr__(self, "images", tuple(images))
            images = self.images
        n = len(images)
        if n < 1:
            raise ValueError("permutation must act on at least one element")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"images are not a rearrangement of 1..{n}: {images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def image(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        return self.images[i - 1]

    def satisfies(self, b: RestrictionVector) -> bool:
        """True when pi(i) >= b_i for every position i."""
        if b.n != self.n:
            raise ValueError(f"vector length {b.n} does not match permutation size {self.n}")
        return all(v >= bi for v, bi in zip(self.images, b))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Orbit decomposition; each cycle starts at its smallest element and
        lists the orbit in application order (a, pi(a), pi(pi(a)), ...).

        >>> Permutation((2, 1, 3)).cycles()
        ((1, 2), (3,))
        """
        seen = [False] * (self.n + 1)
        out: list[tuple[int, ...]] = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            nxt = self.image(start)
            while nxt != start:
                orbit.append(nxt)
                seen[nxt] = True
                nxt = self.image(nxt)
            out.append(tuple(orbit))
        return tuple(out)


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths, stored as sorted (length, multiplicity) pairs."""

    counts: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        counts = self.counts
        if not isinstance(counts, tuple):
            object.__setattr__(self, "counts", tuple(tuple(p) for p in counts))
            counts = self.counts
        if list(counts) != sorted(counts) or len({k for k, _ in counts}) != len(counts):
            raise ValueError(f"counts must be sorted by length with unique lengths: {counts}")
        for k, m in counts:
            if k < 1 or m < 1:
                raise ValueError(f"lengths and multiplicities must be positive: ({k}, {m})")

    def multiplicity(self, k: int) -> int:
        """Number of cycles of length k."""
        for length, m in self.counts:
            if length == k:
                return m
        return 0

    @property
    def total_size(self) -> int:
        return sum(k * m for k, m in self.counts)

    @property
    def cycle_count(self) -> int:
        return sum(m for _, m in self.counts)


def cycle_type(p: Permutation) -> CycleType:
    """Cycle type of p.

    >>> cycle_type(Permutation((2, 1, 3))).counts
    ((1, 1), (2, 1))
    """
    lengths = Counter(len(c) for c in p.cycles())
    return CycleType(tuple(sorted(lengths.items())))


@dataclass(frozen=True)
class Composition:
    """Ordered sequence of positive parts; a composition of n = sum(parts).

    >>> Composition((1, 3, 1, 5)).total
    10
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = self.parts
        if not isinstance(parts, tuple):
            object.__setattr__(self, "parts", tuple(parts))
            parts = self.parts
        if len(parts) < 1:
            raise ValueError("composition must have at least one part")
        for p in parts:
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be positive integers, got {p!r}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def count_parts(self, k: int) -> int:
        """Number of parts equal to k."""
        return self.parts.count(k)

    @classmethod
    def from_text(cls, text: str) -> "Composition":
        """Parse the comma-separated form, e.g. "1,3,1,5"."""
        try:
            parts = tuple(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ValueError(f"malformed composition {text!r}: {exc}") from None
        return cls(parts)

    def to_text(self) -> str:
        return ",".join(str(p) for p in self.parts)
