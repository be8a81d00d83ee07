"""Partitions of n, read either as Young diagrams or as cycle types.

Partitions are plain tuples of positive integers in nonincreasing order.  All
tables in the package index partitions of n in reverse lexicographic order,
which is the order produced by :func:`enumerate_partitions`.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]
CycleType = tuple[int, ...]

MAX_N = 60


def check_partition(parts: Sequence[int], n: int | None = None) -> Partition:
    """Validate ``parts`` and return it as a canonical tuple."""
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"partition {parts} has a nonpositive part")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition {parts} is not in nonincreasing order")
    if n is not None and sum(parts) != n:
        raise ValueError(f"partition {parts} does not sum to {n}")
    return parts


def as_cycle_type(parts: Iterable[int]) -> CycleType:
    """Sort an arbitrary multiset of cycle lengths into canonical form."""
    return check_partition(sorted((int(p) for p in parts), reverse=True))


def parse_cycle_type(text: str) -> CycleType:
    """Parse ``"3,2,1"`` (or a JSON array) into a cycle type."""
    text = text.strip()
    if text.startswith("["):
        return as_cycle_type(json.loads(text))
    return as_cycle_type(int(tok) for tok in text.split(",") if tok.strip())


def _check_n(n: int, cap: int = MAX_N) -> None:
    if not 0 <= n <= cap:
        raise ValueError(f"n={n} is outside the supported range 0..{cap}")


def _partitions(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order.

    >>> enumerate_partitions(4)
    ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    """
    _check_n(n)
    return tuple(_partitions(n, n))


def partition_count(n: int) -> int:
    """p(n), via Euler's pentagonal recurrence rather than enumeration."""
    _check_n(n, cap=10_000)
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def conjugate(parts: Partition) -> Partition:
    """The transposed Young diagram."""
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def multiplicities(ct: CycleType) -> dict[int, int]:
    """f(i): the number of parts equal to i, for each part size present."""
    return dict(Counter(ct))


def centralizer_order(ct: CycleType) -> int:
    """prod_i i^f(i) * f(i)!, the order of the centralizer in S_n."""
    return prod(i**f * factorial(f) for i, f in Counter(ct).items())


def class_size(ct: CycleType) -> int:
    """Number of permutations of cycle type ``ct`` in S_n."""
    return factorial(sum(ct)) // centralizer_order(ct)


def class_density(ct: CycleType) -> Fraction:
    return Fraction(1, centralizer_order(ct))


def parity(ct: CycleType) -> str:
    """``"even"`` or ``"odd"``; the sign is (-1)^(n - number of cycles)."""
    return "even" if (sum(ct) - len(ct)) % 2 == 0 else "odd"


def sign(ct: CycleType) -> int:
    return 1 if parity(ct) == "even" else -1


def splits_in_an(ct: CycleType) -> bool:
    """Whether the S_n-class of an even cycle type splits into two A_n-classes.

    It does exactly when the parts are odd and pairwise distinct (and n > 1).
    """
    if parity(ct) != "even":
        raise ValueError(f"cycle type {ct} is odd, so it is not a class of A_n")
    return sum(ct) > 1 and all(p % 2 == 1 for p in ct) and len(set(ct)) == len(ct)


def oplus(ct1: CycleType, ct2: CycleType) -> CycleType:
    """Cycle type of sigma (+) tau, sigma acting on the first block, tau on the rest."""
    return as_cycle_type(ct1 + ct2)


def fixed_points(ct: CycleType) -> int:
    return sum(1 for p in ct if p == 1)


@lru_cache(maxsize=None)
def stirling_first_row(n: int) -> tuple[int, ...]:
    """Unsigned Stirling numbers c(n, m) for m = 0..n."""
    row = [1]
    for k in range(n):
        nxt = [0] * (len(row) + 1)
        for m, c in enumerate(row):
            nxt[m] += k * c
            nxt[m + 1] += c
        row = nxt
    return tuple(row)


def cycle_count_distribution(n: int) -> dict[int, Fraction]:
    """Pr[C(sigma) = m] for sigma uniform on S_n, for m = 1..n."""
    if not 1 <= n <= 50:
        raise ValueError(f"n={n} is outside the supported range 1..50")
    row = stirling_first_row(n)
    total = factorial(n)
    return {m: Fraction(row[m], total) for m in range(1, n + 1)}


@dataclass(frozen=True)
class NormalSet:
    """A union of conjugacy classes, listed by cycle type.

    With ``ambient="A"`` the members may also be split A_n-class labels; see
    :mod:`symcover.characters` for the label type.
    """

    n: int
    classes: frozenset
    ambient: str = "S"

    def __post_init__(self):
        if self.ambient not in ("S", "A"):
            raise ValueError(f"ambient must be 'S' or 'A', not {self.ambient!r}")
        for c in self.classes:
            ct = getattr(c, "cycle_type", c)
            check_partition(ct, self.n)
            if self.ambient == "A" and parity(ct) != "even":
                raise ValueError(f"class {ct} is odd and cannot lie in A_{self.n}")

    def density(self) -> Fraction:
        from .characters import class_label_size, group_order

        return Fraction(
            sum(class_label_size(c, self.ambient) for c in self.classes),
            group_order(self.ambient, self.n),
        )


def dumps_cycle_type(ct: CycleType) -> str:
    return json.dumps(list(ct))


def fraction_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)
