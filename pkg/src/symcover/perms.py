"""Small-n permutation machinery used by the brute-force oracles.

A permutation of {0, ..., n-1} is a tuple ``p`` with ``p[i]`` the image of i.
Products compose right to left: ``compose(a, b)`` applies ``b`` first.  Cycle
notation on input and output uses the points 1..n.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

from .partitions import CycleType, as_cycle_type, splits_in_an

Perm = tuple[int, ...]

BRUTE_FORCE_MAX_N = 8


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """The product a*b, i.e. x -> a(b(x))."""
    return tuple(a[i] for i in b)


def compose_ltr(a: Perm, b: Perm) -> Perm:
    """The product with left-to-right convention: x -> b(a(x))."""
    return compose(b, a)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Cycles of ``p`` (0-based points), fixed points included, each led by its least point."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> CycleType:
    return as_cycle_type(len(c) for c in cycles(p))


def perm_sign(p: Perm) -> int:
    return -1 if (len(p) - len(cycles(p))) % 2 else 1


def from_cycles(cyc: Iterable[Sequence[int]], n: int) -> Perm:
    """Build a permutation from 1-based disjoint cycles."""
    p = list(range(n))
    used: set[int] = set()
    for c in cyc:
        c = [x - 1 for x in c]
        if any(x < 0 or x >= n for x in c):
            raise ValueError(f"cycle {c} has points outside 1..{n}")
        if used.intersection(c) or len(set(c)) != len(c):
            raise ValueError("cycles are not disjoint")
        used.update(c)
        for i, x in enumerate(c):
            p[x] = c[(i + 1) % len(c)]
    return tuple(p)


def to_cycle_string(p: Perm) -> str:
    parts = [c for c in cycles(p) if len(c) > 1]
    if not parts:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in parts)


def canonical_representative(ct: CycleType) -> Perm:
    """(1..c1)(c1+1..c1+c2)... for cycle lengths c1 >= c2 >= ..."""
    cyc, start = [], 1
    for length in ct:
        cyc.append(range(start, start + length))
        start += length
    return from_cycles(cyc, sum(ct))


def an_branch(p: Perm) -> str:
    """'' for non-split classes, else '+' or '-' for the A_n-class of ``p``.

    The '+' class is the one containing :func:`canonical_representative`; the
    two halves are exchanged by conjugation with any odd permutation.
    """
    ct = cycle_type(p)
    if not splits_in_an(ct):
        return ""
    rep = canonical_representative(ct)
    # cycle lengths are distinct, so matching cycles by length fixes pi up to
    # even rotations
    target = {len(c): c for c in cycles(p)}
    pi = [0] * len(p)
    for c in cycles(rep):
        for a, b in zip(c, target[len(c)]):
            pi[a] = b
    return "+" if perm_sign(tuple(pi)) == 1 else "-"


@lru_cache(maxsize=None)
def group_elements(ambient: str, n: int) -> tuple[Perm, ...]:
    """Elements of S_n or A_n in lexicographic one-line order."""
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute-force enumeration is capped at n={BRUTE_FORCE_MAX_N}")
    elems = permutations(range(n))
    if ambient == "S":
        return tuple(elems)
    if ambient == "A":
        return tuple(p for p in elems if perm_sign(p) == 1)
    raise ValueError(f"unknown ambient group {ambient!r}")


@lru_cache(maxsize=None)
def element_index(ambient: str, n: int) -> dict[Perm, int]:
    return {p: i for i, p in enumerate(group_elements(ambient, n))}


def conjugacy_orbit(p: Perm, ambient: str) -> frozenset[Perm]:
    """The conjugacy class of ``p`` in S_n or A_n, by direct conjugation."""
    return frozenset(
        compose(compose(g, p), inverse(g)) for g in group_elements(ambient, len(p))
    )


def class_elements(ct: CycleType) -> frozenset[Perm]:
    """Every permutation of cycle type ``ct``, by closing the canonical
    representative under conjugation by the generators (1,2) and (1,...,n)."""
    rep = canonical_representative(ct)
    n = len(rep)
    if n < 2:
        return frozenset([rep])
    gens = [from_cycles([(1, 2)], n), from_cycles([range(1, n + 1)], n)]
    gens_inv = [inverse(g) for g in gens]
    seen = {rep}
    frontier = [rep]
    while frontier:
        nxt = []
        for p in frontier:
            for g, gi in zip(gens, gens_inv):
                q = compose(compose(g, p), gi)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(seen)


def label_elements(parts: CycleType, branch: str = "") -> frozenset[Perm]:
    """Elements of an S_n-class, or of one half of a split A_n-class."""
    elems = class_elements(parts)
    if not branch:
        return elems
    return frozenset(p for p in elems if an_branch(p) == branch)
