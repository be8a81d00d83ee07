"""Restrictions of conjugacy classes to umvirates.

A restriction I -> J fixes tau(i) = j pointwise.  It decomposes into chains
a_1 -> ... -> a_{k+1} (distinct points, k constrained pairs) and cycles
a_1 -> ... -> a_k -> a_1.  Densities are computed exactly:

* a prescribed k-cycle is simply deleted from the class and from the points;
* a k-chain is contracted to its last point, which turns the permutations of
  the umvirate bijectively into permutations of n - k points, the contracted
  point's cycle being k shorter than the original one.

What remains is to count permutations of m points with t marked points whose
cycles, after the marked cycles are lengthened again, have a prescribed type.
That count is a sum over the ways the marked points share cycles.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .partitions import (
    CycleType,
    as_cycle_type,
    centralizer_order,
    check_partition,
    class_density,
    class_size,
)
from .perms import class_elements


@dataclass(frozen=True)
class RestrictionSpec:
    """Chains and cycles on the points 1..n, pairwise disjoint."""

    n: int
    chains: tuple[tuple[int, ...], ...] = ()
    cycles: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        chains = tuple(tuple(int(x) for x in c) for c in self.chains)
        cycles = tuple(tuple(int(x) for x in c) for c in self.cycles)
        object.__setattr__(self, "chains", chains)
        object.__setattr__(self, "cycles", cycles)
        points = [x for part in chains + cycles for x in part]
        if any(not 1 <= x <= self.n for x in points):
            raise ValueError(f"restriction uses points outside 1..{self.n}")
        if len(set(points)) != len(points):
            raise ValueError("chains and cycles must be pairwise disjoint with distinct points")
        if any(len(c) < 2 for c in chains):
            raise ValueError("a chain needs at least two points")
        if any(len(c) < 1 for c in cycles):
            raise ValueError("a cycle needs at least one point")

    @property
    def d(self) -> int:
        """Number of constrained pairs i -> j."""
        return sum(len(c) - 1 for c in self.chains) + sum(len(c) for c in self.cycles)

    @property
    def chain_lengths(self) -> tuple[int, ...]:
        return tuple(len(c) - 1 for c in self.chains)

    @property
    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def shape(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (tuple(sorted(self.chain_lengths, reverse=True)),
                tuple(sorted(self.cycle_lengths, reverse=True)))

    def pairs(self) -> list[tuple[int, int]]:
        out = []
        for c in self.chains:
            out += list(zip(c, c[1:]))
        for c in self.cycles:
            out += list(zip(c, c[1:] + c[:1]))
        return out

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "chains": [list(c) for c in self.chains],
                           "cycles": [list(c) for c in self.cycles]})

    @classmethod
    def from_json(cls, text: str) -> RestrictionSpec:
        obj = json.loads(text)
        return cls(int(obj["n"]), tuple(map(tuple, obj.get("chains", ()))),
                   tuple(map(tuple, obj.get("cycles", ()))))


def canonical_spec(n: int, chain_lengths: Sequence[int] = (), cycle_lengths: Sequence[int] = ()) -> RestrictionSpec:
    """The representative of a shape on consecutive points, chains first."""
    nxt = 1
    chains, cycles = [], []
    for k in chain_lengths:
        chains.append(tuple(range(nxt, nxt + k + 1)))
        nxt += k + 1
    for k in cycle_lengths:
        cycles.append(tuple(range(nxt, nxt + k)))
        nxt += k
    if nxt - 1 > n:
        raise ValueError(f"shape needs {nxt - 1} points but n={n}")
    return RestrictionSpec(n, tuple(chains), tuple(cycles))


def umvirate_density(spec: RestrictionSpec) -> Fraction:
    """mu(U_{I->J}) = (n-d)!/n!."""
    return Fraction(factorial(spec.n - spec.d), factorial(spec.n))


# ---------------------------------------------------------------------------
# Counting permutations with marked points
# ---------------------------------------------------------------------------

def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _placements(ct: CycleType, extras: Sequence[int]) -> Iterator[tuple[list[list[int]], list[int], int]]:
    """Configurations of t marked points in permutations of m points.

    Marked point l carries an extra length ``extras[l]``; the cycle type after
    adding those extras must be ``ct``, so m = |ct| - sum(extras).  Yields
    (blocks, base cycle lengths, number of permutations of m points).
    """
    t = len(extras)
    m = sum(ct) - sum(extras)
    if m < t:
        return
    for blocks in _set_partitions(list(range(t))):
        yield from _assign(blocks, 0, Counter(ct), [], m, t, extras)


def _assign(blocks, i, remaining: Counter, lengths: list[int], m: int, t: int, extras):
    if i == len(blocks):
        rest = as_cycle_type(remaining.elements())
        count = factorial(m - t) // centralizer_order(rest)
        for block, length in zip(blocks, lengths):
            count *= factorial(length - 1) // factorial(length - len(block))
        yield blocks, list(lengths), count
        return
    block = blocks[i]
    extra = sum(extras[l] for l in block)
    for value in sorted(remaining):
        if remaining[value] == 0:
            continue
        base = value - extra
        if base < len(block):
            continue
        remaining[value] -= 1
        lengths.append(base)
        yield from _assign(blocks, i + 1, remaining, lengths, m, t, extras)
        lengths.pop()
        remaining[value] += 1


def _remove_cycles(ct: CycleType, cycle_lengths: Sequence[int]) -> CycleType | None:
    remaining = Counter(ct)
    for k in cycle_lengths:
        if remaining[k] == 0:
            return None
        remaining[k] -= 1
    return as_cycle_type(remaining.elements())


def restricted_count(ct: Sequence[int], spec: RestrictionSpec) -> int:
    """|C intersect U_{I->J}| for C the class of ``ct``."""
    ct = check_partition(ct, spec.n)
    reduced = _remove_cycles(ct, spec.cycle_lengths)
    if reduced is None:
        return 0
    return sum(count for _, _, count in _placements(reduced, spec.chain_lengths))


def restriction_density(ct: Sequence[int], spec: RestrictionSpec) -> Fraction:
    """mu_{U_{I->J}}(C): the density of the class inside the umvirate (0 when infeasible)."""
    return Fraction(restricted_count(ct, spec), factorial(spec.n - spec.d))


@lru_cache(maxsize=None)
def _survival(ct: CycleType, required: tuple[int, ...]) -> Fraction:
    good = 0
    for blocks, lengths, count in _placements(ct, [0] * len(required)):
        if all(length >= required[l] for block, length in zip(blocks, lengths) for l in block):
            good += count
    return Fraction(good, class_size(ct))


def chain_survival_probability(ct: Sequence[int], required: Sequence[int]) -> Fraction:
    """Pr over tau in the class that the cycle through point l has length >= required[l], l = 1..t."""
    ct = check_partition(ct)
    required = tuple(int(i) for i in required)
    if len(required) > sum(ct):
        raise ValueError("more distinguished points than points")
    if any(i < 1 for i in required):
        raise ValueError("required lengths must be at least 1")
    return _survival(ct, required)


def chain_formula_density(ct: Sequence[int], spec: RestrictionSpec) -> Fraction:
    """mu(C) * P * [prod_{j<|I|} (1 - t/(n-j))]^-1 with P the chain survival probability.

    Only defined for chain-only restrictions.
    """
    if spec.cycles:
        raise ValueError("the chain formula takes chain-only restrictions")
    ct = check_partition(ct, spec.n)
    n, t, d = spec.n, len(spec.chains), spec.d
    p = chain_survival_probability(ct, [k + 1 for k in spec.chain_lengths])
    factor = prod((1 - Fraction(t, n - j) for j in range(d)), start=Fraction(1))
    if factor == 0:
        raise ZeroDivisionError("the chain formula degenerates for this restriction")
    return class_density(ct) * p / factor


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------

def brute_restricted_count(ct: Sequence[int], spec: RestrictionSpec) -> int:
    pairs = [(i - 1, j - 1) for i, j in spec.pairs()]
    return sum(1 for p in class_elements(check_partition(ct, spec.n))
               if all(p[i] == j for i, j in pairs))


def brute_restriction_density(ct: Sequence[int], spec: RestrictionSpec) -> Fraction:
    return Fraction(brute_restricted_count(ct, spec), factorial(spec.n - spec.d))


# ---------------------------------------------------------------------------
# Globalness
# ---------------------------------------------------------------------------

def _partitions_upto(total: int, largest: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for k in range(min(total, largest), 0, -1):
        for rest in _partitions_upto(total - k, k):
            yield (k,) + rest


def restriction_shapes(n: int, d: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (chain lengths, cycle lengths) with d constrained pairs that fit in n points."""
    out = []
    for chain_total in range(d + 1):
        for chains in _partitions_upto(chain_total, chain_total):
            for cycles in _partitions_upto(d - chain_total, d - chain_total):
                if sum(chains) + len(chains) + sum(cycles) <= n:
                    out.append((chains, cycles))
    return out


@dataclass(frozen=True)
class DepthProfile:
    d: int
    ratio: Fraction
    spec: RestrictionSpec | None


def spreadness_profile(ct: Sequence[int], max_d: int) -> list[DepthProfile]:
    """Per depth d, the largest mu_U(C)/mu(C) over umvirates of depth d."""
    ct = check_partition(ct)
    n = sum(ct)
    if max_d < 0 or max_d > min(n, 8):
        raise ValueError(f"max_d must lie in 0..{min(n, 8)}")
    base = class_density(ct)
    out = [DepthProfile(0, Fraction(1), RestrictionSpec(n))]
    for d in range(1, max_d + 1):
        best, arg = Fraction(-1), None
        for chains, cycles in restriction_shapes(n, d):
            spec = canonical_spec(n, chains, cycles)
            ratio = restriction_density(ct, spec) / base
            if ratio > best:
                best, arg = ratio, spec
        if arg is not None:
            out.append(DepthProfile(d, best, arg))
    return out


@dataclass(frozen=True)
class GlobalnessResult:
    is_global: bool
    counterexample: RestrictionSpec | None
    ratio: Fraction | None


def is_r_global(ct: Sequence[int], r, max_d: int) -> GlobalnessResult:
    """Set form: mu_U(C) <= r^d mu(C) for every restriction of depth d <= max_d."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    for depth in spreadness_profile(ct, max_d):
        if depth.ratio > r**depth.d:
            return GlobalnessResult(False, depth.spec, depth.ratio)
    return GlobalnessResult(True, None, None)
