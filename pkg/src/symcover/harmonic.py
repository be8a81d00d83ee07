"""Exact harmonic analysis on S_n and A_n for small n.

Functions on G are value tuples indexed by the lexicographic enumeration of
G.  The inner product and convolution use the uniform probability measure:

    <f, g> = E_x f(x) conj(g(x)),      f*g(y) = E_x f(x) g(x^-1 y).

With these conventions f^{=chi} = chi(1) f*chi is the orthogonal projection
onto the matrix coefficients of chi, and left convolution by the normalised
indicator of a class C acts on that space as the scalar chi(C^-1)/chi(1).
The Cayley operator M f(y) = E_{s in C} f(s y) has eigenvalue chi(C)/chi(1).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .characters import CharacterTable, Label, as_label, character_table
from .partitions import splits_in_an, parity
from .perms import Perm, an_branch, compose, cycle_type, group_elements, inverse
from .scalar import AlgebraicScalar, exact_sum

S_MAX_N = 7
A_MAX_N = 8


def _check_group(group: str, n: int) -> None:
    cap = S_MAX_N if group == "S" else A_MAX_N
    if group not in ("S", "A"):
        raise ValueError(f"unknown group {group!r}")
    if not (1 if group == "S" else 2) <= n <= cap:
        raise ValueError(f"group functions on {group}_{n} are not supported (cap n <= {cap})")


@lru_cache(maxsize=None)
def _index(group: str, n: int) -> dict[Perm, int]:
    return {p: i for i, p in enumerate(group_elements(group, n))}


@lru_cache(maxsize=None)
def element_classes(group: str, n: int) -> tuple[int, ...]:
    """Column index (in the character table) of each group element."""
    table = character_table(group, n)
    out = []
    for p in group_elements(group, n):
        ct = cycle_type(p)
        branch = an_branch(p) if group == "A" and splits_in_an(ct) else ""
        out.append(table.col_index(Label(ct, branch)))
    return tuple(out)


@lru_cache(maxsize=None)
def _inverse_index(group: str, n: int) -> tuple[int, ...]:
    idx = _index(group, n)
    return tuple(idx[inverse(p)] for p in group_elements(group, n))


@lru_cache(maxsize=4)
def _mul_table(group: str, n: int) -> tuple[tuple[int, ...], ...]:
    """mul[i][j] = index of g_i * g_j."""
    elems = group_elements(group, n)
    idx = _index(group, n)
    return tuple(tuple(idx[compose(a, b)] for b in elems) for a in elems)


@dataclass(frozen=True)
class GroupFunction:
    group: str
    n: int
    values: tuple

    def __post_init__(self):
        _check_group(self.group, self.n)
        if len(self.values) != len(group_elements(self.group, self.n)):
            raise ValueError("value vector length does not match the group order")

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_callable(cls, group: str, n: int, fn: Callable[[Perm], object]) -> GroupFunction:
        _check_group(group, n)
        return cls(group, n, tuple(_exact(fn(p)) for p in group_elements(group, n)))

    @classmethod
    def constant(cls, group: str, n: int, c=1) -> GroupFunction:
        _check_group(group, n)
        return cls(group, n, (Fraction(c),) * len(group_elements(group, n)))

    @classmethod
    def indicator(cls, group: str, n: int, members: Iterable[Perm]) -> GroupFunction:
        members = set(members)
        return cls.from_callable(group, n, lambda p: 1 if p in members else 0)

    @classmethod
    def normalized_indicator(cls, group: str, n: int, members: Iterable[Perm]) -> GroupFunction:
        """1_S / mu(S)."""
        members = set(members)
        if not members:
            raise ValueError("empty set")
        scale = Fraction(len(group_elements(group, n)), len(members))
        return cls.from_callable(group, n, lambda p: scale if p in members else 0)

    @classmethod
    def class_function(cls, group: str, n: int, per_class: Sequence) -> GroupFunction:
        _check_group(group, n)
        return cls(group, n, tuple(_exact(per_class[c]) for c in element_classes(group, n)))

    @classmethod
    def character(cls, group: str, n: int, row) -> GroupFunction:
        table = character_table(group, n)
        i = table.row_index(row)
        return cls.class_function(group, n, [table.values[i][j] for j in range(len(table.cols))])

    # -- algebra ----------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.values)

    def _same(self, other: GroupFunction) -> None:
        if (self.group, self.n) != (other.group, other.n):
            raise ValueError("functions live on different groups")

    def __add__(self, other: GroupFunction) -> GroupFunction:
        self._same(other)
        return GroupFunction(self.group, self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: GroupFunction) -> GroupFunction:
        self._same(other)
        return GroupFunction(self.group, self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> GroupFunction:
        return GroupFunction(self.group, self.n, tuple(_exact(c * v) for v in self.values))

    def expectation(self):
        return _reduce(exact_sum(self.values) / self.order)

    def inner(self, other: GroupFunction):
        self._same(other)
        terms = (a * _conj(b) for a, b in zip(self.values, other.values))
        return _reduce(exact_sum(terms) / self.order)

    def norm_sq(self):
        return self.inner(self)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


def _exact(v):
    if isinstance(v, AlgebraicScalar):
        return v.a if v.is_rational else v
    return Fraction(v)


def _reduce(v: AlgebraicScalar):
    return v.a if v.is_rational else v


def _conj(v):
    return v.complex_conjugate() if isinstance(v, AlgebraicScalar) else v


def convolve(f: GroupFunction, g: GroupFunction) -> GroupFunction:
    """f*g(y) = E_x f(x) g(x^-1 y)."""
    f._same(g)
    mul = _mul_table(f.group, f.n)
    inv = _inverse_index(f.group, f.n)
    size = f.order
    acc: list = [Fraction(0)] * size
    for x, fx in enumerate(f.values):
        if fx == 0:
            continue
        row = mul[inv[x]]
        gv = g.values
        for y in range(size):
            gval = gv[row[y]]
            if gval != 0:
                acc[y] = acc[y] + fx * gval
    return GroupFunction(f.group, f.n, tuple(_exact(a / size) for a in acc))


@lru_cache(maxsize=64)
def _class_profile(f: GroupFunction) -> tuple[tuple, ...]:
    """prof[y][c] = sum of f(x) over x with x^-1 y in class c."""
    mul = _mul_table(f.group, f.n)
    inv = _inverse_index(f.group, f.n)
    cls = element_classes(f.group, f.n)
    ncls = len(character_table(f.group, f.n).cols)
    prof = [[Fraction(0)] * ncls for _ in range(f.order)]
    for x, fx in enumerate(f.values):
        if fx == 0:
            continue
        row = mul[inv[x]]
        for y in range(f.order):
            prof[y][cls[row[y]]] += fx
    return tuple(tuple(p) for p in prof)


@dataclass(frozen=True)
class IsotypicComponent:
    label: Label
    projection: GroupFunction
    norm_sq: object


def isotypic_project(f: GroupFunction, chi) -> IsotypicComponent:
    """f^{=chi} = chi(1) f*chi."""
    table = character_table(f.group, f.n)
    i = table.row_index(chi)
    dim = table.dims[i]
    prof = _class_profile(f)
    row = [table.values[i][j] for j in range(len(table.cols))]
    values = []
    for y in range(f.order):
        total = exact_sum(p * v for p, v in zip(prof[y], row) if p and v)
        values.append(_exact(total * dim / f.order))
    proj = GroupFunction(f.group, f.n, tuple(values))
    return IsotypicComponent(table.rows[i], proj, proj.inner(f))


def isotypic_decomposition(f: GroupFunction) -> list[IsotypicComponent]:
    table = character_table(f.group, f.n)
    return [isotypic_project(f, r) for r in table.rows]


def level_projection_norm(f: GroupFunction, d: int):
    """||f^{~d}||^2: the squared norms of f^{=chi} summed over characters of level d."""
    if d < 0:
        raise ValueError("level must be nonnegative")
    table = character_table(f.group, f.n)
    parts = [isotypic_project(f, r).norm_sq for r, lv in zip(table.rows, table.levels) if lv == d]
    return _reduce(exact_sum(parts))


# ---------------------------------------------------------------------------
# Connection sets and spectra
# ---------------------------------------------------------------------------

def connection_columns(table: CharacterTable, c) -> list[int]:
    """Table columns of a class label.  In A_n an unsplit label of a split
    S_n-class names the whole S_n-class, i.e. both halves."""
    label = as_label(c)
    if sum(label.parts) != table.n:
        raise ValueError(f"class {label} is not a class of {table.group}_{table.n}")
    if table.group == "A":
        if parity(label.parts) != "even":
            raise ValueError(f"class {label} is odd and not contained in A_{table.n}")
        if not label.branch and splits_in_an(label.parts):
            return [table.col_index(Label(label.parts, "+")), table.col_index(Label(label.parts, "-"))]
    return [table.col_index(label)]


def _eigenvalue(table: CharacterTable, i: int, cols: Sequence[int], invert: bool = False):
    weight = sum(table.class_sizes[j] for j in cols)
    terms = []
    for j in cols:
        v = table.scalar(i, table.inverse_col(j) if invert else j)
        terms.append(v * table.class_sizes[j])
    return _reduce(exact_sum(terms) / (weight * table.dims[i]))


def cayley_eigenvalues(c, group: str, n: int) -> dict[Label, object]:
    """Eigenvalue of M f(y) = E_{s in C} f(s y) on W_chi, namely chi(C)/chi(1)."""
    table = character_table(group, n)
    cols = connection_columns(table, c)
    return {r: _eigenvalue(table, i, cols) for i, r in enumerate(table.rows)}


def convolution_eigenvalues(c, group: str, n: int) -> dict[Label, object]:
    """Scalar by which g -> (1_C/mu(C)) * g acts on W_chi: chi(C^-1)/chi(1)."""
    table = character_table(group, n)
    cols = connection_columns(table, c)
    return {r: _eigenvalue(table, i, cols, invert=True) for i, r in enumerate(table.rows)}


def class_members(c, group: str, n: int) -> list[Perm]:
    table = character_table(group, n)
    cols = set(connection_columns(table, c))
    cls = element_classes(group, n)
    return [p for p, k in zip(group_elements(group, n), cls) if k in cols]


def symmetric_connection(c, group: str, n: int) -> list[int]:
    """Columns of C union C^-1, the connection set of the undirected Cayley graph."""
    table = character_table(group, n)
    cols = connection_columns(table, c)
    return sorted(set(cols) | {table.inverse_col(j) for j in cols})


def _is_identity(table: CharacterTable, cols: Iterable[int]) -> bool:
    return any(table.cols[j].parts == (1,) * table.n for j in cols)


def hoffman_bound(c, group: str, n: int):
    """-lmin/(1-lmin) for the least normalised eigenvalue of Cay(G, C u C^-1).

    Exact; the value is an AlgebraicScalar when the spectrum is irrational.
    """
    table = character_table(group, n)
    cols = symmetric_connection(c, group, n)
    if _is_identity(table, cols):
        raise ValueError("the identity class gives a graph with loops")
    eigen = [AlgebraicScalar.coerce(_eigenvalue(table, i, cols)) for i in range(len(table.rows))]
    lmin = min(eigen)
    return _reduce(-lmin / (1 - lmin))


# ---------------------------------------------------------------------------
# Independence pairing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Pairing:
    direct: object
    spectral: object

    @property
    def agree(self) -> bool:
        return self.direct == self.spectral


def independence_pairing(I: Iterable[Perm], I2: Iterable[Perm], c, group: str, n: int) -> Pairing:
    """<h * g_I, g_I'> for h = 1_C/mu(C), by direct counting and by characters.

    Zero exactly when no product s*a (s in C, a in I) lands in I'.
    """
    I, I2 = set(I), set(I2)
    if not I or not I2:
        raise ValueError("both sets must be nonempty")
    _check_group(group, n)
    members = class_members(c, group, n)
    order = len(group_elements(group, n))
    hits = sum(1 for s in members for a in I if compose(s, a) in I2)
    direct = Fraction(order * hits, len(members) * len(I) * len(I2))

    g1 = GroupFunction.normalized_indicator(group, n, I)
    g2 = GroupFunction.normalized_indicator(group, n, I2)
    lam = convolution_eigenvalues(c, group, n)
    terms = []
    for row, value in lam.items():
        if value == 0:
            continue
        p1 = isotypic_project(g1, row).projection
        p2 = p1 if I2 == I else isotypic_project(g2, row).projection
        terms.append(AlgebraicScalar.coerce(value) * AlgebraicScalar.coerce(p1.inner(p2)))
    return Pairing(direct, _reduce(exact_sum(terms)))


# ---------------------------------------------------------------------------
# Spread report
# ---------------------------------------------------------------------------

def _umvirate_ratios(members: set, n: int, group: str, max_d: int) -> float:
    """Brute-force globalness constant: max over restrictions of (mu_U(A)/mu(A))^(1/d)."""
    from itertools import permutations

    elems = group_elements(group, n)
    mu = len(members) / len(elems)
    best = 1.0
    for d in range(1, max_d + 1):
        for I in permutations(range(n), d):
            for J in permutations(range(n), d):
                inside = [p for p in elems if all(p[i] == j for i, j in zip(I, J))]
                if not inside:
                    continue
                mu_u = sum(1 for p in inside if p in members) / len(inside)
                best = max(best, (mu_u / mu) ** (1 / d))
    return best


def spread_projection_report(A: Iterable[Perm], group: str, n: int, eps, max_d: int = 2) -> list[dict]:
    """Per-character margins for ||g^{=chi}||^2 <= chi(1)^(alpha+eps), g = 1_A/mu(A),
    and per-level implied constants in ||1_A^{~d}||^2 <= mu^2 (C r^4 log(1/mu)/d)^d.

    Report only; both statements are asymptotic.
    """
    members = set(A)
    if not members:
        raise ValueError("A must be nonempty")
    eps = float(Fraction(eps))
    table = character_table(group, n)
    order = len(group_elements(group, n))
    mu = len(members) / order
    log_inv = math.log(1 / mu) if mu < 1 else 0.0
    alpha = math.log(log_inv) / math.log(n) if log_inv > 1 else 0.0
    r = _umvirate_ratios(members, n, group, max_d)
    g = GroupFunction.normalized_indicator(group, n, members)
    ind = GroupFunction.indicator(group, n, members)
    rows = []
    for comp, dim, level in zip(isotypic_decomposition(g), table.dims, table.levels):
        mass = float(AlgebraicScalar.coerce(comp.norm_sq).real_part())
        bound = dim ** (alpha + eps)
        rows.append({
            "kind": "character",
            "label": str(comp.label),
            "level": level,
            "value": f"{mass:.12g}",
            "bound": f"{bound:.12g}",
            # a vanishing projection satisfies the bound for every alpha
            "margin": "inf" if comp.norm_sq == 0 else f"{bound - mass:.12g}",
            "alpha": f"{alpha:.6f}",
            "r": f"{r:.6f}",
        })
    for d in sorted(set(table.levels)):
        if d == 0:
            continue
        mass = float(AlgebraicScalar.coerce(level_projection_norm(ind, d)).real_part())
        if mass == 0 or log_inv == 0:
            implied = 0.0
        else:
            implied = (mass / mu**2) ** (1 / d) * d / (r**4 * log_inv)
        rows.append({
            "kind": "level",
            "label": f"d={d}",
            "level": d,
            "value": f"{mass:.12g}",
            "bound": "",
            "margin": f"implied C >= {implied:.6g}",
            "alpha": f"{alpha:.6f}",
            "r": f"{r:.6f}",
        })
    return rows


def random_subset(group: str, n: int, rng: random.Random, p: float = 0.5) -> list[Perm]:
    elems = group_elements(group, n)
    out = [x for x in elems if rng.random() < p]
    return out or [elems[rng.randrange(len(elems))]]


# ---------------------------------------------------------------------------
# Independence number
# ---------------------------------------------------------------------------

MIS_MAX_N = 6


def exact_max_independent_set(c, group: str, n: int, node_limit: int | None = None):
    """Largest independent set of Cay(G, C u C^-1) for n <= 6; see :mod:`symcover.independence`.

    Check ``result.optimal``: a search that runs out of nodes returns its best
    set together with the ratio bound instead of guessing.
    """
    from .independence import DEFAULT_NODE_LIMIT, max_independent_set

    if n > MIS_MAX_N:
        raise ValueError(f"exact independent sets are capped at n <= {MIS_MAX_N}")
    return max_independent_set(c, group, n, node_limit=node_limit or DEFAULT_NODE_LIMIT)
