"""Class-algebra structure constants and the covering questions built on them.

For classes C1, C2, C3 of G and a fixed tau in C3, the number of pairs
(alpha, beta) in C1 x C2 with alpha*beta = tau is

    |C1| |C2| / |G| * sum_chi chi(C1) chi(C2) conj(chi(C3)) / chi(1).

For A_n the split characters take values in quadratic fields, so the sum is
carried out exactly in :class:`AlgebraicScalar`; anything other than a
nonnegative rational integer at the end is treated as an internal error.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .characters import CharacterTable, Label, as_label, character_table
from .orbit_growth import E
from .partitions import (
    NormalSet,
    enumerate_partitions,
    fixed_points,
    multiplicities,
    parity,
    splits_in_an,
)
from .perms import (
    an_branch,
    compose,
    compose_ltr,
    cycle_type,
    from_cycles,
    inverse,
    label_elements,
)
from .scalar import exact_sum

TARGETS = ("An", "An_minus_identity", "Sn")


class StructureConstantError(ArithmeticError):
    """The character sum did not reduce to a nonnegative integer."""


@dataclass(frozen=True)
class StructureQuery:
    n: int
    group: str
    c1: Label
    c2: Label
    c3: Label

    def __post_init__(self):
        if self.group not in ("S", "A"):
            raise ValueError(f"unknown group {self.group!r}")
        for name in ("c1", "c2", "c3"):
            label = as_label(getattr(self, name))
            if sum(label.parts) != self.n:
                raise ValueError(f"class {label} is not a class of {self.group}_{self.n}")
            if self.group == "A" and parity(label.parts) != "even":
                raise ValueError(f"class {label} is odd and cannot lie in A_{self.n}")
            if self.group == "S" and label.branch:
                raise ValueError(f"split label {label} only makes sense in A_{self.n}")
            object.__setattr__(self, name, label)


def _labels_for(group: str, label) -> list[Label]:
    """A_n labels named by ``label``: an unsplit cycle type of a split class means both halves."""
    label = as_label(label)
    if group == "A" and not label.branch and parity(label.parts) == "even" and splits_in_an(label.parts):
        return [Label(label.parts, "+"), Label(label.parts, "-")]
    return [label]


def _single_label(group: str, label) -> Label:
    labels = _labels_for(group, label)
    if len(labels) > 1:
        raise ValueError(f"class {labels[0].cycle_type} splits in A_n; name a half, e.g. {labels[0]}")
    return labels[0]


def constant_from_table(table: CharacterTable, j1: int, j2: int, j3: int) -> int:
    if table.group == "S":
        total = Fraction(0)
        for row, dim in zip(table.values, table.dims):
            total += Fraction(row[j1] * row[j2] * row[j3], dim)
    else:
        terms = []
        for i, dim in enumerate(table.dims):
            a, b, c = table.scalar(i, j1), table.scalar(i, j2), table.scalar(i, j3)
            terms.append(a * b * c.complex_conjugate() / dim)
        total = exact_sum(terms)
        if not total.is_rational:
            raise StructureConstantError(f"irrational character sum {total}")
        total = total.a
    value = total * table.class_sizes[j1] * table.class_sizes[j2] / table.order
    if value.denominator != 1 or value < 0:
        raise StructureConstantError(f"structure constant {value} is not a nonnegative integer")
    return int(value)


def structure_constant(q: StructureQuery, table: CharacterTable | None = None) -> int:
    """Number of (alpha, beta) in C1 x C2 with alpha*beta equal to a fixed tau in C3."""
    table = table or character_table(q.group, q.n)
    return constant_from_table(table, table.col_index(q.c1), table.col_index(q.c2), table.col_index(q.c3))


def structure_constant_of(group: str, n: int, c1, c2, c3) -> int:
    """Structure constant from labels; C1 and C2 may be unions of two A_n halves, C3 may not."""
    target = _single_label(group, c3)
    return sum(structure_constant(StructureQuery(n, group, a, b, target))
               for a in _labels_for(group, c1) for b in _labels_for(group, c2))


def _columns(table: CharacterTable, label) -> list[int]:
    return [table.col_index(x) for x in _labels_for(table.group, label)]


def product_support(group: str, n: int, c1, c2) -> list[Label]:
    """Classes C3 (in table order) with a positive structure constant."""
    table = character_table(group, n)
    firsts, seconds = _columns(table, c1), _columns(table, c2)
    return [table.cols[j] for j in range(len(table.cols))
            if any(constant_from_table(table, j1, j2, j) > 0 for j1 in firsts for j2 in seconds)]


def square_support(c, group: str, n: int | None = None) -> list[Label]:
    label = as_label(c)
    n = sum(label.parts) if n is None else n
    return product_support(group, n, label, label)


def target_classes(group: str, n: int, target: str) -> list[Label]:
    table = character_table(group, n)
    identity = Label((1,) * n)
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    if target == "Sn":
        if group != "S":
            raise ValueError("target Sn needs the ambient group S_n")
        return list(table.cols)
    even = [c for c in table.cols if parity(c.parts) == "even"]
    if target == "An_minus_identity":
        even = [c for c in even if c != identity]
    return even


@dataclass
class CoverResult:
    covered: bool
    certificate: dict[Label, tuple[Label, Label]]
    uncovered: list[Label]


def covers(A: NormalSet, target: str = "An") -> CoverResult:
    """Whether A*A contains every class of the target.

    The certificate maps each covered target class to the lexicographically
    least pair (C1, C2) of members of A, in table column order, whose product
    meets it.
    """
    group, n = A.ambient, A.n
    table = character_table(group, n)
    members = sorted({j for c in A.classes for j in _columns(table, c)})
    if not members:
        raise ValueError("the normal set is empty")
    wanted = [table.col_index(c) for c in target_classes(group, n, target)]
    certificate: dict[Label, tuple[Label, Label]] = {}
    uncovered = []
    for j3 in wanted:
        witness = None
        for j1 in members:
            for j2 in members:
                if constant_from_table(table, j1, j2, j3) > 0:
                    witness = (table.cols[j1], table.cols[j2])
                    break
            if witness:
                break
        if witness:
            certificate[table.cols[j3]] = witness
        else:
            uncovered.append(table.cols[j3])
    return CoverResult(not uncovered, certificate, uncovered)


# ---------------------------------------------------------------------------
# Brute-force oracles
# ---------------------------------------------------------------------------

def _label_of(group: str, p) -> Label:
    ct = cycle_type(p)
    if group == "A" and splits_in_an(ct):
        return Label(ct, an_branch(p))
    return Label(ct)


def brute_structure_constant(group: str, n: int, c1, c2, c3) -> int:
    """Count alpha in C1 with alpha^-1 * tau in C2, for tau a fixed element of C3."""
    c3 = _single_label(group, c3)
    tau = min(label_elements(c3.parts, c3.branch))
    firsts = [a for x in _labels_for(group, c1) for a in label_elements(x.parts, x.branch)]
    targets = set(_labels_for(group, c2))
    return sum(1 for a in firsts if _label_of(group, compose(inverse(a), tau)) in targets)


def brute_square_support(group: str, n: int, c) -> set[Label]:
    """Classes met by rep * beta, beta ranging over the class (C*C is normal)."""
    labels = _labels_for(group, c)
    members = [b for x in labels for b in label_elements(x.parts, x.branch)]
    out = set()
    for x in labels:
        rep = min(label_elements(x.parts, x.branch))
        out |= {_label_of(group, compose(rep, b)) for b in members}
    return out


# ---------------------------------------------------------------------------
# Concrete statements
# ---------------------------------------------------------------------------

def vishne_prediction(n: int) -> list[Label]:
    """Cycle types with an even number of i-cycles for every i."""
    return [Label(ct) for ct in enumerate_partitions(n)
            if all(f % 2 == 0 for f in multiplicities(ct).values())]


def verify_vishne(n: int, method: str = "characters") -> bool:
    if n % 2:
        raise ValueError("the involution class (2^(n/2)) needs n even")
    ct = (2,) * (n // 2)
    predicted = set(vishne_prediction(n))
    if method == "characters":
        return set(square_support(ct, "S", n)) == predicted
    if method == "brute":
        return brute_square_support("S", n, ct) == predicted
    raise ValueError(f"unknown method {method!r}")


S12_LEFT = [(2, 7, 5), (3, 8, 6), (1, 9, 4), (12, 11, 10)]
S12_RIGHT = [(1, 2, 3), (7, 4, 11), (8, 5, 12), (9, 6, 10)]
S12_PRODUCT = [(1, 7), (2, 8), (3, 9), (4, 10), (5, 11), (6, 12)]


@dataclass(frozen=True)
class S12Check:
    right_to_left: bool
    left_to_right: bool
    left_type: tuple
    right_type: tuple
    product_type: tuple

    @property
    def holds(self) -> bool:
        """Verdict under the package convention (right factor applied first)."""
        return self.right_to_left


def verify_s12_identity() -> S12Check:
    a = from_cycles(S12_LEFT, 12)
    b = from_cycles(S12_RIGHT, 12)
    c = from_cycles(S12_PRODUCT, 12)
    return S12Check(
        right_to_left=compose(a, b) == c,
        left_to_right=compose_ltr(a, b) == c,
        left_type=cycle_type(a),
        right_type=cycle_type(b),
        product_type=cycle_type(c),
    )


def gleason_instance(n: int) -> CoverResult:
    return covers(NormalSet(n, frozenset([(n,)]), "S"), "An")


# ---------------------------------------------------------------------------
# Exploratory scan
# ---------------------------------------------------------------------------

SCAN_MAX_N_S = 12
SCAN_MAX_N_A = 9


def exploratory_theorem_scan(n: int) -> list[dict]:
    """Verdicts of the asymptotic square theorems at one finite n.  Report only."""
    if not 2 <= n <= SCAN_MAX_N_S:
        raise ValueError(f"the scan supports 2 <= n <= {SCAN_MAX_N_S}")
    rows: list[dict] = []
    table = character_table("S", n)
    even = [j for j, c in enumerate(table.cols) if parity(c.parts) == "even"]
    supports = {}
    for j, col in enumerate(table.cols):
        supports[col] = {table.cols[k] for k in even if constant_from_table(table, j, j, k) > 0}
    all_even = {table.cols[k] for k in even}

    rows.append(_row("gleason", n, (n,), "(n)^2 = A_n", supports[Label((n,))] == all_even))

    for m in range(4, n + 1):
        if n % m == 0:
            ct = Label((m,) * (n // m))
            rows.append(_row("lulov-pak", n, ct.parts, f"m={m}: (m^(n/m))^2 = A_n", supports[ct] == all_even))

    e_vals = {c: E(c.parts) for c in table.cols}
    for sigma in table.cols:
        for k in even:
            tau = table.cols[k]
            slack = 1 - 2 * e_vals[sigma] - e_vals[tau]
            if slack.sign() > 0:
                margin = float(slack)
                rows.append(_row("frobenius-E", n, sigma.parts,
                                 f"tau={tau}: 1-2E(s)-E(t)={margin:.6f}", tau in supports[sigma]))

    for sigma in table.cols:
        ct = sigma.parts
        f2 = multiplicities(ct).get(2, 0)
        if fixed_points(ct) == 0 and 4 * len(ct) < n and f2 < n:
            rows.append(_row("few-cycles", n, ct, "no fixed points, < n/4 cycles: square = A_n",
                             supports[sigma] == all_even))

    if n <= SCAN_MAX_N_A and n >= 3:
        atable = character_table("A", n)
        ident = atable.identity_col()
        rest = [k for k in range(len(atable.cols)) if k != ident]
        # the whole S_n-class first, then each A_n-half of a split class
        for ct in dict.fromkeys(c.parts for c in atable.cols):
            if ct == (1,) * n:
                continue
            names = [Label(ct)] + ([Label(ct, "+"), Label(ct, "-")] if splits_in_an(ct) else [])
            for name in names:
                cols = _columns(atable, name)
                ok = all(any(constant_from_table(atable, j1, j2, k) > 0 for j1 in cols for j2 in cols)
                         for k in rest)
                rows.append(_row("larsen-tiep", n, ct, f"({name})^2 in A_n covers A_n minus 1", ok,
                                 label=str(name)))
    return rows


def _row(theorem: str, n: int, ct: Iterable[int], statement: str, holds: bool, label: str | None = None) -> dict:
    return {
        "theorem": theorem,
        "n": n,
        "class": label or ",".join(map(str, ct)),
        "statement": statement,
        "verdict": "holds" if holds else "fails",
    }
