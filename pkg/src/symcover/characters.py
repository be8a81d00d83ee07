"""Irreducible characters of S_n and A_n, levels, and Witten zeta values.

S_n character values come from the Murnaghan-Nakayama rule on beta-sets
(abacus positions), memoised on (remaining shape, remaining cycle lengths).
The A_n table is derived from the S_n table: for lambda != lambda' the
restriction of chi_lambda is irreducible, and for lambda = lambda' it splits
into lambda+ and lambda-, which differ only on the split class whose cycle
type is the principal hook lengths of lambda.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import NamedTuple, Sequence

from .certified import power_sum
from .partitions import (
    CycleType,
    Partition,
    check_partition,
    class_size,
    conjugate,
    enumerate_partitions,
    parity,
    splits_in_an,
)
from .scalar import AlgebraicScalar

SN_TABLE_MAX_N = 16
AN_TABLE_MAX_N = 12
ZETA_MAX_N = 40


class Label(NamedTuple):
    """A partition plus a branch marker: '' (unsplit), '+' or '-'.

    Used both for A_n class labels (cycle type + branch) and for A_n
    character labels (partition + branch).  S_n labels always have branch ''.
    """

    parts: tuple[int, ...]
    branch: str = ""

    @property
    def cycle_type(self) -> CycleType:
        return self.parts

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) + self.branch


def parse_label(text: str) -> Label:
    """``"5,1+"`` -> Label((5, 1), '+'); ``"3,2"`` -> Label((3, 2), '')."""
    text = text.strip()
    branch = ""
    if text and text[-1] in "+-":
        branch, text = text[-1], text[:-1]
    parts = tuple(sorted((int(t) for t in text.split(",") if t.strip()), reverse=True))
    return Label(check_partition(parts), branch)


def as_label(x) -> Label:
    if isinstance(x, Label):
        return x
    if isinstance(x, str):
        return parse_label(x)
    return Label(check_partition(tuple(x)), "")


def group_order(group: str, n: int) -> int:
    if group == "S":
        return factorial(n)
    if group == "A":
        return factorial(n) // 2 if n >= 2 else 1
    raise ValueError(f"unknown group {group!r}; use 'S' or 'A'")


def class_label_size(label, group: str) -> int:
    label = as_label(label)
    size = class_size(label.parts)
    if group == "A" and label.branch:
        return size // 2
    return size


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama
# ---------------------------------------------------------------------------

def _beta_to_partition(beta: list[int]) -> Partition:
    length = len(beta)
    parts = [b - (length - 1 - i) for i, b in enumerate(beta)]
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: CycleType) -> int:
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    length = len(lam)
    beta = [lam[i] + length - 1 - i for i in range(length)]
    occupied = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in occupied:
            continue
        height = sum(1 for c in beta if t < c < b)
        moved = sorted([c for c in beta if c != b] + [t], reverse=True)
        value = _mn(_beta_to_partition(moved), rest)
        total += -value if height % 2 else value
    return total


def char_value(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi_lambda evaluated on the class of cycle type mu."""
    lam = check_partition(lam)
    mu = check_partition(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: {lam} is a partition of {sum(lam)}, {mu} of {sum(mu)}")
    return _mn(lam, mu)


def hook_lengths(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def hook_product(lam: Partition) -> int:
    return prod(hook_lengths(lam))


def dimension(lam: Sequence[int]) -> int:
    """chi_lambda(1), by the hook length formula."""
    lam = check_partition(lam)
    return factorial(sum(lam)) // hook_product(lam)


def level(lam: Sequence[int]) -> int:
    """min(n - lambda_1, n - lambda'_1)."""
    lam = check_partition(lam)
    if not lam:
        return 0
    n = sum(lam)
    return min(n - lam[0], n - len(lam))


def principal_hooks(lam: Partition) -> CycleType:
    """Diagonal hook lengths of lambda, largest first."""
    conj = conjugate(lam)
    return tuple(lam[i] + conj[i] - 2 * i - 1 for i in range(len(lam)) if lam[i] > i)


def is_self_conjugate(lam: Partition) -> bool:
    return conjugate(lam) == lam


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

@dataclass
class CharacterTable:
    """Exact character table.  ``values[i][j]`` is row i on column class j."""

    group: str
    n: int
    rows: list[Label]
    cols: list[Label]
    values: list[list]
    dims: list[int]
    levels: list[int]
    class_sizes: list[int]
    _row_index: dict = field(default_factory=dict, repr=False)
    _col_index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._row_index = {r: i for i, r in enumerate(self.rows)}
        self._col_index = {c: j for j, c in enumerate(self.cols)}

    @property
    def order(self) -> int:
        return group_order(self.group, self.n)

    def row_index(self, label) -> int:
        label = as_label(label)
        try:
            return self._row_index[label]
        except KeyError:
            raise KeyError(f"{label} is not a character of {self.group}_{self.n}") from None

    def col_index(self, label) -> int:
        label = as_label(label)
        try:
            return self._col_index[label]
        except KeyError:
            raise KeyError(f"{label} is not a class of {self.group}_{self.n}") from None

    def value(self, row, col):
        return self.values[self.row_index(row)][self.col_index(col)]

    def scalar(self, i: int, j: int) -> AlgebraicScalar:
        return AlgebraicScalar.coerce(self.values[i][j])

    def identity_col(self) -> int:
        return self.col_index(Label((1,) * self.n, ""))

    def trivial_row(self) -> int:
        return self.row_index(Label((self.n,), "") if self.n else Label((), ""))

    def inverse_col(self, j: int) -> int:
        """Column of the inverse class."""
        label = self.cols[j]
        if not label.branch:
            return j
        # sigma^-1 stays in its A_n-class iff the class's surd values are real
        eps = (-1) ** ((self.n - len(label.parts)) // 2)
        if eps == 1:
            return j
        flipped = Label(label.parts, "-" if label.branch == "+" else "+")
        return self._col_index[flipped]


def _sn_column(n: int, mu: CycleType, rows: Sequence[Partition]) -> list[int]:
    return [_mn(lam, mu) for lam in rows]


def build_sn_table(n: int, workers: int = 1) -> CharacterTable:
    if not 0 <= n <= SN_TABLE_MAX_N:
        raise ValueError(f"S_n tables are supported for 0 <= n <= {SN_TABLE_MAX_N}, not n={n}")
    parts = list(enumerate_partitions(n))
    # columns are independent; the shared memo is safe under concurrent use
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(lambda mu: _sn_column(n, mu, parts), parts))
    else:
        columns = [_sn_column(n, mu, parts) for mu in parts]
    values = [[columns[j][i] for j in range(len(parts))] for i in range(len(parts))]
    return CharacterTable(
        group="S",
        n=n,
        rows=[Label(p) for p in parts],
        cols=[Label(p) for p in parts],
        values=values,
        dims=[dimension(p) for p in parts],
        levels=[level(p) for p in parts],
        class_sizes=[class_size(p) for p in parts],
    )


def an_classes(n: int) -> list[Label]:
    out = []
    for mu in enumerate_partitions(n):
        if parity(mu) != "even":
            continue
        if splits_in_an(mu):
            out += [Label(mu, "+"), Label(mu, "-")]
        else:
            out.append(Label(mu, ""))
    return out


def an_characters(n: int) -> list[Label]:
    """One label per irreducible character of A_n (n >= 2)."""
    seen: set[Partition] = set()
    out = []
    for lam in enumerate_partitions(n):
        conj = conjugate(lam)
        if lam == conj:
            out += [Label(lam, "+"), Label(lam, "-")]
        elif conj not in seen:
            out.append(Label(lam, ""))
        seen.add(lam)
    return out


def split_character_value(lam: Partition, row_branch: str, col: Label) -> AlgebraicScalar:
    """Value of lambda+/- (lambda self-conjugate) on an A_n class."""
    hooks = principal_hooks(lam)
    if col.branch and col.parts == hooks:
        n = sum(lam)
        eps = (-1) ** ((n - len(hooks)) // 2)
        root = AlgebraicScalar.sqrt(eps * prod(hooks))
        same = row_branch == col.branch
        return (eps + root) / 2 if same else (eps - root) / 2
    return AlgebraicScalar(Fraction(_mn(lam, col.parts), 2))


def build_an_table(n: int, workers: int = 1) -> CharacterTable:
    if not 2 <= n <= AN_TABLE_MAX_N:
        raise ValueError(f"A_n tables are supported for 2 <= n <= {AN_TABLE_MAX_N}, not n={n}")
    cols = an_classes(n)
    rows = an_characters(n)

    def row_values(row: Label) -> list[AlgebraicScalar]:
        if row.branch:
            return [split_character_value(row.parts, row.branch, c) for c in cols]
        return [AlgebraicScalar(Fraction(_mn(row.parts, c.parts))) for c in cols]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(row_values, rows))
    else:
        values = [row_values(r) for r in rows]
    dims = [dimension(r.parts) // (2 if r.branch else 1) for r in rows]
    return CharacterTable(
        group="A",
        n=n,
        rows=rows,
        cols=cols,
        values=values,
        dims=dims,
        levels=[level(r.parts) for r in rows],
        class_sizes=[class_label_size(c, "A") for c in cols],
    )


_TABLES: dict[tuple[str, int], CharacterTable] = {}


_DEFAULTS = {"cache_dir": None, "workers": 1, "rebuild": False}
_REBUILT: set[tuple[str, int]] = set()


def configure_tables(cache_dir=None, workers: int = 1, rebuild: bool = False) -> None:
    """Process-wide defaults for :func:`character_table` (the CLI sets these once).

    With ``rebuild`` every table is rebuilt the first time it is requested.
    """
    if workers < 1:
        raise ValueError("workers must be a positive integer")
    _DEFAULTS.update(cache_dir=cache_dir, workers=workers, rebuild=rebuild)
    _REBUILT.clear()
    if rebuild:
        _TABLES.clear()


def character_table(group: str, n: int, cache_dir=None, rebuild: bool = False,
                    workers: int | None = None) -> CharacterTable:
    """Cached table lookup; a cache directory (argument or configured default)
    enables the on-disk JSON cache."""
    key = (group, n)
    if _DEFAULTS["rebuild"] and key not in _REBUILT:
        rebuild = True
    if not rebuild and key in _TABLES:
        return _TABLES[key]
    if group not in ("S", "A"):
        raise ValueError(f"unknown group {group!r}; use 'S' or 'A'")
    cache_dir = cache_dir if cache_dir is not None else _DEFAULTS["cache_dir"]
    workers = workers or _DEFAULTS["workers"]
    builder = build_sn_table if group == "S" else build_an_table
    if cache_dir is not None:
        from .cache import load_or_build

        table = load_or_build(group, n, cache_dir, lambda: builder(n, workers), rebuild=rebuild)
    else:
        table = builder(n, workers)
    _TABLES[key] = table
    _REBUILT.add(key)
    return table


def sn_character_table(n: int, **kwargs) -> CharacterTable:
    return character_table("S", n, **kwargs)


def an_character_table(n: int, **kwargs) -> CharacterTable:
    return character_table("A", n, **kwargs)


# ---------------------------------------------------------------------------
# Witten zeta
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _hook_products(n: int) -> tuple[tuple[Partition, int], ...]:
    return tuple((lam, hook_product(lam)) for lam in enumerate_partitions(n))


def witten_zeta(group: str, n: int, s, width: Fraction = Fraction(1, 10**13)):
    """zeta_G(s) = sum over irreducible chi of chi(1)^(-s).

    Integer s gives an exact Fraction; other rational s give a certified
    enclosure ``(lower, upper)`` of width at most ``width``.
    """
    s = Fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    if not 0 <= n <= ZETA_MAX_N:
        raise ValueError(f"zeta is supported for n <= {ZETA_MAX_N}, not n={n}")
    if group not in ("S", "A"):
        raise ValueError(f"unknown group {group!r}; use 'S' or 'A'")
    if s.denominator == 1:
        k = s.numerator
        total_order = factorial(n)
        # 1/chi(1) = hook_product / n!, and 1/(chi(1)/2) = 2 * hook_product / n!
        acc = 0
        for lam, hp in _hook_products(n):
            if group == "S" or n < 2:
                acc += hp**k
            elif lam == conjugate(lam):
                acc += 2 * (2 * hp) ** k
            elif lam > conjugate(lam):
                acc += hp**k
        return Fraction(acc, total_order**k)
    dims = dimension_multiset(group, n)
    return power_sum(dims, s, width)


def dimension_multiset(group: str, n: int) -> list[tuple[int, int]]:
    """(dimension, multiplicity) pairs over the irreducible characters."""
    if group not in ("S", "A"):
        raise ValueError(f"unknown group {group!r}")
    counts: dict[int, int] = {}
    for lam, hp in _hook_products(n):
        dim = factorial(n) // hp
        if group == "S" or n < 2:
            counts[dim] = counts.get(dim, 0) + 1
        elif lam == conjugate(lam):
            counts[dim // 2] = counts.get(dim // 2, 0) + 2
        elif lam > conjugate(lam):
            counts[dim] = counts.get(dim, 0) + 1
    return sorted(counts.items())


log = logging.getLogger(__name__)


def dimension_bound_report(n: int) -> list[dict]:
    """chi(1) against (n/(e d))^d for every lambda of level d >= 1.

    The inequality is only claimed for large n, so failures are logged and
    reported rather than raised.  ``margin`` is log chi(1) - d log(n/(e d)).
    """
    if not 2 <= n <= ZETA_MAX_N:
        raise ValueError(f"the dimension report supports 2 <= n <= {ZETA_MAX_N}")
    rows = []
    for lam, hp in _hook_products(n):
        d = level(lam)
        if d == 0:
            continue
        dim = factorial(n) // hp
        margin = math.log(dim) - d * (math.log(n) - 1 - math.log(d))
        holds = margin >= 0
        if not holds:
            log.info("dimension bound fails at n=%d for %s (level %d, margin %.6f)", n, lam, d, margin)
        rows.append({"partition": ",".join(map(str, lam)), "level": d, "dimension": str(dim),
                     "margin": f"{margin:.12f}", "holds": holds})
    return rows
