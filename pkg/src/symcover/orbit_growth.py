"""The orbit growth sequence e_1..e_n of a cycle type and the parameter E.

Every cumulative sum e_1 + ... + e_k is max(log_n S_k, 0) with S_k the number
of points on cycles of length at most k, so E is a rational combination of
logarithms of integers.  It is kept in that exact form (:class:`LogLinear`)
and only turned into intervals when a sign or a printed value is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Iterable, Sequence

from .certified import LogLinear, factorize
from .partitions import CycleType, check_partition, enumerate_partitions, fixed_points, multiplicities

DEFAULT_EPSILONS = (Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(1, 10))
REPORT_MAX_N = 30


@dataclass(frozen=True)
class OrbitGrowth:
    n: int
    cycle_type: CycleType
    e: tuple[LogLinear, ...]
    E: LogLinear

    def cumulative(self, k: int) -> LogLinear:
        total = LogLinear.const(self.n, 0)
        for x in self.e[:k]:
            total = total + x
        return total


def _points_by_length(ct: CycleType) -> list[int]:
    """S_k for k = 1..n: the number of points on cycles of length at most k."""
    n = sum(ct)
    f = multiplicities(ct)
    out, points = [], 0
    for k in range(1, n + 1):
        points += k * f.get(k, 0)
        out.append(points)
    return out


def _log_combination(n: int, weighted: Iterable[tuple[Fraction, int]]) -> LogLinear:
    """sum of w * max(log_n x, 0), accumulated directly on prime exponents."""
    rational = Fraction(0)
    coeffs: dict[int, Fraction] = {}
    for w, x in weighted:
        if x <= 1 or not w:
            continue
        if x == n:
            rational += w
            continue
        for p, e in _factor(x).items():
            coeffs[p] = coeffs.get(p, Fraction(0)) + w * e
    return LogLinear(n, rational, coeffs)


@lru_cache(maxsize=4096)
def _factor(x: int) -> dict[int, int]:
    return factorize(x)


def orbit_growth_sequence(ct: Sequence[int]) -> OrbitGrowth:
    ct = check_partition(ct)
    n = sum(ct)
    if n < 2:
        raise ValueError("the orbit growth sequence needs n >= 2")
    points = _points_by_length(ct)
    one = Fraction(1)
    e = tuple(
        _log_combination(n, [(one, points[k]), (-one, points[k - 1] if k else 0)])
        for k in range(n)
    )
    # summation by parts: sum (c_k - c_{k-1})/k = c_n/n + sum_{k<n} c_k/(k(k+1))
    terms = [(Fraction(1, k * (k + 1)), points[k - 1]) for k in range(1, n)]
    terms.append((Fraction(1, n), points[-1]))
    return OrbitGrowth(n, ct, e, _log_combination(n, terms))


def E(ct: Sequence[int]) -> LogLinear:
    return orbit_growth_sequence(ct).E


def decimal_down(q: Fraction, digits: int = 15) -> str:
    scale = 10**digits
    return _fixed(math.floor(q * scale), digits)


def decimal_up(q: Fraction, digits: int = 15) -> str:
    scale = 10**digits
    return _fixed(math.ceil(q * scale), digits)


def _fixed(m: int, digits: int) -> str:
    sign = "-" if m < 0 else ""
    m = abs(m)
    return f"{sign}{m // 10**digits}.{m % 10**digits:0{digits}d}"


# ---------------------------------------------------------------------------
# Lemma predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaCheck:
    lemma_id: str
    bound: LogLinear | None
    verdict: str  # "pass", "fail", "n/a" (hypotheses not met) or "report"
    note: str = ""


def _log_clamped(n: int, x: int) -> LogLinear:
    return LogLinear.log(n, x) if x > 1 else LogLinear.const(n, 0)


def _verdict(value: LogLinear, bound: LogLinear) -> str:
    return "pass" if value <= bound else "fail"


def check_fixed_points(og: OrbitGrowth) -> LemmaCheck:
    """E <= (1 + log_n t)/2 for t fixed points, with e_1 = max(log_n t, 0)."""
    n, t = og.n, fixed_points(og.cycle_type)
    bound = (_log_clamped(n, t) + 1) / 2
    return LemmaCheck("fixed-points", bound, _verdict(og.E, bound), f"t={t}")


def check_short_cycles(og: OrbitGrowth, eps: Fraction) -> LemmaCheck:
    """No fixed points and at most n^alpha cycles of length <= ceil(2/eps) => E <= alpha/2 + eps/2.

    The inequality is required for every admissible alpha, so it is tested at
    the infimum alpha = max(log_n(#short cycles), 0).
    """
    n, ct = og.n, og.cycle_type
    cap = ceil(2 / eps)
    note = f"eps={eps},K={cap}"
    if fixed_points(ct):
        return LemmaCheck("short-cycles", None, "n/a", note + ",has fixed points")
    short = sum(1 for p in ct if p <= cap)
    bound = _log_clamped(n, short) / 2 + eps / 2
    return LemmaCheck("short-cycles", bound, _verdict(og.E, bound), note + f",short={short}")


def check_short_cycles_corrected(og: OrbitGrowth, eps: Fraction) -> LemmaCheck:
    """The same hypotheses with the log_n(K)/2 slack that the argument actually yields."""
    n, ct = og.n, og.cycle_type
    cap = ceil(2 / eps)
    note = f"eps={eps},K={cap}"
    if fixed_points(ct):
        return LemmaCheck("short-cycles-corrected", None, "n/a", note + ",has fixed points")
    short = sum(1 for p in ct if p <= cap)
    bound = (_log_clamped(n, short) + LogLinear.log(n, cap)) / 2 + eps / 2
    return LemmaCheck("short-cycles-corrected", bound, _verdict(og.E, bound), note + f",short={short}")


def check_few_cycles(og: OrbitGrowth) -> LemmaCheck:
    """At most n^alpha cycles (alpha > 0) => E <= alpha, tested at the infimum alpha."""
    cycles = len(og.cycle_type)
    bound = _log_clamped(og.n, cycles)
    note = f"cycles={cycles}"
    if cycles == 1:
        note += ",every alpha>0 admissible"
    return LemmaCheck("few-cycles", bound, _verdict(og.E, bound), note)


def check_small_cycle_counts(og: OrbitGrowth, m: int, e_float: float | None = None) -> LemmaCheck:
    """Report-only: the least delta with f(i) <= n^delta for i < m, and E against 1/m."""
    n = og.n
    f = multiplicities(og.cycle_type)
    worst = max((f.get(i, 0) for i in range(1, m)), default=0)
    delta = math.log(worst) / math.log(n) if worst > 1 else 0.0
    margin = (float(og.E) if e_float is None else e_float) - 1 / m
    return LemmaCheck("cycle-counts", LogLinear.const(n, Fraction(1, m)), "report",
                      f"m={m},delta={delta:.6f},E-1/m={margin:.6f}")


def lemma_checks(ct, epsilons: Iterable[Fraction] = DEFAULT_EPSILONS,
                 corrected: bool = False) -> list[LemmaCheck]:
    """All lemma instances for one class; ``ct`` may be a cycle type or an OrbitGrowth."""
    og = ct if isinstance(ct, OrbitGrowth) else orbit_growth_sequence(ct)
    e_float = float(og.E)
    out = [check_fixed_points(og)]
    for m in range(2, min(og.n, 6) + 1):
        out.append(check_small_cycle_counts(og, m, e_float))
    for eps in epsilons:
        out.append(check_short_cycles(og, Fraction(eps)))
        if corrected:
            out.append(check_short_cycles_corrected(og, Fraction(eps)))
    out.append(check_few_cycles(og))
    return out


REPORT_COLUMNS = ("cycle_type", "E_lower", "E_upper", "lemma_id", "bound", "verdict")


def e_bound_report(n: int, epsilons: Iterable[Fraction] = DEFAULT_EPSILONS,
                   corrected: bool = False) -> list[dict]:
    """One row per (class, lemma instance) for every class of S_n."""
    if not 2 <= n <= REPORT_MAX_N:
        raise ValueError(f"the E-bound report supports 2 <= n <= {REPORT_MAX_N}")
    epsilons = tuple(epsilons)
    rows = []
    for ct in enumerate_partitions(n):
        og = orbit_growth_sequence(ct)
        lo, hi = og.E.certified_interval()
        for check in lemma_checks(og, epsilons, corrected):
            bound = "" if check.bound is None else decimal_up(check.bound.certified_interval()[1])
            rows.append({
                "cycle_type": ",".join(map(str, ct)),
                "E_lower": decimal_down(lo),
                "E_upper": decimal_up(hi),
                "lemma_id": check.lemma_id,
                "bound": bound,
                "verdict": check.verdict,
                "note": check.note,
            })
    return rows


# ---------------------------------------------------------------------------
# Character-bound margins
# ---------------------------------------------------------------------------

def character_bound_report(group: str, n: int, eps: Fraction) -> list[dict]:
    """Margins of |chi(sigma)| <= chi(1)^(E(sigma) + eps) over a full table.

    ``margin`` is E + eps - log|chi(sigma)| / log chi(1); it is negative exactly
    when the bound fails at this n.  Degree-one characters are skipped
    because the exponent is meaningless for them.
    """
    from .characters import character_table

    table = character_table(group, n)
    rows = []
    e_values = {c.parts: float(E(c.parts)) for c in table.cols}
    for i, row in enumerate(table.rows):
        dim = table.dims[i]
        if dim == 1:
            continue
        for j, col in enumerate(table.cols):
            value = abs(complex(table.scalar(i, j)))
            e_val = e_values[col.parts]
            if value == 0:
                needed = -math.inf
            else:
                needed = math.log(value) / math.log(dim)
            margin = e_val + float(eps) - needed
            rows.append({
                "group": group,
                "n": n,
                "character": str(row),
                "class": str(col),
                "abs_value": f"{value:.12g}",
                "dimension": str(dim),
                "E": f"{e_val:.12f}",
                "margin": "inf" if math.isinf(margin) else f"{margin:.12f}",
                "holds": margin >= 0,
            })
    return rows
