"""Checks that drive ``symcover verify`` and the acceptance suite.

Every check returns a :class:`CheckResult`.  ``passed`` is None for the
report-only scans, whose content is a table of margins rather than a verdict.
Caps are arguments so the quick and full profiles share one code path.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .certified import ford_bound_lower
from .characters import (
    AN_TABLE_MAX_N,
    CharacterTable,
    char_value,
    character_table,
    dimension,
    dimension_bound_report,
    group_order,
    witten_zeta,
)
from .class_algebra import (
    brute_square_support,
    brute_structure_constant,
    covers,
    exploratory_theorem_scan,
    product_support,
    square_support,
    structure_constant,
    StructureQuery,
    vishne_prediction,
    verify_s12_identity,
)
from .orbit_growth import E, character_bound_report, e_bound_report
from .partitions import NormalSet, cycle_count_distribution, enumerate_partitions, parity
from .scalar import AlgebraicScalar, exact_sum
from .umvirates import (
    brute_restriction_density,
    canonical_spec,
    chain_formula_density,
    restriction_density,
    restriction_shapes,
)

TARGETS = ("orthogonality", "structure", "gleason", "vishne", "s12", "claim52", "esigma",
           "zeta", "pairing", "ford", "spectral", "scans")
# the subcommand names of ``symcover verify``; "all" runs every target
CLI_TARGETS = TARGETS + ("all",)


@dataclass
class CheckResult:
    name: str
    passed: bool | None
    summary: str
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    rows: list[dict] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.passed is None:
            return "report"
        return "pass" if self.passed else "fail"


def _timed(name: str, fn: Callable[[], CheckResult]) -> CheckResult:
    start = time.perf_counter()
    result = fn()
    result.seconds = time.perf_counter() - start
    result.name = name
    return result


def _result(failures: list[str], summary: str, limit: int = 20) -> CheckResult:
    more = f" (+{len(failures) - limit} more)" if len(failures) > limit else ""
    shown = failures[:limit]
    if more:
        shown.append(more.strip())
    return CheckResult("", not failures, summary, shown)


# ---------------------------------------------------------------------------
# Character tables
# ---------------------------------------------------------------------------

def table_orthogonality_failures(table: CharacterTable) -> list[str]:
    """Row and column orthogonality and the sum of squared degrees, exactly."""
    out = []
    k = len(table.rows)
    order = table.order
    vals = [[AlgebraicScalar.coerce(table.scalar(i, j)) for j in range(k)] for i in range(k)]
    conj = [[v.complex_conjugate() for v in row] for row in vals]
    sizes = table.class_sizes
    tag = f"{table.group}{table.n}"
    for a in range(k):
        for b in range(a, k):
            total = exact_sum(sizes[j] * vals[a][j] * conj[b][j] for j in range(k))
            if total != (order if a == b else 0):
                out.append(f"{tag}: rows {table.rows[a]}, {table.rows[b]} give {total}")
    for a in range(k):
        for b in range(a, k):
            total = exact_sum(vals[i][a] * conj[i][b] for i in range(k))
            want = Fraction(order, sizes[a]) if a == b else 0
            if total != want:
                out.append(f"{tag}: columns {table.cols[a]}, {table.cols[b]} give {total}")
    if sum(d * d for d in table.dims) != order:
        out.append(f"{tag}: squared degrees do not sum to |G|")
    return out


def check_orthogonality(s_max: int = 10, a_max: int = 9, dim_max: int = 14, workers: int = 1) -> CheckResult:
    def run():
        failures = []
        for n in range(1, s_max + 1):
            failures += table_orthogonality_failures(character_table("S", n, workers=workers))
        for n in range(2, a_max + 1):
            failures += table_orthogonality_failures(character_table("A", n, workers=workers))
        count = 0
        for n in range(1, dim_max + 1):
            for lam in enumerate_partitions(n):
                count += 1
                if dimension(lam) != char_value(lam, (1,) * n):
                    failures.append(f"dimension({lam}) != chi({lam}, 1^{n})")
        return _result(failures, f"S_n n<={s_max}, A_n n<={a_max} orthogonal; "
                                 f"{count} degrees match chi(1) for n<={dim_max}")
    return _timed("orthogonality", run)


# ---------------------------------------------------------------------------
# Class algebra
# ---------------------------------------------------------------------------

def check_structure_constants(full_max: int = 6, random_n: int = 7, samples: int = 100,
                              seed: int = 0) -> CheckResult:
    def run():
        failures, count = [], 0
        for group in ("S", "A"):
            for n in range(2 if group == "S" else 3, full_max + 1):
                table = character_table(group, n)
                for c1 in table.cols:
                    for c2 in table.cols:
                        for c3 in table.cols:
                            count += 1
                            got = structure_constant(StructureQuery(n, group, c1, c2, c3), table)
                            want = brute_structure_constant(group, n, c1, c2, c3)
                            if got != want:
                                failures.append(f"{group}{n} ({c1})({c2})->({c3}): {got} vs {want}")
        rng = random.Random(seed)
        for group in ("S", "A"):
            if random_n < (2 if group == "S" else 3):
                continue
            table = character_table(group, random_n)
            for _ in range(samples):
                c1, c2, c3 = (rng.choice(table.cols) for _ in range(3))
                count += 1
                got = structure_constant(StructureQuery(random_n, group, c1, c2, c3), table)
                want = brute_structure_constant(group, random_n, c1, c2, c3)
                if got != want:
                    failures.append(f"{group}{random_n} ({c1})({c2})->({c3}): {got} vs {want}")
        return _result(failures, f"{count} triples agree with pair counting")
    return _timed("structure", run)


def check_gleason(lo: int = 5, hi: int = 12) -> CheckResult:
    def run():
        failures = []
        for n in range(lo, hi + 1):
            result = covers(NormalSet(n, frozenset([(n,)]), "S"), "An")
            if not result.covered:
                failures.append(f"n={n}: uncovered {[str(c) for c in result.uncovered]}")
        return _result(failures, f"(n)^2 = A_n for {lo} <= n <= {hi}")
    return _timed("gleason", run)


def check_vishne(ns: Iterable[int] = (2, 4, 6, 8, 10), brute_max: int = 10) -> CheckResult:
    def run():
        failures = []
        done = []
        for n in ns:
            ct = (2,) * (n // 2)
            predicted = set(vishne_prediction(n))
            if set(square_support(ct, "S", n)) != predicted:
                failures.append(f"n={n}: character support differs from the prediction")
            if n <= brute_max and brute_square_support("S", n, ct) != predicted:
                failures.append(f"n={n}: brute-force support differs from the prediction")
            done.append(n)
        return _result(failures, f"(2^(n/2))^2 matches the even-multiplicity classes for n in {done}")
    return _timed("vishne", run)


def check_s12() -> CheckResult:
    def run():
        r = verify_s12_identity()
        failures = []
        if not r.holds:
            failures.append("the product does not equal (1,7)(2,8)...(6,12) right-to-left")
        if r.left_type != (3, 3, 3, 3) or r.right_type != (3, 3, 3, 3) or r.product_type != (2,) * 6:
            failures.append("unexpected cycle types")
        return _result(failures, f"right-to-left {r.right_to_left}, left-to-right {r.left_to_right}")
    return _timed("s12", run)


# ---------------------------------------------------------------------------
# Restrictions
# ---------------------------------------------------------------------------

def check_restriction_density(n_max: int = 7, d_max: int = 3, relabel: int = 1, seed: int = 0) -> CheckResult:
    """restriction_density against brute force on every shape, plus random relabelings."""
    def run():
        rng = random.Random(seed)
        failures, count = [], 0
        for n in range(1, n_max + 1):
            for ct in enumerate_partitions(n):
                for d in range(1, min(d_max, n) + 1):
                    for chains, cycles in restriction_shapes(n, d):
                        spec = canonical_spec(n, chains, cycles)
                        got = restriction_density(ct, spec)
                        count += 1
                        if got != brute_restriction_density(ct, spec):
                            failures.append(f"{ct} {spec.to_json()}")
                        for _ in range(relabel):
                            moved = _relabel(spec, rng)
                            if brute_restriction_density(ct, moved) != got:
                                failures.append(f"{ct} relabelled {moved.to_json()}")
        return _result(failures, f"{count} (class, shape) pairs agree with brute force, n<={n_max}, d<={d_max}")
    return _timed("restriction", run)


def _relabel(spec, rng: random.Random):
    from .umvirates import RestrictionSpec

    perm = list(range(1, spec.n + 1))
    rng.shuffle(perm)
    move = lambda part: tuple(perm[x - 1] for x in part)  # noqa: E731
    return RestrictionSpec(spec.n, tuple(map(move, spec.chains)), tuple(map(move, spec.cycles)))


def check_chain_formula(n_max: int = 7, d_max: int = 3) -> CheckResult:
    """The chain-only closed form mu(A) P prod(1 - t/(n-j))^-1 against brute force."""
    def run():
        failures, count = [], 0
        single = multi = 0
        for n in range(2, n_max + 1):
            for ct in enumerate_partitions(n):
                for d in range(1, min(d_max, n - 1) + 1):
                    for chains, cycles in restriction_shapes(n, d):
                        if cycles:
                            continue
                        spec = canonical_spec(n, chains)
                        want = brute_restriction_density(ct, spec)
                        try:
                            got = chain_formula_density(ct, spec)
                        except ZeroDivisionError:
                            got = None
                        count += 1
                        if got != want:
                            failures.append(f"{ct} chains {chains}: formula {got}, true {want}")
                            if len(chains) == 1:
                                single += 1
                            else:
                                multi += 1
        return _result(failures, f"{count} chain-only pairs; mismatches with one chain: {single}, "
                                 f"with several chains: {multi}")
    return _timed("chain-formula", run)


def check_chains(n_max: int = 7, d_max: int = 3) -> CheckResult:
    """Both the densities used downstream and the literal chain formula."""
    def run():
        parts = [check_restriction_density(n_max, d_max), check_chain_formula(n_max, d_max)]
        failures = [f"{p.name}: {f}" for p in parts for f in p.failures]
        summary = "; ".join(f"{p.name} {p.verdict}: {p.summary}" for p in parts)
        return CheckResult("", all(p.passed for p in parts), summary, failures)
    return _timed("claim52", run)


# ---------------------------------------------------------------------------
# E(sigma)
# ---------------------------------------------------------------------------

def check_esigma(n_max: int = 30, width: Fraction = Fraction(1, 10**10), lemmas: bool = True) -> CheckResult:
    def run():
        failures = []
        for n in range(2, n_max + 1):
            cases = [((n,), Fraction(1, n)), ((1,) * n, Fraction(1))]
            if n % 2 == 0:
                cases.append(((2,) * (n // 2), Fraction(1, 2)))
            for ct, want in cases:
                lo, hi = E(ct).certified_interval(width)
                if not (lo <= want <= hi and hi - lo <= width):
                    failures.append(f"E{ct} enclosure [{float(lo)}, {float(hi)}] misses {want}")
        counts: dict[tuple[str, str], int] = {}
        if lemmas:
            for n in range(2, n_max + 1):
                for row in e_bound_report(n):
                    if row["lemma_id"] == "cycle-counts":
                        continue
                    key = (row["lemma_id"], row["verdict"])
                    counts[key] = counts.get(key, 0) + 1
                    if row["verdict"] == "fail":
                        failures.append(f"n={n} ({row['cycle_type']}) lemma {row['lemma_id']}: "
                                        f"E >= {row['E_lower']} > bound {row['bound']} [{row['note']}]")
        tally = ", ".join(f"{k[0]} {k[1]}={v}" for k, v in sorted(counts.items()))
        return _result(failures, f"fixed values for n<={n_max}; lemma verdicts: {tally}")
    return _timed("esigma", run)


# ---------------------------------------------------------------------------
# Zeta and Ford
# ---------------------------------------------------------------------------

def check_zeta(lo: int = 10, hi: int = 40, window_from: int = 20) -> CheckResult:
    def run():
        failures = []
        values = {n: witten_zeta("S", n, 1) for n in range(lo, hi + 1)}
        for n in range(lo, hi):
            if values[n + 1] > values[n]:
                failures.append(f"zeta_S(1) increases from n={n} to n={n + 1}")
        for n in range(max(lo, window_from), hi + 1):
            if not 2 <= values[n] <= Fraction(5, 2):
                failures.append(f"zeta_S{n}(1) = {float(values[n])} outside [2, 2.5]")
        if witten_zeta("S", 3, 1) != Fraction(5, 2):
            failures.append("zeta_S3(1) != 5/2")
        if witten_zeta("A", 5, 2) != 1 + Fraction(2, 9) + Fraction(1, 16) + Fraction(1, 25):
            failures.append("zeta_A5(2) != 1 + 2/9 + 1/16 + 1/25")
        return _result(failures, f"zeta_S(1) nonincreasing on [{lo},{hi}], "
                                 f"zeta_S{hi}(1) = {float(values[hi]):.12f}")
    return _timed("zeta", run)


def check_ford(n_max: int = 50) -> CheckResult:
    def run():
        failures, count = [], 0
        for n in range(1, n_max + 1):
            dist = cycle_count_distribution(n)
            for m in range(1, n + 1):
                count += 1
                p = dist[m]
                if p > ford_bound_lower(n, m) and p > ford_bound_lower(n, m, prec=512):
                    failures.append(f"Pr[C={m}] in S_{n} = {float(p)} exceeds (2 ln n)^(m-1)/(m-1)!")
        return _result(failures, f"{count} pairs (n, m) with n<={n_max} satisfy the bound")
    return _timed("ford", run)


# ---------------------------------------------------------------------------
# Harmonic analysis
# ---------------------------------------------------------------------------

def check_pairing(n_max: int = 5, samples: int = 200, seed: int = 0) -> CheckResult:
    """Parseval, the eigenvector property, the two-sided pairing and pairing-zero vs covering."""
    from .harmonic import (
        GroupFunction,
        class_members,
        convolution_eigenvalues,
        convolve,
        independence_pairing,
        isotypic_decomposition,
        isotypic_project,
        random_subset,
    )
    def run():
        rng = random.Random(seed)
        failures, count = [], 0
        for group in ("S", "A"):
            for n in range(2 if group == "S" else 3, n_max + 1):
                table = character_table(group, n)
                for _ in range(samples):
                    count += 1
                    f = GroupFunction.indicator(group, n, random_subset(group, n, rng))
                    comps = isotypic_decomposition(f)
                    total = comps[0].projection
                    for comp in comps[1:]:
                        total = total + comp.projection
                    if total != f:
                        failures.append(f"{group}{n}: components do not sum to f")
                    if exact_sum(c.norm_sq for c in comps) != f.norm_sq():
                        failures.append(f"{group}{n}: Parseval fails")
                    c = rng.choice(table.cols)
                    chi = rng.choice(table.rows)
                    piece = isotypic_project(f, chi).projection
                    h = GroupFunction.normalized_indicator(group, n, class_members(c, group, n))
                    lam = convolution_eigenvalues(c, group, n)[chi]
                    if convolve(h, piece) != piece.scale(lam):
                        failures.append(f"{group}{n}: class {c} does not act on W_{chi} by {lam}")
                    I1 = random_subset(group, n, rng, rng.random())
                    I2 = random_subset(group, n, rng, rng.random())
                    pair = independence_pairing(I1, I2, rng.choice(table.cols), group, n)
                    if not pair.agree:
                        failures.append(f"{group}{n}: pairing {pair.direct} vs {pair.spectral}")
                # pairing zero <=> C outside D^2 for D = class u inverse class
                for d in table.cols:
                    inv = table.cols[table.inverse_col(table.col_index(d))]
                    members = set(class_members(d, group, n)) | set(class_members(inv, group, n))
                    support = set()
                    for a in {d, inv}:
                        for b in {d, inv}:
                            support |= set(product_support(group, n, a, b))
                    for c in table.cols:
                        count += 1
                        zero = independence_pairing(members, members, c, group, n).direct == 0
                        if zero != (c not in support):
                            failures.append(f"{group}{n}: D={d}, C={c}: pairing zero {zero}")
        return _result(failures, f"{count} harmonic instances agree exactly for n<={n_max}")
    return _timed("pairing", run)


def check_spectral(n_max: int = 6, node_limit: int | None = None) -> CheckResult:
    """Ratio bound against the exact independence number, every non-identity class."""
    from .harmonic import exact_max_independent_set, hoffman_bound

    def run():
        failures, rows = [], []
        for group in ("S", "A"):
            for n in range(2 if group == "S" else 3, n_max + 1):
                table = character_table(group, n)
                order = group_order(group, n)
                for c in table.cols:
                    if c.parts == (1,) * n:
                        continue
                    bound = hoffman_bound(c, group, n)
                    res = exact_max_independent_set(c, group, n, node_limit)
                    density = Fraction(res.size, order)
                    rows.append({"group": group, "n": n, "class": str(c), "hoffman": str(bound),
                                 "size": res.size, "upper": res.upper_bound, "status": res.status,
                                 "method": res.method})
                    if not res.optimal:
                        failures.append(f"{group}{n} ({c}): unresolved, {res.size} <= alpha <= "
                                        f"{res.upper_bound} after {res.nodes} nodes")
                    elif AlgebraicScalar.coerce(density) > AlgebraicScalar.coerce(bound):
                        failures.append(f"{group}{n} ({c}): alpha/|G| = {density} exceeds {bound}")
        solved = sum(r["status"] == "optimal" for r in rows)
        out = _result(failures, f"{solved}/{len(rows)} classes solved exactly, none above the ratio bound")
        out.rows = rows
        return out
    return _timed("spectral", run)


# ---------------------------------------------------------------------------
# Report-only scans
# ---------------------------------------------------------------------------

def run_scans(s_range: tuple[int, int] = (8, 14), a_range: tuple[int, int] = (8, AN_TABLE_MAX_N),
              scan_max: int = 12, spread_max: int = 4, eps: Fraction = Fraction(1, 10)) -> CheckResult:
    from .harmonic import spread_projection_report

    def run():
        rows: list[dict] = []
        for n in range(s_range[0], s_range[1] + 1):
            rows += [dict(r, scan="character-bound") for r in character_bound_report("S", n, eps)]
        for n in range(a_range[0], a_range[1] + 1):
            rows += [dict(r, scan="character-bound") for r in character_bound_report("A", n, eps)]
        for n in range(2, scan_max + 1):
            rows += [dict(r, scan="square-theorems") for r in exploratory_theorem_scan(n)]
        for n in range(2, 41):
            rows += [dict(r, scan="dimension-bound", n=n) for r in dimension_bound_report(n)]
        from .perms import group_elements

        for n in range(3, spread_max + 1):
            elems = group_elements("S", n)
            sets = {
                "G": list(elems),
                "A_n": [p for p in elems if parity(_ct(p)) == "even"],
                "fix-1": [p for p in elems if p[0] == 0],
                "n-cycles": [p for p in elems if _ct(p) == (n,)],
            }
            for name, members in sets.items():
                rows += [dict(r, scan="spread", n=n, set=name)
                         for r in spread_projection_report(members, "S", n, eps)]
        return CheckResult("", None, f"{len(rows)} report rows at eps={eps}", rows=rows)
    return _timed("scans", run)


def _ct(p):
    from .perms import cycle_type

    return cycle_type(p)


# ---------------------------------------------------------------------------
# Profiles
# ---------------------------------------------------------------------------

PROFILES: dict[str, dict[str, Callable[[], CheckResult]]] = {
    "quick": {
        "orthogonality": lambda: check_orthogonality(8, 7, 12),
        "structure": lambda: check_structure_constants(5, 6, 20),
        "gleason": lambda: check_gleason(5, 9),
        "vishne": lambda: check_vishne((2, 4, 6, 8), 8),
        "s12": check_s12,
        "claim52": lambda: check_chains(5, 3),
        "esigma": lambda: check_esigma(16),
        "zeta": lambda: check_zeta(10, 25),
        "pairing": lambda: check_pairing(4, 20),
        "ford": lambda: check_ford(30),
        "spectral": lambda: check_spectral(5),
        "scans": lambda: run_scans((8, 10), (8, 9), 8, 3),
    },
    "full": {
        "orthogonality": check_orthogonality,
        "structure": check_structure_constants,
        "gleason": check_gleason,
        "vishne": check_vishne,
        "s12": check_s12,
        "claim52": check_chains,
        "esigma": check_esigma,
        "zeta": check_zeta,
        "pairing": check_pairing,
        "ford": check_ford,
        "spectral": check_spectral,
        "scans": run_scans,
    },
}


def run_target(target: str, profile: str = "full") -> CheckResult:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose quick or full")
    if target not in PROFILES[profile]:
        raise ValueError(f"unknown verify target {target!r}; choose from {', '.join(CLI_TARGETS)}")
    return PROFILES[profile][target]()


def verify_all(profile: str = "quick") -> list[CheckResult]:
    return [run_target(t, profile) for t in TARGETS]
