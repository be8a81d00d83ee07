"""Command-line interface: ``symcover <subcommand> [options]``.

Exit status is 0 on success, 1 when a ``verify`` target fails and 2 on a
usage error (bad flags, values outside a documented cap).
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .cache import default_cache_dir, default_threads
from .characters import (
    as_label,
    char_value,
    character_table,
    configure_tables,
    dimension,
    dimension_bound_report,
    level,
    witten_zeta,
)
from .partitions import (
    NormalSet,
    check_partition,
    class_density,
    class_size,
    enumerate_partitions,
    fraction_str,
    multiplicities,
    parity,
    parse_cycle_type,
    splits_in_an,
)
from .scalar import scalar_json

FORMATS = ("json", "csv", "table")
LOG_BASES = {"e": math.e, "2": 2.0, "10": 10.0}

log = logging.getLogger("symcover")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    group: str = "S"
    classes: list[str] = field(default_factory=list)
    partition: str | None = None
    s: str | None = None
    eps: str = "1/10"
    r: str | None = None
    max_d: int = 1
    target: str | None = None
    report: str | None = None
    profile: str = "full"
    output_format: str = "json"
    cache_dir: str | None = None
    rebuild: bool = False
    threads: int = 1
    log_base: str = "e"
    node_limit: int | None = None

    def digest(self) -> str:
        """Hash of the options that can change results (not cache or threads)."""
        keep = {k: v for k, v in asdict(self).items() if k not in ("cache_dir", "rebuild", "threads")}
        return hashlib.sha256(json.dumps(keep, sort_keys=True).encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _plain(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "to_json"):
        return scalar_json(x)
    return str(x)


def render(payload: dict | list[dict], fmt: str, config: RunConfig) -> str:
    payload = _plain(payload)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    rows = payload if isinstance(payload, list) else [{"key": k, "value": v} for k, v in payload.items()]
    columns: list[str] = []
    for row in rows:
        columns += [k for k in row if k not in columns]
    cells = [[_cell(row.get(c, "")) for c in columns] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# symcover {__version__} config={config.digest()}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue().rstrip("\n")
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)


def _cell(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _need_n(config: RunConfig) -> int:
    if config.n is None:
        raise UsageError(f"{config.subcommand} needs --n")
    return config.n


def _one_class(config: RunConfig) -> str:
    if len(config.classes) != 1:
        raise UsageError(f"{config.subcommand} needs exactly one --class")
    return config.classes[0]


def _label(text: str, n: int):
    label = as_label(text)
    if sum(label.parts) != n:
        raise UsageError(f"class {text} is not a partition of n={n}")
    return label


def _fraction(text: str, name: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--{name} must be a rational number such as 1/10") from exc
    if value <= 0:
        raise UsageError(f"--{name} must be positive")
    return value


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_partitions(config: RunConfig):
    n = _need_n(config)
    rows = []
    for ct in enumerate_partitions(n):
        even = parity(ct) == "even"
        rows.append({
            "cycle_type": ",".join(map(str, ct)),
            "class_size": class_size(ct),
            "density": class_density(ct),
            "parity": parity(ct),
            "splits_in_An": splits_in_an(ct) if even else False,
        })
    return rows


def cmd_esigma(config: RunConfig):
    from .orbit_growth import decimal_down, decimal_up, orbit_growth_sequence

    n = _need_n(config)
    ct = check_partition(parse_cycle_type(_one_class(config)), n)
    og = orbit_growth_sequence(ct)
    lo, hi = og.E.certified_interval()
    exact = og.E.exact_value()
    base = LOG_BASES[config.log_base]
    cap = math.floor(math.log(n) / math.log(base)) if n > 1 else 0
    f = multiplicities(ct)
    return {
        "n": n,
        "class": ",".join(map(str, ct)),
        "E": fraction_str(exact) if exact is not None else str(og.E),
        "E_lower": decimal_down(lo),
        "E_upper": decimal_up(hi),
        "e": [str(x) for x in og.e],
        "short_cycle_condition": {
            "log_base": config.log_base,
            "max_length": cap,
            "holds": all(f.get(length, 0) < 10 for length in range(2, cap + 1)),
        },
    }


def cmd_char(config: RunConfig):
    if config.partition is None:
        raise UsageError("char needs --lambda")
    lam = parse_cycle_type(config.partition)
    mu = parse_cycle_type(_one_class(config))
    if sum(lam) != sum(mu):
        raise UsageError("--lambda and --class must be partitions of the same n")
    return {"lambda": ",".join(map(str, lam)), "class": ",".join(map(str, mu)),
            "value": char_value(lam, mu), "dimension": dimension(lam), "level": level(lam)}


def cmd_table(config: RunConfig):
    n = _need_n(config)
    table = character_table(config.group, n)
    rows = []
    for i, row in enumerate(table.rows):
        entry = {"character": str(row), "dimension": table.dims[i], "level": table.levels[i]}
        for j, col in enumerate(table.cols):
            entry[str(col)] = table.values[i][j]
        rows.append(entry)
    if config.output_format == "json":
        return {"group": config.group, "n": n, "classes": [str(c) for c in table.cols],
                "class_sizes": table.class_sizes, "rows": rows}
    return rows


def cmd_zeta(config: RunConfig):
    n = _need_n(config)
    s = _fraction(config.s or "1", "s")
    value = witten_zeta(config.group, n, s)
    if isinstance(value, tuple):
        lo, hi = value
        return {"group": config.group, "n": n, "s": s, "lower": lo, "upper": hi,
                "decimal": f"{float((lo + hi) / 2):.15f}"}
    return {"group": config.group, "n": n, "s": s, "zeta": value, "decimal": f"{float(value):.15f}"}


def cmd_square(config: RunConfig):
    from .class_algebra import covers, square_support

    n = _need_n(config)
    text = _one_class(config)
    label = _label(text, n)
    support = square_support(label, config.group, n)
    if config.group == "S":
        result = covers(NormalSet(n, frozenset([label.parts]), "S"), "An")
    else:
        result = covers(NormalSet(n, frozenset([label]), "A"), "An")
    return {
        "class": str(label),
        "group": config.group,
        "support": [str(c) for c in support],
        "covers_An": result.covered,
        "certificate": {str(k): [str(v[0]), str(v[1])] for k, v in result.certificate.items()},
    }


def cmd_cover(config: RunConfig):
    from .class_algebra import covers

    n = _need_n(config)
    if not config.classes:
        raise UsageError("cover needs at least one --class")
    labels = [_label(c, n) for c in config.classes]
    members = frozenset(x.parts if config.group == "S" else x for x in labels)
    target = config.target or "An"
    result = covers(NormalSet(n, members, config.group), target)
    return {
        "group": config.group,
        "classes": [str(x) for x in labels],
        "target": target,
        "covered": result.covered,
        "uncovered": [str(c) for c in result.uncovered],
        "certificate": {str(k): [str(v[0]), str(v[1])] for k, v in result.certificate.items()},
    }


def cmd_spread(config: RunConfig):
    from .umvirates import is_r_global, spreadness_profile

    n = _need_n(config)
    ct = check_partition(parse_cycle_type(_one_class(config)), n)
    profile = spreadness_profile(ct, config.max_d)
    out = {
        "class": ",".join(map(str, ct)),
        "max_d": config.max_d,
        "profile": [{"d": p.d, "ratio": p.ratio, "spec": json.loads(p.spec.to_json()) if p.spec else None}
                    for p in profile],
    }
    if config.r is not None:
        res = is_r_global(ct, _fraction(config.r, "r"), config.max_d)
        out["r"] = _fraction(config.r, "r")
        out["is_r_global"] = res.is_global
        out["counterexample"] = json.loads(res.counterexample.to_json()) if res.counterexample else None
    return out


def cmd_spectrum(config: RunConfig):
    from .harmonic import cayley_eigenvalues, hoffman_bound

    n = _need_n(config)
    label = _label(_one_class(config), n)
    eig = cayley_eigenvalues(label, config.group, n)
    out = {"group": config.group, "n": n, "class": str(label),
           "eigenvalues": {str(k): v for k, v in eig.items()}}
    if label.parts != (1,) * n:
        out["hoffman"] = hoffman_bound(label, config.group, n)
    return out


def cmd_independent(config: RunConfig):
    from .harmonic import exact_max_independent_set, hoffman_bound
    from .perms import to_cycle_string

    n = _need_n(config)
    label = _label(_one_class(config), n)
    res = exact_max_independent_set(label, config.group, n, config.node_limit)
    return {
        "group": config.group,
        "n": n,
        "class": str(label),
        "hoffman": hoffman_bound(label, config.group, n),
        "exact": res.size if res.optimal else None,
        "lower_bound": res.size,
        "upper_bound": res.upper_bound,
        "status": res.status,
        "method": res.method,
        "witness": [to_cycle_string(p) for p in res.witness],
    }


def cmd_report(config: RunConfig):
    from .class_algebra import exploratory_theorem_scan
    from .orbit_growth import character_bound_report, e_bound_report

    n = _need_n(config)
    kind = config.report
    if kind == "ebound":
        return e_bound_report(n)
    if kind == "charbound":
        return character_bound_report(config.group, n, _fraction(config.eps, "eps"))
    if kind == "scan":
        return exploratory_theorem_scan(n)
    if kind == "dimension":
        return dimension_bound_report(n)
    raise UsageError(f"unknown report {kind!r}")


def cmd_verify(config: RunConfig):
    from . import verify

    target = config.target or "all"
    if target not in verify.CLI_TARGETS:
        raise UsageError(f"unknown verify target {target!r}; choose from {', '.join(verify.CLI_TARGETS)}")
    if config.n is not None:
        results = [_verify_at(verify, target, config.n)]
    elif target == "all":
        results = verify.verify_all(config.profile)
    else:
        results = [verify.run_target(target, config.profile)]
    rows = [{"target": r.name, "verdict": r.verdict, "summary": r.summary, "failures": r.failures}
            for r in results]
    return rows, any(r.passed is False for r in results)


def _verify_at(verify, target: str, n: int):
    single = {
        "orthogonality": lambda: verify.check_orthogonality(n, min(n, 12), n),
        "structure": lambda: verify.check_structure_constants(n, 0, 0),
        "gleason": lambda: verify.check_gleason(n, n),
        "vishne": lambda: verify.check_vishne((n,)),
        "claim52": lambda: verify.check_chains(n, 3),
        "esigma": lambda: verify.check_esigma(n),
        "zeta": lambda: verify.check_zeta(min(10, n), n),
        "pairing": lambda: verify.check_pairing(n),
        "ford": lambda: verify.check_ford(n),
        "spectral": lambda: verify.check_spectral(n),
    }
    if target not in single:
        raise UsageError(f"verify {target} does not take --n")
    if target == "vishne" and n % 2:
        raise UsageError("verify vishne needs an even n")
    return single[target]()


COMMANDS = {
    "partitions": cmd_partitions,
    "esigma": cmd_esigma,
    "char": cmd_char,
    "table": cmd_table,
    "zeta": cmd_zeta,
    "square": cmd_square,
    "cover": cmd_cover,
    "spread": cmd_spread,
    "spectrum": cmd_spectrum,
    "independent": cmd_independent,
    "report": cmd_report,
    "verify": cmd_verify,
}


def run(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if config.output_format not in FORMATS:
        print(f"error: unknown format {config.output_format!r}", file=sys.stderr)
        return 2
    try:
        configure_tables(config.cache_dir, config.threads, config.rebuild)
        result = COMMANDS[config.subcommand](config)
        failed = False
        if config.subcommand == "verify":
            result, failed = result
        print(render(result, config.output_format, config), file=out)
        return 1 if failed else 0
    except (UsageError, ValueError, KeyError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 2


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="json")
    common.add_argument("--cache-dir", default=None,
                        help="character-table cache (default: $SYMCOVER_CACHE_DIR or ~/.cache/symcover)")
    common.add_argument("--no-cache", action="store_true", help="keep tables in memory only")
    common.add_argument("--rebuild", action="store_true", help="rebuild cached tables")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for table builds (default: $SYMCOVER_THREADS or 1)")
    common.add_argument("--log-base", choices=sorted(LOG_BASES), default="e",
                        help="base of the log in the short-cycle condition (default: natural)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="symcover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"symcover {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_text: str, group: bool = False, klass: bool = False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--n", type=int)
        if group:
            p.add_argument("--group", choices=("S", "A"), default="S")
        if klass:
            p.add_argument("--class", dest="classes", action="append", default=[],
                           help="cycle type such as 3,2,1 (A_n halves: 5+ / 5-)")
        return p

    add("partitions", "partitions of n with class sizes")
    add("esigma", "orbit growth sequence and E(sigma)", klass=True)
    p = add("char", "one character value", klass=True)
    p.add_argument("--lambda", dest="partition", required=True)
    add("table", "full character table", group=True)
    p = add("zeta", "Witten zeta value", group=True)
    p.add_argument("--s", default="1")
    add("square", "support of C^2 and whether it covers A_n", group=True, klass=True)
    p = add("cover", "whether A^2 covers a target", group=True, klass=True)
    p.add_argument("--target", choices=("An", "An_minus_identity", "Sn"), default="An")
    p = add("spread", "restriction densities and r-globalness", klass=True)
    p.add_argument("--max-d", type=int, default=1)
    p.add_argument("--r")
    add("spectrum", "normal Cayley graph eigenvalues", group=True, klass=True)
    p = add("independent", "independence number of a normal Cayley graph", group=True, klass=True)
    p.add_argument("--node-limit", type=int, default=None)
    p = add("report", "CSV-style margin reports", group=True)
    p.add_argument("report", choices=("ebound", "charbound", "scan", "dimension"))
    p.add_argument("--eps", default="1/10")
    p = add("verify", "run checks; exit 1 on failure")
    p.add_argument("target", nargs="?", default="all")
    p.add_argument("--profile", choices=("quick", "full"), default="full")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    threads = ns.threads if ns.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be a positive integer")
    cache_dir = None if ns.no_cache else (ns.cache_dir or str(default_cache_dir()))
    return RunConfig(
        subcommand=ns.subcommand,
        n=ns.n,
        group=getattr(ns, "group", "S"),
        classes=list(getattr(ns, "classes", [])),
        partition=getattr(ns, "partition", None),
        s=getattr(ns, "s", None),
        eps=getattr(ns, "eps", "1/10"),
        r=getattr(ns, "r", None),
        max_d=getattr(ns, "max_d", 1),
        target=getattr(ns, "target", None),
        report=getattr(ns, "report", None),
        profile=getattr(ns, "profile", "full"),
        output_format=ns.output_format,
        cache_dir=cache_dir,
        rebuild=ns.rebuild,
        threads=threads,
        log_base=ns.log_base,
        node_limit=getattr(ns, "node_limit", None),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = config_from_args(ns)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
