"""One test per acceptance criterion, at the stated caps and tolerances.

Each test prints a ``criterion NN: PASS|FAIL`` line; the lines are collected
again in the terminal summary.
"""
from fractions import Fraction

import pytest

from symcover import verify
from symcover.cli import main

pytestmark = pytest.mark.acceptance


def _detail(res):
    text = f"{res.summary} ({res.seconds:.1f}s)"
    if res.failures:
        text += f"; first failure: {res.failures[0]}"
    return text


def _assert(record, number, res, budget=None):
    in_time = budget is None or res.seconds <= budget
    passed = bool(res.passed) and in_time
    detail = _detail(res) + ("" if in_time else f"; over the {budget}s budget")
    record(number, passed, detail)
    assert res.passed, detail
    assert in_time, detail


def test_criterion_01_character_tables(record_criterion):
    _assert(record_criterion, 1, verify.check_orthogonality(10, 9, 14), budget=60)


def test_criterion_02_structure_constants(record_criterion):
    _assert(record_criterion, 2, verify.check_structure_constants(6, 7, 100), budget=300)


def test_criterion_03_gleason(record_criterion):
    _assert(record_criterion, 3, verify.check_gleason(5, 12), budget=120)


def test_criterion_04_vishne(record_criterion):
    _assert(record_criterion, 4, verify.check_vishne((2, 4, 6, 8, 10)), budget=60)


def test_criterion_05_s12(record_criterion):
    _assert(record_criterion, 5, verify.check_s12(), budget=1)


def test_criterion_06_restriction_density(record_criterion):
    _assert(record_criterion, 6, verify.check_restriction_density(7, 3), budget=600)


def test_criterion_07_orbit_growth(record_criterion):
    _assert(record_criterion, 7, verify.check_esigma(30, Fraction(1, 10**10), lemmas=True))


def test_criterion_08_zeta(record_criterion):
    _assert(record_criterion, 8, verify.check_zeta(10, 40, 20), budget=120)


def test_criterion_09_harmonic(record_criterion):
    _assert(record_criterion, 9, verify.check_pairing(5, 200), budget=300)


def test_criterion_10_ford(record_criterion):
    _assert(record_criterion, 10, verify.check_ford(50), budget=10)


def test_criterion_11_spectral(record_criterion):
    _assert(record_criterion, 11, verify.check_spectral(6), budget=600)


def test_criterion_12_scans(record_criterion, capsys):
    res = verify.run_scans()
    scans = {r["scan"] for r in res.rows}
    theorems = {r["theorem"] for r in res.rows if r["scan"] == "square-theorems"}
    groups = {(r["group"], r["n"]) for r in res.rows if r["scan"] == "character-bound"}
    complete = (scans == {"character-bound", "square-theorems", "dimension-bound", "spread"}
                and {"gleason", "lulov-pak", "larsen-tiep"} <= theorems
                and {("S", n) for n in range(8, 15)} <= groups
                and {("A", n) for n in range(8, 13)} <= groups
                and all("margin" in r for r in res.rows if r["scan"] in ("character-bound", "spread"))
                and any(r["kind"] == "level" for r in res.rows if r["scan"] == "spread"))
    codes = [main(["report", kind, "--n", "8"]) for kind in ("ebound", "charbound", "scan", "dimension")]
    capsys.readouterr()
    ok = complete and codes == [0, 0, 0, 0] and res.passed is None
    record_criterion(12, ok, f"report-only, {res.summary}; cli report exit codes {codes}")
    assert ok
