"""Acceptance criteria 1-9, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed in the
pytest terminal summary (see conftest.py) and by running this file directly.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

import pytest

from dyckhike.boson import FockState, LadderPolynomial, constant_ladder, lambda_mu_polynomial, lambda_mu_table
from dyckhike.dyck import PathSpec, count_paths
from dyckhike.engine import MINUS, PLUS, DyckSumEngine
from dyckhike.evolution import build_series, evaluate_at, ladder_for, squeeze_reference
from dyckhike.oracle import dyck_word_image, nonvanishing_words, oracle_ladder_decomposition, oracle_power
from dyckhike.pade import build_pade, eval_pade, even_part, order_condition_residual
from dyckhike.parser import parse_expr
from dyckhike.polynomial import Poly
from dyckhike.radical import RatRadical

RESULTS: dict[int, tuple[bool, str]] = {}

CUBIC_LP = LadderPolynomial(Poly.from_coeffs([0, 6, -27, 27]), 0)


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    assert ok, f"criterion {n}: {detail}"


def verdict_lines() -> list[str]:
    return [
        f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}" for n, (ok, detail) in sorted(RESULTS.items())
    ]


def test_criterion_1_path_counts():
    t0 = time.perf_counter()
    checks = {
        "(6,0,2)=9": count_paths(PathSpec(6, 0, 2)) == 9,
        "(8,0,0)=14": count_paths(PathSpec(8, 0, 0)) == 14,
        "(8,8,8)=70": count_paths(PathSpec(8, 8, 8)) == 70,
        "level sums": all(
            sum(count_paths(PathSpec(k, 0, d)) for d in range(k + 1)) == math.comb(k, k // 2) for k in range(21)
        ),
    }
    elapsed = time.perf_counter() - t0
    bad = [name for name, ok in checks.items() if not ok]
    record(1, not bad and elapsed < 1, f"path counts exact ({elapsed:.3f}s){' failed: ' + str(bad) if bad else ''}")


def test_criterion_2_worked_powers():
    t0 = time.perf_counter()
    eng = DyckSumEngine(ladder_for(parse_expr("a[0]^3"), FockState(), 8))
    k2 = eng.power(2).coeffs
    ok = (
        k2 == {0: RatRadical.make(math.factorial(3)), 2: RatRadical.sqrt(math.factorial(6))}
        and eng.power(3).coeffs[1] == RatRadical.make(126, 6)
        and eng.power(5).coeffs[1] == RatRadical.make(76356, 6)
    )
    elapsed = time.perf_counter() - t0
    record(2, ok and elapsed < 1, f"k=2: {k2[0]}, {k2[2]}; k=3,5 at delta2=1 exact ({elapsed:.3f}s)")


def test_criterion_3_scale():
    times, degrees = {}, {}
    for k, repeats in ((100, 3), (200, 1)):
        # best of a few runs keeps scheduler noise out of the short k=100 timing
        runs = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            eng = DyckSumEngine(CUBIC_LP)
            res = eng.power(k)
            runs.append(time.perf_counter() - t0)
        times[k] = min(runs)
        degrees[k] = eng.cache.stage(k // 2).degree
        assert 0 in res.coeffs and not res.coeffs[0].is_zero()
    ratio = times[200] / times[100]
    ok = degrees == {100: 200, 200: 400} and max(times.values()) < 60 and ratio < 16
    record(
        3,
        ok,
        f"degrees {degrees[100]}/{degrees[200]}, k=100 {times[100]:.2f}s, k=200 {times[200]:.2f}s, ratio {ratio:.1f}",
    )


def test_criterion_4_squeezing():
    t0 = time.perf_counter()
    series = build_series(parse_expr("a[1]*a[2]"), FockState(), 200)
    amps = evaluate_at(series, 1.0)
    elapsed = time.perf_counter() - t0
    a33 = float(amps.amplitudes[33])
    analytic = squeeze_reference(33, 1.0)
    within_2pct = abs(a33 - analytic) / analytic < 0.02
    six_figures = float(f"{a33:.5e}") == 7.99909e-5
    worst = max(
        abs(float(amps.amplitudes[n]) - squeeze_reference(n, 1.0)) / squeeze_reference(n, 1.0) for n in range(11)
    )
    ok = within_2pct and six_figures and worst < 1e-9 and elapsed < 120
    record(
        4,
        ok,
        f"delta2=33 amplitude {a33:.6e} (analytic {analytic:.6e}), "
        f"max rel err delta2<=10 {worst:.1e}, {elapsed:.1f}s",
    )


ORACLE_SUITE = [
    ("a[0]^3", ()),
    ("a[1]*a[2]", ()),
    ("a[0]*ad[1]", (0, 5)),
    ("ad[0]*a[0]*ad[1]^3 + ad[2]*a[2]*ad[3]^3", (0, 0, 0, 0)),
    ("a[0]*ad[1]*ad[2]", (0, 3, 4)),
    ("ad[0]*a[2] + ad[1]*a[3]", (3, 3, 0, 0)),
]


def test_criterion_5_oracle_equivalence():
    t0 = time.perf_counter()
    mismatches = []
    for text, occ in ORACLE_SUITE:
        expr, vac = parse_expr(text), FockState(occ)
        eng = DyckSumEngine(ladder_for(expr, vac, 10))
        for sign in (PLUS, MINUS):
            for k in range(11):
                got = {d: c for d, c in eng.power(k, sign).coeffs.items() if not c.is_zero()}
                want = oracle_ladder_decomposition(expr, vac, oracle_power(expr, vac, k, sign), k)
                if got != want:
                    mismatches.append((text, sign, k))
    elapsed = time.perf_counter() - t0
    record(
        5,
        not mismatches and elapsed < 120,
        f"{len(ORACLE_SUITE)} operators x k<=10 x 2 signs exact ({elapsed:.1f}s)"
        + (f" mismatches {mismatches[:3]}" if mismatches else ""),
    )


def test_criterion_6_ladder_products():
    cubic = lambda_mu_table(parse_expr("a[0]^3"), FockState(), 12).products
    squeeze = lambda_mu_table(parse_expr("a[1]*a[2]"), FockState(), 12).products
    ok = list(cubic) == [3 * p * (3 * p - 1) * (3 * p - 2) for p in range(1, 13)]
    ok &= list(squeeze) == [p * p for p in range(1, 13)]
    pair = parse_expr("ad[0]*a[2] + ad[1]*a[3]")
    for n in (2, 3, 5):
        table = lambda_mu_table(pair, FockState((n, n)), 3 * n)
        ok &= list(table.products) == [p * (2 * n - p + 1) for p in range(1, 2 * n + 2)]
        ok &= lambda_mu_polynomial(table, 2).poly == Poly.from_coeffs([0, 2 * n + 1, -1])
    record(6, ok, "3p(3p-1)(3p-2), p(2n-p+1) for n=2,3,5, p^2 exact")


def test_criterion_7_counting_degeneration():
    eng = DyckSumEngine(constant_ladder(1, depth=64))
    bad = [
        (k, d)
        for k in range(41)
        for d, c in eng.power(k).coeffs.items()
        if c != RatRadical.make(count_paths(PathSpec(k, 0, d)))
    ]
    record(7, not bad, "unit ladder reproduces count_paths for k<=40" + (f" failed {bad[:3]}" if bad else ""))


@pytest.fixture(scope="module")
def cubic_vev():
    # 167 coefficients in s = r^2 need orders 0..332 in r
    series = build_series(parse_expr("a[0]^3"), FockState(), 332, levels=[0], table_depth=12)
    return even_part(series.vev_coefficients())


def _exp_sanity() -> bool:
    taylor = [Fraction(1, math.factorial(i)) for i in range(30)]
    p11 = build_pade(taylor, 1, 1)
    ok = p11.numerator == Poly.from_coeffs([1, Fraction(1, 2)])
    ok &= p11.denominator == Poly.from_coeffs([1, Fraction(-1, 2)])
    ok &= abs(eval_pade(p11, 0.1) - 1.10526) < 5e-6
    for r in (0.25, 0.5, 1.0):
        errs = [abs(eval_pade(build_pade(taylor, L, L), r) - math.exp(r)) for L in range(1, 6)]
        ok &= all(b < a for a, b in zip(errs, errs[1:]))
    return ok


@pytest.mark.slow
def test_criterion_8_pade(cubic_vev):
    assert len(cubic_vev) == 167
    values, order_ok = {}, True
    t83 = None
    for L in (20, 40, 60, 83):
        t0 = time.perf_counter()
        approx = build_pade(cubic_vev, L, L, variable="r^2")
        if L == 83:
            t83 = time.perf_counter() - t0
        order_ok &= order_condition_residual(approx, cubic_vev) == []
        values[L] = eval_pade(approx, 0.05)
        if L == 83:
            order_ok &= eval_pade(approx, 0.0) == 1
            grid = [eval_pade(approx, 0.12 * i / 24) for i in range(25)]
            order_ok &= all(math.isfinite(v) for v in grid)
    spread = max(values.values()) - min(values.values())
    ok = order_ok and spread < 1e-4 and _exp_sanity() and t83 < 600
    record(
        8,
        ok,
        f"[83/83] in r^2 order condition exact, solve {t83:.0f}s; "
        f"[L/L] at r=0.05 spread {spread:.1e} (value {values[83]:.12f})",
    )


def test_criterion_9_bijection():
    cases = [("a[0]^3", ()), ("a[1]*a[2]", ()), ("a[0]*ad[1]*ad[2]", (0, 3, 4))]
    ok = True
    for text, occ in cases:
        expr, vac = parse_expr(text), FockState(occ)
        for k in range(9):
            words = nonvanishing_words(expr, vac, k)
            # a finite tower cuts off high paths, so only the infinite ones must hit every word
            ok &= words <= dyck_word_image(k)
            if text != "a[0]*ad[1]*ad[2]":
                ok &= words == dyck_word_image(k)
    record(9, ok, "non-vanishing boson words are exactly the Dyck words, k<=8")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
