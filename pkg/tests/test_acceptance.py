"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line (printed in the terminal summary) with the
worst observed value next to its tolerance, then asserts.
"""

import time
import warnings

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, ELLIPSE_2_1_PERIMETER
from fourier_isoperimetry.curve import (SampledCurve, circle, ellipse, fourier_curve, from_polyline,
                                        make_reparam, perimeter, reparametrize_unit_speed,
                                        reversed_curve, unit_speed_error, arc_constraint_residual)
from fourier_isoperimetry.errors import TruncationWarning
from fourier_isoperimetry.isoperimetric import area_simplified, hurwitz_report, ibp_check
from fourier_isoperimetry.sampling import random_regular_curve, random_series
from fourier_isoperimetry.spectral import deriv_parseval_check, orthogonality_table, parseval_check, wirtinger_check
from fourier_isoperimetry.trigseries import FourierCoeffs

PI = np.pi
SEED = 20250101


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] AC{number:<2} {title}: {detail}")
    assert ok, detail


def curve_fixtures():
    return {
        "circle(0.5)": circle(0.5),
        "circle(1)": circle(1),
        "circle(3)": circle(3),
        "ellipse(2,1)": ellipse(2, 1),
        "ellipse(2,1) reversed": reversed_curve(ellipse(2, 1)),
        "limacon": fourier_curve(FourierCoeffs(0.0, [1.0, 0.3], [0.0, 0.0]),
                                 FourierCoeffs(0.0, [0.0, 0.0], [1.0, 0.3])),
        "polyline square": from_polyline(SampledCurve([[0, 0], [1, 0], [1, 1], [0, 1]]), 1),
    }


@pytest.fixture(scope="module")
def random_reports():
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    out = []
    for _ in range(100):
        c = random_regular_curve(rng)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            out.append((c, hurwitz_report(c)))
    return out, time.perf_counter() - start


def test_ac01_orthogonality():
    start = time.perf_counter()
    table = orthogonality_table(32)
    elapsed = time.perf_counter() - start
    worst = max(e.residual for e in table)
    ok = len(table) == 3 * 32**2 and worst <= 1e-10 and elapsed <= 10
    record(1, "orthogonality n,m<=32", ok, f"max residual {worst:.2e} (<=1e-10), {elapsed:.1f}s (<=10s)")


def test_ac02_parseval():
    rng = np.random.default_rng(SEED + 2)
    start = time.perf_counter()
    worst_res = worst_cross = 0.0
    for _ in range(500):
        r = parseval_check(random_series(rng, int(rng.integers(1, 65))))
        worst_res = max(worst_res, r.residual)
        worst_cross = max(worst_cross, abs(r.cross_term))
    elapsed = time.perf_counter() - start
    ok = worst_res <= 1e-9 and worst_cross <= 1e-10 and elapsed <= 30
    record(2, "Parseval, 500 series N<=64", ok,
           f"max |lhs-rhs| {worst_res:.2e} (<=1e-9), max |cross| {worst_cross:.2e} (<=1e-10), {elapsed:.1f}s (<=30s)")


def test_ac03_wirtinger():
    rng = np.random.default_rng(SEED + 3)
    worst_slack = np.inf
    mismatches = 0
    fired = 0
    for i in range(500):
        if i % 5 == 0:
            order = int(rng.integers(1, 9))
            a = np.zeros(order)
            b = np.zeros(order)
            a[0], b[0] = rng.uniform(-1, 1, 2)
            c = FourierCoeffs(0.0, a, b)
        else:
            c = random_series(rng, int(rng.integers(1, 33)), zero_mean=True)
        supported_on_first = not np.any(c.a[1:]) and not np.any(c.b[1:])
        r = wirtinger_check(c)
        worst_slack = min(worst_slack, r.slack)
        if (r.equality_witness is not None) != supported_on_first:
            mismatches += 1
        if r.equality_witness is not None:
            fired += 1
            if abs(r.slack) > 1e-9 or r.equality_witness != (c.a[0], c.b[0]):
                mismatches += 1
    ok = worst_slack >= -1e-9 and mismatches == 0
    record(3, "Wirtinger, 500 zero-mean series", ok,
           f"min slack {worst_slack:.2e} (>=-1e-9), witness fired {fired}x, mismatches {mismatches}")


def test_ac04_derivative_parseval():
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for order in range(1, 33):
        for _ in range(4):
            lhs, rhs = deriv_parseval_check(random_series(rng, order))
            worst = max(worst, abs(lhs - rhs))
    record(4, "derivative Parseval N<=32", worst <= 1e-9, f"max |lhs-rhs| {worst:.2e} (<=1e-9)")


def test_ac05_circle_equality():
    details = []
    ok = True
    for r in (0.5, 1.0, 3.0):
        rep = hurwitz_report(circle(r))
        dr = abs(rep.ratio - 1)
        ok &= dr <= 1e-8 and rep.deficit <= 1e-8 * rep.L**2
        details.append(f"r={r}: |ratio-1| {dr:.1e}, deficit/L^2 {rep.deficit / rep.L**2:.1e}")
    record(5, "circle equality", ok, "; ".join(details))


def test_ac06_ellipse():
    rep = hurwitz_report(ellipse(2, 1))
    dA = abs(rep.A_shoelace - 2 * PI)
    dL = abs(rep.L - ELLIPSE_2_1_PERIMETER)
    ok = dA <= 1e-9 and dL <= 1e-8 and rep.deficit > 0 and rep.chain_ok
    record(6, "ellipse(2,1)", ok,
           f"|A-2pi| {dA:.1e} (<=1e-9), |L-oracle| {dL:.1e} (<=1e-8), deficit {rep.deficit:.4f}, chain_ok {rep.chain_ok}")


def test_ac07_ibp(random_reports):
    worst = 0.0
    for c in curve_fixtures().values():
        rc = make_reparam(reparametrize_unit_speed(c))
        worst = max(worst, ibp_check(rc) / (1 + abs(area_simplified(rc))))
    reports, _ = random_reports
    for _, rep in reports:
        worst = max(worst, rep.ibp_residual / (1 + abs(rep.A_simplified)))
    record(7, "integration by parts", worst <= 1e-8,
           f"max residual/(1+|int f g'|) {worst:.2e} (<=1e-8) over fixtures + 100 random curves")


def test_ac08_arc_constraint():
    worst = 0.0
    for c in curve_fixtures().values():
        worst = max(worst, arc_constraint_residual(make_reparam(reparametrize_unit_speed(c))))
    record(8, "arc-length constraint", worst <= 1e-6, f"max |f'^2+g'^2-(L/2pi)^2| {worst:.2e} (<=1e-6)")


def test_ac09_main_theorem(random_reports):
    reports, elapsed = random_reports
    worst_excess = -np.inf
    chain_bad = 0
    for _, rep in reports:
        worst_excess = max(worst_excess, 4 * PI * rep.A / rep.L**2 - 1)
        monotone = (rep.A_simplified <= rep.amgm_bound + 1e-9
                    and rep.amgm_bound <= rep.wirtinger_bound + 1e-9
                    and abs(rep.wirtinger_bound - rep.L**2 / (4 * PI)) <= 1e-8 * rep.L**2)
        chain_bad += not (monotone and rep.chain_ok)
    ok = worst_excess <= 1e-8 and chain_bad == 0 and elapsed <= 60
    record(9, "isoperimetric inequality, 100 random curves", ok,
           f"max 4piA/L^2 - 1 = {worst_excess:.3e} (<=1e-8), chain failures {chain_bad}, {elapsed:.1f}s (<=60s)")


def test_ac10_reparam_roundtrip():
    worst_len = worst_speed = 0.0
    for c in curve_fixtures().values():
        u = reparametrize_unit_speed(c)
        p0 = perimeter(c)
        worst_len = max(worst_len, abs(perimeter(u) - p0) / p0)
        worst_speed = max(worst_speed, unit_speed_error(u, 256))
    ok = worst_len <= 1e-8 and worst_speed <= 1e-6
    record(10, "reparametrization round trip", ok,
           f"max rel perimeter change {worst_len:.1e} (<=1e-8), max |speed-1| {worst_speed:.1e} (<=1e-6)")
