"""Acceptance suite: one group of checks per criterion.

Every check is registered with :func:`conftest.record` before it is asserted,
so the terminal summary lists each criterion as PASS or FAIL.
"""

import math
import time

import numpy as np
import pytest

from conftest import record
from plategap import (Empty, PRESET, PolygonalTruss, ResonantEigen, SeparableSine, SineModes, SinhAlpha,
                      SymmetricCrossN, delta_gap, max_gap, minimaxmax, solve_stiffened_galerkin, solve_weakened)
from plategap.cross import beta_bar, beta_m, limit_gap, mode_constants, omega_bar, sin_g, smeared_delta_gap
from plategap.forces import CoshAlpha, scale_force
from plategap.geometry import parity_norm_check
from plategap.modal.eigen import bracket, torsional_eigenpair
from plategap.optimizer import evaluate, resonant_class, sine_class, truss_class
from plategap.series import GapSeries, phi_eval, upsilon, upsilon_bar
from plategap.tables import SCALE, TRUSS_TERMS, table_1, table_1bis, table_2, truss_ordering


@pytest.fixture(scope="module")
def truss_table():
    return table_2()


# 1. delta-pair table


def test_criterion_1_delta_table():
    t0 = time.perf_counter()
    res = table_1bis(PRESET, 10_000)
    elapsed = time.perf_counter() - t0
    err = res.relative_errors()
    for i, row in enumerate(res.rows):
        for j, col in enumerate(res.cols):
            record(1, f"{row}:{col}", err[i, j] <= 1e-3, f"rel err {err[i, j]:.2e}")
    record(1, "runtime < 30 s", elapsed < 30, f"{elapsed:.1f} s")
    assert np.all(err <= 1e-3), res.diff_csv()
    assert elapsed < 30


# 2. cross tables


@pytest.mark.parametrize("which", ["1a", "1b"])
def test_criterion_2_cross_tables(which):
    t0 = time.perf_counter()
    res = table_1(which, PRESET, 250)
    elapsed = time.perf_counter() - t0
    err, tol = res.relative_errors(), res.tolerances()
    for i, row in enumerate(res.rows):
        for j, col in enumerate(res.cols):
            record(2, f"{which}:{row}:{col}", err[i, j] <= tol[i, j], f"rel err {err[i, j]:.2e}")
    record(2, f"{which} runtime < 10 s", elapsed < 10, f"{elapsed:.2f} s")
    assert elapsed < 10
    assert np.all(err <= tol), res.diff_csv()


# 3. minimaxmax optima


def test_criterion_3_cross_optimum():
    Ds = [Empty()] + [SymmetricCrossN(n, 0.3, 0.01) for n in range(6)]
    rep = minimaxmax(Ds, sine_class(10), cfg=PRESET, M=250)
    ok_pair = rep.optimum == ("f1", "D0")
    ok_val = abs(rep.value * SCALE - 47.113) <= 5e-3 * 47.113
    record(3, "cross optimum (f1, D0)", ok_pair, str(rep.optimum))
    record(3, "cross value 47.113e-4", ok_val, f"{rep.value * SCALE:.4f}e-4")
    assert ok_pair and ok_val


def test_criterion_3_truss_optimum():
    rep = minimaxmax(truss_class(PRESET), resonant_class(5), "modal", PRESET, TRUSS_TERMS)
    ok = rep.optimum == ("e1", "Strips")
    record(3, "truss optimum (e1, Strips)", ok, str(rep.optimum))
    assert ok


# 4. truss table by ratios


def test_criterion_4_truss_ratios(truss_table):
    got, ref = truss_table.compared()
    err = truss_table.relative_errors()
    bad = []
    for i, row in enumerate(truss_table.rows[1:], 1):
        for j, col in enumerate(truss_table.cols):
            ok = err[i, j] <= 0.02
            record(4, f"ratio {row}/∅ {col}", ok, f"{got[i, j]:.4f} vs {ref[i, j]:.4f}")
            if not ok:
                bad.append(f"{row}:{col}")
    assert not bad, truss_table.diff_csv()


def test_criterion_4_truss_ordering(truss_table):
    order = truss_ordering(truss_table)
    for col, ok in zip(truss_table.cols, order):
        record(4, f"ordering {col}", ok)
    assert all(order)


# 5. analytic vs modal


def test_criterion_5_oracle_equivalence():
    worst = 0.0
    for n in range(6):
        D = SymmetricCrossN(n, 0.3, 0.01)
        for f in sine_class(10):
            a = evaluate(f, D, PRESET, "analytic", 250)[1]
            m = evaluate(f, D, PRESET, "modal", 250)[1]
            rel = abs(a - m) / abs(a)
            worst = max(worst, rel)
            record(5, f"{D.label}:{f.label}", rel <= 1e-6, f"rel {rel:.1e}")
    assert worst <= 1e-6


# 6. first-order law in 1/alpha


@pytest.mark.parametrize("n", [1, 2, 3])
def test_criterion_6_asymptotic_law(n):
    alpha = 1000.5
    D = SymmetricCrossN(0, 0.3, 0.01)
    m = np.arange(1, 11)
    g = sin_g(n)
    diff = beta_m(m, alpha, g, D, PRESET) - beta_bar(m, g, D, PRESET)
    w = omega_bar(m, g, D, PRESET)
    for k, (dk, wk) in enumerate(zip(diff, w), 1):
        if wk == 0:
            ok = dk == 0
            detail = "zero mode"
        else:
            r = abs(alpha * dk + wk) / abs(wk)
            ok, detail = r < 0.01, f"{r:.1e}"
        record(6, f"n={n} m={k}", ok, detail)
        assert ok


# 7. property suites


@pytest.mark.parametrize("D", [Empty(), SymmetricCrossN(2, 0.3, 0.01), PolygonalTruss("Squares")],
                         ids=lambda D: D.label)
def test_criterion_7_even_force_zero_gap(D):
    f = SeparableSine(SineModes.single(1), CoshAlpha(50.5))
    v = solve_weakened(f, D, PRESET, 20)[2].max_gap
    ok = v < 1e-12
    record(7, f"even force {D.label}", ok, f"{v:.1e}")
    assert ok


def test_criterion_7_linearity():
    f = SeparableSine(SineModes(((1, 1.0), (2, 0.4))), SinhAlpha(80.5))
    D = PolygonalTruss("Strips")
    base = solve_weakened(f, D, PRESET, 30)[1].coefficients
    for lam in (-2.0, 0.5, 7.0):
        c = solve_weakened(scale_force(f, lam), D, PRESET, 30)[1].coefficients
        err = np.max(np.abs(c - lam * base)) / np.max(np.abs(lam * base))
        ok = err < 1e-12
        record(7, f"linearity lambda={lam}", ok, f"{err:.1e}")
        assert ok


def test_criterion_7_parity_norm_inequality():
    rng = np.random.default_rng(7)
    y = np.linspace(-PRESET.ell, PRESET.ell, 401)
    for p in (1, 2, math.inf):
        worst = -math.inf
        for _ in range(100):
            c = rng.standard_normal(8)
            phi = sum(ck * (y / PRESET.ell) ** k for k, ck in enumerate(c)) + rng.standard_normal(y.size) * 0.1
            n_odd, n, _ = parity_norm_check(phi, y, p)
            worst = max(worst, n_odd / n)
        ok = worst <= 1 + 1e-12
        record(7, f"odd-part norm p={p}", ok, f"max ratio {worst:.4f}")
        assert ok


def test_criterion_7_upsilon_decreasing():
    v = upsilon(np.arange(1, 501), PRESET)
    ok = bool(np.all(np.diff(v) < 0))
    record(7, "upsilon strictly decreasing", ok)
    assert ok


def test_criterion_7_phi():
    M = 2000
    ok_ends = phi_eval(0.0, M) == 0 and abs(phi_eval(math.pi, M)) < 1e-15 * phi_eval(math.pi / 2, M)
    x = np.linspace(0, math.pi, 1001)
    ok_arg = x[np.argmax(phi_eval(x, M))] == pytest.approx(math.pi / 2, abs=1e-12)
    record(7, "phi vanishes at 0 and pi", ok_ends)
    record(7, "phi grid argmax at pi/2", ok_arg)
    assert ok_ends and ok_arg


def test_criterion_7_eigen_brackets():
    for m in range(1, 6):
        lo, hi = bracket(m, PRESET)
        nu = torsional_eigenpair(m, PRESET).nu
        ok = lo < nu < hi
        record(7, f"eigen bracket m={m}", ok, f"nu={nu:.6g}")
        assert ok


@pytest.mark.parametrize("D", [Empty(), SymmetricCrossN(0, 0.3, 0.01), SymmetricCrossN(3, 0.5, 0.01)],
                         ids=lambda D: D.label)
def test_criterion_7_junction_and_boundary(D):
    s, ell = PRESET.sigma, PRESET.ell
    worst = 0.0
    for m in (1, 2, 5, 10):
        mc = mode_constants(m, 100.5, SineModes(((1, 1.0), (2, 0.5), (5, 0.3), (10, 0.1))), D, PRESET)
        P = mc.profile
        scale = max(abs(P(y, k)) * m ** (4 - k) for y in (ell, 0.0, -ell) for k in range(5))
        res = [abs(P(y, 2) - s * m * m * P(y, 0)) for y in (ell, -ell)]
        res += [abs(P(y, 3) - (2 - s) * m * m * P(y, 1)) for y in (ell, -ell)]
        if mc.eps:
            res += [abs(P(mc.eps, k, 1) - P(mc.eps, k, 2)) for k in range(4)]
            res += [abs(P(-mc.eps, k, 3) - P(-mc.eps, k, 2)) for k in range(4)]
        worst = max(worst, max(res) / scale)
    ok = worst < 1e-8
    record(7, f"junction/boundary residuals {D.label}", ok, f"{worst:.1e}")
    assert ok


@pytest.mark.parametrize("f", [ResonantEigen(1), ResonantEigen(3), SeparableSine(SineModes.single(2))],
                         ids=["e1", "e3", "f2"])
@pytest.mark.parametrize("D", [SymmetricCrossN(1, 0.3, 0.01), PolygonalTruss("Hexagons")], ids=lambda D: D.label)
def test_criterion_7_galerkin_modal_agreement(f, D):
    cfg0 = PRESET.replace(d=0.0)
    a = solve_stiffened_galerkin(f, D, cfg0, (16, 12))[2].max_gap
    b = solve_weakened(f, D, cfg0, 16)[2].max_gap
    rel = abs(a - b) / b
    ok = rel <= 1e-6
    record(7, f"d=0 galerkin/modal {D.label}:{f.__class__.__name__}", ok, f"{rel:.1e}")
    assert ok


# 8. gap bound for the strip


def _gamma_families():
    fams = {"sin m": [SineModes.single(m) for m in range(1, 21)],
            "tail 1/m^2": [SineModes(tuple((m, 1 / m**2) for m in range(N, N + 50))) for N in range(1, 51)],
            "tail (-1)^m/m": [SineModes(tuple((m, (-1) ** m / m) for m in range(N, N + 50))) for N in range(1, 51)],
            "sin m + sin 3m": [SineModes(((m, 1.0), (3 * m, 1.0))) for m in range(1, 21)],
            "odd sum": [SineModes(tuple((2 * k - 1, 1.0) for k in range(1, N + 1))) for N in range(1, 51)]}
    return fams


def test_criterion_8_strip_gap_bound():
    D = SymmetricCrossN(0, 0.0, 0.01)
    bound = upsilon_bar(1, PRESET)
    for name, family in _gamma_families().items():
        worst = max(max_gap(limit_gap(g, D, PRESET, 250))[1] for g in family)
        ok = worst <= bound * (1 + 1e-12)
        record(8, name, ok, f"max/bound = {worst / bound:.6f}")
        assert ok


# 9. smeared deltas


def test_criterion_9_smeared_delta_convergence():
    z = math.pi / 2
    ref = delta_gap(z, 10_000, PRESET)
    errs = []
    for alpha, eta in ((100.5, 0.1), (1000.5, 0.01), (10000.5, 0.001)):
        s = smeared_delta_gap(z, eta, alpha, PRESET, 10_000)
        e = max_gap(GapSeries(s.coefficients - ref.coefficients))[1]
        errs.append(e)
        record(9, f"alpha={alpha} eta={eta}", True, f"sup error {e:.3e}")
    ok = errs[0] > errs[1] > errs[2]
    record(9, "sup error decreasing", ok, ", ".join(f"{e:.2e}" for e in errs))
    record(9, "converges to the delta gap", errs[-1] < 0.01 * max_gap(ref)[1], f"{errs[-1]:.2e}")
    assert ok and errs[-1] < 0.01 * max_gap(ref)[1]
