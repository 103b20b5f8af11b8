"""Acceptance criteria, one test each.

Every test prints a single ``CRITERION k PASS|FAIL ...`` line, visible even
under captured output.  Run with ``pytest tests/test_acceptance.py -v``.
"""
import json
import math

import numpy as np
import pytest

from kochtube.cantor import fourier_g, h_geometric, mu
from kochtube.cli import main
from kochtube.errorblock import b_direct, b_series, block_over_eps2
from kochtube.geometry import oracle_inner_area
from kochtube.scaling import D, P, index_from_x, index_of, piece_counts
from kochtube.tube import (
    coeff_b,
    coeff_b_short,
    coeff_tau,
    coeff_tau_short,
    coefficient_table,
    v_direct,
    v_tube,
)

# 100 off-jump points over three periods in x
OFF_JUMP_X = np.concatenate([k + np.linspace(0.05, 0.95, 34) for k in (1, 2, 3)])[:100]


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {k} {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return emit


@pytest.mark.slow
def test_criterion_1_oracle_equivalence(report):
    eps = np.geomspace(3.0**-4.5, 3.0**-0.6, 10)
    bad = []
    worst = 0.0
    for e in eps:
        o = oracle_inner_area(float(e), 10_000_000, seed=2024)
        vd = v_direct(float(e))
        gap = abs(vd - o.area_mean)
        rel = gap / o.area_mean
        worst = max(worst, rel)
        if not (gap <= 3.0 * o.std_error + o.bias_bound and rel < 0.01):
            bad.append(f"x={index_of(float(e)).x:.3f} v={vd:.6f} oracle={o.area_mean:.6f} "
                       f"se={o.std_error:.1e} bias={o.bias_bound:.1e}")
    ok = not bad
    report(1, ok, f"worst rel gap {worst:.2e}; failing: {bad}")
    assert ok


def test_criterion_2_rearranged_block_series(report):
    xs = np.random.default_rng(2).uniform(0.0, 10.0, 50)
    worst = 0.0
    for x in xs:
        idx = index_from_x(float(x))
        d = b_direct(idx).value
        worst = max(worst, abs(b_series(idx).value - d) / d)
    ok = worst <= 1e-12
    report(2, ok, f"max rel diff {worst:.2e} over 50 eps")
    assert ok


def test_criterion_3_dual_coefficient_forms(report):
    worst = 0.0
    for n in range(-10, 11):
        for long, short in ((coeff_b, coeff_b_short), (coeff_tau, coeff_tau_short)):
            a, b = long(n, 40), short(n, 40)
            worst = max(worst, abs(a - b) / abs(a))
    ok = worst <= 1e-12
    report(3, ok, f"max rel diff {worst:.2e} for |n| <= 10, M = 40")
    assert ok


def test_criterion_4_tube_vs_direct(report):
    worst = 0.0
    for x in OFF_JUMP_X:
        idx = index_from_x(float(x))
        vd = v_direct(idx)
        worst = max(worst, abs(v_tube(idx, N=200, A_max=400).V - vd) / vd)
    ok = worst <= 5e-3
    report(4, ok, f"max rel diff {worst:.2e} on {len(OFF_JUMP_X)} off-jump points")
    assert ok


def test_criterion_5_reality(report):
    xs = np.concatenate([OFF_JUMP_X, np.random.default_rng(5).uniform(0.6, 6.0, 100)])
    worst = 0.0
    for x in xs:
        idx = index_from_x(float(x))
        if idx.frac == 0.0:
            continue
        worst = max(worst, v_tube(idx).imag_residue)
    ok = worst <= 1e-9
    report(5, ok, f"max imaginary residue {worst:.2e} over {len(xs)} points")
    assert ok


def test_criterion_6_periodicity(report):
    rng = np.random.default_rng(6)
    fails = []
    worst = {"frac": 0.0, "B/eps^2": 0.0, "h": 0.0, "G1": 0.0, "G2": 0.0}
    for x in rng.uniform(1.0, 4.0, 30):
        a, b = index_from_x(float(x)), index_from_x(float(x) + 1.0)
        d = abs(a.frac - b.frac)
        worst["frac"] = max(worst["frac"], min(d, 1.0 - d))
        ba, bb = block_over_eps2(a), block_over_eps2(b)
        worst["B/eps^2"] = max(worst["B/eps^2"], abs(ba - bb) / ba)
        worst["h"] = max(worst["h"], abs(h_geometric(a) - h_geometric(b)))
        if min(a.frac, 1.0 - a.frac) < 0.02:
            continue
        ta, tb = v_tube(a), v_tube(b)
        g1a, g1b = ta.term_G1 / a.epsilon ** (2 - D), tb.term_G1 / b.epsilon ** (2 - D)
        g2a, g2b = ta.term_G2 / a.epsilon**2, tb.term_G2 / b.epsilon**2
        worst["G1"] = max(worst["G1"], abs(g1a - g1b) / abs(g1a))
        worst["G2"] = max(worst["G2"], abs(g2a - g2b) / abs(g2a))
    tol = {"frac": 1e-12, "B/eps^2": 1e-12, "h": 2e-10, "G1": 1e-3, "G2": 1e-3}
    fails = [k for k in tol if worst[k] > tol[k]]
    ok = not fails
    report(6, ok, " ".join(f"{k}={v:.1e}" for k, v in worst.items()))
    assert ok


def test_criterion_7_mu_well_defined(report):
    vals = [mu(k) for k in range(1, 7)]
    drift = max(vals) - min(vals)
    lit = [mu(k, limit=False) for k in range(1, 7)]
    drift_lit = max(lit) - min(lit)
    ok = drift <= 1e-9 and drift_lit <= 1e-9 and 0.0 < vals[0] < 1.0
    report(7, ok, f"mu={vals[0]:.10f} drift={drift:.1e} (literal {lit[0]:.10f}, drift {drift_lit:.1e})")
    assert ok


def test_criterion_8_coefficient_decay(report):
    t = coefficient_table(200, 30)
    g = fourier_g(400)
    n = np.arange(1, 201)
    seqs = {
        "n b_n": np.abs(n * t.b[201:]),
        "n tau_n": np.abs(n * t.tau[201:]),
        "a g_a": np.abs(n * g.window(1, 200)),
    }
    # bounded: no growth from the first hundred indices to the second
    growth = {k: v[100:].max() / v[:100].max() for k, v in seqs.items()}
    ok = all(math.isfinite(r) and r <= 1.1 for r in growth.values())
    report(8, ok, " ".join(f"{k}: sup {seqs[k].max():.3e} growth {r:.3f}" for k, r in growth.items()))
    assert ok


def test_criterion_9_complex_dimensions(report, capsys):
    assert main(["dims", "--n", "10"]) == 0
    dims = json.loads(capsys.readouterr().out)["dimensions"]
    pts = {(d["re"], d["im"]) for d in dims}
    lines = {d["re"] for d in dims}
    ok = lines == {D, 0.0} and len(dims) == 42
    for re in (D, 0.0):
        ims = sorted(d["im"] for d in dims if d["re"] == re)
        ok &= bool(np.allclose(np.diff(ims), P, rtol=1e-12))
    ok &= all((re, -im) in pts for re, im in pts)
    report(9, ok, f"{len(dims)} values on Re in {sorted(lines)}, spacing p={P:.6f}")
    assert ok


def test_criterion_10_counting(report):
    ok = True
    for n in range(1, 11):
        pc = piece_counts(n)
        c, p = pc.rectangles - pc.triangles, pc.triangles
        ok &= 3 * c == 4**n - 4 and p == (2 * (4**n + 2)) // 3
        ok &= pc.wedges == 4 * piece_counts(n - 1).wedges + 2
        ok &= all(isinstance(v, int) for v in pc.as_tuple())
    report(10, ok, "integer identities for n = 1..10")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
