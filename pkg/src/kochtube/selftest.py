"""Fast invariant checks behind ``kochtube selftest``."""
from __future__ import annotations

import math

import numpy as np

from . import cantor, errorblock, prelim, scaling, tube


def _check(results, name, ok, detail):
    results.append((name, bool(ok), detail))


def run_checks() -> list[tuple[str, bool, str]]:
    out: list[tuple[str, bool, str]] = []

    idx = scaling.index_of(3.0**-2.5)
    _check(out, "endpoint index", (idx.n, idx.frac) == (2, 0.0), f"n={idx.n} frac={idx.frac}")

    ok = all(
        scaling.piece_counts(n).wedges == 4 * scaling.piece_counts(n - 1).wedges + 2
        for n in range(1, 11)
    )
    _check(out, "wedge recurrence", ok, "n = 1..10")

    worst = 0.0
    for x in np.linspace(0.0, 4.9, 25):
        i = scaling.index_from_x(float(x))
        a, b = errorblock.b_direct(i).value, errorblock.b_series(i).value
        worst = max(worst, abs(a - b) / a)
    _check(out, "block series rearrangement", worst <= 1e-12, f"max rel {worst:.2e}")

    ns = np.arange(-10, 11)
    d_b = np.max(np.abs(tube.coeff_b(ns, 40) - tube.coeff_b_short(ns, 40)) / np.abs(tube.coeff_b(ns, 40)))
    d_t = np.max(np.abs(tube.coeff_tau(ns, 40) - tube.coeff_tau_short(ns, 40)) / np.abs(tube.coeff_tau(ns, 40)))
    _check(out, "dual coefficient forms", max(d_b, d_t) <= 1e-12, f"max rel {max(d_b, d_t):.2e}")

    drift = max(abs(cantor.mu(k) - cantor.mu(1)) for k in range(1, 7))
    _check(out, "mu drift", drift <= 1e-9 and 0.0 < cantor.MU < 1.0, f"mu={cantor.MU:.12f} drift={drift:.1e}")

    worst = 0.0
    resid = 0.0
    for x in (0.3, 1.45, 2.6, 3.8):
        i = scaling.index_from_x(x)
        t = tube.v_tube(i)
        d = tube.v_direct(i)
        worst = max(worst, abs(t.V - d) / d)
        resid = max(resid, t.imag_residue)
    _check(out, "tube vs direct", worst <= 5e-3, f"max rel {worst:.2e}")
    _check(out, "reality", resid <= 1e-9, f"max imag {resid:.1e}")

    x = 1.37
    per = abs(prelim.periodic_profile(scaling.index_from_x(x).frac)
              - prelim.periodic_profile(scaling.index_from_x(x + 1).frac))
    _check(out, "periodicity", per <= 1e-12, f"{per:.1e}")

    dims = tube.complex_dimensions(3, with_magnitudes=False)
    ok = len(dims) == 14 and all(
        math.isclose(d.value.imag, d.n * scaling.P, abs_tol=1e-12) for d in dims
    )
    _check(out, "complex dimensions", ok, f"{len(dims)} values")
    return out
