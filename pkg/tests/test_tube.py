import math

import numpy as np
import pytest

from kochtube.cantor import fourier_g, h_of_frac
from kochtube.errorblock import total_error
from kochtube.errors import ConfigurationError, DomainError
from kochtube.prelim import QUAD_CONST, prelim_coefficient
from kochtube.scaling import D, LOG3, P, index_from_x
from kochtube.tube import (
    G1,
    G1_direct,
    G2,
    G2_direct,
    coeff_b,
    coeff_b_short,
    coeff_tau,
    coeff_tau_short,
    coefficient_table,
    complex_dimensions,
    flatten_phi_psi,
    vf_approx,
    v_direct,
    v_tube,
)

OFF_JUMP = np.linspace(0.05, 0.95, 10)


@pytest.mark.parametrize("n", [0, 1, -1, 7, -7])
def test_dual_forms_of_b(n):
    assert coeff_b(n, 40) == pytest.approx(coeff_b_short(n, 40), rel=1e-13, abs=1e-16)


@pytest.mark.parametrize("n", [0, 3, -3])
def test_dual_forms_of_tau(n):
    assert coeff_tau(n, 40) == pytest.approx(coeff_tau_short(n, 40), rel=1e-13, abs=1e-16)


def test_central_coefficients():
    b0, t0 = coeff_b(0, 50), coeff_tau(0, 50)
    assert b0.imag == 0.0 and b0.real < 0.0
    assert t0.imag == 0.0 and t0.real < 0.0


def test_table_structure():
    t = coefficient_table(200, 30)
    for k in range(1, 201):
        for name in ("a", "b", "sigma", "tau"):
            assert t.at(name, -k) == t.at(name, k).conjugate()
    n = np.arange(1, 201)
    assert np.max(np.abs(n * t.b[201:])) < 1.0
    assert t.at("sigma", 0) == pytest.approx(-LOG3 * QUAD_CONST - t.at("tau", 0), rel=1e-14)
    for k in (1, -4, 9):
        assert t.at("sigma", k) == -t.at("tau", k)
    for k in (0, 2, -5):
        want = prelim_coefficient(k) + t.at("b", k) / 2
        assert t.at("a", k) == pytest.approx(complex(want), rel=1e-14, abs=1e-16)
    with pytest.raises(ConfigurationError):
        t.at("a", 201)


def test_fourier_paths_real_and_periodic():
    table, g = coefficient_table(100, 30), fourier_g(400)
    for f in OFF_JUMP:
        a, b = index_from_x(1.0 + f), index_from_x(3.0 + f)
        assert G1(a, table, g) == pytest.approx(G1(b, table, g), abs=1e-3)
        assert G2(a, table, g) == pytest.approx(G2(b, table, g), abs=1e-3)


def test_convolution_matches_direct_G1():
    table, g = coefficient_table(200, 30), fourier_g(400)
    for f in OFF_JUMP:
        idx = index_from_x(2.0 + f)
        want = G1_direct(idx, h_of_frac(idx.frac))
        assert G1(idx, table, g) == pytest.approx(want, rel=1e-4)


def test_G2_matches_direct():
    table, g = coefficient_table(200, 30), fourier_g(400)
    for f in (0.2, 0.5, 0.8):
        idx = index_from_x(1.0 + f)
        want = G2_direct(idx, h_of_frac(idx.frac))
        assert G2(idx, table, g) == pytest.approx(want, rel=5e-3)


def test_table_range_must_cover_convolution():
    with pytest.raises(ConfigurationError):
        v_tube(index_from_x(1.5), N=60, A_max=100)


def test_refused_at_jump():
    with pytest.raises(DomainError):
        v_tube(index_from_x(2.0))


def test_v_tube_positive_and_close_to_direct():
    for x in 1.0 + 2.0 * OFF_JUMP:
        idx = index_from_x(float(x))
        vt = v_tube(idx).V
        vd = v_direct(idx)
        assert vt > 0.0
        assert abs(vt - vd) <= 2e-3 * vd


def test_scaled_volume_bounded():
    vals = [v_direct(index_from_x(x)) * index_from_x(x).epsilon ** (D - 2)
            for x in np.linspace(0.6, 8.0, 60)]
    assert 0.1 < min(vals) and max(vals) < 10.0


def test_v_direct_continuous_across_boundary():
    # h jumps at integer x, V does not
    k = 2
    lo = v_direct(index_from_x(k - 1e-9))
    hi = v_direct(index_from_x(float(k)))
    assert lo == pytest.approx(hi, rel=1e-6)


def test_v_direct_affine_in_h():
    idx = index_from_x(2.4)
    v1, v2, v3 = (v_direct(idx, h) for h in (0.1, 0.4, 0.7))
    assert (v2 - v1) == pytest.approx(v3 - v2, rel=1e-10)
    te = total_error(idx, 0.1)
    assert (v1 - v2) / 0.3 == pytest.approx(3.0 * te.B * te.p, rel=1e-10)


def test_against_earlier_approximation():
    for x in np.linspace(1.0, 4.99, 40):
        idx = index_from_x(float(x))
        r = v_direct(idx) / vf_approx(idx)
        assert 0.5 <= r <= 2.0


def test_flat_table_resynthesises_G1():
    table, g = coefficient_table(50, 30), fourier_g(400)
    flat = flatten_phi_psi(table, g)
    idx = index_from_x(1.37)
    z = np.sum(flat.phi * np.exp(-1j * flat.n * P * math.log(idx.epsilon)))
    assert z.real == pytest.approx(G1(idx, table, g), rel=1e-12)
    assert abs(z.imag) <= 1e-9


def test_complex_dimensions_structure():
    dims = complex_dimensions(3)
    assert len(dims) == 14
    assert {d.line for d in dims} == {"D", "0"}
    for d in dims:
        assert d.value.imag == pytest.approx(d.n * P)
        assert d.value.real == (D if d.line == "D" else 0.0)
        assert d.magnitude >= 0.0


def test_truncation_convergence_in_max_norm():
    xs = 2.0 + np.linspace(0.05, 0.95, 40)

    def vals(N):
        return np.array([v_tube(index_from_x(float(x)), N=N, A_max=2 * N).V for x in xs])

    v100, v200, v400 = vals(100), vals(200), vals(400)
    assert np.max(np.abs(v400 - v200)) < np.max(np.abs(v200 - v100))
