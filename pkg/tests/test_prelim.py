import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from kochtube.errors import DomainError
from kochtube.prelim import (
    QUAD_CONST,
    fourier_pow,
    periodic_profile,
    pre_v,
    pre_v_fourier,
    pre_v_fourier_complex,
    pre_v_n_form,
    prelim_coefficient,
)
from kochtube.scaling import D, LOG3, SQRT3, index_from_x


def test_value_at_top_of_range():
    eps = 3.0**-0.5
    want = eps ** (2 - D) * (3 * SQRT3 / 40 + SQRT3 / 2 + math.pi / 18 - SQRT3 / 6) - (
        math.pi / 3 + 2 * SQRT3
    ) / 9
    assert pre_v(eps).value == pytest.approx(want, rel=1e-14)


def test_parts_sum_to_value():
    rng = np.random.default_rng(3)
    for x in rng.uniform(0, 8, 1000):
        pv = pre_v(index_from_x(float(x)))
        rect, wedge, tri, fringe = pv.parts
        assert rect + wedge - tri + fringe == pytest.approx(pv.value, rel=1e-12)
        assert pv.value > 0


def test_against_counts_times_areas():
    for n in range(6):
        idx = index_from_x(n + 0.5)
        assert pre_v(idx).value == pytest.approx(pre_v_n_form(idx), rel=1e-12)


def test_fourier_pow_examples():
    assert abs(fourier_pow(4.0, 0.5, 2000) - 4.0**-0.5) <= 5e-3
    assert abs(fourier_pow(9.0, 0.25, 500) - 9.0**-0.25) <= 1e-2
    # at the jump the symmetric sums approach the midpoint
    assert fourier_pow(4.0, 3.0, 20000) == pytest.approx(0.625, abs=1e-4)


@pytest.mark.parametrize("a", [0.0, -2.0, 1.0])
def test_fourier_pow_domain(a):
    with pytest.raises(DomainError):
        fourier_pow(a, 0.3, 10)


def test_fourier_series_converges_to_closed_form():
    eps = 3.0**-1.3
    v = pre_v(eps).value
    assert abs(pre_v_fourier(eps, 2000) - v) <= 1e-2 * v


@given(st.floats(min_value=0.01, max_value=6.0), st.integers(min_value=1, max_value=300))
def test_imaginary_residue(x, N):
    idx = index_from_x(x)
    if idx.frac == 0.0:
        return
    assert abs(pre_v_fourier_complex(idx, N).imag) <= 1e-10


def test_fourier_refused_at_jump():
    with pytest.raises(DomainError):
        pre_v_fourier(3.0**-1.5, 50)


def test_zero_mode_is_period_average():
    avg, _ = quad(periodic_profile, 0.0, 1.0, epsabs=1e-14)
    assert (prelim_coefficient(0).real / (3.0 * LOG3)) == pytest.approx(avg, rel=1e-12)


@given(st.floats(min_value=0.0, max_value=5.0))
def test_multiplicative_periodicity(x):
    a = index_from_x(x)
    b = index_from_x(x + 1.0)

    def scaled(idx):
        return idx.epsilon ** -(2 - D) * (pre_v(idx).value + idx.epsilon**2 / 3 * QUAD_CONST)

    assert scaled(a) == pytest.approx(scaled(b), rel=1e-12)

