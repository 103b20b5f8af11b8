"""Assembly of the tube formula V(eps) = G1(eps) eps^(2-D) + G2(eps) eps^2.

Two evaluation paths are provided.  ``v_direct`` uses the closed forms of the
preliminary area and of the block error, so its only approximation is in h.
``v_tube`` sums the truncated Fourier series for G1 and G2, the coefficients
of b(eps) h(eps) being the discrete convolution of b_n with g_alpha.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cantor import GTable, fourier_g
from .cantor import h_value as h_for
from .errorblock import M_DEFAULT as M_BLOCK, block_over_eps2, total_error
from .errors import AccuracyError, ConfigurationError, DomainError
from .prelim import QUAD_CONST, periodic_profile, pre_v, prelim_coefficient
from .scaling import D, LOG3, P, SQRT3, EpsilonIndex, as_index

N_DEFAULT = 200
M_DEFAULT = 30
A_MAX_DEFAULT = 400
REALITY_TOL = 1e-9

SIGMA0_SHIFT = -LOG3 * QUAD_CONST


def _catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


# Every block-series coefficient carries sqrt3^(2m+1) from X_1 = 3^({x}+1/2).
def _weight_b(m: int) -> float:
    """(2m)! (3^(2m+1) - 4) / (4^(2m+1) (m!)^2 (4m^2 - 1) (3^(2m+1) - 2)) * sqrt3^(2m+1)."""
    q = 3 ** (2 * m + 1)
    fr = Fraction(math.factorial(2 * m) * (q - 4) * 3**m,
                  4 ** (2 * m + 1) * math.factorial(m) ** 2 * (4 * m * m - 1) * (q - 2))
    return float(fr) * SQRT3


def _weight_b_short(m: int) -> float:
    """(2m-2)! (3^(2m+1) - 4) / (2^(4m+1) (m-1)! m! (2m+1) (3^(2m+1) - 2)) * sqrt3^(2m+1)."""
    q = 3 ** (2 * m + 1)
    fr = Fraction(_catalan(m - 1) * (q - 4) * 3**m, 2 ** (4 * m + 1) * (2 * m + 1) * (q - 2))
    return float(fr) * SQRT3


def _weight_tau(m: int) -> float:
    """(2m)! (3^(2m+1) - 1) / (4^(2m-1) (m!)^2 (4m^2 - 1) (3^(2m+1) - 2)) * sqrt3^(2m+1)."""
    q = 3 ** (2 * m + 1)
    fr = Fraction(math.factorial(2 * m) * (q - 1) * 3**m,
                  4 ** (2 * m - 1) * math.factorial(m) ** 2 * (4 * m * m - 1) * (q - 2))
    return float(fr) * SQRT3


def _weight_tau_short(m: int) -> float:
    """(2m-2)! (3^(2m+1) - 1) / (2^(4m-3) (m-1)! m! (2m+1) (3^(2m+1) - 2)) * sqrt3^(2m+1)."""
    q = 3 ** (2 * m + 1)
    fr = Fraction(_catalan(m - 1) * (q - 1) * 3**m, 2 ** (4 * m - 3) * (2 * m + 1) * (q - 2))
    return float(fr) * SQRT3


def _check_M(M: int) -> None:
    if M < 1:
        raise ConfigurationError("M must be >= 1")


def _series(n, M: int, weight, shift: float) -> np.ndarray:
    _check_M(M)
    n = np.atleast_1d(np.asarray(n, dtype=float))
    total = np.zeros(n.shape, dtype=complex)
    for m in range(1, M + 1):
        total += weight(m) / (shift - 2 * m - 1 + 1j * P * n)
    return total


def coeff_b(n, M: int = M_DEFAULT):
    """b_n, sum over m = 1..M of the long (double factorial) form."""
    out = _series(n, M, _weight_b, D)
    return out if np.ndim(n) else complex(out[0])


def coeff_b_short(n, M: int = M_DEFAULT):
    """b_n written with (2m-2)! / ((m-1)! m!); algebraically equal to coeff_b."""
    out = _series(n, M, _weight_b_short, D)
    return out if np.ndim(n) else complex(out[0])


def coeff_tau(n, M: int = M_DEFAULT):
    out = _series(n, M, _weight_tau, 0.0)
    return out if np.ndim(n) else complex(out[0])


def coeff_tau_short(n, M: int = M_DEFAULT):
    out = _series(n, M, _weight_tau_short, 0.0)
    return out if np.ndim(n) else complex(out[0])


def coeff_a(n, M: int = M_DEFAULT):
    out = prelim_coefficient(np.atleast_1d(n)) + 0.5 * _series(n, M, _weight_b, D)
    return out if np.ndim(n) else complex(out[0])


def coeff_sigma(n, M: int = M_DEFAULT):
    n_arr = np.atleast_1d(np.asarray(n))
    out = np.where(n_arr == 0, SIGMA0_SHIFT, 0.0) - _series(n_arr, M, _weight_tau, 0.0)
    return out if np.ndim(n) else complex(out[0])


@dataclass(frozen=True)
class CoefficientTable:
    N_max: int
    M: int
    n: np.ndarray
    a: np.ndarray
    b: np.ndarray
    sigma: np.ndarray
    tau: np.ndarray
    D: float = D
    p: float = P

    def __post_init__(self):
        for arr in (self.n, self.a, self.b, self.sigma, self.tau):
            arr.setflags(write=False)

    def at(self, name: str, k: int) -> complex:
        if abs(k) > self.N_max:
            raise ConfigurationError(f"|n|={abs(k)} exceeds table range {self.N_max}")
        return complex(getattr(self, name)[k + self.N_max])

    def to_json(self) -> str:
        doc = {"meta": {"N_max": self.N_max, "M": self.M, "D": self.D, "p": self.p}}
        for name in ("a", "b", "sigma", "tau"):
            doc[name] = [[int(k), float(z.real), float(z.imag)]
                         for k, z in zip(self.n, getattr(self, name))]
        return json.dumps(doc)


@lru_cache(maxsize=16)
def coefficient_table(N: int = N_DEFAULT, M: int = M_DEFAULT) -> CoefficientTable:
    if N < 0:
        raise ConfigurationError("N must be >= 0")
    n = np.arange(-N, N + 1)
    b = coeff_b(n, M)
    tau = coeff_tau(n, M)
    a = prelim_coefficient(n) + 0.5 * b
    sigma = np.where(n == 0, SIGMA0_SHIFT, 0.0) - tau
    # enforce the conjugate pairing exactly and real central terms
    for arr in (a, b, sigma, tau):
        if N:
            arr[:N] = np.conj(arr[:N:-1])
        arr[N] = arr[N].real
    return CoefficientTable(N, M, n, a, b, sigma, tau)


# closed forms of the periodic factors, functions of {x} only

def a_closed(idx: EpsilonIndex) -> float:
    return 3.0 * LOG3 * periodic_profile(idx.frac) + 0.5 * b_closed(idx)


def b_closed(idx: EpsilonIndex) -> float:
    return -LOG3 * 4.0 ** (-idx.frac) * block_over_eps2(idx)


def tau_closed(idx: EpsilonIndex) -> float:
    return -4.0 * LOG3 * block_over_eps2(idx)


def sigma_closed(idx: EpsilonIndex) -> float:
    return SIGMA0_SHIFT - tau_closed(idx)


def G1_direct(epsilon, h: float) -> float:
    idx = as_index(epsilon)
    return (a_closed(idx) + b_closed(idx) * h) / LOG3


def G2_direct(epsilon, h: float) -> float:
    idx = as_index(epsilon)
    return -QUAD_CONST + 4.0 * block_over_eps2(idx) * (1.0 - h)


def _convolve(c: np.ndarray, N: int, g: GTable) -> np.ndarray:
    """sum_{|alpha| <= N} c_alpha g_{n - alpha} for |n| <= N."""
    if g.A_max < 2 * N:
        raise ConfigurationError(f"g-table range {g.A_max} < 2N = {2 * N}")
    window = g.window(-2 * N, 2 * N)
    full = np.convolve(c, window)
    # full[k] pairs with n = k - 3N; keep |n| <= N
    return full[2 * N: 4 * N + 1]


@dataclass(frozen=True)
class FlatTable:
    """phi_n and psi_n with G1 = sum phi_n eps^(-inp), G2 = sum psi_n eps^(-inp)."""

    n: np.ndarray
    phi: np.ndarray
    psi: np.ndarray


def flatten_phi_psi(table: CoefficientTable, g: GTable) -> FlatTable:
    N = table.N_max
    sign = np.where(table.n % 2 == 0, 1.0, -1.0)
    phi = sign * (table.a + _convolve(table.b, N, g)) / LOG3
    psi = sign * (table.sigma + _convolve(table.tau, N, g)) / LOG3
    return FlatTable(table.n.copy(), phi, psi)


def _check_off_jump(idx: EpsilonIndex) -> None:
    if idx.frac == 0.0:
        raise DomainError("Fourier evaluation refused at a jump point ({x} = 0)")


def _synth(flat: FlatTable, idx: EpsilonIndex) -> tuple[complex, complex]:
    # eps^(-inp) = (-1)^n e^{2 pi i n x}; phi already carries the (-1)^n
    sign = np.where(flat.n % 2 == 0, 1.0, -1.0)
    phase = sign * np.exp(2j * np.pi * flat.n * idx.x)
    return complex(np.sum(flat.phi * phase)), complex(np.sum(flat.psi * phase))


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > REALITY_TOL:
        raise AccuracyError(f"imaginary residue of {what} exceeds {REALITY_TOL}", abs(z.imag))
    return z.real


@lru_cache(maxsize=16)
def _flat(N: int, M: int, A_max: int, h_mode: str) -> FlatTable:
    if A_max < 2 * N:
        raise ConfigurationError(f"A_max={A_max} must be >= 2N = {2 * N}")
    return flatten_phi_psi(coefficient_table(N, M), fourier_g(A_max, h_mode))


def G1(epsilon, table: CoefficientTable, g: GTable) -> float:
    idx = as_index(epsilon)
    _check_off_jump(idx)
    return _real(_synth(flatten_phi_psi(table, g), idx)[0], "G1")


def G2(epsilon, table: CoefficientTable, g: GTable) -> float:
    idx = as_index(epsilon)
    _check_off_jump(idx)
    return _real(_synth(flatten_phi_psi(table, g), idx)[1], "G2")


@dataclass(frozen=True)
class TubeEvaluation:
    epsilon: float
    V: float
    term_G1: float
    term_G2: float
    h: float
    h_mode: str
    truncation_note: tuple
    imag_residue: float


def v_tube(epsilon, N: int = N_DEFAULT, M: int = M_DEFAULT, A_max: int = A_MAX_DEFAULT,
           h_mode: str = "geometric") -> TubeEvaluation:
    idx = as_index(epsilon)
    _check_off_jump(idx)
    flat = _flat(N, M, A_max, h_mode)
    g1, g2 = _synth(flat, idx)
    eps = idx.epsilon
    t1 = g1 * eps ** (2.0 - D)
    t2 = g2 * eps**2
    v = t1 + t2
    resid = max(abs(g1.imag), abs(g2.imag), abs(v.imag))
    if resid > REALITY_TOL:
        raise AccuracyError("imaginary residue of the tube formula too large", resid)
    return TubeEvaluation(eps, v.real, t1.real, t2.real, h_for(idx, h_mode), h_mode,
                          (N, M, A_max), resid)


def direct_evaluation(epsilon, h: float | None = None, h_mode: str = "geometric",
                      M: int = M_BLOCK) -> TubeEvaluation:
    """V = 3 (Vpre - E) from the closed forms, split into its two power terms."""
    idx = as_index(epsilon)
    if h is None:
        h = h_for(idx, h_mode)
        note_mode = h_mode
    else:
        note_mode = "given"
    eps = idx.epsilon
    pre = pre_v(idx)
    err = total_error(idx, h, M)
    t1 = 3.0 * (eps ** (2.0 - D) * periodic_profile(idx.frac) - err.dim_part)
    t2 = 3.0 * (-eps**2 / 3.0 * QUAD_CONST - err.square_part)
    v = 3.0 * (pre.value - err.E)
    return TubeEvaluation(eps, v, t1, t2, h, note_mode, (0, M, 0), 0.0)


def v_direct(epsilon, h_value: float | None = None, h_mode: str = "geometric") -> float:
    return direct_evaluation(epsilon, h_value, h_mode).V


@dataclass(frozen=True)
class ComplexDimension:
    value: complex
    line: str  # "D" or "0"
    n: int
    magnitude: float


def complex_dimensions(N: int, M: int = M_DEFAULT, h_mode: str = "geometric",
                       with_magnitudes: bool = True) -> list[ComplexDimension]:
    """D + inp and inp for |n| <= N, with the magnitude of the matching coefficient."""
    if N < 0:
        raise ConfigurationError("N must be >= 0")
    ns = range(-N, N + 1)
    if with_magnitudes:
        flat = _flat(N, M, max(2 * N, 1), h_mode)
        phi = np.abs(flat.phi)
        psi = np.abs(flat.psi)
    else:
        phi = psi = np.full(2 * N + 1, math.nan)
    dims = [ComplexDimension(complex(D, P * k), "D", k, float(phi[k + N])) for k in ns]
    dims += [ComplexDimension(complex(0.0, P * k), "0", k, float(psi[k + N])) for k in ns]
    return dims


def vf_approx(epsilon) -> float:
    """The earlier approximation eps^(2-D) (sqrt3/4) 4^-{x} ((3/5) 9^{x} + 6 3^{x} - 1)."""
    idx = as_index(epsilon)
    f = idx.frac
    return idx.epsilon ** (2.0 - D) * SQRT3 / 4.0 * 4.0 ** (-f) * (0.6 * 9.0**f + 6.0 * 3.0**f - 1.0)
