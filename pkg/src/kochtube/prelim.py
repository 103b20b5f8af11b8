"""Preliminary (over-counting) neighbourhood area of one Koch curve.

The preliminary area counts rectangles, wedges and fringe pieces of the level-n
prefractal and removes the doubly counted acute-angle triangles.  It is exact
in closed form; its Fourier series in eps is the three-pole expansion used by
the tube formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError
from .scaling import D, LOG3, P, SQRT3, EpsilonIndex, as_index, piece_areas, piece_counts

# eps^2 coefficient of the preliminary area, without the 1/3
QUAD_CONST = math.pi / 3.0 + 2.0 * SQRT3


@dataclass(frozen=True)
class PrelimArea:
    epsilon: float
    value: float
    rect: float
    wedge: float
    triangle: float
    fringe: float

    @property
    def parts(self) -> tuple[float, float, float, float]:
        return (self.rect, self.wedge, self.triangle, self.fringe)


def periodic_profile(frac: float) -> float:
    """eps^-(2-D) * (Vpre + eps^2 * QUAD_CONST / 3) as a function of {x}."""
    return 4.0 ** (-frac) * (
        3.0 * SQRT3 / 40.0 * 9.0**frac
        + SQRT3 / 2.0 * 3.0**frac
        + (math.pi / 3.0 - SQRT3) / 6.0
    )


def pre_v(epsilon) -> PrelimArea:
    idx = as_index(epsilon)
    eps, n = idx.epsilon, idx.n
    value = eps ** (2.0 - D) * periodic_profile(idx.frac) - eps**2 / 3.0 * QUAD_CONST
    four_n = 4.0**n
    rect = eps * (4.0 / 3.0) ** n
    wedge = math.pi * eps**2 / 9.0 * (four_n - 1.0)
    triangle = eps**2 * SQRT3 / 3.0 * (four_n + 2.0)
    fringe = (4.0 / 9.0) ** n * SQRT3 / 20.0
    return PrelimArea(eps, value, rect, wedge, triangle, fringe)


def fourier_pow(a: float, x: float, N: int) -> float:
    """Symmetric partial sum (|n| <= N) of the Fourier series of a^-{x}.

    At integer x the series converges to the midpoint (1 + 1/a)/2 of the jump.
    """
    if not a > 0.0 or a == 1.0:
        raise DomainError(f"a must be positive and != 1, got {a!r}")
    if N < 1:
        raise DomainError("N must be >= 1")
    la = math.log(a)
    n = np.arange(1, N + 1)
    # pair n with -n: 2 Re[e^{2pi i n x} / (log a + 2 pi i n)]
    terms = np.exp(2j * np.pi * n * x) / (la + 2j * np.pi * n)
    total = 1.0 / la + 2.0 * terms.real.sum()
    return (a - 1.0) / a * total


def prelim_coefficient(n):
    """Three-pole coefficient of the eps^(2-D-inp) term (array-friendly)."""
    s = D + 1j * P * np.asarray(n, dtype=float)
    return (
        -(3.0**2.5) / (2.0**5 * (s - 2.0))
        + 3.0**1.5 / (2.0**3 * (s - 1.0))
        + (math.pi - 3.0**1.5) / (2.0**3 * s)
    )


def pre_v_fourier_complex(epsilon, N: int) -> complex:
    idx = as_index(epsilon)
    if idx.frac == 0.0:
        raise DomainError("Fourier evaluation refused at a jump point ({x} = 0)")
    if N < 1:
        raise DomainError("N must be >= 1")
    eps = idx.epsilon
    n = np.arange(-N, N + 1)
    # (-1)^n eps^{-inp} == e^{2 pi i n x}
    phase = np.exp(2j * np.pi * n * idx.x)
    s = np.sum(prelim_coefficient(n) * phase)
    return s * eps ** (2.0 - D) / (3.0 * LOG3) - eps**2 / 3.0 * QUAD_CONST


def pre_v_fourier(epsilon, N: int) -> float:
    z = pre_v_fourier_complex(epsilon, N)
    if abs(z.imag) > 1e-10:
        raise AccuracyError("imaginary residue of the preliminary series too large", abs(z.imag))
    return z.real


def pre_v_n_form(idx: EpsilonIndex) -> float:
    """Preliminary area as counts times unit areas (independent of the closed form)."""
    counts = piece_counts(idx.n)
    rect, wedge, tri, fringe = piece_areas(idx)
    return (
        counts.rectangles * rect
        + counts.wedges * wedge
        - counts.triangles * tri
        + counts.fringe_components * fringe
    )
