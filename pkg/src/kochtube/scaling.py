"""Bookkeeping between the neighbourhood width eps, the log-scale x and the
refinement level n, plus the piece counts of the prefractal neighbourhood.

For eps in I_n = (3^-(n+1)/sqrt3, 3^-n/sqrt3] the neighbourhood is built on the
level-n prefractal, and

    x = -log_3(eps * sqrt3),   n = floor(x),   frac = x - n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

SQRT3 = math.sqrt(3.0)
LOG3 = math.log(3.0)
D = math.log(4.0) / LOG3  # Minkowski dimension of the Koch curve
P = 2.0 * math.pi / LOG3  # oscillatory period
EPS_MAX = 1.0 / SQRT3

# relative slack used to recognise eps supplied as 3^-k / sqrt3
_ENDPOINT_RTOL = 8e-16


@dataclass(frozen=True)
class EpsilonIndex:
    epsilon: float
    x: float
    n: int
    frac: float

    @property
    def interval(self) -> tuple[float, float]:
        """The half-open interval I_n as (lower, upper]."""
        return boundary(self.n + 1), boundary(self.n)


@dataclass(frozen=True)
class PieceCounts:
    rectangles: int
    wedges: int
    triangles: int
    fringe_components: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.rectangles, self.wedges, self.triangles, self.fringe_components)


def boundary(k: int) -> float:
    """Upper endpoint 3^-k / sqrt3 of I_k."""
    return 3.0 ** (-k) / SQRT3


def epsilon_of(x: float) -> float:
    return 3.0 ** (-x) / SQRT3


def _check_eps(epsilon: float) -> None:
    if not (epsilon > 0.0 and math.isfinite(epsilon)):
        raise DomainError(f"epsilon must be positive and finite, got {epsilon!r}")
    if epsilon > EPS_MAX * (1.0 + _ENDPOINT_RTOL):
        raise DomainError(f"epsilon={epsilon!r} exceeds 3^(-1/2); x must be >= 0")


def index_of(epsilon: float) -> EpsilonIndex:
    """Locate eps in the partition {I_n}.

    The level is fixed by comparing eps against the interval endpoints rather
    than by flooring a logarithm, so eps = 3^-k/sqrt3 lands in I_k with
    x == k and frac == 0 exactly.
    """
    _check_eps(epsilon)
    x = -math.log(epsilon * SQRT3) / LOG3
    n = max(0, math.floor(x))
    # repair the floor against the float endpoints
    while n > 0 and epsilon > boundary(n) * (1.0 + _ENDPOINT_RTOL):
        n -= 1
    while epsilon <= boundary(n + 1) * (1.0 + _ENDPOINT_RTOL):
        n += 1
    if abs(epsilon / boundary(n) - 1.0) <= _ENDPOINT_RTOL:
        return EpsilonIndex(epsilon, float(n), n, 0.0)
    frac = min(max(x - n, 0.0), math.nextafter(1.0, 0.0))
    return EpsilonIndex(epsilon, n + frac, n, frac)


def index_from_x(x: float) -> EpsilonIndex:
    """Exact construction from the log-scale variable (no logarithm involved)."""
    if not (x >= 0.0 and math.isfinite(x)):
        raise DomainError(f"x must be finite and >= 0, got {x!r}")
    n = math.floor(x)
    return EpsilonIndex(epsilon_of(x), float(x), n, x - n)


def as_index(eps_or_idx) -> EpsilonIndex:
    if isinstance(eps_or_idx, EpsilonIndex):
        return eps_or_idx
    return index_of(float(eps_or_idx))


def piece_counts(n: int) -> PieceCounts:
    """Rectangles, wedges, acute-angle triangles and fringe pieces of K_n."""
    if n < 0:
        raise DomainError(f"level must be >= 0, got {n}")
    four_n = 4**n
    return PieceCounts(
        rectangles=four_n,
        wedges=2 * (four_n - 1) // 3,
        triangles=2 * (four_n + 2) // 3,
        fringe_components=four_n,
    )


def piece_areas(idx: EpsilonIndex) -> tuple[float, float, float, float]:
    """Area of one rectangle, wedge, triangle and fringe component."""
    eps = idx.epsilon
    rect = eps * 3.0 ** (-idx.n)
    wedge = math.pi * eps**2 / 6.0
    triangle = eps**2 * SQRT3 / 2.0
    fringe = SQRT3 / 20.0 * 9.0 ** (-idx.n)
    return rect, wedge, triangle, fringe


def power_identities(idx: EpsilonIndex, rtol: float = 1e-12) -> tuple[float, float, float, float]:
    """(4^x, 9^-x, (4/3)^x, (4/9)^x) written as powers of eps.

    Each value is cross-checked against the direct power of x and an
    AssertionError is raised if they disagree beyond ``rtol``.
    """
    eps, x = idx.epsilon, idx.x
    via_eps = (
        0.5 * eps ** (-D),
        3.0 * eps**2,
        0.5 * SQRT3 * eps ** (1.0 - D),
        1.5 * eps ** (2.0 - D),
    )
    direct = (4.0**x, 9.0 ** (-x), (4.0 / 3.0) ** x, (4.0 / 9.0) ** x)
    for got, want in zip(via_eps, direct):
        if not math.isclose(got, want, rel_tol=rtol):
            raise AssertionError(f"power identity failed at x={x}: {got} != {want}")
    return via_eps
