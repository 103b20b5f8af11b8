"""Area of one error block and the total over-count of the preliminary area.

Under each rectangle of the prefractal neighbourhood sit crest-shaped regions
(trianglets) that lie farther than eps from the curve.  The k-th trianglet has
multiplicity 2^(k-1); summing them gives the block area B(eps), which is also
available as a rearranged power series in 3^{x}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scaling import D, SQRT3, EpsilonIndex, as_index

K_DEFAULT = 60
M_DEFAULT = 120  # ratio approaches 3/4 as {x} -> 1, so the series needs depth
TERM_RATIO_BOUND = 2.0 / 27.0  # bound on 2 A_{k+1} / A_k

# below this X the closed form loses digits to cancellation
_SMALL_X = 1e-3


@dataclass(frozen=True)
class Truncated:
    """Partial sum of a positive series together with a bound on the omitted tail."""

    value: float
    tail_bound: float
    terms: int


@dataclass(frozen=True)
class BlockGeometry:
    epsilon: float
    w: float
    X: tuple[float, ...]


@dataclass(frozen=True)
class ErrorTotal:
    epsilon: float
    B: float
    c: float
    p: float
    E: float
    # the two pieces of E, multiplying eps^(2-D) and eps^2 respectively
    dim_part: float
    square_part: float


def _catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def crest_unit(X: float) -> float:
    """Trianglet area divided by eps^2, as a function of X = w / (3^k eps)."""
    if X < _SMALL_X:
        # leading terms of the power series; X^9 is far below rounding here
        X2 = X * X
        return X * X2 * (1.0 / 24.0 + X2 * (1.0 / 640.0 + X2 * (1.0 / 14336.0)))
    u = min(0.5 * X, 1.0)
    return X - math.asin(u) - u * math.sqrt(max(0.0, 1.0 - u * u))


def block_unit(X1: float, K: int = K_DEFAULT) -> float:
    """B / eps^2 for a block whose first trianglet has parameter X1."""
    return sum(2.0 ** (k - 1) * crest_unit(X1 * 3.0 ** (1 - k)) for k in range(1, K + 1))


def block_geometry(epsilon, K: int = K_DEFAULT) -> BlockGeometry:
    idx = as_index(epsilon)
    w = 3.0 ** (-idx.n)
    X = tuple(3.0 ** (idx.frac - k + 0.5) for k in range(1, K + 1))
    return BlockGeometry(idx.epsilon, w, X)


def trianglet_area(k: int, epsilon) -> float:
    """Area of the k-th trianglet of an error block (one copy)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    idx = as_index(epsilon)
    eps = idx.epsilon
    w = 3.0 ** (-idx.n)
    ratio = w / (3.0**k * eps)
    if ratio < _SMALL_X:
        return eps * eps * crest_unit(ratio)
    u = min(w / (2.0 * 3.0**k * eps), 1.0)
    return (
        eps * w / 3.0**k
        - eps * eps * math.asin(u)
        - eps * w / (2.0 * 3.0**k) * math.sqrt(max(0.0, 1.0 - u * u))
    )


def b_direct(epsilon, K: int = K_DEFAULT) -> Truncated:
    """B(eps) as the trianglet sum, truncated after K terms."""
    idx = as_index(epsilon)
    eps2 = idx.epsilon**2
    total = 0.0
    for k in range(1, K + 1):
        X = 3.0 ** (idx.frac - k + 0.5)
        total += 2.0 ** (k - 1) * crest_unit(X)
    first_omitted = 2.0**K * crest_unit(3.0 ** (idx.frac - K - 0.5))
    tail = first_omitted / (1.0 - TERM_RATIO_BOUND)
    return Truncated(total * eps2, tail * eps2, K)


def _base_fraction(m: int) -> Fraction:
    # (2m-2)!/((m-1)! m!) is the Catalan number C_{m-1}
    return Fraction(_catalan(m - 1), 2 ** (4 * m - 1) * (2 * m + 1) * (3 ** (2 * m + 1) - 2))


@lru_cache(maxsize=None)
def b_series_coefficient(m: int) -> float:
    """Coefficient of (3^-(2m+1))^-{x} eps^2 in the rearranged block series.

    Includes the factor 3^(m+1/2) = sqrt3^(2m+1) carried by X_1 at {x} = 0.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return float(_base_fraction(m) * 3**m) * SQRT3


def b_series(epsilon, M: int = M_DEFAULT) -> Truncated:
    """B(eps) from the rearranged series, truncated after M terms.

    Successive-term ratios increase towards 9^{x}/12 < 3/4, which bounds the tail.
    """
    idx = as_index(epsilon)
    eps2 = idx.epsilon**2
    f = idx.frac
    total = sum(b_series_coefficient(m) * 3.0 ** ((2 * m + 1) * f) for m in range(1, M + 1))
    limit_ratio = 9.0**f / 12.0
    next_term = b_series_coefficient(M + 1) * 3.0 ** ((2 * M + 3) * f)
    tail = next_term / (1.0 - limit_ratio)
    return Truncated(total * eps2, tail * eps2, M)


def block_counts(epsilon) -> tuple[float, float]:
    """Complete (c) and partial (p) error-block counts as functions of eps."""
    idx = as_index(epsilon)
    four_n = 0.5 * idx.epsilon ** (-D) * 4.0 ** (-idx.frac)
    # the continuous form equals 4^n; snap to it when eps is an exact index
    if math.isclose(four_n, 4.0**idx.n, rel_tol=1e-9):
        four_n = 4.0**idx.n
    return (four_n - 4.0) / 3.0, 2.0 * (four_n + 2.0) / 3.0


def _split_coefficients(m: int) -> tuple[float, float]:
    k = b_series_coefficient(m)
    return k, 4.0 * k


def total_error(epsilon, h_value: float, M: int = M_DEFAULT, rtol: float = 1e-10) -> ErrorTotal:
    """E = B (c + p h), together with its eps^(2-D) / eps^2 split."""
    if not 0.0 <= h_value < 1.0:
        raise ValueError(f"h must lie in [0, 1), got {h_value!r}")
    idx = as_index(epsilon)
    eps, f = idx.epsilon, idx.frac
    B = b_series(idx, M).value
    c, p = block_counts(idx)
    E = B * (c + p * h_value)

    dim_sum = 0.0
    sq_sum = 0.0
    for m in range(1, M + 1):
        k_dim, k_sq = _split_coefficients(m)
        dim_sum += k_dim * (4.0 / 3.0 ** (2 * m + 1)) ** (-f)
        sq_sum += k_sq * 3.0 ** ((2 * m + 1) * f)
    dim_part = (h_value + 0.5) * dim_sum / 3.0 * eps ** (2.0 - D)
    square_part = (h_value - 1.0) * sq_sum / 3.0 * eps**2
    resum = dim_part + square_part
    if not math.isclose(resum, E, rel_tol=rtol, abs_tol=rtol * B):
        raise AssertionError(f"error split does not re-sum: {resum} vs {E}")
    return ErrorTotal(eps, B, c, p, E, dim_part, square_part)


def block_over_eps2(idx: EpsilonIndex, M: int = M_DEFAULT) -> float:
    """B / eps^2, a function of {x} alone."""
    return b_series(idx, M).value / idx.epsilon**2


__all__ = [
    "SQRT3",
    "BlockGeometry",
    "ErrorTotal",
    "Truncated",
    "b_direct",
    "b_series",
    "b_series_coefficient",
    "block_counts",
    "block_geometry",
    "block_over_eps2",
    "block_unit",
    "crest_unit",
    "total_error",
    "trianglet_area",
]
