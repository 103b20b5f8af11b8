"""The Cantor-like correction h(eps), its supremum mu and its Fourier table.

A partial error block sits at a peak of the prefractal.  It is only partly
formed: part of the crest region farther than eps from the level-n prefractal
is still within eps of the finer curve on the neighbouring side.  h(eps) is
the formed fraction, a function of {x} alone.

Geometric model, in units where eps = 1 and the block's rectangle has width
W = w / eps = sqrt3 * 3^{x}.  The peak apex sits at the origin, the side S1
runs along the positive x-axis with the neighbourhood interior above it, and
the adjacent side S2 leaves the apex at 60 degrees.  Seen at the block scale,
the limiting curve on each side is a middle-thirds Cantor set (its points
closest to the segment).  The half block is

    H = {0 <= u <= W, 0 <= v <= 1, v <= u / sqrt3}

and a point of H belongs to the formed part when its distance to the Cantor
set on S1 and to the Cantor set on S2 both reach 1.  h = area / B(W).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .errorblock import K_DEFAULT, block_unit, crest_unit
from .errors import AccuracyError, ConfigurationError
from .scaling import SQRT3, as_index, epsilon_of

MODES = ("geometric", "approximate")

# relative quadrature tolerance for the formed area
QUAD_RTOL = 1e-10
# subtrees of the Cantor recursion narrower than this carry negligible area
_MIN_GAP = 1e-7
_BISECT_TOL = 1e-13


def _mu_ratio(A: list[float]) -> float:
    num = A[0] + sum(2.0 ** (j - 2) * a for j, a in enumerate(A[1:], start=2))
    den = sum(2.0 ** (j - 1) * a for j, a in enumerate(A, start=1))
    return num / den


def _trianglets_at(k: int, limit: bool, K: int = K_DEFAULT) -> list[float]:
    eps = 3.0 ** (-k - 0.5)
    # the limiting configuration keeps the coarser rectangle width 3^-(k-1)
    w = 3.0 ** (-(k - 1)) if limit else 3.0 ** (-k)
    return [eps * eps * crest_unit(w / (3.0**j * eps)) for j in range(1, K + 1)]


def mu(k: int = 1, limit: bool = True) -> float:
    """Ratio of the fully formed partial block to a whole block at eps_k.

    With ``limit`` (the default) the trianglets are those of the level-(k-1)
    block as eps decreases to eps_k = 3^(-k-1/2); this is the supremum of h.
    ``limit=False`` uses the level-k block sitting exactly at eps_k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return _mu_ratio(_trianglets_at(k, limit))


MU = mu()


def h_tilde(epsilon, mu_value: float = MU) -> float:
    """Piecewise-linear stand-in mu * {-[x] - x}."""
    idx = as_index(epsilon)
    t = -idx.n - idx.x
    frac = t - math.floor(t)
    if frac >= 1.0:
        frac = 0.0
    return mu_value * frac


def _cantor_distance(s: float, W: float) -> float:
    """Distance from s to the middle-thirds Cantor set spanning [0, W]."""
    if s <= 0.0:
        return -s
    if s >= W:
        return s - W
    c, L = 0.0, W
    while L > 1e-16 * W:
        t = (s - c) / L
        if t <= 1.0 / 3.0:
            L /= 3.0
        elif t >= 2.0 / 3.0:
            c += 2.0 * L / 3.0
            L /= 3.0
        else:
            return min(s - (c + L / 3.0), (c + 2.0 * L / 3.0) - s)
    return 0.0


def _side2_distance(u: float, v: float, W: float) -> float:
    s = 0.5 * u + 0.5 * SQRT3 * v
    perp = 0.5 * SQRT3 * u - 0.5 * v
    return math.hypot(perp, _cantor_distance(s, W))


def _covered_length(u: float, lo: float, hi: float, W: float) -> float:
    """Measure of v in [lo, hi] within distance 1 of the S2 Cantor set.

    The distance is 1-Lipschitz in v, so an interval whose midpoint value is
    farther than its half-width from the threshold is decided whole.
    """
    total = 0.0
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        m = 0.5 * (a + b)
        gap = _side2_distance(u, m, W) - 1.0
        r = 0.5 * (b - a)
        if gap >= r:
            continue
        if gap <= -r:
            total += b - a
            continue
        if b - a < _BISECT_TOL:
            total += r
            continue
        stack.append((a, m))
        stack.append((m, b))
    return total


def _formed_length(u: float, ga: float, gb: float, W: float) -> float:
    d = min(u - ga, gb - u)
    lo = math.sqrt(max(0.0, 1.0 - d * d))
    hi = min(1.0, u / SQRT3)
    if hi <= lo:
        return 0.0
    length = hi - lo
    # S2 is only within reach when the nearest point of the column is
    if 0.5 * (SQRT3 * u - hi) < 1.0:
        length -= _covered_length(u, lo, hi, W)
    return length


def formed_area(W: float) -> tuple[float, float]:
    """Formed area of the half block of width W, with the summed error estimate."""
    total = 0.0
    err = 0.0
    stack = [(0.0, W)]
    while stack:
        c, L = stack.pop()
        if L < _MIN_GAP:
            continue
        if c >= SQRT3:
            # beyond the reach of S2: the whole sub-block is formed
            total += block_unit(L / 3.0)
            continue
        if c + L <= SQRT3 * math.sqrt(max(0.0, 1.0 - (L / 6.0) ** 2)):
            # every crest of this subtree is still covered by S2
            continue
        ga, gb = c + L / 3.0, c + 2.0 * L / 3.0
        points = [0.5 * (ga + gb)]
        if ga < SQRT3 < gb:
            points.append(SQRT3)
        val, e = quad(
            _formed_length, ga, gb, args=(ga, gb, W),
            points=points, limit=200, epsabs=1e-14, epsrel=1e-12,
        )
        total += val
        err += e
        stack.append((c, L / 3.0))
        stack.append((c + 2.0 * L / 3.0, L / 3.0))
    return total, err


@lru_cache(maxsize=65536)
def _h_of_frac(frac: float) -> float:
    W = SQRT3 * 3.0**frac
    B = block_unit(W / 3.0)
    area, err = formed_area(W)
    if err > QUAD_RTOL * B:
        raise AccuracyError("quadrature of the formed block area did not converge", err / B)
    return min(max(area / B, 0.0), math.nextafter(MU, 0.0))


def h_geometric(epsilon) -> float:
    """Formed fraction of a partial error block, by planar quadrature."""
    return _h_of_frac(as_index(epsilon).frac)


def h_of_frac(frac: float, mode: str = "geometric") -> float:
    if mode == "geometric":
        return _h_of_frac(float(frac))
    if mode == "approximate":
        return 0.0 if frac == 0.0 else MU * (1.0 - frac)
    raise ConfigurationError(f"unknown h mode {mode!r}")


def h_value(epsilon, mode: str = "geometric") -> float:
    if mode == "geometric":
        return h_geometric(epsilon)
    if mode == "approximate":
        return h_tilde(epsilon)
    raise ConfigurationError(f"unknown h mode {mode!r}")


def one_sided_limits(k: int, rel: float = 1e-6) -> tuple[float, float]:
    """h_geometric at eps_k (1 + rel) and eps_k (1 - rel), eps_k = 3^(-k-1/2).

    The larger eps lies at the top of the previous period ({x} near 1).
    """
    eps_k = epsilon_of(float(k))
    return h_geometric(eps_k * (1.0 + rel)), h_geometric(eps_k * (1.0 - rel))


@dataclass(frozen=True)
class GTable:
    """Fourier coefficients g_alpha of h as a function of x, |alpha| <= A_max."""

    A_max: int
    mode: str
    resolution: int
    mu: float
    alpha: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        self.alpha.setflags(write=False)
        self.g.setflags(write=False)

    def coefficient(self, a: int) -> complex:
        if abs(a) > self.A_max:
            raise ConfigurationError(f"|alpha|={abs(a)} exceeds table range {self.A_max}")
        return complex(self.g[a + self.A_max])

    def window(self, lo: int, hi: int) -> np.ndarray:
        """g_alpha for alpha = lo..hi (inclusive)."""
        if lo < -self.A_max or hi > self.A_max:
            raise ConfigurationError(f"window [{lo}, {hi}] exceeds table range {self.A_max}")
        return self.g[lo + self.A_max: hi + self.A_max + 1]

    def synthesize(self, x, A: int | None = None) -> np.ndarray:
        A = self.A_max if A is None else min(A, self.A_max)
        x = np.asarray(x, dtype=float)
        a = np.arange(-A, A + 1)
        phase = np.exp(2j * np.pi * np.multiply.outer(x, a))
        return (phase @ self.window(-A, A)).real

    def to_json(self) -> str:
        rows = [[int(a), float(z.real), float(z.imag)] for a, z in zip(self.alpha, self.g)]
        meta = {"A_max": self.A_max, "mode": self.mode, "resolution": self.resolution, "mu": self.mu}
        return json.dumps({"meta": meta, "g": rows})


def analytic_g_approximate(A_max: int, mu_value: float = MU) -> np.ndarray:
    """Closed-form coefficients of mu * (1 - {x})."""
    a = np.arange(-A_max, A_max + 1)
    g = np.empty(a.shape, dtype=complex)
    nz = a != 0
    g[nz] = mu_value / (2j * np.pi * a[nz])
    g[~nz] = mu_value / 2.0
    return g


def _sampled(mode: str, resolution: int) -> tuple[np.ndarray, float, float]:
    xs = (np.arange(resolution) + 0.5) / resolution
    vals = np.array([h_of_frac(float(t), mode) for t in xs])
    if mode == "geometric":
        left, right = 0.0, h_of_frac(math.nextafter(1.0, 0.0), mode)
    else:
        left, right = MU, 0.0
    return vals, left, right


@lru_cache(maxsize=16)
def fourier_g(A_max: int, mode: str = "geometric", resolution: int = 4096) -> GTable:
    """g_alpha = int_0^1 g(x) e^{-2 pi i alpha x} dx on a midpoint grid.

    The jump at integer x is removed first: g = g(0+) + (g(1-) - g(0+)) x + r(x)
    with r continuous and periodic, so the grid only has to resolve r.
    """
    if A_max < 1:
        raise ConfigurationError("A_max must be >= 1")
    if mode not in MODES:
        raise ConfigurationError(f"unknown h mode {mode!r}")
    if resolution < 2 * A_max + 2:
        raise ConfigurationError("resolution must exceed 2 * A_max + 1")
    vals, left, right = _sampled(mode, resolution)
    xs = (np.arange(resolution) + 0.5) / resolution
    jump = right - left
    r = vals - left - jump * xs

    a = np.arange(0, A_max + 1)
    spectrum = np.fft.fft(r)[:A_max + 1] / resolution
    r_hat = spectrum * np.exp(-1j * np.pi * a / resolution)
    lin = np.empty(A_max + 1, dtype=complex)
    lin[0] = left + 0.5 * jump
    lin[1:] = jump * 1j / (2.0 * np.pi * a[1:])
    pos = lin + r_hat
    pos[0] = pos[0].real

    g = np.concatenate([np.conj(pos[:0:-1]), pos])
    table = GTable(A_max, mode, resolution, MU, np.arange(-A_max, A_max + 1), g)
    if mode == "approximate":
        dev = float(np.max(np.abs(g - analytic_g_approximate(A_max))))
        if dev > 1e-8:
            raise AccuracyError("sawtooth coefficients disagree with the closed form", dev)
    return table
