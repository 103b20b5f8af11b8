"""Prefractal Koch curves and snowflakes, distance to the limit curve, and a
Monte Carlo oracle for the inner eps-neighbourhood area of the snowflake.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import ConfigurationError, DomainError
from .scaling import SQRT3, index_of

RHO = complex(0.5, 0.5 / SQRT3)
MAX_CURVE_LEVEL = 12
MAX_SNOWFLAKE_LEVEL = 10
SNOWFLAKE_AREA = 2.0 * SQRT3 / 5.0

# snowflake triangle, traversed clockwise so that the bumps point outward
_TRIANGLE = (complex(0.0, 0.0), complex(0.5, 0.5 * SQRT3), complex(1.0, 0.0))
_BOX = (0.0, 1.0, -SQRT3 / 6.0, 0.5 * SQRT3)
WORKERS_ENV = "KOCHTUBE_WORKERS"


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError("point coordinates must be finite")


@dataclass(frozen=True)
class PrefractalCurve:
    level: int
    vertices: np.ndarray  # (4^n + 1, 2)

    def points(self) -> list[Point]:
        return [Point(float(x), float(y)) for x, y in self.vertices]

    @property
    def length(self) -> float:
        return float(np.sum(np.hypot(*np.diff(self.vertices, axis=0).T)))


@dataclass(frozen=True)
class SnowflakePolygon:
    level: int
    vertices: np.ndarray  # (3 * 4^m, 2), counterclockwise, not repeated at the end

    @property
    def area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _refine(z: np.ndarray) -> np.ndarray:
    """One generator step: each segment a -> b becomes four, bump on the left."""
    a, b = z[:-1], z[1:]
    d = b - a
    out = np.empty(4 * len(d) + 1, dtype=complex)
    out[0:-1:4] = a
    out[1::4] = a + d / 3.0
    out[2::4] = a + d * RHO
    out[3::4] = a + 2.0 * d / 3.0
    out[-1] = z[-1]
    return out


def _as_xy(z: np.ndarray) -> np.ndarray:
    return np.column_stack([z.real, z.imag])


def refine(curve: PrefractalCurve) -> PrefractalCurve:
    if curve.level >= MAX_CURVE_LEVEL:
        raise DomainError(f"level must be <= {MAX_CURVE_LEVEL}")
    z = curve.vertices[:, 0] + 1j * curve.vertices[:, 1]
    return PrefractalCurve(curve.level + 1, _as_xy(_refine(z)))


def _curve_complex(n: int, a: complex = 0j, b: complex = 1 + 0j) -> np.ndarray:
    z = np.array([a, b], dtype=complex)
    for _ in range(n):
        z = _refine(z)
    return z


def build_prefractal(n: int) -> PrefractalCurve:
    if not 0 <= n <= MAX_CURVE_LEVEL:
        raise DomainError(f"prefractal level must be in [0, {MAX_CURVE_LEVEL}], got {n}")
    return PrefractalCurve(n, _as_xy(_curve_complex(n)))


def build_snowflake(m: int) -> SnowflakePolygon:
    if not 0 <= m <= MAX_SNOWFLAKE_LEVEL:
        raise DomainError(f"snowflake level must be in [0, {MAX_SNOWFLAKE_LEVEL}], got {m}")
    sides = [_curve_complex(m, _TRIANGLE[i], _TRIANGLE[(i + 1) % 3])[:-1] for i in range(3)]
    z = np.concatenate(sides)[::-1]
    return SnowflakePolygon(m, _as_xy(z))


def snowflake_area(m: int) -> float:
    """Exact area of the level-m snowflake polygon."""
    return SQRT3 / 4.0 + 3.0 * SQRT3 / 20.0 * (1.0 - (4.0 / 9.0) ** m)


def distance_to_curve(p: Point, tol: float = 1e-9) -> float:
    """Distance from p to the Koch curve on [0, 1], accurate to tol."""
    if not tol > 0.0:
        raise ConfigurationError("tol must be positive")
    return float(K.curve_distance(p.x, p.y, 0.0, 0.0, 1.0, 0.0, tol))


@dataclass(frozen=True)
class OracleEstimate:
    epsilon: float
    area_mean: float
    std_error: float
    samples: int
    seed: int
    bias_bound: float
    partitions: int = 16
    level: int = 0
    undecided: int = 0


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from exc
    return max(1, n)


def _partition_sizes(samples: int, partitions: int) -> list[int]:
    base, extra = divmod(samples, partitions)
    return [base + (1 if i < extra else 0) for i in range(partitions)]


def _run_partition(args) -> tuple[int, int, int]:
    seed, part, count, eps, maxdepth, minsize, chunk = args
    rng = np.random.Generator(np.random.Philox(key=np.array([seed, part], dtype=np.uint64)))
    x0, x1, y0, y1 = _BOX
    s1 = s2 = und = 0
    left = count
    while left > 0:
        k = min(chunk, left)
        xs = rng.uniform(x0, x1, k)
        ys = rng.uniform(y0, y1, k)
        a, b, c = K.tally(xs, ys, eps, maxdepth, minsize)
        s1 += int(a)
        s2 += int(b)
        und += int(c)
        left -= k
    return s1, s2, und


def oracle_inner_area(epsilon: float, samples: int = 1_000_000, seed: int = 0,
                      partitions: int = 16, workers: int | None = None,
                      chunk: int = 1 << 20) -> OracleEstimate:
    """Monte Carlo area of {q in Omega : dist(q, boundary) < eps}.

    Membership in Omega is decided by descending the hulls of each side to
    level m + 1, m = n(eps) + 6; points still undecided get a fractional weight
    and their mass enters ``bias_bound`` together with the fringe area beyond
    level m.  Nearness uses branch and bound down to pieces of size 1e-9 eps.
    Each partition owns a Philox stream keyed by (seed, partition), and sums
    are exact integers, so results do not depend on the worker count.
    """
    idx = index_of(epsilon)
    if samples < 10_000:
        raise ConfigurationError("samples must be >= 10^4")
    if partitions < 1:
        raise ConfigurationError("partitions must be >= 1")
    m = idx.n + 6
    maxdepth = 2 * (m + 1)
    minsize = 1e-9 * idx.epsilon
    jobs = [(seed, i, c, idx.epsilon, maxdepth, minsize, chunk)
            for i, c in enumerate(_partition_sizes(samples, partitions)) if c > 0]
    workers = _worker_count() if workers is None else max(1, workers)
    if workers == 1:
        results = [_run_partition(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_partition, jobs))
    s1 = sum(r[0] for r in results)
    s2 = sum(r[1] for r in results)
    und = sum(r[2] for r in results)

    box = (_BOX[1] - _BOX[0]) * (_BOX[3] - _BOX[2])
    mean_w = s1 / (10.0 * samples)
    var_w = max(s2 / (100.0 * samples) - mean_w**2, 0.0)
    area = box * mean_w
    se = box * math.sqrt(var_w / samples)
    band = box * und / samples
    bias = 3.0 * SQRT3 / 20.0 * (4.0 / 9.0) ** m + band
    return OracleEstimate(idx.epsilon, area, se, samples, seed, bias, partitions, m, und)
