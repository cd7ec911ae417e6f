"""Circle-stratified direction sets on the northern hemisphere.

The quarter arc from the pole to the equator is cut into ``n`` equal angles
alpha = pi/(2n).  Circle k (k = 1..n-1) sits at polar angle k*alpha and
carries p_k ~ P sin(k*alpha) evenly spaced points, so the point density is
roughly uniform.  With all signs +1 the bound tends to 1/2 as n grows.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ValidationError
from .lhsbound import MAX_EIG_ENUM, BoundResult, MeasurementSet, lhs_bound

# Keeps exact halves (e.g. 3 sin(pi/6) = 1.4999999999999998) rounding up.
HALF_GUARD = 1e-9
BAND_CANCEL_TOL = 1e-10


@dataclass(frozen=True)
class HemisphereConfig:
    n_bands: int
    density: float
    azimuth_offset: float = 0.0

    def __post_init__(self):
        if int(self.n_bands) != self.n_bands or self.n_bands < 2:
            raise ValidationError(f"n_bands must be an integer >= 2, got {self.n_bands!r}")
        if not (math.isfinite(self.density) and self.density > 0):
            raise ValidationError(f"density must be > 0, got {self.density!r}")
        if not math.isfinite(self.azimuth_offset):
            raise ValidationError("azimuth_offset must be finite")

    @property
    def alpha(self) -> float:
        return math.pi / (2 * self.n_bands)


@dataclass(frozen=True, eq=False)
class HemisphereSet:
    set: MeasurementSet
    points_per_band: tuple[int, ...]
    band_angles: tuple[float, ...]

    @property
    def n(self) -> int:
        return self.set.n


def band_populations(n_bands: int, density: float) -> list[int]:
    alpha = math.pi / (2 * n_bands)
    return [
        max(1, math.floor(density * math.sin(k * alpha) + 0.5 + HALF_GUARD))
        for k in range(1, n_bands)
    ]


def build_hemisphere_set(config: HemisphereConfig) -> HemisphereSet:
    alpha = config.alpha
    pops = band_populations(config.n_bands, config.density)
    angles = tuple(k * alpha for k in range(1, config.n_bands))
    blocks = []
    for theta, p in zip(angles, pops):
        phi = config.azimuth_offset + 2 * math.pi * np.arange(p) / p
        blocks.append(
            np.column_stack(
                [
                    math.sin(theta) * np.cos(phi),
                    math.sin(theta) * np.sin(phi),
                    np.full(p, math.cos(theta)),
                ]
            )
        )
    label = f"hemisphere(n={config.n_bands}, P={config.density}, offset={config.azimuth_offset})"
    return HemisphereSet(MeasurementSet(np.vstack(blocks), label), tuple(pops), angles)


def band_sums(hs: HemisphereSet) -> np.ndarray:
    edges = np.cumsum((0,) + hs.points_per_band)
    d = hs.set.directions
    return np.array([d[a:b].sum(axis=0) for a, b in zip(edges[:-1], edges[1:])])


def all_ones_bound(hs: HemisphereSet) -> float:
    """|sum of all directions| / N, i.e. the bound if every sign is +1.

    Bands with two or more points must have vanishing in-plane sums; this is
    checked rather than assumed.
    """
    sums = band_sums(hs)
    pops = np.asarray(hs.points_per_band)
    multi = pops >= 2
    if multi.any():
        leak = np.abs(sums[multi, :2]).max()
        if leak > BAND_CANCEL_TOL * max(1, pops.max()):
            raise ArithmeticError(f"band sum has in-plane component {leak:.3g}")
    return float(np.linalg.norm(sums.sum(axis=0)) / hs.n)


def analytic_bound(n: int) -> float:
    """sum_k sin(k a) cos(k a) / sum_k sin(k a), a = pi/(2n), k = 1..n-1."""
    if int(n) != n or n < 2:
        raise ValidationError(f"n must be an integer >= 2, got {n!r}")
    k = np.arange(1, n, dtype=np.float64)
    a = math.pi / (2 * n)
    s = np.sin(k * a)
    return float(np.sum(s * np.cos(k * a)) / np.sum(s))


def closed_form_bound(n: int) -> float:
    """Exact closed form of :func:`analytic_bound`: cos((n-1)a/2) / (sqrt2 cos(a/2))."""
    a = math.pi / (2 * n)
    return math.cos((n - 1) * a / 2) / (math.sqrt(2) * math.cos(a / 2))


def printed_middle_expression(n: int) -> float:
    """cos(a/2) cos((n-1)a/2) / sqrt2, which differs from the sum by cos^2(a/2)."""
    a = math.pi / (2 * n)
    return math.cos(a / 2) * math.cos((n - 1) * a / 2) / math.sqrt(2)


@dataclass(frozen=True, eq=False)
class SmallSetCheck:
    bound: BoundResult
    all_ones_value: float
    all_ones_maximizing: bool

    @property
    def value(self) -> float:
        return self.bound.value


def exact_bound_small(hs: HemisphereSet) -> SmallSetCheck:
    """Enumerate all sign assignments and report whether all +1 is a maximizer.

    The enumeration breaks ties toward the lexicographically smallest sign
    vector, so all +1 is returned whenever it is among the maximizers.
    """
    if hs.n > MAX_EIG_ENUM:
        raise CapacityError(f"N = {hs.n} exceeds {MAX_EIG_ENUM}")
    res = lhs_bound(hs.set)
    return SmallSetCheck(res, all_ones_bound(hs), all(s == 1 for s in res.signs))


CSV_HEADER = ("n", "N", "all_ones", "analytic")


def convergence_table(
    n_max: int,
    density: float,
    azimuth_offset: float = 0.0,
    n_min: int = 2,
    proportional: bool = False,
):
    """Rows (n, N, all_ones_bound, analytic_bound) for n = n_min..n_max.

    The density is held fixed, or scaled as ``density * n`` when
    ``proportional`` is set.
    """
    rows = []
    for n in range(n_min, n_max + 1):
        P = density * n if proportional else density
        hs = build_hemisphere_set(HemisphereConfig(n, P, azimuth_offset))
        rows.append((n, hs.n, all_ones_bound(hs), analytic_bound(n)))
    return rows


def write_convergence_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for n, N, ones, an in rows:
            w.writerow([n, N, repr(ones), repr(an)])
