"""Quantum values of the steering functional and detection sweeps."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .lhsbound import MeasurementSet, lhs_bound
from .qstate import PARAM_RANGES, DensityMatrix, correlation_matrix, make_state

# |Q - C| at or below this is a numerical tie and counts as no violation.
TIE_EPS = 1e-12
DEGENERATE_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class ViolationResult:
    quantum_value: float
    lhs_bound: float
    margin: float
    alice_directions: np.ndarray | None = None

    @property
    def detected(self) -> bool:
        return self.margin > 0

    def to_dict(self) -> dict:
        d = {
            "quantum_value": self.quantum_value,
            "lhs_bound": self.lhs_bound,
            "margin": self.margin,
            "detected": self.detected,
        }
        if self.alice_directions is not None:
            d["alice_directions"] = self.alice_directions.tolist()
        return d


def _margin(q: float, c: float) -> float:
    m = q - c
    return 0.0 if abs(m) <= TIE_EPS else m


def quantum_value(rho: DensityMatrix, alice: MeasurementSet, bob: MeasurementSet) -> float:
    """(1/N) sum_j Tr[rho (a_j . sigma) (x) (b_j . sigma)] via the correlation matrix."""
    if alice.n != bob.n:
        raise ValidationError(f"alice has {alice.n} settings, bob has {bob.n}")
    T = correlation_matrix(rho)
    return float(np.einsum("jk,kl,jl->", alice.directions, T, bob.directions) / bob.n)


def max_quantum_value(
    rho: DensityMatrix, bob: MeasurementSet, bound: float | None = None
) -> ViolationResult:
    """Maximize over Alice's unit directions setting by setting.

    For each b_j the best Alice direction is T b_j / |T b_j|, contributing
    |T b_j|.  If |T b_j| vanishes every direction is optimal; b_j is reported.
    ``bound`` defaults to the exact LHS bound of ``bob``.
    """
    T = correlation_matrix(rho)
    tb = bob.directions @ T.T
    norms = np.linalg.norm(tb, axis=1)
    alice = bob.directions.copy()
    live = norms > DEGENERATE_EPS
    alice[live] = tb[live] / norms[live, None]
    q = float(np.sum(norms[live]) / bob.n)
    c = lhs_bound(bob).value if bound is None else float(bound)
    return ViolationResult(q, c, _margin(q, c), alice)


def detect(rho: DensityMatrix, bob: MeasurementSet) -> ViolationResult:
    return max_quantum_value(rho, bob)


@dataclass(frozen=True)
class SweepGrid:
    family: str
    axis1: tuple[str, tuple[float, ...]]
    axis2: tuple[str, tuple[float, ...]] | None = None
    set_label: str = ""

    def __post_init__(self):
        if self.family not in PARAM_RANGES:
            raise ValidationError(f"unknown family {self.family!r}")
        ranges = PARAM_RANGES[self.family]
        axes = [self.axis1] + ([self.axis2] if self.axis2 else [])
        names = [a[0] for a in axes]
        if sorted(names) != sorted(ranges):
            raise ValidationError(f"{self.family} sweeps need axes {sorted(ranges)}, got {names}")
        for name, values in axes:
            lo, hi = ranges[name]
            v = np.asarray(values, dtype=float)
            if v.size == 0 or np.any(v < lo) or np.any(v > hi):
                raise ValidationError(f"{name} values must lie in [{lo}, {hi}]")
            if self.family == "avn" and name == "theta" and np.any((v <= lo) | (v >= hi)):
                raise ValidationError("avn theta values must lie in the open interval (0, pi/2)")

    @property
    def shape(self) -> tuple[int, ...]:
        return (len(self.axis1[1]),) + ((len(self.axis2[1]),) if self.axis2 else ())


@dataclass(frozen=True, eq=False)
class SweepRow:
    param1: float
    param2: float | None
    result: ViolationResult


def default_grid(family: str, points: int | None = None, set_label: str = "") -> SweepGrid:
    """Uniform grid over the family's full range.

    Defaults: 101 points per axis, 201 for the one-parameter MEMS sweep.
    AVN theta uses interior points only (the endpoints are excluded).
    """
    if family == "werner":
        k = points or 101
        return SweepGrid("werner", ("V", tuple(np.linspace(0, 1, k))), None, set_label)
    if family == "mems":
        k = points or 201
        return SweepGrid("mems", ("gamma", tuple(np.linspace(0, 1, k))), None, set_label)
    k = points or 101
    v = tuple(np.linspace(0, 1, k))
    if family == "generalized_werner":
        th = tuple(np.linspace(0, math.pi / 2, k))
    elif family == "avn":
        th = tuple(np.linspace(0, math.pi / 2, k + 2)[1:-1])
    else:
        raise ValidationError(f"unknown family {family!r}")
    return SweepGrid(family, ("V", v), ("theta", th), set_label)


def sweep(grid: SweepGrid, bob: MeasurementSet) -> list[SweepRow]:
    """Evaluate every grid point, row-major over (axis1, axis2)."""
    bound = lhs_bound(bob).value
    name1, values1 = grid.axis1
    rows = []
    for p1 in values1:
        if grid.axis2 is None:
            rho = make_state(grid.family, **{name1: float(p1)})
            rows.append(SweepRow(float(p1), None, max_quantum_value(rho, bob, bound)))
            continue
        name2, values2 = grid.axis2
        for p2 in values2:
            rho = make_state(grid.family, **{name1: float(p1), name2: float(p2)})
            rows.append(SweepRow(float(p1), float(p2), max_quantum_value(rho, bob, bound)))
    return rows


def detection_mask(rows: Sequence[SweepRow], shape: tuple[int, ...]) -> np.ndarray:
    return np.array([r.result.detected for r in rows], dtype=bool).reshape(shape)


CSV_HEADER = ("param1", "param2", "quantum_value", "lhs_bound", "margin", "detected")


def write_sweep_csv(rows: Sequence[SweepRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow(
                [
                    repr(r.param1),
                    "" if r.param2 is None else repr(r.param2),
                    repr(r.result.quantum_value),
                    repr(r.result.lhs_bound),
                    repr(r.result.margin),
                    int(r.result.detected),
                ]
            )


def critical_parameter(
    family: str,
    bob: MeasurementSet,
    axis: str,
    values: Sequence[float],
    fixed: dict | None = None,
    tol: float = 1e-6,
) -> tuple[float, float] | None:
    """First grid value where detection switches on, refined by bisection.

    Returns ``(grid_value, refined_value)``, or None if no grid point is
    detected.  The refinement bisects the margin between the last undetected
    and first detected grid points down to ``tol``.
    """
    fixed = dict(fixed or {})
    bound = lhs_bound(bob).value

    def margin(x: float) -> float:
        return max_quantum_value(make_state(family, **fixed, **{axis: x}), bob, bound).margin

    prev = None
    for x in values:
        x = float(x)
        if margin(x) > 0:
            if prev is None:
                return x, x
            lo, hi = prev, x
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if margin(mid) > 0:
                    hi = mid
                else:
                    lo = mid
            return x, hi
        prev = x
    return None
