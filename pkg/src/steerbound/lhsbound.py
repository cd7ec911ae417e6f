"""Local-hidden-state bounds of linear N-setting steering functionals.

For Bob's directions b_1..b_N the bound is

    C_N = (1/N) max_{A in {+1,-1}^N} | sum_j A_j b_j |

computed exactly by enumerating the 2^(N-1) sign assignments with A_1 = +1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CanonicalizationError, CapacityError, ValidationError

UNIT_TOL = 1e-12
MAX_ENUM = 30
MAX_EIG_ENUM = 20


@dataclass(frozen=True, eq=False)
class MeasurementSet:
    """Ordered unit directions on the Bloch sphere plus a source label."""

    directions: np.ndarray
    label: str = ""

    def __post_init__(self):
        d = np.array(self.directions, dtype=np.float64)
        if d.ndim != 2 or d.shape[1] != 3 or d.shape[0] < 1:
            raise ValidationError(f"directions must have shape (N, 3), N >= 1; got {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValidationError("directions contain NaN or Inf")
        err = np.max(np.abs(np.linalg.norm(d, axis=1) - 1.0))
        if err > UNIT_TOL:
            raise ValidationError(f"direction norms deviate from 1 by {err:.3g}")
        d.setflags(write=False)
        object.__setattr__(self, "directions", d)

    @classmethod
    def from_vectors(cls, vectors, label: str = "", normalize: bool = False):
        v = np.array(vectors, dtype=np.float64)
        if normalize:
            if v.ndim != 2 or v.shape[1] != 3:
                raise ValidationError(f"directions must have shape (N, 3); got {v.shape}")
            norms = np.linalg.norm(v, axis=1)
            if np.any(norms == 0):
                raise ValidationError("cannot normalize a zero vector")
            v = v / norms[:, None]
        return cls(v, label)

    @property
    def n(self) -> int:
        return self.directions.shape[0]

    def __len__(self) -> int:
        return self.n

    def to_dict(self) -> dict:
        return {"label": self.label, "directions": self.directions.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "MeasurementSet":
        try:
            return cls(data["directions"], str(data.get("label", "")))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed measurement set: {exc}") from exc


@dataclass(frozen=True, eq=False)
class BoundResult:
    value: float
    signs: tuple[int, ...]
    resultant: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "signs": list(self.signs),
            "resultant": self.resultant.tolist(),
        }


def _check_capacity(n: int, limit: int) -> None:
    if n > limit:
        raise CapacityError(f"N = {n} exceeds the enumeration limit {limit}")


def lhs_bound(mset: MeasurementSet) -> BoundResult:
    """Exact LHS bound with its maximizing sign assignment.

    Among tied maximizers (relative 1e-12 in the squared norm) the
    lexicographically smallest sign vector is returned, ordering +1 < -1.
    """
    B = mset.directions
    _check_capacity(B.shape[0], MAX_ENUM)
    _, mask = _kernels.scan(B)
    signs = _kernels.mask_to_signs(mask, B.shape[0])
    resultant = signs.astype(np.float64) @ B / B.shape[0]
    return BoundResult(float(np.linalg.norm(resultant)), tuple(int(s) for s in signs), resultant)


def bound_value(directions: np.ndarray) -> float:
    """Bound value only, for raw (N, 3) arrays inside optimization loops."""
    return math.sqrt(_kernels.max_sq(directions)) / directions.shape[0]


def lhs_bound_eig(mset: MeasurementSet) -> float:
    """Same bound through the largest eigenvalue of sum_j A_j (b_j . sigma).

    Independent of :func:`lhs_bound`: it diagonalizes 2x2 Hermitian matrices
    rather than taking vector norms.
    """
    _check_capacity(mset.n, MAX_EIG_ENUM)
    return _kernels.eig_max_over_signs(mset.directions) / mset.n


def rotation_to_north(v: np.ndarray) -> np.ndarray:
    """Rotation matrix taking ``v`` onto +z: Rz(-phi) first, then Ry(-theta)."""
    r = float(np.linalg.norm(v))
    if r < UNIT_TOL:
        raise CanonicalizationError("resultant vector is zero; rotation undefined")
    u = v / r
    if np.linalg.norm(u - (0.0, 0.0, 1.0)) <= 1e-12:
        return np.eye(3)
    theta = math.acos(max(-1.0, min(1.0, u[2])))
    phi = math.atan2(u[1], u[0])
    cp, sp = math.cos(-phi), math.sin(-phi)
    ct, st = math.cos(-theta), math.sin(-theta)
    rz = np.array([[cp, -sp, 0.0], [sp, cp, 0.0], [0.0, 0.0, 1.0]])
    ry = np.array([[ct, 0.0, st], [0.0, 1.0, 0.0], [-st, 0.0, ct]])
    return ry @ rz


def canonicalize(mset: MeasurementSet) -> MeasurementSet:
    """Gauge-fix a set: absorb the maximizing signs, then rotate the resultant to +z.

    The returned set has the same bound, all-ones is a maximizing assignment,
    and its mean direction is (0, 0, C_N).
    """
    res = lhs_bound(mset)
    if np.linalg.norm(res.resultant) < UNIT_TOL:
        raise CanonicalizationError("resultant vector is zero; rotation undefined")
    flipped = np.asarray(res.signs, dtype=np.float64)[:, None] * mset.directions
    rotated = flipped @ rotation_to_north(res.resultant).T
    rotated /= np.linalg.norm(rotated, axis=1)[:, None]
    return MeasurementSet(rotated, mset.label)
