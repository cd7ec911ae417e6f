"""Two-qubit states used to probe steering inequalities.

Basis order is |00>, |01>, |10>, |11> with the first factor Alice's qubit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-9

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
# PAULI_PAIRS[k, l] = sigma_k (x) sigma_l
PAULI_PAIRS = np.einsum("kab,lcd->klacbd", PAULI, PAULI).reshape(3, 3, 4, 4)


def as_matrix4(m) -> np.ndarray:
    a = np.array(m, dtype=np.complex128)
    if a.shape != (4, 4):
        raise ValidationError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has NaN or Inf entries")
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = as_matrix4(self.matrix)
        herm = np.max(np.abs(m - m.conj().T))
        if herm > HERMITIAN_TOL:
            raise ValidationError(f"not Hermitian (max deviation {herm:.3g})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {tr!r}, expected 1")
        lam = min_eigenvalue(m)
        if lam < PSD_TOL:
            raise ValidationError(f"not positive semidefinite (min eigenvalue {lam:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def mix(self, other: "DensityMatrix", weight: float) -> "DensityMatrix":
        """Return ``weight * self + (1 - weight) * other``."""
        _check_range("weight", weight, 0.0, 1.0)
        return DensityMatrix(weight * self.matrix + (1 - weight) * other.matrix)

    def to_dict(self) -> dict:
        return {"re": self.matrix.real.tolist(), "im": self.matrix.imag.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "DensityMatrix":
        try:
            re = np.asarray(data["re"], dtype=float)
            im = np.asarray(data["im"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed state: {exc}") from exc
        return cls(re + 1j * im, str(data.get("label", "")))


def _check_range(name, value, lo, hi, *, open_lo=False, open_hi=False):
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite")
    bad_lo = value <= lo if open_lo else value < lo
    bad_hi = value >= hi if open_hi else value > hi
    if bad_lo or bad_hi:
        lb = "(" if open_lo else "["
        rb = ")" if open_hi else "]"
        raise ValidationError(f"{name} = {value!r} outside {lb}{lo}, {hi}{rb}")


def _projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def make_werner(V: float) -> DensityMatrix:
    """V |Phi-><Phi-| + (1 - V) I/4 with |Phi-> = (|01> - |10>)/sqrt 2."""
    _check_range("V", V, 0.0, 1.0)
    singlet = _projector(np.array([0, 1, -1, 0]) / math.sqrt(2))
    return DensityMatrix(V * singlet + (1 - V) * np.eye(4) / 4, f"werner(V={V})")


def make_generalized_werner(V: float, theta: float) -> DensityMatrix:
    _check_range("V", V, 0.0, 1.0)
    _check_range("theta", theta, 0.0, math.pi / 2)
    c, s = math.cos(theta), math.sin(theta)
    noise = (1 - V) / 4
    m = np.diag([noise, V * c * c + noise, V * s * s + noise, noise]).astype(np.complex128)
    m[1, 2] = m[2, 1] = -V * s * c
    return DensityMatrix(m, f"generalized_werner(V={V}, theta={theta})")


def mems_g(gamma: float) -> float:
    return 1.0 / 3.0 if gamma <= 2.0 / 3.0 else gamma / 2.0


def make_mems(gamma: float) -> DensityMatrix:
    """Maximally entangled mixed state; g = 1/3 up to gamma = 2/3, gamma/2 above."""
    _check_range("gamma", gamma, 0.0, 1.0)
    g = mems_g(gamma)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = m[3, 3] = g
    m[1, 1] = 1 - 2 * g
    m[0, 3] = m[3, 0] = gamma / 2
    return DensityMatrix(m, f"mems(gamma={gamma})")


def make_avn(V: float, theta: float) -> DensityMatrix:
    """All-versus-nothing family; V = 1/2 is accepted (the matrix is valid)."""
    _check_range("V", V, 0.0, 1.0)
    _check_range("theta", theta, 0.0, math.pi / 2, open_lo=True, open_hi=True)
    c, s = math.cos(theta), math.sin(theta)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = V * c * c
    m[3, 3] = V * s * s
    m[0, 3] = m[3, 0] = V * s * c
    m[1, 1] = (1 - V) * s * s
    m[2, 2] = (1 - V) * c * c
    m[1, 2] = m[2, 1] = (1 - V) * s * c
    return DensityMatrix(m, f"avn(V={V}, theta={theta})")


FAMILIES = {
    "werner": (make_werner, ("V",)),
    "generalized_werner": (make_generalized_werner, ("V", "theta")),
    "mems": (make_mems, ("gamma",)),
    "avn": (make_avn, ("V", "theta")),
}

# closed parameter ranges per family; AVN theta is open at both ends
PARAM_RANGES = {
    "werner": {"V": (0.0, 1.0)},
    "generalized_werner": {"V": (0.0, 1.0), "theta": (0.0, math.pi / 2)},
    "mems": {"gamma": (0.0, 1.0)},
    "avn": {"V": (0.0, 1.0), "theta": (0.0, math.pi / 2)},
}


def make_state(family: str, **params: float) -> DensityMatrix:
    try:
        ctor, names = FAMILIES[family]
    except KeyError:
        raise ValidationError(f"unknown state family {family!r}") from None
    missing = [n for n in names if n not in params]
    if missing:
        raise ValidationError(f"family {family!r} needs parameters {missing}")
    return ctor(*(params[n] for n in names))


def partial_transpose(rho) -> np.ndarray:
    """Transpose on Bob's (second) qubit indices."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix4(rho)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def min_eigenvalue(m) -> float:
    m = m.matrix if isinstance(m, DensityMatrix) else as_matrix4(m)
    if np.max(np.abs(m - m.conj().T)) > 1e-10:
        raise ValidationError("min_eigenvalue needs a Hermitian matrix")
    return float(np.linalg.eigvalsh(m)[0])


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """T[k, l] = Tr[rho (sigma_k (x) sigma_l)] for k, l in x, y, z."""
    return np.einsum("ij,klji->kl", rho.matrix, PAULI_PAIRS).real.copy()


def werner_ppt_threshold(tol: float = 1e-12) -> float:
    """Bisect min eigenvalue of the Werner partial transpose for its zero."""
    lo, hi = 0.0, 1.0
    f = lambda v: min_eigenvalue(partial_transpose(make_werner(v)))  # noqa: E731
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
