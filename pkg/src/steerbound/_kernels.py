"""Enumeration and annealing kernels.

Sign assignments are encoded as integer masks over the N-1 free signs
(A_1 = +1 is fixed).  Bit ``b`` of a mask belongs to direction ``N-1-b`` and
a set bit means A = -1, so ascending mask order is lexicographic order on
(A_2, ..., A_N) with +1 < -1.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, accelerated, jit, prange

# Gray-code scans restart from an exact sum at every chunk boundary, which
# bounds accumulated rounding and makes results independent of threading.
CHUNK_BITS = 12
NUMPY_CHUNK = 1 << 15
TIE_RTOL = 1e-12


def tie_threshold(max_sq: float) -> float:
    return max_sq - TIE_RTOL * max(1.0, max_sq)


@jit
def _exact_sum(B, mask):
    n = B.shape[0]
    s0 = B[0, 0]
    s1 = B[0, 1]
    s2 = B[0, 2]
    for j in range(1, n):
        if (mask >> (n - 1 - j)) & 1:
            s0 -= B[j, 0]
            s1 -= B[j, 1]
            s2 -= B[j, 2]
        else:
            s0 += B[j, 0]
            s1 += B[j, 1]
            s2 += B[j, 2]
    return s0, s1, s2


@jit
def _gray_chunk(B, lo, hi, threshold, find_mask):
    """Scan Gray indices [lo, hi).

    Returns (max squared norm, smallest mask whose squared norm reaches
    ``threshold``); the mask is -1 when ``find_mask`` is false or none
    qualifies.
    """
    n = B.shape[0]
    g = lo ^ (lo >> 1)
    s0, s1, s2 = _exact_sum(B, g)
    best = -1.0
    best_mask = -1
    i = lo
    while True:
        sq = s0 * s0 + s1 * s1 + s2 * s2
        if sq > best:
            best = sq
        if find_mask and sq >= threshold:
            if best_mask < 0 or g < best_mask:
                best_mask = g
        i += 1
        if i >= hi:
            break
        b = 0
        while not (i >> b) & 1:
            b += 1
        g ^= 1 << b
        j = n - 1 - b
        if (g >> b) & 1:
            s0 -= 2.0 * B[j, 0]
            s1 -= 2.0 * B[j, 1]
            s2 -= 2.0 * B[j, 2]
        else:
            s0 += 2.0 * B[j, 0]
            s1 += 2.0 * B[j, 1]
            s2 += 2.0 * B[j, 2]
    return best, best_mask


@jit
def gray_max_sq(B):
    """Max over sign assignments of |sum_j A_j b_j|^2 (Gray-code scan)."""
    total = 1 << (B.shape[0] - 1)
    chunk = 1 << CHUNK_BITS
    best = -1.0
    lo = 0
    while lo < total:
        hi = min(total, lo + chunk)
        v, _ = _gray_chunk(B, lo, hi, 0.0, False)
        if v > best:
            best = v
        lo = hi
    return best


@jit(parallel=True)
def _gray_scan_parallel(B, threshold, find_mask):
    total = 1 << (B.shape[0] - 1)
    chunk = 1 << CHUNK_BITS
    nchunks = (total + chunk - 1) // chunk
    maxes = np.empty(nchunks)
    masks = np.empty(nchunks, dtype=np.int64)
    for c in prange(nchunks):
        lo = c * chunk
        hi = min(total, lo + chunk)
        v, m = _gray_chunk(B, lo, hi, threshold, find_mask)
        maxes[c] = v
        masks[c] = m
    return maxes, masks


def gray_scan(B: np.ndarray) -> tuple[float, int]:
    """Two-pass Gray-code scan: global max, then smallest tied mask."""
    B = np.ascontiguousarray(B, dtype=np.float64)
    maxes, _ = _gray_scan_parallel(B, 0.0, False)
    best = float(maxes.max())
    _, masks = _gray_scan_parallel(B, tie_threshold(best), True)
    return best, int(masks[masks >= 0].min())


def _sign_block(n: int, lo: int, hi: int) -> np.ndarray:
    masks = np.arange(lo, hi, dtype=np.int64)
    shifts = np.arange(n - 2, -1, -1, dtype=np.int64)  # directions 1..n-1
    bits = (masks[:, None] >> shifts[None, :]) & 1
    return 1.0 - 2.0 * bits


def numpy_max_sq(B: np.ndarray) -> float:
    """Vectorized counterpart of :func:`gray_max_sq` (plain mask order)."""
    n = B.shape[0]
    total = 1 << (n - 1)
    best = -1.0
    for lo in range(0, total, NUMPY_CHUNK):
        hi = min(total, lo + NUMPY_CHUNK)
        S = B[0] + _sign_block(n, lo, hi) @ B[1:]
        best = max(best, float(np.einsum("ij,ij->i", S, S).max()))
    return best


def numpy_scan(B: np.ndarray) -> tuple[float, int]:
    B = np.asarray(B, dtype=np.float64)
    n = B.shape[0]
    total = 1 << (n - 1)
    best = numpy_max_sq(B)
    threshold = tie_threshold(best)
    for lo in range(0, total, NUMPY_CHUNK):
        hi = min(total, lo + NUMPY_CHUNK)
        S = B[0] + _sign_block(n, lo, hi) @ B[1:]
        hit = np.flatnonzero(np.einsum("ij,ij->i", S, S) >= threshold)
        if hit.size:
            return best, lo + int(hit[0])
    raise AssertionError("threshold below the maximum was never reached")


max_sq = gray_max_sq if USE_NUMBA else numpy_max_sq
scan = gray_scan if USE_NUMBA else numpy_scan


def mask_to_signs(mask: int, n: int) -> np.ndarray:
    signs = np.ones(n, dtype=np.int64)
    for j in range(1, n):
        if (mask >> (n - 1 - j)) & 1:
            signs[j] = -1
    return signs


_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)


def eig_max_over_signs(B: np.ndarray) -> float:
    """Max over sign assignments of lambda_max(sum_j A_j b_j . sigma).

    Each 2x2 operator is diagonalized by LAPACK's Hermitian solver; the
    vector-norm identity is never used here.
    """
    B = np.asarray(B, dtype=np.float64)
    n = B.shape[0]
    ops = np.einsum("jk,kab->jab", B, _PAULI).reshape(n, 4)
    total = 1 << (n - 1)
    best = -np.inf
    for lo in range(0, total, NUMPY_CHUNK):
        hi = min(total, lo + NUMPY_CHUNK)
        signs = np.hstack([np.ones((hi - lo, 1)), _sign_block(n, lo, hi)])
        mats = (signs @ ops).reshape(-1, 2, 2)
        best = max(best, float(np.linalg.eigvalsh(mats)[:, -1].max()))
    return best


@accelerated
def rotate_about(v, axis, angle):
    """Rodrigues rotation of ``v`` about the unit ``axis``, renormalized."""
    c = math.cos(angle)
    s = math.sin(angle)
    dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2]
    cx = axis[1] * v[2] - axis[2] * v[1]
    cy = axis[2] * v[0] - axis[0] * v[2]
    cz = axis[0] * v[1] - axis[1] * v[0]
    out = np.empty(3)
    out[0] = v[0] * c + cx * s + axis[0] * dot * (1.0 - c)
    out[1] = v[1] * c + cy * s + axis[1] * dot * (1.0 - c)
    out[2] = v[2] * c + cz * s + axis[2] * dot * (1.0 - c)
    norm = math.sqrt(out[0] * out[0] + out[1] * out[1] + out[2] * out[2])
    out /= norm
    return out


@accelerated
def anneal_chain(B0, temps, scales, sweeps, picks, axes, magnitudes, uniforms):
    """One Metropolis chain over a temperature ladder (zeros mean greedy).

    Random draws are supplied by the caller (one row per proposal) so the
    compiled and pure-Python paths consume identical streams.  Returns the
    best set, its bound, the best-so-far bound after each temperature, and
    the number of objective evaluations.
    """
    n = B0.shape[0]
    B = B0.copy()
    current = math.sqrt(max_sq(B)) / n
    best = current
    best_B = B.copy()
    history = np.empty(temps.shape[0])
    evals = 1
    step = 0
    old = np.empty(3)
    for t in range(temps.shape[0]):
        temp = temps[t]
        for _ in range(sweeps):
            j = picks[step]
            old[:] = B[j]
            B[j] = rotate_about(old, axes[step], magnitudes[step] * scales[t])
            value = math.sqrt(max_sq(B)) / n
            evals += 1
            delta = value - current
            # a zero temperature is a greedy quench
            if delta <= 0.0 or (temp > 0.0 and uniforms[step] < math.exp(-delta / temp)):
                current = value
                if current < best:
                    best = current
                    best_B[:] = B
            else:
                B[j] = old
            step += 1
        history[t] = best
    return best_B, best, history, evals


@accelerated
def angles_to_directions(x, out):
    """Fill ``out`` (N, 3) from polar angles x[:N] and azimuths x[N:]."""
    n = out.shape[0]
    for j in range(n):
        st = math.sin(x[j])
        out[j, 0] = st * math.cos(x[n + j])
        out[j, 1] = st * math.sin(x[n + j])
        out[j, 2] = math.cos(x[j])


@accelerated
def poll(x, value, step, dirs, slack):
    """Try ``x + step * d`` for each row d of ``dirs`` in order.

    Returns (index of the first point improving on ``value`` by more than
    ``slack``, its value, evaluations used); index is -1 if none does.
    """
    n = x.shape[0] // 2
    y = np.empty_like(x)
    B = np.empty((n, 3))
    for k in range(dirs.shape[0]):
        for i in range(x.shape[0]):
            y[i] = x[i] + step * dirs[k, i]
        angles_to_directions(y, B)
        v = math.sqrt(max_sq(B)) / n
        if v < value - slack:
            return k, v, k + 1
    return -1, value, dirs.shape[0]
