import itertools
import math

import numpy as np
import pytest

from steerbound.qstate import PAULI


def brute_force_bound(B):
    """max over all 2^N sign vectors of |sum A_j b_j| / N, plus the
    lexicographically first maximizer with A_1 = +1 (ordering +1 < -1)."""
    B = np.asarray(B, dtype=float)
    n = len(B)
    norms = []
    for signs in itertools.product((1, -1), repeat=n):
        norms.append((np.linalg.norm(np.dot(signs, B)), signs))
    best = max(v for v, _ in norms)
    tied = [s for v, s in norms if v * v >= best * best - 1e-12 * max(1.0, best * best) and s[0] == 1]
    return best / n, min(tied, key=lambda s: tuple(0 if x == 1 else 1 for x in s))


def trace_oracle(rho, a, b):
    """Tr[rho (a.sigma) (x) (b.sigma)] with explicit Kronecker products."""
    A = np.einsum("k,kab->ab", np.asarray(a, dtype=complex), PAULI)
    Bm = np.einsum("k,kab->ab", np.asarray(b, dtype=complex), PAULI)
    return float(np.trace(rho @ np.kron(A, Bm)).real)


def random_rotation(rng):
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def unit_rows(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


SQRT2 = math.sqrt(2)


# acceptance lines, printed together at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
