import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import trace_oracle
from steerbound.errors import ValidationError
from steerbound.qstate import (
    PARAM_RANGES,
    DensityMatrix,
    correlation_matrix,
    make_avn,
    make_generalized_werner,
    make_mems,
    make_state,
    make_werner,
    mems_g,
    min_eigenvalue,
    partial_transpose,
    werner_ppt_threshold,
)

GRID = np.linspace(0, 1, 50)
THETA = np.linspace(0, math.pi / 2, 50)
THETA_OPEN = np.linspace(0, math.pi / 2, 52)[1:-1]


def all_grid_states():
    for v in GRID:
        yield make_werner(v)
        yield make_mems(v)
        for t in THETA:
            yield make_generalized_werner(v, t)
        for t in THETA_OPEN:
            yield make_avn(v, t)


def test_werner_singlet_limit():
    rho = make_werner(1.0).matrix
    psi = np.array([0, 1, -1, 0]) / math.sqrt(2)
    assert np.allclose(rho, np.outer(psi, psi))


def test_werner_maximally_mixed():
    assert np.allclose(make_werner(0.0).matrix, np.eye(4) / 4)


def test_generalized_werner_reduces_to_werner_at_pi_over_4():
    for v in (0.0, 0.3, 1.0):
        assert np.allclose(make_generalized_werner(v, math.pi / 4).matrix, make_werner(v).matrix, atol=1e-15)


def test_mems_branches_agree_at_two_thirds():
    assert mems_g(2 / 3) == pytest.approx(1 / 3)
    assert mems_g(0.8) == 0.4
    assert make_mems(2 / 3).matrix[0, 0] == pytest.approx(1 / 3)


def test_avn_accepts_half_visibility():
    rho = make_avn(0.5, 0.4)
    assert min_eigenvalue(rho) >= -1e-12


@pytest.mark.parametrize(
    "ctor,args",
    [
        (make_werner, (1.2,)),
        (make_werner, (-0.01,)),
        (make_generalized_werner, (0.5, 2.0)),
        (make_mems, (float("nan"),)),
        (make_avn, (0.5, 0.0)),
        (make_avn, (0.5, math.pi / 2)),
    ],
)
def test_constructor_range_errors(ctor, args):
    with pytest.raises(ValidationError):
        ctor(*args)


def test_density_matrix_validation():
    with pytest.raises(ValidationError):
        DensityMatrix(np.eye(4))  # trace 4
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([1.5, -0.5, 0, 0]))  # negative eigenvalue
    bad = np.eye(4) / 4 + 0j
    bad[0, 1] = 0.1j
    with pytest.raises(ValidationError):
        DensityMatrix(bad)  # not Hermitian
    with pytest.raises(ValidationError):
        DensityMatrix(np.eye(3) / 3)


def test_density_matrix_is_read_only():
    rho = make_werner(0.5)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1


def test_all_constructors_valid_on_grid():
    for rho in all_grid_states():
        m = rho.matrix
        assert np.max(np.abs(m - m.conj().T)) <= 1e-12
        assert abs(np.trace(m).real - 1) <= 1e-12
        assert np.linalg.eigvalsh(m)[0] >= -1e-9


def test_make_state_dispatch():
    assert np.allclose(make_state("werner", V=0.3).matrix, make_werner(0.3).matrix)
    with pytest.raises(ValidationError):
        make_state("ghz", V=0.3)
    with pytest.raises(ValidationError):
        make_state("avn", V=0.3)
    assert set(PARAM_RANGES) == {"werner", "generalized_werner", "mems", "avn"}


def test_partial_transpose_werner_third():
    lam = min_eigenvalue(partial_transpose(make_werner(1 / 3)))
    assert abs(lam) <= 1e-12


def test_min_eigenvalue_identity():
    assert min_eigenvalue(np.eye(4) / 4) == pytest.approx(0.25, abs=1e-15)


def test_partial_transpose_werner_point_eight():
    assert min_eigenvalue(partial_transpose(make_werner(0.8))) == pytest.approx(-0.35, abs=1e-12)


def test_min_eigenvalue_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1
    with pytest.raises(ValidationError):
        min_eigenvalue(m)


def test_partial_transpose_against_index_formula(rng):
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    pt = partial_transpose(m)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert pt[2 * i + j, 2 * k + l] == m[2 * i + l, 2 * k + j]


def test_partial_transpose_involution():
    for rho in all_grid_states():
        twice = partial_transpose(partial_transpose(rho))
        assert np.max(np.abs(twice - rho.matrix)) <= 1e-15


def test_werner_pt_eigenvalue_closed_form():
    for v in GRID:
        assert min_eigenvalue(partial_transpose(make_werner(v))) == pytest.approx((1 - 3 * v) / 4, abs=1e-10)


def test_werner_ppt_threshold():
    assert werner_ppt_threshold() == pytest.approx(1 / 3, abs=1e-10)


def test_correlation_matrix_werner():
    for v in (0.0, 0.25, 0.9, 1.0):
        assert np.allclose(correlation_matrix(make_werner(v)), -v * np.eye(3), atol=1e-15)


def test_correlation_matrix_maximally_mixed():
    assert np.allclose(correlation_matrix(DensityMatrix(np.eye(4) / 4)), 0)


def test_correlation_matrix_against_trace_oracle():
    eye = np.eye(3)
    for v in (0.2, 0.7, 1.0):
        for t in (0.1, math.pi / 8, 1.2):
            for rho in (make_generalized_werner(v, t), make_avn(v, t)):
                T = correlation_matrix(rho)
                oracle = np.array([[trace_oracle(rho.matrix, eye[k], eye[l]) for l in range(3)] for k in range(3)])
                assert np.allclose(T, oracle, atol=1e-14)


def test_correlation_matrix_generalized_werner_is_diagonal():
    v, theta = 0.7, 0.3
    s = math.sin(2 * theta)
    T = correlation_matrix(make_generalized_werner(v, theta))
    assert np.allclose(T, -v * np.diag([s, s, 1]), atol=1e-14)


def test_correlation_entries_bounded():
    for rho in all_grid_states():
        assert np.all(np.abs(correlation_matrix(rho)) <= 1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(
    v=st.floats(0, 1),
    w=st.floats(0, 1),
    t=st.floats(0.01, 1.56),
    x=st.floats(0, 1),
)
def test_correlation_linearity(v, w, t, x):
    r1, r2 = make_generalized_werner(v, t), make_avn(w, t)
    mixed = r1.mix(r2, x)
    expected = x * correlation_matrix(r1) + (1 - x) * correlation_matrix(r2)
    assert np.max(np.abs(correlation_matrix(mixed) - expected)) <= 1e-12


def test_json_round_trip():
    rho = make_avn(0.8, math.pi / 3)
    back = DensityMatrix.from_dict(rho.to_dict())
    assert np.array_equal(back.matrix, rho.matrix)
    with pytest.raises(ValidationError):
        DensityMatrix.from_dict({"re": [[1]]})
