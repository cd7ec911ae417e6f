import math
import warnings

import numpy as np
import pytest

from conftest import unit_rows
from steerbound import golden, optimizer
from steerbound.errors import CapacityError, ValidationError
from steerbound.lhsbound import MeasurementSet, lhs_bound
from steerbound.optimizer import (
    AnnealingConfig,
    RecordWarning,
    anneal,
    optimize,
    random_set,
    refine,
)

FAST = dict(restarts=2, sweeps_per_temperature=5)


def test_config_defaults():
    cfg = AnnealingConfig(7)
    assert cfg.sweeps_per_temperature == 350
    assert (cfg.t_initial, cfg.t_final, cfg.cooling, cfg.restarts) == (0.05, 1e-5, 0.97, 20)
    assert (cfg.move_scale_initial, cfg.move_scale_final) == (0.5, 0.005)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(t_initial=1e-5, t_final=1e-4),
        dict(t_final=0.0),
        dict(cooling=1.0),
        dict(cooling=0.0),
        dict(restarts=0),
        dict(move_scale_initial=4.0),
        dict(move_scale_final=0.0),
        dict(sweeps_per_temperature=0),
        dict(seed=-1),
        dict(quench_levels=-1),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValidationError):
        AnnealingConfig(4, **kwargs)


def test_config_dict_round_trip():
    cfg = AnnealingConfig(5, seed=9, restarts=3)
    assert AnnealingConfig.from_dict(cfg.to_dict()) == cfg
    with pytest.raises(ValidationError):
        AnnealingConfig.from_dict({"n_settings": 3, "bogus": 1})


def test_schedule():
    cfg = AnnealingConfig(3)
    temps = cfg.temperatures()
    assert temps[0] == 0.05
    assert temps[-1] >= 1e-5 > temps[-1] * 0.97
    assert np.allclose(temps[1:] / temps[:-1], 0.97)
    scales = cfg.move_scales(temps)
    assert scales[0] == pytest.approx(0.5)
    assert np.all(np.diff(scales) < 0)
    # linear in log T, so the final scale is reached at t_final exactly
    assert cfg.move_scales(np.array([1e-5]))[0] == pytest.approx(0.005)
    full_t, full_s = cfg.schedule()
    assert len(full_t) == len(temps) + 40
    assert np.all(full_t[len(temps):] == 0)
    assert full_s[-1] == pytest.approx(0.005 * 0.5**40)


def test_random_set_basic():
    one = random_set(1, 0)
    assert one.n == 1
    assert np.linalg.norm(one.directions[0]) == pytest.approx(1, abs=1e-12)
    big = random_set(10_000, 17)
    assert abs(big.directions[:, 2].mean()) < 0.03
    assert np.array_equal(random_set(5, 3).directions, random_set(5, 3).directions)
    assert not np.array_equal(random_set(5, 3).directions, random_set(5, 4).directions)
    with pytest.raises(ValidationError):
        random_set(0, 1)


def test_random_set_uniform_azimuth_and_height():
    d = random_set(20_000, 5).directions
    phi = np.mod(np.arctan2(d[:, 1], d[:, 0]), 2 * np.pi)
    assert np.histogram(phi, bins=8, range=(0, 2 * np.pi))[0].min() > 2200
    assert np.histogram(d[:, 2], bins=8, range=(-1, 1))[0].min() > 2200


def test_anneal_n2():
    res = anneal(AnnealingConfig(2, seed=1))
    assert abs(res.best_bound - math.sqrt(2) / 2) <= 1e-6


def test_anneal_n3():
    res = anneal(AnnealingConfig(3, seed=1))
    assert abs(res.best_bound - math.sqrt(3) / 3) <= 1e-6


def test_anneal_result_invariants():
    cfg = AnnealingConfig(5, seed=2, **FAST)
    res = anneal(cfg)
    assert res.best_bound == pytest.approx(lhs_bound(res.best_set).value, abs=1e-12)
    assert res.best_bound >= 1 / math.sqrt(5) - 1e-12
    assert res.best_bound == min(b for _, b in res.history)
    assert [i for i, _ in res.history] == [0, 1]
    mean = res.best_set.directions.mean(axis=0)
    assert np.allclose(mean, [0, 0, res.best_bound], atol=1e-10)
    assert res.config == cfg.to_dict()
    levels = len(cfg.schedule()[0])
    assert res.evaluations == cfg.restarts * (levels * cfg.sweeps_per_temperature + 1)


def test_anneal_traces_monotone():
    res = anneal(AnnealingConfig(6, seed=4, **FAST))
    for trace in res.traces:
        assert np.all(np.diff(trace) <= 0)


def test_anneal_reproducible():
    cfg = AnnealingConfig(4, seed=11, **FAST)
    a, b = anneal(cfg), anneal(cfg)
    assert a.best_bound == b.best_bound
    assert np.array_equal(a.best_set.directions, b.best_set.directions)
    assert a.history == b.history


def test_restart_streams_are_independent_of_restart_count():
    one = anneal(AnnealingConfig(4, seed=11, restarts=1, sweeps_per_temperature=5))
    two = anneal(AnnealingConfig(4, seed=11, restarts=2, sweeps_per_temperature=5))
    assert one.history[0] == two.history[0]


def test_anneal_capacity_and_size():
    with pytest.raises(CapacityError):
        anneal(AnnealingConfig(21))
    with pytest.raises(ValidationError):
        anneal(AnnealingConfig(1))


def test_record_warning(monkeypatch):
    monkeypatch.setitem(optimizer.OPTIMAL_RECORDS, 3, 0.6)
    with pytest.warns(RecordWarning):
        anneal(AnnealingConfig(3, seed=1, **FAST))
    monkeypatch.setitem(optimizer.OPTIMAL_RECORDS, 3, math.sqrt(3) / 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error", RecordWarning)
        anneal(AnnealingConfig(3, seed=1, **FAST))


def test_refine_recovers_perturbed_n4():
    m, _ = golden.load("table2-n4")
    rng = np.random.default_rng(0)
    theta = np.arccos(m.directions[:, 2]) + 0.01 * rng.choice([-1, 1], 4)
    phi = np.arctan2(m.directions[:, 1], m.directions[:, 0]) + 0.01 * rng.choice([-1, 1], 4)
    B = np.column_stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    start = MeasurementSet.from_vectors(B, normalize=True)
    assert lhs_bound(start).value - math.sqrt(5) / 4 > 1e-4
    res = refine(start)
    assert abs(res.best_bound - math.sqrt(5) / 4) <= 1e-8


def test_refine_keeps_optimal_n6():
    m, _ = golden.load("table2-n6")
    res = refine(m, iterations=300)
    assert res.best_bound == pytest.approx(math.sqrt(10) / 6, abs=1e-12)


def test_refine_escapes_degenerate_pair():
    start = MeasurementSet(np.array([[0, 0, 1.0], [0, 0, 1.0]]))
    res = refine(start)
    assert res.best_bound <= math.sqrt(2) / 2 + 1e-6


def test_refine_never_worse(rng):
    for n in (2, 5, 9):
        m = MeasurementSet(unit_rows(rng, n))
        before = lhs_bound(m).value
        res = refine(m, iterations=50)
        assert res.best_bound <= before + 1e-15
        assert res.best_bound == pytest.approx(lhs_bound(res.best_set).value, abs=1e-12)
        assert np.all(np.diff(res.traces[0]) <= 0)


def test_refine_zero_iterations_returns_input_bound(rng):
    m = MeasurementSet(unit_rows(rng, 4))
    assert refine(m, iterations=0).best_bound == pytest.approx(lhs_bound(m).value, abs=1e-15)
    with pytest.raises(ValidationError):
        refine(m, iterations=-1)
    with pytest.raises(CapacityError):
        refine(MeasurementSet(unit_rows(rng, 21)))


def test_optimize_n4():
    res = optimize(AnnealingConfig(4, seed=1, restarts=4))
    assert abs(res.best_bound - math.sqrt(5) / 4) <= 1e-8
    assert res.to_dict()["config"]["n_settings"] == 4
