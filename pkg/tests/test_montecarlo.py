import numpy as np
import pytest
from scipy import stats

from qqpovm.ensembles import random_projective, random_state
from qqpovm.measurement import Convention, Order, outcome_distribution
from qqpovm.montecarlo import (
    ExperimentConfig,
    UnsupportedConventionError,
    convergence_sweep,
    simulate,
)
from qqpovm.qq import qq_statistic


@pytest.fixture
def config(ref, uniform):
    A, B = ref
    return ExperimentConfig(uniform, A, B, n_per_order=10**6, seed=12345)


def test_reference_model_within_four_se(config):
    r = simulate(config)
    analytic = qq_statistic(config.state, config.A, config.B, Convention.SQRT).statistic
    assert r.analytic_qq == pytest.approx(analytic, abs=1e-14)
    assert r.abs_error <= 4 * r.standard_error
    assert np.all(r.counts.sum(axis=1) == config.n_per_order)


def test_empirical_qq_definition(config):
    r = simulate(config)
    p = r.counts / config.n_per_order
    # cells yy, yn, ny, nn
    assert r.empirical_qq == pytest.approx(p[0, 1] + p[0, 2] - p[1, 1] - p[1, 2], abs=1e-15)


def test_deterministic(config):
    a, b = simulate(config), simulate(config)
    np.testing.assert_array_equal(a.counts, b.counts)
    assert a.empirical_qq == b.empirical_qq


def test_different_seeds_differ(config):
    other = ExperimentConfig(config.state, config.A, config.B, config.n_per_order, seed=config.seed + 1)
    assert not np.array_equal(simulate(config).counts, simulate(other).counts)


def test_projective_null_model(rng):
    A, B = random_projective(2, rng, 1), random_projective(2, rng, 1)
    r = simulate(ExperimentConfig(random_state(2, rng), A, B, 10**5, seed=3))
    assert abs(r.analytic_qq) < 1e-12
    assert abs(r.empirical_qq) <= 4 * r.standard_error


def test_single_respondent(config):
    one = ExperimentConfig(config.state, config.A, config.B, 1, seed=9)
    r = simulate(one)
    assert np.all(r.counts.sum(axis=1) == 1)
    assert r.empirical_qq in (-1.0, 0.0, 1.0)


def test_literal_rejected(config):
    lit = ExperimentConfig(config.state, config.A, config.B, 10, convention=Convention.LITERAL)
    with pytest.raises(UnsupportedConventionError):
        simulate(lit)


def test_config_validation(config):
    with pytest.raises(ValueError):
        ExperimentConfig(config.state, config.A, config.B, 0)
    with pytest.raises(ValueError):
        ExperimentConfig(config.state, config.A, config.B, 1, seed=-1)


def test_chi_square_against_analytic(config):
    n = 10**5
    cfg = ExperimentConfig(config.state, config.A, config.B, n, seed=2024)
    r = simulate(cfg)
    for k, order in enumerate(Order):
        p = outcome_distribution(cfg.state, cfg.A, cfg.B, order, Convention.SQRT).as_array()
        assert stats.chisquare(r.counts[k], n * p).pvalue > 0.001


def test_sweep_rows(config):
    rows = convergence_sweep(config, [10**2, 10**4, 10**6])
    assert [r.n for r in rows] == [100, 10_000, 1_000_000]
    se = [r.standard_error for r in rows]
    assert se[0] > se[1] > se[2]
    # the final row brackets the analytic value
    assert rows[-1].abs_error <= 4 * rows[-1].standard_error


def test_sweep_preconditions(config):
    with pytest.raises(ValueError):
        convergence_sweep(config, [])
    with pytest.raises(ValueError):
        convergence_sweep(config, [100, 10])


def test_sweep_error_scaling(config):
    sizes = [10**2, 10**3, 10**4, 10**5, 10**6]
    errs = []
    for seed in range(40):
        cfg = ExperimentConfig(config.state, config.A, config.B, 1, seed=seed)
        errs.append([r.abs_error for r in convergence_sweep(cfg, sizes)])
    rms = np.sqrt(np.mean(np.square(errs), axis=0))
    slope = np.polyfit(np.log10(sizes), np.log10(rms), 1)[0]
    assert abs(slope + 0.5) <= 0.25
