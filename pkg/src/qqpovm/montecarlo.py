"""Finite-sample simulation of the two-order question experiment.

Each simulated respondent answers both questions in one of the two orders.
Answers are drawn from the exact four-cell joint distribution of the Lüders
(``SQRT``) instrument. Randomness comes from numpy's PCG64 seeded through
``SeedSequence``; entropy for order ``k`` of sweep entry ``i`` is
``(seed, i, k)``, so results do not depend on how runs are scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measurement import (
    OUTCOMES,
    BinaryMeasurement,
    Convention,
    Order,
    QuantumState,
    outcome_distribution,
    require_valid,
)
from .qq import qq_statistic

CELLS = tuple((a, b) for a in OUTCOMES for b in OUTCOMES)
_YN = CELLS.index(("yes", "no"))
_NY = CELLS.index(("no", "yes"))


class UnsupportedConventionError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    state: QuantumState
    A: BinaryMeasurement
    B: BinaryMeasurement
    n_per_order: int
    seed: int = 0
    convention: Convention = Convention.SQRT

    def __post_init__(self):
        object.__setattr__(self, "convention", Convention(self.convention))
        if self.n_per_order < 1:
            raise ValueError(f"n_per_order must be positive, got {self.n_per_order}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class EmpiricalReport:
    counts: np.ndarray  # shape (2, 4): orders (a-first, b-first) x cells (yy, yn, ny, nn)
    n_per_order: int
    analytic_qq: float
    empirical_qq: float
    standard_error: float

    @property
    def abs_error(self) -> float:
        return abs(self.empirical_qq - self.analytic_qq)


def _cell_probs(config: ExperimentConfig, order: Order) -> np.ndarray:
    table = outcome_distribution(config.state, config.A, config.B, order, config.convention)
    p = np.clip(table.as_array(), 0.0, None)
    return p / p.sum()


def _simulate(config: ExperimentConfig, entropy: tuple[int, ...]) -> EmpiricalReport:
    if config.convention is not Convention.SQRT:
        raise UnsupportedConventionError(
            "sampling needs a normalized joint distribution; "
            f"the {config.convention.value!r} convention does not provide one, use 'sqrt'"
        )
    require_valid(config.A)
    require_valid(config.B)
    n = config.n_per_order
    counts = np.empty((2, len(CELLS)), dtype=np.int64)
    for k, order in enumerate(Order):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((*entropy, k))))
        counts[k] = rng.multinomial(n, _cell_probs(config, order))
    p_hat = counts / n
    empirical = p_hat[0, _YN] + p_hat[0, _NY] - p_hat[1, _YN] - p_hat[1, _NY]
    cells = p_hat[:, [_YN, _NY]]
    se = float(np.sqrt(np.sum(cells * (1 - cells)) / n))
    analytic = qq_statistic(config.state, config.A, config.B, config.convention).statistic
    return EmpiricalReport(counts, n, analytic, float(empirical), se)


def simulate(config: ExperimentConfig) -> EmpiricalReport:
    """Sample ``n_per_order`` respondents for each question order."""
    return _simulate(config, (config.seed,))


@dataclass(frozen=True)
class SweepRow:
    n: int
    abs_error: float
    standard_error: float
    empirical_qq: float


def convergence_sweep(config: ExperimentConfig, sizes) -> list[SweepRow]:
    """One independent simulation per sample size, seeded from ``(seed, index)``."""
    sizes = [int(n) for n in sizes]
    if not sizes:
        raise ValueError("sizes must be non-empty")
    if any(n < 1 for n in sizes) or sizes != sorted(sizes):
        raise ValueError("sizes must be positive and ascending")
    rows = []
    for i, n in enumerate(sizes):
        cfg = ExperimentConfig(config.state, config.A, config.B, n, config.seed, config.convention)
        r = _simulate(cfg, (config.seed, i))
        rows.append(SweepRow(n, r.abs_error, r.standard_error, r.empirical_qq))
    return rows
