"""The QQ statistic ``p(AyBn) + p(AnBy) - p(ByAn) - p(BnAy)`` and its operator form.

The statistic is linear in the state, ``qq = Tr(rho K)`` with

    K = Ay' Bn' Bn Ay + An' By' By An - By' An' An By - Bn' Ay' Ay Bn

where each symbol is an update operator and ``'`` is the adjoint. For any
pair of projective measurements ``K`` vanishes identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import (
    ComplexMatrix,
    DimensionError,
    Tolerance,
    adjoint,
    eig_hermitian,
    eps_of,
    hermitian_part,
    real_trace_product,
)
from .measurement import (
    BinaryMeasurement,
    Convention,
    Order,
    OutcomeTable,
    QuantumState,
    outcome_distribution,
    update_operator,
)


def _sandwich(first: ComplexMatrix, second: ComplexMatrix) -> ComplexMatrix:
    w = second @ first
    return adjoint(w) @ w


def qq_operator(
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    c: Convention,
    tol: Tolerance | float | None = None,
) -> ComplexMatrix:
    """Hermitian operator ``K`` with ``qq(rho) = Tr(rho K)``."""
    if A.dim != B.dim:
        raise DimensionError(f"measurements have dimensions {A.dim} and {B.dim}")
    ay, an = (update_operator(A.effect(o), c, tol) for o in ("yes", "no"))
    by, bn = (update_operator(B.effect(o), c, tol) for o in ("yes", "no"))
    k = _sandwich(ay, bn) + _sandwich(an, by) - _sandwich(by, an) - _sandwich(bn, ay)
    return hermitian_part(k)


def qq_from_tables(a_first: OutcomeTable, b_first: OutcomeTable) -> float:
    return (
        a_first[("yes", "no")]
        + a_first[("no", "yes")]
        - b_first[("yes", "no")]
        - b_first[("no", "yes")]
    )


@dataclass(frozen=True)
class QqReport:
    k_operator: ComplexMatrix
    statistic: float
    combination: float
    convention: Convention
    a_first: OutcomeTable
    b_first: OutcomeTable
    tol: float

    @property
    def zero_state(self) -> bool:
        return abs(self.statistic) <= self.tol

    @property
    def agreement(self) -> float:
        """Gap between the trace form and the four-probability combination."""
        return abs(self.statistic - self.combination)

    @property
    def factor(self) -> float | None:
        """For a qubit ``K = [[0, c], [c, 0]]`` return ``c``, otherwise ``None``.

        In that case the statistic on a pure state is ``2 c Re(conj(alpha) beta)``.
        """
        k = self.k_operator
        if k.shape != (2, 2):
            return None
        if max(abs(k[0, 0]), abs(k[1, 1]), abs(k[0, 1].imag)) > self.tol:
            return None
        return float(k[0, 1].real)


def qq_statistic(
    s: QuantumState,
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    c: Convention,
    tol: Tolerance | float | None = None,
) -> QqReport:
    """Evaluate the QQ statistic both as ``Tr(rho K)`` and from the outcome tables."""
    c = Convention(c)
    k = qq_operator(A, B, c, tol)
    a_first = outcome_distribution(s, A, B, Order.A_FIRST, c, tol)
    b_first = outcome_distribution(s, A, B, Order.B_FIRST, c, tol)
    return QqReport(
        k_operator=k,
        statistic=real_trace_product(k, s.rho),
        combination=qq_from_tables(a_first, b_first),
        convention=c,
        a_first=a_first,
        b_first=b_first,
        tol=eps_of(tol),
    )


def zero_state_condition(
    alpha: complex,
    beta: complex,
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    c: Convention,
    tol: Tolerance | float | None = None,
) -> bool:
    """Whether the pure qubit state with amplitudes ``(alpha, beta)`` has zero QQ statistic."""
    if A.dim != 2 or B.dim != 2:
        raise DimensionError("zero_state_condition is defined for qubit models")
    s = QuantumState.from_amplitudes(alpha, beta)
    k = qq_operator(A, B, c, tol)
    return abs(real_trace_product(k, s.rho)) <= eps_of(tol)


class Violation(NamedTuple):
    value: float
    maximizer: QuantumState


def max_violation(
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    c: Convention,
    tol: Tolerance | float | None = None,
) -> Violation:
    """Largest QQ statistic over all states: the top eigenvalue of ``K``."""
    w, v = eig_hermitian(qq_operator(A, B, c, tol))
    return Violation(float(w[-1]), QuantumState.from_vector(v[:, -1]))


def bloch_grid(grid_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Polar angles ``linspace(0, pi)`` and azimuths ``2 pi j / grid_steps``.

    The azimuth grid excludes ``2 pi`` so that ``pi/2`` and ``3 pi/2`` are hit
    exactly whenever ``grid_steps`` is a multiple of 4.
    """
    if grid_steps < 2:
        raise ValueError(f"grid_steps must be at least 2, got {grid_steps}")
    thetas = np.linspace(0.0, np.pi, grid_steps)
    phis = 2 * np.pi * np.arange(grid_steps) / grid_steps
    return thetas, phis


def bloch_amplitudes(grid_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """``alpha[i, j] = cos(theta_i / 2)``, ``beta[i, j] = exp(i phi_j) sin(theta_i / 2)``."""
    thetas, phis = bloch_grid(grid_steps)
    alpha = np.cos(thetas / 2)[:, None] * np.ones_like(phis)[None, :]
    beta = np.sin(thetas / 2)[:, None] * np.exp(1j * phis)[None, :]
    return alpha.astype(np.complex128), beta


def statistic_grid(
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    c: Convention,
    grid_steps: int,
    tol: Tolerance | float | None = None,
) -> np.ndarray:
    """QQ statistic for every pure state of the Bloch grid, shape ``(steps, steps)``."""
    if A.dim != 2 or B.dim != 2:
        raise DimensionError("Bloch scans are defined for qubit models")
    k = qq_operator(A, B, c, tol)
    alpha, beta = bloch_amplitudes(grid_steps)
    # rho = outer(conj(a), a) for a = (alpha, beta); Tr(rho K) = a^T K conj(a)
    amps = np.stack([alpha, beta], axis=-1)
    vals = np.einsum("...i,ij,...j->...", amps, k, amps.conj())
    return vals.real


def zero_manifold_mask(
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    c: Convention,
    grid_steps: int,
    tol: Tolerance | float | None = None,
) -> np.ndarray:
    return np.abs(statistic_grid(A, B, c, grid_steps, tol)) <= eps_of(tol)


def zero_manifold_scan(
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    c: Convention,
    grid_steps: int,
    tol: Tolerance | float | None = None,
) -> list[tuple[complex, complex]]:
    """Grid states ``(alpha, beta)`` with ``|qq| <= tol``, in grid index order."""
    mask = zero_manifold_mask(A, B, c, grid_steps, tol)
    alpha, beta = bloch_amplitudes(grid_steps)
    return [(complex(alpha[i, j]), complex(beta[i, j])) for i, j in np.argwhere(mask)]
