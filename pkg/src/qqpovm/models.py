"""Reference measurement pairs and states used throughout the package."""

from __future__ import annotations

import numpy as np

from .measurement import BinaryMeasurement, QuantumState

_S12 = 1 / np.sqrt(12)

#: Off-diagonal magnitude of the QQ operator of :func:`reference_pair` (literal convention).
REFERENCE_QQ_CONSTANT = 2 / (27 * np.sqrt(3))


def reference_pair() -> tuple[BinaryMeasurement, BinaryMeasurement]:
    """The two non-projective binary POVMs ``A = (Q1, Q2)`` and ``B = (P1, P2)``."""
    q1 = np.array([[5 / 6, _S12], [_S12, 1 / 2]])
    q2 = np.array([[1 / 6, -_S12], [-_S12, 1 / 2]])
    p1 = np.array([[1 / 6, _S12], [_S12, 1 / 2]])
    p2 = np.array([[5 / 6, -_S12], [-_S12, 1 / 2]])
    return (
        BinaryMeasurement.from_matrices(q1, q2, name="A"),
        BinaryMeasurement.from_matrices(p1, p2, name="B"),
    )


def uniform_state() -> QuantumState:
    """``rho = [[1, 1], [1, 1]] / 2``, the state maximizing the literal QQ statistic."""
    return QuantumState(np.full((2, 2), 0.5))


def zero_states() -> list[QuantumState]:
    """Two pure states and their equal mixture on which the literal QQ statistic vanishes."""
    s1 = QuantumState(np.array([[1, -1j], [1j, 1]]) / 2)
    s2 = QuantumState(np.array([[4, -2j], [2j, 1]]) / 5)
    mix = QuantumState(np.array([[1, -1j], [1j, 1]]) / 4 + np.array([[4, -2j], [2j, 1]]) / 10)
    return [s1, s2, mix]


def lifted_reference_pair() -> tuple[BinaryMeasurement, BinaryMeasurement]:
    """Projective 3x3 lifts of :func:`reference_pair`.

    The (1,1) entries of ``Q2'`` and ``P1'`` are 1/6. Any other value breaks both
    completeness and idempotence.
    """
    a = 1 / (2 * np.sqrt(3))
    b = 1 / (3 * np.sqrt(2))
    c = 1 / np.sqrt(6)
    q1 = np.array([[5 / 6, a, b], [a, 1 / 2, -c], [b, -c, 2 / 3]])
    q2 = np.array([[1 / 6, -a, -b], [-a, 1 / 2, c], [-b, c, 1 / 3]])
    p1 = np.array([[1 / 6, a, -b], [a, 1 / 2, -c], [-b, -c, 1 / 3]])
    p2 = np.array([[5 / 6, -a, b], [-a, 1 / 2, c], [b, c, 2 / 3]])
    return (
        BinaryMeasurement.from_matrices(q1, q2, name="A'"),
        BinaryMeasurement.from_matrices(p1, p2, name="B'"),
    )


def standard_embedding(original_dim: int, extended_dim: int) -> np.ndarray:
    """Isometry onto the first ``original_dim`` coordinates."""
    return np.eye(extended_dim, original_dim, dtype=np.complex128)
