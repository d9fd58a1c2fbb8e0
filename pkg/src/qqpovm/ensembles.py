"""Random states and measurements for property tests and certificate sampling."""

from __future__ import annotations

import numpy as np

from .linalg import adjoint, eig_hermitian, identity
from .measurement import BinaryMeasurement, QuantumState


def _ginibre(d: int, rng: np.random.Generator, cols: int | None = None) -> np.ndarray:
    cols = d if cols is None else cols
    return rng.standard_normal((d, cols)) + 1j * rng.standard_normal((d, cols))


def random_state(d: int, rng: np.random.Generator, rank: int | None = None) -> QuantumState:
    """Density matrix ``G G^dagger / Tr(G G^dagger)`` with ``G`` complex Gaussian ``d x rank``."""
    g = _ginibre(d, rng, rank)
    rho = g @ adjoint(g)
    rho = rho / np.trace(rho).real
    return QuantumState((rho + adjoint(rho)) / 2)


def random_pure_state(d: int, rng: np.random.Generator) -> QuantumState:
    return QuantumState.from_vector(_ginibre(d, rng, 1)[:, 0])


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(_ginibre(d, rng))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_psd(d: int, rng: np.random.Generator) -> np.ndarray:
    g = _ginibre(d, rng)
    return g @ adjoint(g)


def random_povm(d: int, rng: np.random.Generator) -> BinaryMeasurement:
    """Binary POVM with ``yes`` spectrum drawn uniformly from ``[0, 1]``."""
    u = random_unitary(d, rng)
    yes = (u * rng.uniform(0.0, 1.0, d)) @ adjoint(u)
    yes = (yes + adjoint(yes)) / 2
    return BinaryMeasurement.from_matrices(yes, identity(d) - yes, name="random")


def random_projective(d: int, rng: np.random.Generator, rank: int | None = None) -> BinaryMeasurement:
    """Projector onto ``rank`` random orthonormal directions (random rank if omitted)."""
    if rank is None:
        rank = int(rng.integers(0, d + 1))
    u = random_unitary(d, rng)
    yes = u[:, :rank] @ adjoint(u[:, :rank])
    yes = (yes + adjoint(yes)) / 2
    return BinaryMeasurement.from_matrices(yes, identity(d) - yes, name="projective")


def povm_from_psd(m: np.ndarray) -> BinaryMeasurement:
    """Scale an arbitrary PSD matrix into a valid ``yes`` effect."""
    w, _ = eig_hermitian(m)
    yes = m / max(w[-1], 1e-300)
    return BinaryMeasurement.from_matrices(yes)
