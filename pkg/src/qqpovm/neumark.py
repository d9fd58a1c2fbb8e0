"""Neumark liftings of binary POVMs to projective measurements.

The construction is the spectral (Halmos) block dilation. Write the ``yes``
effect as ``sum_i lam_i v_i v_i^dagger``. Directions with ``lam_i`` equal to
0 or 1 already belong wholly to one outcome. Every fractional eigenvalue gets
one ancilla direction ``a_i`` and the lifted ``yes`` projector contains the
unit vector ``sqrt(lam_i) v_i + sqrt(1 - lam_i) a_i``. Compressing back with
the isometry recovers ``lam_i``, so the lift is minimal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    ComplexMatrix,
    DimensionError,
    Tolerance,
    adjoint,
    eig_hermitian,
    eps_of,
    hermitian_residual,
    identity,
    max_abs,
    projector_residual,
    real_trace_product,
)
from .ensembles import random_state
from .measurement import BinaryMeasurement, Convention, QuantumState, require_valid
from .models import standard_embedding
from .qq import qq_statistic

PAIRED = "paired"
CHECKS = ("isometry", "idempotence", "hermiticity", "completeness", "compression", "probability")


@dataclass(frozen=True, eq=False)
class Dilation:
    """A binary POVM realized as a projective measurement on a larger space.

    ``ancilla_assignment`` has one entry per ancilla direction: ``"paired"``
    when the ancilla completes a fractional eigenvalue, otherwise the outcome
    label that owns it.
    """

    original: BinaryMeasurement
    embedding: ComplexMatrix
    lifted: BinaryMeasurement
    ancilla_assignment: tuple[str, ...] = ()

    @property
    def extended_dim(self) -> int:
        return self.embedding.shape[0]

    @property
    def original_dim(self) -> int:
        return self.embedding.shape[1]

    def embed_state(self, s: QuantumState) -> QuantumState:
        v = self.embedding
        return QuantumState(v @ s.rho @ adjoint(v))


def fractional_count(m: BinaryMeasurement, tol: Tolerance | float | None = None) -> int:
    """Number of ``yes`` eigenvalues strictly inside ``(tol, 1 - tol)``."""
    eps = eps_of(tol)
    w, _ = eig_hermitian(m.yes.matrix)
    return int(np.count_nonzero((w > eps) & (w < 1 - eps)))


def dilate_binary(
    m: BinaryMeasurement,
    tol: Tolerance | float | None = None,
    extended_dim: int | None = None,
) -> Dilation:
    """Minimal projective lift of ``m``.

    ``extended_dim`` may exceed the minimal size; surplus ancilla directions
    are assigned wholly to the ``no`` outcome.
    """
    require_valid(m, tol)
    eps = eps_of(tol)
    d = m.dim
    w, vecs = eig_hermitian(m.yes.matrix)
    frac = [i for i, lam in enumerate(w) if eps < lam < 1 - eps]
    minimal = d + len(frac)
    n = minimal if extended_dim is None else extended_dim
    if n < minimal:
        raise DimensionError(f"extended_dim {n} is below the minimal lift size {minimal}")

    emb = standard_embedding(d, n)
    yes = np.zeros((n, n), dtype=np.complex128)
    for i, lam in enumerate(w):
        u = emb @ vecs[:, i]
        if i in frac:
            a = np.zeros(n, dtype=np.complex128)
            a[d + frac.index(i)] = 1.0
            u = np.sqrt(lam) * u + np.sqrt(1 - lam) * a
        elif lam <= eps:
            continue
        yes += np.outer(u, u.conj())
    yes = (yes + adjoint(yes)) / 2
    lifted = BinaryMeasurement.from_matrices(yes, identity(n) - yes, name=f"{m.name}'")
    assignment = (PAIRED,) * len(frac) + ("no",) * (n - minimal)
    return Dilation(m, emb, lifted, assignment)


@dataclass(frozen=True)
class Certificate:
    residuals: dict[str, float]
    tol: float
    checks: tuple[str, ...] = CHECKS

    @property
    def failures(self) -> list[str]:
        return [k for k in self.checks if not self.residuals[k] <= self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_dilation(
    d: Dilation,
    tol: Tolerance | float | None = None,
    n_states: int = 20,
    seed: int = 0,
) -> Certificate:
    """Residuals for every defining property of a dilation. Never raises on failure."""
    eps = eps_of(tol)
    v = d.embedding
    lifted = (d.lifted.yes.matrix, d.lifted.no.matrix)
    original = (d.original.yes.matrix, d.original.no.matrix)
    residuals = {}
    if v.shape[0] != lifted[0].shape[0] or v.shape[1] != original[0].shape[0]:
        residuals = dict.fromkeys(CHECKS, np.inf)
        return Certificate(residuals, eps)

    residuals["isometry"] = max_abs(adjoint(v) @ v - identity(v.shape[1]))
    residuals["idempotence"] = max(projector_residual(e) for e in lifted)
    residuals["hermiticity"] = max(hermitian_residual(e) for e in lifted)
    residuals["completeness"] = max_abs(lifted[0] + lifted[1] - identity(v.shape[0]))
    residuals["compression"] = max(
        max_abs(adjoint(v) @ big @ v - small) for big, small in zip(lifted, original)
    )
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_states):
        rho = random_state(v.shape[1], rng).rho
        rho_ext = v @ rho @ adjoint(v)
        for big, small in zip(lifted, original):
            worst = max(worst, abs(real_trace_product(small, rho) - real_trace_product(big, rho_ext)))
    residuals["probability"] = worst
    return Certificate(residuals, eps)


@dataclass(frozen=True, eq=False)
class CommonLift:
    dilation_a: Dilation
    dilation_b: Dilation

    @property
    def lifted_a(self) -> BinaryMeasurement:
        return self.dilation_a.lifted

    @property
    def lifted_b(self) -> BinaryMeasurement:
        return self.dilation_b.lifted

    @property
    def embedding(self) -> ComplexMatrix:
        return self.dilation_a.embedding

    @property
    def dim(self) -> int:
        return self.dilation_a.extended_dim

    def __iter__(self):
        return iter((self.lifted_a, self.lifted_b, self.embedding))


def common_space_lift(
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    tol: Tolerance | float | None = None,
) -> CommonLift:
    """Lift both measurements into one space of size ``d + max(k_A, k_B)``."""
    if A.dim != B.dim:
        raise DimensionError(f"measurements have dimensions {A.dim} and {B.dim}")
    n = A.dim + max(fractional_count(A, tol), fractional_count(B, tol))
    return CommonLift(dilate_binary(A, tol, n), dilate_binary(B, tol, n))


@dataclass(frozen=True)
class LiftedQQ:
    before: float
    after: float
    extended_dim: int

    def __iter__(self):
        return iter((self.before, self.after))


def lifted_qq_check(
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    s: QuantumState,
    tol: Tolerance | float | None = None,
) -> LiftedQQ:
    """QQ statistic of the literal model before and after a common lift."""
    before = qq_statistic(s, A, B, Convention.LITERAL, tol).statistic
    lift = common_space_lift(A, B, tol)
    s_ext = lift.dilation_a.embed_state(s)
    after = qq_statistic(s_ext, lift.lifted_a, lift.lifted_b, Convention.LITERAL, tol).statistic
    return LiftedQQ(before, after, lift.dim)
