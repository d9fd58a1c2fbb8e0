"""Binary POVM measurements, states, update conventions and sequential probabilities.

Two update conventions are supported. ``LITERAL`` uses each effect matrix
itself as the update operator, ``SQRT`` uses its principal square root (the
Lüders instrument). For projective measurements the two agree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .linalg import (
    ComplexMatrix,
    DimensionError,
    Tolerance,
    adjoint,
    as_matrix,
    eps_of,
    hermitian_residual,
    identity,
    is_projector,
    max_abs,
    min_eigenvalue,
    principal_sqrt,
    projector_residual,
    real_trace_product,
)

OUTCOMES = ("yes", "no")


class InvalidStateError(ValueError):
    pass


class InvalidMeasurementError(ValueError):
    pass


class ZeroProbabilityError(ValueError):
    """The conditioning outcome has (numerically) zero probability."""


class Convention(str, enum.Enum):
    LITERAL = "literal"
    SQRT = "sqrt"


class Order(str, enum.Enum):
    A_FIRST = "a-first"
    B_FIRST = "b-first"


@dataclass(frozen=True, eq=False)
class Effect:
    matrix: ComplexMatrix
    label: str = ""

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionError(f"effect {self.label!r} is not square: {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class BinaryMeasurement:
    """A two-outcome measurement ``(yes, no)``.

    Construction only checks shapes. Use :func:`validate_measurement` to test
    the POVM axioms.
    """

    yes: Effect
    no: Effect
    name: str = ""

    def __post_init__(self):
        if self.yes.dim != self.no.dim:
            raise DimensionError(
                f"measurement {self.name!r}: effects have dimensions {self.yes.dim} and {self.no.dim}"
            )

    @classmethod
    def from_matrices(cls, yes, no=None, name: str = "") -> "BinaryMeasurement":
        """Build from matrices; ``no`` defaults to ``I - yes``."""
        yes = as_matrix(yes)
        if no is None:
            no = identity(yes.shape[0]) - yes
        return cls(Effect(yes, "yes"), Effect(no, "no"), name)

    @property
    def dim(self) -> int:
        return self.yes.dim

    def effect(self, outcome: str) -> Effect:
        if outcome == "yes":
            return self.yes
        if outcome == "no":
            return self.no
        raise KeyError(outcome)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Density matrix: Hermitian, PSD and unit trace within tolerance."""

    rho: ComplexMatrix
    tol: Tolerance = field(default_factory=Tolerance)

    def __post_init__(self):
        rho = as_matrix(self.rho)
        eps = eps_of(self.tol)
        if rho.shape[0] != rho.shape[1]:
            raise DimensionError(f"density matrix is not square: {rho.shape}")
        if hermitian_residual(rho) > eps:
            raise InvalidStateError("density matrix is not Hermitian")
        if min_eigenvalue(rho) < -eps:
            raise InvalidStateError("density matrix is not positive semidefinite")
        if abs(np.trace(rho) - 1) > eps:
            raise InvalidStateError(f"density matrix has trace {np.trace(rho).real:.12g}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @classmethod
    def from_vector(cls, psi, tol: Tolerance | None = None) -> "QuantumState":
        """Pure state ``|psi><psi| / <psi|psi>``."""
        psi = np.asarray(psi, dtype=np.complex128).ravel()
        norm2 = float(np.vdot(psi, psi).real)
        if norm2 <= 0:
            raise InvalidStateError("zero state vector")
        return cls(np.outer(psi, psi.conj()) / norm2, tol or Tolerance())

    @classmethod
    def from_amplitudes(cls, alpha: complex, beta: complex, tol: Tolerance | None = None) -> "QuantumState":
        """Qubit pure state from amplitudes ``(alpha, beta)``.

        Entries are ``[[|a|^2, conj(a) b], [conj(b) a, |b|^2]] / (|a|^2 + |b|^2)``,
        so ``(1j, 1)`` gives ``[[1, -1j], [1j, 1]] / 2``.
        """
        amps = np.array([alpha, beta], dtype=np.complex128)
        return cls.from_vector(amps.conj(), tol)

    @classmethod
    def mixture(cls, weights, states) -> "QuantumState":
        rho = sum(w * s.rho for w, s in zip(weights, states))
        return cls(rho)


@dataclass(frozen=True)
class ValidationReport:
    hermitian_residual: float
    min_eigenvalue: float
    completeness_residual: float
    idempotence_residual: float
    tol: float

    @property
    def hermitian(self) -> bool:
        return self.hermitian_residual <= self.tol

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= -self.tol

    @property
    def complete(self) -> bool:
        return self.completeness_residual <= self.tol

    @property
    def projective(self) -> bool:
        return self.hermitian and self.idempotence_residual <= self.tol

    @property
    def valid(self) -> bool:
        return self.hermitian and self.positive and self.complete


def validate_measurement(m: BinaryMeasurement, tol: Tolerance | float | None = None) -> ValidationReport:
    """Check the POVM axioms for a binary measurement and flag projectivity."""
    eps = eps_of(tol)
    effects = (m.yes.matrix, m.no.matrix)
    return ValidationReport(
        hermitian_residual=max(hermitian_residual(e) for e in effects),
        min_eigenvalue=min(min_eigenvalue(e) for e in effects),
        completeness_residual=max_abs(effects[0] + effects[1] - identity(m.dim)),
        idempotence_residual=max(projector_residual(e) for e in effects),
        tol=eps,
    )


def require_valid(m: BinaryMeasurement, tol: Tolerance | float | None = None) -> ValidationReport:
    report = validate_measurement(m, tol)
    if not report.valid:
        raise InvalidMeasurementError(
            f"measurement {m.name!r} is not a valid POVM: "
            f"hermitian residual {report.hermitian_residual:.3e}, "
            f"min eigenvalue {report.min_eigenvalue:.3e}, "
            f"completeness residual {report.completeness_residual:.3e}"
        )
    return report


def update_operator(e: Effect, c: Convention, tol: Tolerance | float | None = None) -> ComplexMatrix:
    """Operator ``M`` with ``rho -> M rho M^dagger`` for outcome ``e``.

    Projectors are returned unchanged under both conventions.
    """
    c = Convention(c)
    if c is Convention.LITERAL or is_projector(e.matrix, tol):
        return np.array(e.matrix)
    return principal_sqrt(e.matrix, tol)


def _check_dims(*dims: int) -> None:
    if len(set(dims)) != 1:
        raise DimensionError(f"dimension mismatch: {dims}")


def post_state(s: QuantumState, e: Effect, c: Convention, tol: Tolerance | float | None = None) -> QuantumState:
    """State after outcome ``e``: ``M rho M^dagger / Tr(M rho M^dagger)``.

    The normalizer is the trace of the numerator, which differs from
    ``Tr(E rho)`` under ``LITERAL`` for non-projective effects.
    """
    _check_dims(s.dim, e.dim)
    eps = eps_of(tol)
    m = update_operator(e, c, tol)
    num = m @ s.rho @ adjoint(m)
    p = float(np.trace(num).real)
    if p <= eps:
        raise ZeroProbabilityError(f"outcome {e.label!r} has probability {p:.3e}")
    out = num / p
    return QuantumState((out + adjoint(out)) / 2, Tolerance(max(eps, 1e-10)))


def sequential_joint_prob(
    s: QuantumState,
    first: Effect,
    second: Effect,
    c: Convention,
    tol: Tolerance | float | None = None,
) -> float:
    """``Tr(M2 M1 rho M1^dagger M2^dagger)``; the first update acts innermost."""
    _check_dims(s.dim, first.dim, second.dim)
    m1 = update_operator(first, c, tol)
    m2 = update_operator(second, c, tol)
    w = m2 @ m1
    return real_trace_product(adjoint(w) @ w, s.rho)


@dataclass(frozen=True)
class OutcomeTable:
    """Joint probabilities keyed ``(first outcome, second outcome)``."""

    probs: Mapping[tuple[str, str], float]
    order: Order
    convention: Convention

    def __getitem__(self, key: tuple[str, str]) -> float:
        return self.probs[key]

    @property
    def total(self) -> float:
        return float(sum(self.probs.values()))

    @property
    def normalization_defect(self) -> float:
        return 1.0 - self.total

    def as_array(self) -> np.ndarray:
        """Probabilities in the fixed cell order yy, yn, ny, nn."""
        return np.array([self.probs[(a, b)] for a in OUTCOMES for b in OUTCOMES])


def outcome_distribution(
    s: QuantumState,
    A: BinaryMeasurement,
    B: BinaryMeasurement,
    order: Order | str,
    c: Convention,
    tol: Tolerance | float | None = None,
) -> OutcomeTable:
    order = Order(order)
    c = Convention(c)
    _check_dims(s.dim, A.dim, B.dim)
    first, second = (A, B) if order is Order.A_FIRST else (B, A)
    ops1 = {o: update_operator(first.effect(o), c, tol) for o in OUTCOMES}
    ops2 = {o: update_operator(second.effect(o), c, tol) for o in OUTCOMES}
    probs = {}
    for o1 in OUTCOMES:
        for o2 in OUTCOMES:
            w = ops2[o2] @ ops1[o1]
            probs[(o1, o2)] = real_trace_product(adjoint(w) @ w, s.rho)
    return OutcomeTable(probs, order, c)
