"""Dense complex matrix helpers and Hermitian spectral routines.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Everything here
is a pure function; inputs are never modified in place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

ComplexMatrix = npt.NDArray[np.complex128]


class DimensionError(ValueError):
    """Raised when matrix shapes do not conform."""


class NotPSDError(ValueError):
    """Raised when a matrix expected to be positive semidefinite is not."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance used by every validity predicate."""

    abs_eps: float = 1e-10

    def __post_init__(self):
        if not self.abs_eps >= 0:
            raise ValueError(f"abs_eps must be nonnegative, got {self.abs_eps!r}")


DEFAULT_TOL = Tolerance()

# Looser bound for quantities rebuilt from a decomposition.
RECONSTRUCTION_EPS = 1e-9


def eps_of(tol: Tolerance | float | None) -> float:
    if tol is None:
        return DEFAULT_TOL.abs_eps
    if isinstance(tol, Tolerance):
        return tol.abs_eps
    return Tolerance(float(tol)).abs_eps


def as_matrix(data) -> ComplexMatrix:
    """Convert nested sequences or an array into a finite 2-D complex matrix."""
    m = np.array(data, dtype=np.complex128)
    if m.ndim != 2 or 0 in m.shape:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _require_square(m: np.ndarray) -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m.shape[0]


def _require_conforming(a: np.ndarray, b: np.ndarray, what: str) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"{what}: shapes {a.shape} and {b.shape} differ")


def identity(n: int) -> ComplexMatrix:
    return np.eye(n, dtype=np.complex128)


def adjoint(a) -> ComplexMatrix:
    return np.conj(np.asarray(a, dtype=np.complex128)).T


def multiply(*mats) -> ComplexMatrix:
    """Matrix product of the arguments, left to right."""
    if not mats:
        raise ValueError("multiply needs at least one matrix")
    out = np.asarray(mats[0], dtype=np.complex128)
    for m in mats[1:]:
        m = np.asarray(m, dtype=np.complex128)
        if out.shape[-1] != m.shape[0]:
            raise DimensionError(f"cannot multiply {out.shape} by {m.shape}")
        out = out @ m
    return out


def add(a, b) -> ComplexMatrix:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    _require_conforming(a, b, "add")
    return a + b


def scale(alpha: complex, a) -> ComplexMatrix:
    return alpha * np.asarray(a, dtype=np.complex128)


def trace(a) -> complex:
    a = np.asarray(a, dtype=np.complex128)
    _require_square(a)
    return complex(np.trace(a))


def real_trace_product(a, rho, imag_eps: float = 1e-12) -> float:
    """Return ``Tr(a @ rho)`` as a real number.

    Both arguments are expected to be Hermitian, so the trace is real. An
    imaginary part larger than ``imag_eps`` (relative to the operand sizes)
    raises ``ValueError``.
    """
    a = np.asarray(a, dtype=np.complex128)
    rho = np.asarray(rho, dtype=np.complex128)
    _require_square(a)
    _require_conforming(a, rho, "real_trace_product")
    # Tr(AB) = sum_ij A_ij B_ji, no full product needed
    t = complex(np.sum(a * rho.T))
    bound = imag_eps * max(1.0, float(np.abs(a).max()) * float(np.abs(rho).max()) * a.shape[0])
    if abs(t.imag) > bound:
        raise ValueError(f"trace product has imaginary part {t.imag:.3e}; operands not Hermitian?")
    return t.real


def max_abs(a) -> float:
    """Entry-wise max norm."""
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def hermitian_residual(m) -> float:
    m = np.asarray(m, dtype=np.complex128)
    _require_square(m)
    return max_abs(m - adjoint(m))


def is_hermitian(m, tol: Tolerance | float | None = None) -> bool:
    """True iff ``max |M - M^dagger| <= abs_eps``.

    >>> is_hermitian([[0, 1], [0, 0]])
    False
    """
    return hermitian_residual(m) <= eps_of(tol)


def hermitian_part(m) -> ComplexMatrix:
    m = np.asarray(m, dtype=np.complex128)
    return (m + adjoint(m)) / 2


def eig_hermitian(m) -> tuple[npt.NDArray[np.float64], ComplexMatrix]:
    """Eigen-decomposition of a Hermitian matrix.

    The input is symmetrized as ``(M + M^dagger)/2`` first.

    Returns
    -------
    eigenvalues : ndarray of float
        Ascending order.
    eigenvectors : ndarray
        Orthonormal eigenvectors stored as columns, matching ``eigenvalues``.
    """
    m = np.asarray(m, dtype=np.complex128)
    _require_square(m)
    w, v = np.linalg.eigh(hermitian_part(m))
    return w, v


def min_eigenvalue(m) -> float:
    m = np.asarray(m, dtype=np.complex128)
    _require_square(m)
    return float(np.linalg.eigvalsh(hermitian_part(m))[0])


def principal_sqrt(m, tol: Tolerance | float | None = None) -> ComplexMatrix:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in ``[-abs_eps, 0)`` are clamped to zero. Anything more negative
    raises :class:`NotPSDError`.
    """
    eps = eps_of(tol)
    w, v = eig_hermitian(m)
    if w[0] < -eps:
        raise NotPSDError(f"matrix has eigenvalue {w[0]:.3e} < -{eps:g}")
    w = np.clip(w, 0.0, None)
    return hermitian_part((v * np.sqrt(w)) @ adjoint(v))


def projector_residual(m) -> float:
    """``max |M @ M - M|``, zero for an idempotent matrix."""
    m = np.asarray(m, dtype=np.complex128)
    _require_square(m)
    return max_abs(m @ m - m)


def is_projector(m, tol: Tolerance | float | None = None) -> bool:
    eps = eps_of(tol)
    return hermitian_residual(m) <= eps and projector_residual(m) <= eps
