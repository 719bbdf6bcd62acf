"""Density matrices, qubit inputs, entropies and distances.

All entropies are in bits. Matrices in the hot path are at most 4x4, so
everything goes through a full Hermitian eigendecomposition.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, NotHermitian, NotPSD, NotUnitTrace

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
ENTROPY_CUTOFF = 1e-15


def validate_density_matrix(entries) -> np.ndarray:
    """Check a candidate density matrix and return a cleaned copy.

    Eigenvalues in ``[-1e-10, 0)`` are clamped to zero and the result is
    renormalised to unit trace. Genuine violations raise.

    Raises
    ------
    NotHermitian, NotUnitTrace, NotPSD
    """
    rho = np.asarray(entries, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T), initial=0.0) > HERMITIAN_TOL:
        raise NotHermitian("density matrix is not Hermitian (|rho - rho^dag| > 1e-12)")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotUnitTrace(f"density matrix trace is {tr!r}, expected 1 within 1e-10")
    rho = 0.5 * (rho + rho.conj().T)
    vals, vecs = np.linalg.eigh(rho)
    if vals[0] < -PSD_TOL:
        raise NotPSD(f"density matrix has eigenvalue {vals[0]!r} < -1e-10")
    if vals[0] >= 0.0:
        return rho
    vals = np.clip(vals, 0.0, 1.0)
    vals /= vals.sum()
    return (vecs * vals) @ vecs.conj().T


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy ``-Tr[rho log2 rho]`` in bits."""
    rho = validate_density_matrix(rho)
    vals = np.linalg.eigvalsh(rho)
    vals = vals[vals > ENTROPY_CUTOFF]
    return float(max(0.0, -np.sum(vals * np.log2(vals))))


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b``."""
    a = validate_density_matrix(a)
    b = validate_density_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare {a.shape} with {b.shape}")
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(a - b))))


@dataclass(frozen=True)
class QubitInput:
    """Single-qubit input ``(1-p)|g><g| + r|g><e| + r*|e><g| + p|e><e|``.

    ``p`` is the excited-state population and ``r`` the coherence; the basis
    order everywhere is ``(g, e)``.
    """

    p: float
    r: complex = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {self.p!r}")
        bound = np.sqrt(self.p * (1.0 - self.p))
        if abs(self.r) > bound + 1e-12:
            raise DomainError(f"|r| = {abs(self.r)!r} exceeds sqrt(p(1-p)) = {bound!r}")

    def density_matrix(self) -> np.ndarray:
        p, r = self.p, complex(self.r)
        return np.array([[1.0 - p, r], [r.conjugate(), p]], dtype=complex)
