"""Single channel use on one qubit for a diagonal cavity state.

For the cavity in ``|n>`` the resonant JC transit acts inside the two-level
sectors ``{|g,n>, |e,n-1>}`` as

    |g,n>   -> C_n |g,n>   - i S_n |e,n-1>
    |e,n-1> -> C_n |e,n-1> - i S_n |g,n>

with ``C_n = cos(theta sqrt(n))`` and ``S_n = sin(theta sqrt(n))``. Tracing
the cavity gives three Kraus operators per initial Fock level (cavity stays,
gains a photon, loses a photon), and a diagonal cavity state mixes those
maps with weights ``w_n``.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import QubitInput, validate_density_matrix, von_neumann_entropy
from .errors import DomainError


class JCBlockRotation(NamedTuple):
    n: int
    cos_term: float
    sin_term: float

    def matrix(self) -> np.ndarray:
        """Block unitary on ``(|g,n>, |e,n-1>)``."""
        c, s = self.cos_term, self.sin_term
        return np.array([[c, -1j * s], [-1j * s, c]])


def jc_unitary_blocks(theta: float, n_max: int) -> list[JCBlockRotation]:
    """Rotations for excitation sectors ``n = 1 .. n_max + 1``."""
    if not theta >= 0.0:
        raise DomainError(f"theta must be >= 0, got {theta!r}")
    out = []
    for n in range(1, n_max + 2):
        angle = theta * np.sqrt(n)
        out.append(JCBlockRotation(n, float(np.cos(angle)), float(np.sin(angle))))
    return out


def jc_unitary(theta: float, levels: int) -> np.ndarray:
    """Full transit unitary on qubit x cavity, index ``q * levels + n`` with q = 0 for g.

    Sectors that would reach beyond the truncation are left untouched, so the
    result is only faithful for initial Fock numbers ``n <= levels - 2``.
    """
    u = np.eye(2 * levels, dtype=complex)
    for block in jc_unitary_blocks(theta, levels - 2):
        g_n = block.n
        e_nm1 = levels + block.n - 1
        idx = np.array([g_n, e_nm1])
        u[np.ix_(idx, idx)] = block.matrix()
    return u


def channel_kraus_operators(w, theta: float) -> np.ndarray:
    """Kraus operators of the mixed single-use map, shape ``(3 * K, 2, 2)``.

    Only occupied Fock levels contribute; each carries ``sqrt(w_n)``.
    """
    w = np.asarray(w, dtype=float)
    n = np.flatnonzero(w > 0.0)
    amp = np.sqrt(w[n])
    c_n, s_n = np.cos(theta * np.sqrt(n)), np.sin(theta * np.sqrt(n))
    c_up, s_up = np.cos(theta * np.sqrt(n + 1)), np.sin(theta * np.sqrt(n + 1))
    k = np.zeros((3, n.size, 2, 2), dtype=complex)
    k[0, :, 0, 0] = amp * c_n
    k[0, :, 1, 1] = amp * c_up
    k[1, :, 0, 1] = -1j * amp * s_up  # e -> g, photon emitted into the cavity
    k[2, :, 1, 0] = -1j * amp * s_n  # g -> e, photon absorbed from the cavity
    return k.reshape(-1, 2, 2)


def single_use_output(qubit: QubitInput, w, theta: float) -> np.ndarray:
    """Qubit output state for the cavity entering with populations ``w``."""
    w = np.asarray(w, dtype=float)
    p, r = qubit.p, complex(qubit.r)
    n = np.arange(w.size)
    c_n, s_n = np.cos(theta * np.sqrt(n)), np.sin(theta * np.sqrt(n))
    c_up, s_up = np.cos(theta * np.sqrt(n + 1)), np.sin(theta * np.sqrt(n + 1))
    gg = np.dot(w, (1.0 - p) * c_n**2 + p * s_up**2)
    ee = np.dot(w, (1.0 - p) * s_n**2 + p * c_up**2)
    ge = r * np.dot(w, c_n * c_up)
    return validate_density_matrix(np.array([[gg, ge], [ge.conjugate(), ee]]))


def purification(qubit: QubitInput) -> np.ndarray:
    """Reference-qubit purification ``sum_i sqrt(l_i) |i>_R |v_i>_S`` as a 4-vector."""
    vals, vecs = np.linalg.eigh(qubit.density_matrix())
    vals = np.clip(vals, 0.0, None)
    # psi[i_R, i_S]
    psi = np.sqrt(vals)[:, None] * vecs.T
    return psi.reshape(4)


def joint_output_with_reference(qubit: QubitInput, w, theta: float, psi=None) -> np.ndarray:
    """Output of ``(identity x channel)`` on a purification of the input.

    Index order is ``2 * i_R + i_S``. ``psi`` overrides the default
    eigenbasis purification; any 4-vector whose system marginal equals the
    input is valid.
    """
    if psi is None:
        psi = purification(qubit)
    psi_m = np.asarray(psi, dtype=complex).reshape(2, 2)
    kraus = channel_kraus_operators(w, theta)
    # (I x K) psi  ->  psi_m K^T  in matrix form
    phi = np.einsum("rs,kts->krt", psi_m, kraus).reshape(-1, 4)
    rho = phi.T @ phi.conj()
    return validate_density_matrix(rho)


def entropy_exchange(qubit: QubitInput, w, theta: float) -> float:
    return von_neumann_entropy(joint_output_with_reference(qubit, w, theta))


def coherent_information_single_use(qubit: QubitInput, w, theta: float) -> float:
    """``S(output) - S_e`` in bits for one use with cavity populations ``w``."""
    return von_neumann_entropy(single_use_output(qubit, w, theta)) - entropy_exchange(qubit, w, theta)


def amplitude_damping_output(qubit: QubitInput, eta: float) -> np.ndarray:
    """Amplitude-damping channel with retention ``eta`` in Kraus form."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    e0 = np.diag([1.0, np.sqrt(eta)])
    e1 = np.array([[0.0, np.sqrt(1.0 - eta)], [0.0, 0.0]])
    rho = qubit.density_matrix()
    return validate_density_matrix(e0 @ rho @ e0.T + e1 @ rho @ e1.T)
