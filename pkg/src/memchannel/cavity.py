"""Diagonal cavity populations: Jaynes-Cummings kick, damping, steady state.

Populations are plain 1-D float arrays ``w`` indexed by Fock number
``n = 0 .. len(w) - 1``. The truncation grows by doubling whenever the top
level carries mass at or above ``TAIL_TOL``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import binom

from .errors import DomainError, NoConvergence, TruncationOverflow

N_MAX_INITIAL = 64
N_MAX_LIMIT = 8192
TAIL_TOL = 1e-12
NEG_CLAMP = 1e-14
NORM_TOL = 1e-10


@dataclass(frozen=True)
class ChannelParams:
    """Dimensionless timing set, all in units of the coupling ``lambda = 1``.

    Attributes
    ----------
    theta : float
        Rabi angle ``lambda * tau_p`` of one transit.
    lambda_tau : float
        Separation between consecutive channel uses.
    lambda_tau_d : float
        Cavity decay time.
    """

    theta: float
    lambda_tau: float
    lambda_tau_d: float

    def __post_init__(self):
        if not self.theta >= 0.0:
            raise DomainError(f"theta must be >= 0, got {self.theta!r}")
        if not self.lambda_tau >= 0.0:
            raise DomainError(f"lambda_tau must be >= 0, got {self.lambda_tau!r}")
        if not self.lambda_tau_d > 0.0:
            raise DomainError(f"lambda_tau_d must be > 0, got {self.lambda_tau_d!r}")

    @classmethod
    def from_eta(cls, eta: float, lambda_tau: float, lambda_tau_d: float) -> "ChannelParams":
        """Build from the memoryless retention ``eta = cos^2(theta)``, theta in [0, pi/2]."""
        if not 0.0 <= eta <= 1.0:
            raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
        return cls(float(np.arccos(np.sqrt(eta))), lambda_tau, lambda_tau_d)

    @property
    def eta(self) -> float:
        return float(np.cos(self.theta) ** 2)

    @property
    def gt(self) -> float:
        """Damping exponent ``Gamma * tau`` accumulated between uses."""
        return self.lambda_tau / self.lambda_tau_d

    @property
    def mu(self) -> float:
        """Memory parameter ``tau_d / (tau + tau_d)``."""
        return self.lambda_tau_d / (self.lambda_tau + self.lambda_tau_d)


def populations(w) -> np.ndarray:
    """Validate a population vector: clamp float dust, check and fix normalisation."""
    w = np.array(w, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DomainError("populations must be a non-empty 1-D vector")
    if np.any(w < -NEG_CLAMP):
        raise DomainError(f"negative population {w.min()!r}")
    w = np.clip(w, 0.0, None)
    total = w.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise DomainError(f"populations sum to {total!r}, expected 1")
    return w / total


def fock(n: int, n_max: int = N_MAX_INITIAL) -> np.ndarray:
    """Population vector of the Fock state ``|n>`` on levels ``0..n_max``."""
    w = np.zeros(max(n_max, n) + 1)
    w[n] = 1.0
    return w


def mean_photon_number(w) -> float:
    w = np.asarray(w, dtype=float)
    return float(np.dot(np.arange(w.size), w))


def pad(w: np.ndarray, size: int) -> np.ndarray:
    if w.size >= size:
        return w
    return np.concatenate([w, np.zeros(size - w.size)])


def _rabi_terms(theta: float, size: int) -> tuple[np.ndarray, np.ndarray]:
    """``(sin^2, cos^2)`` of ``theta * sqrt(n)`` for ``n = 0 .. size - 1``."""
    angle = theta * np.sqrt(np.arange(size))
    return np.sin(angle) ** 2, np.cos(angle) ** 2


def _fit_truncation(ext: np.ndarray, levels: int, max_levels: int) -> np.ndarray:
    # ext has one more level than the incoming truncation
    if ext[levels - 1] + ext[levels] < TAIL_TOL:
        out = np.clip(ext[:levels], 0.0, None)
        return out / out.sum()
    grown = 2 * (levels - 1) + 1
    if grown > max_levels:
        raise TruncationOverflow(
            f"tail mass {ext[levels - 1] + ext[levels]:.3e} at n_max = {levels - 1} "
            f"and the truncation limit {max_levels - 1} is reached"
        )
    out = pad(np.clip(ext, 0.0, None), grown)
    return out / out.sum()


def jc_population_update(w, p: float, theta: float, max_levels: int = N_MAX_LIMIT + 1) -> np.ndarray:
    """Populations after one resonant JC transit of a qubit with excited weight ``p``.

    The qubit is traced out afterwards, so the result does not depend on the
    input coherence. Support grows by at most one level; the truncation is
    doubled if that pushes mass to the top.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    if not theta >= 0.0:
        raise DomainError(f"theta must be >= 0, got {theta!r}")
    w = np.asarray(w, dtype=float)
    L = w.size
    s2, c2 = _rabi_terms(theta, L + 1)
    ext = np.zeros(L + 1)
    ext[:L] += w * ((1.0 - p) * c2[:L] + p * c2[1:])
    ext[1:] += p * s2[1:] * w
    ext[:L - 1] += (1.0 - p) * s2[1:L] * w[1:]
    return _fit_truncation(ext, L, max_levels)


@lru_cache(maxsize=64)
def _loss_matrix(size: int, survival: float) -> np.ndarray:
    n = np.arange(size)
    mat = binom.pmf(n[:, None], n[None, :], survival)
    mat[np.isnan(mat)] = 0.0
    mat.setflags(write=False)
    return mat


def damp_populations(w, gt: float) -> np.ndarray:
    """Zero-temperature cavity decay over a dimensionless time ``gt = Gamma t``.

    Each photon survives independently with probability ``s = exp(-gt)``, so
    ``w'_n = sum_{m >= n} C(m, n) s^n (1 - s)^(m - n) w_m``.
    """
    if not gt >= 0.0:
        raise DomainError(f"gt must be >= 0, got {gt!r}")
    w = np.asarray(w, dtype=float)
    if gt == 0.0:
        return w.copy()
    out = _loss_matrix(w.size, float(np.exp(-gt))) @ w
    return out / out.sum()


def damp_populations_ode_oracle(w, gt: float, steps: int | None = None) -> np.ndarray:
    """Integrate ``dw_n/dt = (n+1) w_{n+1} - n w_n`` with fixed-step RK4.

    Independent check on :func:`damp_populations`. The system is restricted
    to the occupied support (decay never populates higher levels). With
    ``steps=None`` the step is chosen so that ``h * n_top <= 0.02``.
    """
    w = np.asarray(w, dtype=float)
    nz = np.flatnonzero(w)
    if gt == 0.0 or nz.size == 0 or nz[-1] == 0:
        return w.copy()
    top = nz[-1] + 1
    y = w[:top].copy()
    n = np.arange(top, dtype=float)
    if steps is None:
        steps = max(200, int(np.ceil(gt * (top - 1) / 0.02)))
    h = gt / steps

    def rhs(v):
        dv = -n * v
        dv[:-1] += n[1:] * v[1:]
        return dv

    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out = np.zeros_like(w)
    out[:top] = y
    return out


def channel_use_populations(w, p: float, params: ChannelParams) -> np.ndarray:
    """One full channel use: JC transit followed by the idle damping interval."""
    return damp_populations(jc_population_update(w, p, params.theta), params.gt)


def steady_state(
    p: float,
    params: ChannelParams,
    tol: float = 1e-12,
    max_iter: int = 200_000,
) -> tuple[np.ndarray, int]:
    """Iterate channel uses from the vacuum until successive L1 distance <= tol.

    Returns
    -------
    w : ndarray
        Converged populations.
    k : int
        Number of channel uses performed.
    """
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    w = fock(0)
    for k in range(1, max_iter + 1):
        nxt = channel_use_populations(w, p, params)
        dist = np.abs(nxt - pad(w, nxt.size)).sum()
        w = nxt
        if dist <= tol:
            return w, k
    raise NoConvergence(
        f"steady state not reached after {max_iter} uses "
        f"(p={p}, theta={params.theta}, lambda_tau={params.lambda_tau}, "
        f"lambda_tau_d={params.lambda_tau_d}, last L1 step {dist:.3e})"
    )


def transfer_matrix(p: float, params: ChannelParams, levels: int) -> np.ndarray:
    """Column-stochastic matrix of one channel use on ``levels`` Fock levels.

    Upward transitions out of the top level are folded back onto it, which is
    harmless as long as the top level carries negligible mass.
    """
    s2, c2 = _rabi_terms(params.theta, levels + 1)
    n = np.arange(levels)
    jc = np.zeros((levels, levels))
    jc[n, n] = (1.0 - p) * c2[:levels] + p * c2[1:]
    jc[n[1:], n[:-1]] = p * s2[1:levels]
    jc[n[:-1], n[1:]] = (1.0 - p) * s2[1:levels]
    jc[levels - 1, levels - 1] += p * s2[levels]
    if params.gt == 0.0:
        return jc
    return _loss_matrix(levels, float(np.exp(-params.gt))) @ jc


def stationary_populations(p: float, params: ChannelParams, n_max: int = N_MAX_INITIAL) -> np.ndarray:
    """Fixed point of :func:`channel_use_populations` by a direct linear solve.

    Same fixed point as :func:`steady_state` (damping makes it unique for
    ``gt > 0``) at a fraction of the cost; used inside the input optimiser.
    """
    if params.gt == 0.0:
        raise DomainError("stationary state is not unique without damping (lambda_tau = 0)")
    levels = n_max + 1
    while True:
        a = transfer_matrix(p, params, levels) - np.eye(levels)
        a[-1, :] = 1.0
        b = np.zeros(levels)
        b[-1] = 1.0
        w = np.linalg.solve(a, b)
        w = np.clip(w, 0.0, None)
        w /= w.sum()
        if w[-1] < TAIL_TOL:
            return w
        levels = 2 * (levels - 1) + 1
        if levels > N_MAX_LIMIT + 1:
            raise TruncationOverflow(f"stationary tail mass {w[-1]:.3e} beyond n_max = {N_MAX_LIMIT}")
