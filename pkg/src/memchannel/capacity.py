"""Capacities, input optimisation, rate sweeps and the forgetfulness probe."""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from .cavity import (
    ChannelParams,
    _loss_matrix,
    channel_use_populations,
    fock,
    mean_photon_number,
    pad,
    stationary_populations,
)
from .channel import coherent_information_single_use
from .core import QubitInput
from .errors import DomainError, FitDegenerate

log = logging.getLogger(__name__)

INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def binary_entropy(x: float) -> float:
    """Binary Shannon entropy in bits; ``H2(0) = H2(1) = 0``."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary entropy argument must lie in [0, 1], got {x!r}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def golden_section_max(f, a: float, b: float, tol: float = 1e-9, max_iter: int = 200):
    """Maximise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def maximize_on_unit_interval(f, step: float = 0.01, tol: float = 1e-9):
    """Coarse grid over ``[0, 1]`` then golden-section refinement around the best node.

    The refined point only replaces the grid winner if it is at least as good.
    """
    n = int(round(1.0 / step))
    grid = np.linspace(0.0, 1.0, n + 1)
    values = np.array([f(x) for x in grid])
    i = int(np.argmax(values))
    best_x, best_f = float(grid[i]), float(values[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, n)]
    x, fx = golden_section_max(f, lo, hi, tol)
    if fx >= best_f:
        best_x, best_f = float(x), float(fx)
    return best_x, best_f


def memoryless_quantum_capacity(eta: float) -> tuple[float, float]:
    """Quantum capacity of the amplitude-damping channel with retention ``eta``.

    Returns ``(Q, p_opt)``; for ``eta <= 1/2`` the channel is antidegradable
    and ``(0.0, 0.0)`` is returned.
    """
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [0, 1], got {eta!r}")
    if eta <= 0.5:
        return 0.0, 0.0

    def objective(p):
        return binary_entropy(eta * p) - binary_entropy((1.0 - eta) * p)

    p_opt, q = maximize_on_unit_interval(objective)
    return q, p_opt


class SteadyStateOptimum(NamedTuple):
    p_opt: float
    i_c_opt: float
    populations: np.ndarray
    r_excess: float | None = None
    """Largest ``I_c(p_opt, r) - I_c(p_opt, 0)`` seen by the r check, if run."""


def steady_state_coherent_information(qubit: QubitInput, params: ChannelParams) -> float:
    """Stationary per-use coherent information for a repeated input ``qubit``."""
    w = stationary_populations(qubit.p, params)
    return coherent_information_single_use(qubit, w, params.theta)


def r_check(p: float, params: ChannelParams, steps: int = 10) -> float:
    """Max gain in stationary ``I_c`` from ``steps`` real coherences ``0 < r <= sqrt(p(1-p))``.

    The cavity populations do not depend on ``r``, so the stationary state is
    computed once.
    """
    w = stationary_populations(p, params)
    base = coherent_information_single_use(QubitInput(p), w, params.theta)
    bound = np.sqrt(p * (1.0 - p))
    excess = -np.inf
    for k in range(1, steps + 1):
        r = min(bound * k / steps, bound)
        value = coherent_information_single_use(QubitInput(p, r), w, params.theta)
        excess = max(excess, value - base)
    return float(excess)


def optimize_steady_state_input(
    params: ChannelParams,
    p_grid: float = 0.01,
    r_check_steps: int | None = None,
) -> SteadyStateOptimum:
    """Maximise the stationary coherent information over diagonal inputs.

    Every candidate ``p`` gets its own stationary cavity state since the
    input itself pumps the cavity. With ``r_check_steps`` set, coherent
    inputs at the optimum are scanned as well and the largest improvement
    over ``r = 0`` is reported (it should be <= 1e-9).
    """

    def objective(p):
        return steady_state_coherent_information(QubitInput(p), params)

    p_opt, i_c = maximize_on_unit_interval(objective, step=p_grid)
    excess = None
    if r_check_steps:
        excess = r_check(p_opt, params, r_check_steps)
        if excess > 1e-9:
            log.warning("r = 0 not optimal at %s: gain %.3e", params, excess)
    return SteadyStateOptimum(p_opt, i_c, stationary_populations(p_opt, params), excess)


@dataclass(frozen=True)
class RatePoint:
    """One sweep record. ``rate`` is in bits per unit of ``lambda * t``."""

    lambda_tau: float
    mu: float
    p_opt: float
    i_c_opt: float
    rate: float
    private_rate: float | None = None


def rate_point(params: ChannelParams, p_grid: float = 0.01) -> RatePoint:
    opt = optimize_steady_state_input(params, p_grid)
    return RatePoint(params.lambda_tau, params.mu, opt.p_opt, opt.i_c_opt, opt.i_c_opt / params.lambda_tau)


def rate_sweep(
    eta: float,
    lambda_tau_d: float,
    tau_grid: Sequence[float],
    p_grid: float = 0.01,
) -> list[RatePoint]:
    """Optimised stationary coherent information and rate along a grid of ``lambda_tau``."""
    taus = np.asarray(tau_grid, dtype=float)
    if taus.size == 0 or np.any(taus <= 0.0):
        raise DomainError("tau grid must be non-empty and strictly positive")
    if np.any(np.diff(taus) <= 0.0):
        raise DomainError("tau grid must be strictly ascending")
    return [rate_point(ChannelParams.from_eta(eta, float(t), lambda_tau_d), p_grid) for t in taus]


def private_rate_report(point: RatePoint) -> RatePoint:
    """Attach the private classical rate lower bound, equal to the quantum rate."""
    return replace(point, private_rate=point.rate)


def cavity_trajectory(qubit: QubitInput, params: ChannelParams, k: int):
    """Run ``k`` channel uses from the vacuum.

    Returns
    -------
    mean_photon : ndarray, shape (k,)
        ``<a^dag a>`` after use ``j = 1..k``.
    coherent_info : ndarray, shape (k,)
        ``I_c`` of use ``j``, evaluated with the cavity state left by use ``j - 1``.
    w : ndarray
        Populations after the last use.
    """
    w = fock(0)
    mean = np.empty(k)
    ic = np.empty(k)
    for j in range(k):
        ic[j] = coherent_information_single_use(qubit, w, params.theta)
        w = channel_use_populations(w, qubit.p, params)
        mean[j] = mean_photon_number(w)
    return mean, ic, w


@dataclass(frozen=True)
class ForgetfulnessFit:
    """Exponential fit ``d(L) ~ h * c**(-L)`` of cavity distances."""

    distances: list[tuple[int, float]]
    c: float
    h: float
    r_squared: float


def forgetfulness_probe(
    params: ChannelParams,
    l_max: int = 20,
    p: float = 0.5,
    initial_pair=None,
    floor: float = 1e-13,
) -> ForgetfulnessFit:
    """Contraction of cavity-memory distances over idle damping intervals.

    By default compares the vacuum against the stationary state for input
    ``p``. The difference vector is propagated directly, which keeps small
    distances free of ``1 - (1 - x)`` cancellation.

    Raises
    ------
    FitDegenerate
        If a distance falls to ``floor`` before ``l_max`` is reached.
    """
    if l_max < 3:
        raise DomainError(f"l_max must be >= 3, got {l_max}")
    if initial_pair is None:
        initial_pair = (fock(0), stationary_populations(p, params))
    a, b = (np.asarray(x, dtype=float) for x in initial_pair)
    size = max(a.size, b.size)
    diff = pad(a, size) - pad(b, size)
    loss = _loss_matrix(size, float(np.exp(-params.gt)))
    distances = []
    for L in range(l_max + 1):
        d = 0.5 * float(np.abs(diff).sum())
        if d <= floor:
            raise FitDegenerate(
                f"distance {d:.3e} at L={L} hit the floor {floor:.1e} before l_max={l_max} "
                f"(lambda_tau={params.lambda_tau}, lambda_tau_d={params.lambda_tau_d})"
            )
        distances.append((L, d))
        diff = loss @ diff
    ls = np.array([x[0] for x in distances], dtype=float)
    logd = np.log([x[1] for x in distances])
    slope, intercept = np.polyfit(ls, logd, 1)
    resid = logd - (slope * ls + intercept)
    ss_tot = np.sum((logd - logd.mean()) ** 2)
    r_squared = 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0
    return ForgetfulnessFit(distances, float(np.exp(-slope)), float(np.exp(intercept)), float(r_squared))
