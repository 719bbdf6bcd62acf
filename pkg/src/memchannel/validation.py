"""Independent-route cross-checks, each reported as a pass/fail row.

Every check pairs a production routine with a route that shares none of
its formulas: RK4 integration for the binomial propagator, the explicit
qubit x cavity unitary for the Kraus sums, a second purification for the
entropy exchange, and a dense grid for the capacity optimiser.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from .capacity import memoryless_quantum_capacity
from .cavity import damp_populations, damp_populations_ode_oracle, jc_population_update, pad
from .channel import (
    amplitude_damping_output,
    entropy_exchange,
    jc_unitary,
    joint_output_with_reference,
    single_use_output,
)
from .core import QubitInput, von_neumann_entropy


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    tolerance: float
    cases: int

    @property
    def passed(self) -> bool:
        return bool(self.worst <= self.tolerance)


def random_qubit(rng: np.random.Generator) -> QubitInput:
    p = rng.uniform()
    bound = np.sqrt(p * (1.0 - p))
    r = rng.uniform(0.0, bound) * np.exp(2j * np.pi * rng.uniform())
    return QubitInput(p, r)


def random_populations(rng: np.random.Generator, support: int, size: int | None = None) -> np.ndarray:
    w = pad(rng.dirichlet(np.ones(support)), size or support)
    return w


def full_dilation(qubit: QubitInput, w, theta: float, with_reference: bool = False) -> np.ndarray:
    """Evolve (reference x) qubit x cavity with the explicit transit unitary.

    Returns the density matrix over (reference,) qubit and cavity with index
    order ``(r,) q, n``; the cavity keeps two spare levels above the support.
    """
    w = np.asarray(w, dtype=float)
    top = int(np.flatnonzero(w)[-1])
    levels = top + 3
    u = jc_unitary(theta, levels)
    if with_reference:
        vals, vecs = np.linalg.eigh(qubit.density_matrix())
        psi = (np.sqrt(np.clip(vals, 0, None))[:, None] * vecs.T).reshape(4)
        sys_state = np.outer(psi, psi.conj())
        u = np.kron(np.eye(2), u)
    else:
        sys_state = qubit.density_matrix()
    cav = np.diag(pad(w, levels)[:levels]).astype(complex)
    rho = u @ np.kron(sys_state, cav) @ u.conj().T
    return rho


def check_damping_oracle(rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        w = random_populations(rng, int(rng.integers(1, 9)), 12)
        gt = rng.uniform(0.0, 5.0)
        worst = max(worst, np.max(np.abs(damp_populations(w, gt) - damp_populations_ode_oracle(w, gt))))
    return CheckResult("binomial damping vs RK4 integration", worst, 1e-8, cases)


def check_kraus_vs_dilation(rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        q = random_qubit(rng)
        eta = rng.uniform()
        theta = np.arccos(np.sqrt(eta))
        a = amplitude_damping_output(q, eta)
        b = single_use_output(q, [1.0], theta)
        worst = max(worst, np.max(np.abs(a - b)))
    return CheckResult("amplitude-damping Kraus vs JC dilation at vacuum", worst, 1e-12, cases)


def check_purification_independence(rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        q = random_qubit(rng)
        w = random_populations(rng, int(rng.integers(1, 8)))
        theta = rng.uniform(0.0, np.pi)
        # canonical purification (I x sqrt(rho)) sum_i |ii>, rotated by a random reference unitary
        vals, vecs = np.linalg.eigh(q.density_matrix())
        sqrt_rho = (vecs * np.sqrt(np.clip(vals, 0, None))) @ vecs.conj().T
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        v, _ = np.linalg.qr(z)
        psi = (v @ sqrt_rho.T).reshape(4)
        alt = von_neumann_entropy(joint_output_with_reference(q, w, theta, psi=psi))
        worst = max(worst, abs(alt - entropy_exchange(q, w, theta)))
    return CheckResult("entropy exchange independent of purification", worst, 1e-10, cases)


def check_population_map(rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        q = random_qubit(rng)
        w = random_populations(rng, int(rng.integers(1, 8)))
        theta = rng.uniform(0.0, np.pi)
        rho = full_dilation(q, w, theta)
        levels = rho.shape[0] // 2
        r4 = rho.reshape(2, levels, 2, levels)
        cav_diag = np.einsum("qnqn->n", r4).real
        qubit = np.einsum("qnpn->qp", r4)
        ref = jc_population_update(pad(w, 65), q.p, theta)
        worst = max(
            worst,
            np.max(np.abs(pad(cav_diag, ref.size) - pad(ref, cav_diag.size))),
            np.max(np.abs(qubit - single_use_output(q, w, theta))),
        )
    return CheckResult("population map and qubit output vs full unitary evolution", worst, 1e-12, cases)


def check_joint_vs_dilation(rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        q = random_qubit(rng)
        w = random_populations(rng, int(rng.integers(1, 6)))
        theta = rng.uniform(0.0, np.pi)
        rho = full_dilation(q, w, theta, with_reference=True)
        levels = rho.shape[0] // 4
        joint = np.einsum("anbn->ab", rho.reshape(4, levels, 4, levels))
        worst = max(worst, np.max(np.abs(joint - joint_output_with_reference(q, w, theta))))
    return CheckResult("reference+qubit output vs full unitary evolution", worst, 1e-12, cases)


def check_cpt_and_normalisation(rng, cases: int) -> CheckResult:
    worst = 0.0
    for _ in range(cases):
        q = random_qubit(rng)
        w = random_populations(rng, int(rng.integers(1, 20)), 65)
        theta = rng.uniform(0.0, np.pi)
        out = single_use_output(q, w, theta)
        joint = joint_output_with_reference(q, w, theta)
        kicked = jc_population_update(w, q.p, theta)
        damped = damp_populations(w, rng.uniform(0.0, 5.0))
        worst = max(
            worst,
            abs(np.trace(out).real - 1.0),
            abs(np.trace(joint).real - 1.0),
            max(0.0, -np.linalg.eigvalsh(out)[0]),
            max(0.0, -np.linalg.eigvalsh(joint)[0]),
            abs(kicked.sum() - 1.0),
            abs(damped.sum() - 1.0),
            max(0.0, -kicked.min()),
            max(0.0, -damped.min()),
        )
    return CheckResult("trace positivity and normalisation invariants", worst, 1e-10, cases)


def _h2(x):
    return (entr(x) + entr(1.0 - x)) / np.log(2.0)


def check_memoryless_capacity(etas=None) -> CheckResult:
    if etas is None:
        etas = np.round(np.arange(0.55, 1.0001, 0.05), 10)
    p = np.linspace(0.0, 1.0, 100_001)
    worst = 0.0
    for eta in etas:
        brute = max(np.max(_h2(eta * p) - _h2((1.0 - eta) * p)), 0.0)
        worst = max(worst, abs(memoryless_quantum_capacity(eta)[0] - brute))
    return CheckResult("memoryless capacity vs dense grid", worst, 1e-6, len(etas))


def run_oracle_suite(seed: int = 0, cases: int = 1000) -> list[CheckResult]:
    """Run every cross-check with ``cases`` random draws each."""
    rng = np.random.default_rng(seed)
    return [
        check_damping_oracle(rng, cases),
        check_kraus_vs_dilation(rng, cases),
        check_purification_independence(rng, cases),
        check_population_map(rng, cases),
        check_joint_vs_dilation(rng, cases),
        check_cpt_and_normalisation(rng, cases),
        check_memoryless_capacity(),
    ]
