import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from memchannel.core import QubitInput, trace_distance, validate_density_matrix, von_neumann_entropy
from memchannel.errors import DimensionMismatch, DomainError, NotHermitian, NotPSD, NotUnitTrace

from conftest import random_density_matrix, random_unitary

seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestValidate:
    def test_maximally_mixed_accepted(self):
        rho = validate_density_matrix(np.eye(2) / 2)
        np.testing.assert_allclose(rho, np.eye(2) / 2)

    def test_trace_two_rejected(self):
        with pytest.raises(NotUnitTrace):
            validate_density_matrix(np.diag([1.0, 1.0]))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(NotPSD):
            validate_density_matrix(np.diag([1.2, -0.2]))

    def test_non_hermitian_rejected(self):
        with pytest.raises(NotHermitian):
            validate_density_matrix(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatch):
            validate_density_matrix(np.ones((2, 3)) / 2)

    def test_dust_is_clamped(self):
        rho = validate_density_matrix(np.diag([1.0 + 5e-11, -5e-11]))
        vals = np.linalg.eigvalsh(rho)
        assert vals.min() >= 0.0
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_idempotent(self, seed):
        rng = np.random.default_rng(seed)
        rho = random_density_matrix(rng, 4, rank=int(rng.integers(1, 5)))
        once = validate_density_matrix(rho)
        np.testing.assert_allclose(validate_density_matrix(once), once, atol=1e-15)


class TestEntropy:
    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.diag([0.5, 0.5])) == pytest.approx(1.0, abs=1e-15)

    def test_pure_state(self):
        v = np.array([1.0, 1j]) / np.sqrt(2)
        assert von_neumann_entropy(np.outer(v, v.conj())) == pytest.approx(0.0, abs=1e-12)

    def test_skewed_qubit(self):
        expected = -0.9 * math.log2(0.9) - 0.1 * math.log2(0.1)
        assert expected == pytest.approx(0.46899, abs=1e-5)
        assert von_neumann_entropy(np.diag([0.9, 0.1])) == pytest.approx(expected, abs=1e-14)

    @given(seeds, st.sampled_from([2, 4]))
    @settings(max_examples=100, deadline=None)
    def test_unitary_invariance_and_bounds(self, seed, dim):
        rng = np.random.default_rng(seed)
        rho = random_density_matrix(rng, dim)
        u = random_unitary(rng, dim)
        s = von_neumann_entropy(rho)
        assert 0.0 <= s <= math.log2(dim) + 1e-12
        assert von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(s, abs=1e-10)


class TestTraceDistance:
    def test_identical(self, rng):
        rho = random_density_matrix(rng, 2)
        assert trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-15)

    def test_orthogonal(self):
        assert trace_distance(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == pytest.approx(1.0)

    def test_half(self):
        # eigenvalues of the difference are +-0.5
        assert trace_distance(np.diag([1.0, 0.0]), np.diag([0.5, 0.5])) == pytest.approx(0.5)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            trace_distance(np.eye(2) / 2, np.eye(4) / 4)

    @given(seeds)
    @settings(max_examples=100, deadline=None)
    def test_metric_properties(self, seed):
        rng = np.random.default_rng(seed)
        a, b, c = (random_density_matrix(rng, 4) for _ in range(3))
        ab, bc, ac = trace_distance(a, b), trace_distance(b, c), trace_distance(a, c)
        assert 0.0 <= ab <= 1.0
        assert ab == pytest.approx(trace_distance(b, a), abs=1e-14)
        assert ac <= ab + bc + 1e-12


class TestQubitInput:
    def test_density_matrix(self):
        rho = QubitInput(0.3, 0.2 - 0.1j).density_matrix()
        np.testing.assert_allclose(rho, [[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])

    @pytest.mark.parametrize("p, r", [(-0.1, 0.0), (1.1, 0.0), (0.5, 0.51), (0.0, 1e-6)])
    def test_inadmissible(self, p, r):
        with pytest.raises(DomainError):
            QubitInput(p, r)

    def test_boundary_coherence_is_pure(self):
        p = 0.3
        q = QubitInput(p, math.sqrt(p * (1 - p)))
        assert von_neumann_entropy(q.density_matrix()) == pytest.approx(0.0, abs=1e-7)
