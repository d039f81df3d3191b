import numpy as np
import pytest

from cudqsd.qudit import (CoefficientProfile, CoefficientVector, StateVector, build_symmetric_state,
                          coefficients_from_profile, compute_xi_max, fourier_matrix, gram_matrix,
                          gram_overlap, is_unitary, profile_weights, random_coefficients)

CSQ = (0.4, 0.3, 0.2, 0.1)


class TestCoefficientVector:
    def test_from_csq(self):
        c = CoefficientVector.from_csq(CSQ)
        assert c.dim == 4
        np.testing.assert_allclose(c.csq, CSQ, atol=1e-15)
        assert c.c_min == pytest.approx(np.sqrt(0.1))
        np.testing.assert_array_equal(c.phases, 0)

    def test_rejects_zero_magnitude(self):
        with pytest.raises(ValueError, match="nonzero"):
            CoefficientVector.from_csq([0.5, 0.5, 0.0])

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            CoefficientVector.from_csq([0.5, 0.4, 0.2])

    @pytest.mark.parametrize("d", [1, 65])
    def test_dimension_bounds(self, d):
        with pytest.raises(ValueError, match="dimension"):
            CoefficientVector.uniform(d)

    def test_from_amps_roundtrip(self):
        amps = np.sqrt(CSQ) * np.exp(1j * np.array([0.3, -1.0, 2.0, 0.0]))
        c = CoefficientVector.from_amps(amps)
        np.testing.assert_allclose(c.amps, amps, atol=1e-15)

    def test_immutable(self):
        c = CoefficientVector.uniform(3)
        with pytest.raises(ValueError):
            c.magnitudes[0] = 1.0


class TestProfile:
    def test_xi_zero_is_uniform_for_every_j0(self):
        for j0 in (1, 2, 3):
            c = CoefficientProfile(4, j0, 0.0).coefficients()
            np.testing.assert_allclose(c.csq, 0.25, atol=1e-15)

    def test_d4_j03_at_xi_max(self):
        # unnormalized weights (1, 1, 1, 0.12), sum 3.12
        c = CoefficientProfile(4, 3, 1.0).coefficients()
        np.testing.assert_allclose(c.csq, np.array([1, 1, 1, 0.12]) / 3.12, atol=1e-12)
        np.testing.assert_allclose(c.csq, [0.320513, 0.320513, 0.320513, 0.038462], atol=1e-6)

    def test_d9_j08_at_xi_max(self):
        c = CoefficientProfile(9, 8, 1.0).coefficients()
        assert c.csq[8] == pytest.approx(0.12 / 8.12, abs=1e-12)
        np.testing.assert_allclose(c.csq[:8], 1 / 8.12, atol=1e-12)
        assert c.csq[8] == pytest.approx(0.014778, abs=1e-6)

    def test_xi_max_values(self):
        assert compute_xi_max(4, 3, 0.12) == pytest.approx(0.59969536, abs=1e-12)
        assert compute_xi_max(9, 8, 0.12) == pytest.approx(0.31647838, abs=1e-8)
        assert compute_xi_max(5, 2, 1 - 1e-9) < 1e-40

    def test_xi_max_is_binding(self):
        # at xi_max the smallest unnormalized weight hits the floor exactly
        for d in range(2, 10):
            for j0 in range(1, d):
                w = profile_weights(d, j0, compute_xi_max(d, j0, 0.12))
                assert w.min() / w.max() == pytest.approx(0.12, abs=1e-12)
                assert np.argmin(w) == d - 1

    def test_tail_nonincreasing(self):
        for d in (4, 9):
            for j0 in range(1, d):
                m = CoefficientProfile(d, j0, 0.7).coefficients().magnitudes
                assert np.all(np.diff(m[j0:]) <= 0)

    def test_xi_prime_scales(self):
        p = CoefficientProfile(4, 2, 0.5)
        assert p.xi == pytest.approx(0.5 * 0.88**4)

    @pytest.mark.parametrize("j0", [0, 4])
    def test_rejects_j0(self, j0):
        with pytest.raises(ValueError, match="j0"):
            CoefficientProfile(4, j0, 0.5)

    def test_rejects_suppression_to_zero(self):
        with pytest.raises(ValueError, match="zero"):
            profile_weights(4, 3, 1.0)

    def test_function_form(self):
        p = CoefficientProfile(5, 2, 0.3)
        np.testing.assert_array_equal(coefficients_from_profile(p).csq, p.coefficients().csq)


class TestStates:
    def test_j0_is_coefficients(self):
        c = CoefficientVector.from_csq(CSQ, [0.1, 0.2, 0.3, 0.4])
        np.testing.assert_allclose(build_symmetric_state(c, 0).amps, c.amps, atol=1e-15)

    def test_uniform_j0_is_fourier_of_zero(self):
        f = fourier_matrix(5)
        psi = build_symmetric_state(CoefficientVector.uniform(5), 0)
        np.testing.assert_allclose(psi.amps, f[:, 0], atol=1e-15)

    def test_d4_j1(self):
        psi = build_symmetric_state(CoefficientVector.from_csq(CSQ), 1)
        expected = np.sqrt(CSQ) * np.array([1, 1j, -1, -1j])
        np.testing.assert_allclose(psi.amps, expected, atol=1e-15)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            build_symmetric_state(CoefficientVector.uniform(3), 3)

    def test_state_requires_unit_norm(self):
        with pytest.raises(ValueError):
            StateVector([1.0, 1.0])

    def test_same_ray(self):
        a = StateVector.normalized([1, 2j, 3])
        b = StateVector(a.amps * np.exp(0.7j))
        assert a.same_ray(b)
        assert not a.same_ray(StateVector.basis(3, 0))


class TestFourier:
    def test_d2(self):
        np.testing.assert_allclose(fourier_matrix(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-15)

    def test_d4_entry(self):
        assert fourier_matrix(4)[1, 1] == pytest.approx(0.5j)

    @pytest.mark.parametrize("d", [2, 3, 4, 7, 9, 16, 64])
    def test_unitary(self, d):
        f = fourier_matrix(d)
        assert is_unitary(f)
        assert np.linalg.norm(f @ f.conj().T - np.eye(d)) < 1e-10

    def test_columns_are_uniform_symmetric_states(self):
        d = 6
        f = fourier_matrix(d)
        c = CoefficientVector.uniform(d)
        for j in range(d):
            np.testing.assert_allclose(f[:, j], build_symmetric_state(c, j).amps, atol=1e-14)


class TestGram:
    def test_diagonal(self):
        assert gram_overlap(CoefficientVector.from_csq(CSQ), 2, 2) == pytest.approx(1)

    def test_uniform_orthogonal(self):
        c = CoefficientVector.uniform(5)
        assert abs(gram_overlap(c, 1, 3)) < 1e-15

    def test_d4_value(self):
        # 0.4 + 0.3i - 0.2 - 0.1i
        assert gram_overlap(CoefficientVector.from_csq(CSQ), 0, 1) == pytest.approx(0.2 + 0.2j, abs=1e-15)

    def test_matches_inner_products(self):
        c = random_coefficients(5, np.random.default_rng(1))
        states = [build_symmetric_state(c, j) for j in range(5)]
        g = np.array([[a.overlap(b) for b in states] for a in states])
        np.testing.assert_allclose(gram_matrix(c), g, atol=1e-14)

    def test_circulant(self):
        c = random_coefficients(6, np.random.default_rng(2))
        g = gram_matrix(c)
        for j in range(6):
            np.testing.assert_allclose(np.roll(g[0], j), g[j], atol=1e-14)

    def test_linear_independence(self):
        rng = np.random.default_rng(3)
        for d in range(2, 10):
            for _ in range(20):
                assert np.linalg.det(gram_matrix(random_coefficients(d, rng))).real > 1e-12


def test_random_coefficients_floor():
    rng = np.random.default_rng(0)
    for _ in range(50):
        c = random_coefficients(9, rng, floor=0.12)
        assert c.csq.min() / c.csq.max() >= 0.12
