"""Fock-space primitives against high-precision and closed-form references."""

import numpy as np
import pytest
from scipy.special import eval_hermite, factorial

from boxtomo import (
    CoherentProbe,
    FockSpaceConfig,
    StateVector,
    coherent_fock_coeffs,
    flat_index,
    hermite_gauss,
    multi_index,
    multimode_coherent,
    photon_totals,
    quadrature_eigenvector,
)
from boxtomo.fock import hermite_gauss_table, multimode_projector_vector

from oracles import coherent_coeff_mp, flat_index_slow, hermite_gauss_mp

CFG24 = FockSpaceConfig(modes=2, cutoff=4)


class TestIndexing:
    def test_flat_index_examples(self):
        # mode 1 is the most significant digit in base cutoff+1
        assert flat_index((0, 0), CFG24) == 0
        assert flat_index((0, 1), CFG24) == 1
        assert flat_index((1, 0), CFG24) == 5
        assert flat_index((4, 4), CFG24) == 24

    def test_bijection_and_slow_oracle(self):
        for cfg in (CFG24, FockSpaceConfig(1, 6), FockSpaceConfig(3, 2)):
            for f in range(cfg.total_dim):
                tup = multi_index(f, cfg)
                assert flat_index(tup, cfg) == f
                assert flat_index_slow(tup, cfg) == f

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            flat_index((5, 0), CFG24)
        with pytest.raises(IndexError):
            flat_index((0, -1), CFG24)
        with pytest.raises(IndexError):
            flat_index((1, 1, 1), CFG24)
        with pytest.raises(IndexError):
            multi_index(25, CFG24)

    def test_photon_totals(self):
        totals = photon_totals(CFG24)
        assert totals.shape == (25,)
        for f in range(25):
            assert totals[f] == sum(multi_index(f, CFG24))

    def test_config_validation(self):
        with pytest.raises(ValueError):
            FockSpaceConfig(0, 4)
        with pytest.raises(ValueError):
            FockSpaceConfig(2, -1)
        assert FockSpaceConfig(2, 2).total_dim == 9


class TestHermiteGauss:
    def test_vacuum_at_origin(self):
        # psi_0(0) = pi^{-1/4}
        assert hermite_gauss(0, 0.0) == pytest.approx(0.7511255444649425, abs=1e-15)

    def test_matches_hermite_polynomial_formula(self):
        xs = np.linspace(-6.0, 6.0, 41)
        norm = lambda n: np.sqrt(2.0 ** n * factorial(n) * np.sqrt(np.pi))
        for n in range(9):
            direct = eval_hermite(n, xs) * np.exp(-0.5 * xs * xs) / norm(n)
            assert np.abs(hermite_gauss(n, xs) - direct).max() < 1e-12

    def test_high_order_against_mpmath(self):
        # recurrence must stay stable where raw polynomials overflow
        for n in (20, 60):
            for x in (-3.7, 0.9, 5.1):
                assert hermite_gauss(n, x) == pytest.approx(
                    hermite_gauss_mp(n, x), abs=1e-13
                )

    def test_orthonormality(self):
        xs = np.arange(-10.0, 10.0, 0.001)
        table = hermite_gauss_table(xs, 6)
        gram = table.T @ table * 0.001
        assert np.abs(gram - np.eye(7)).max() < 1e-8

    def test_table_matches_scalar(self):
        xs = np.array([-1.3, 0.0, 2.2])
        table = hermite_gauss_table(xs, 5)
        for n in range(6):
            assert np.allclose(table[:, n], hermite_gauss(n, xs), atol=1e-15)


class TestCoherent:
    def test_vacuum_coefficient_energy_09(self):
        c = coherent_fock_coeffs(np.sqrt(0.9), 4)
        assert c[0] == pytest.approx(0.6376281516217733, abs=1e-15)

    def test_against_mpmath_formula(self):
        for alpha in (0.3 + 0.4j, -1.1j, np.sqrt(0.9)):
            c = coherent_fock_coeffs(alpha, 6)
            for n in range(7):
                assert c[n] == pytest.approx(coherent_coeff_mp(alpha, n), abs=1e-14)

    def test_truncated_norm_not_renormalized(self):
        # the per-mode expansion keeps its physical (sub-unit) norm
        c = coherent_fock_coeffs(np.sqrt(0.9), 4)
        assert float(np.vdot(c, c).real) == pytest.approx(0.9976558774337224, abs=1e-12)

    def test_multimode_renormalized_once(self):
        probe = CoherentProbe((0.3 + 0.1j, -0.2j))
        state = multimode_coherent(probe, CFG24)
        assert state.normalized
        assert np.linalg.norm(state.coefficients) == pytest.approx(1.0, abs=1e-13)
        # kron layout: component (n1, n2) = c1[n1] * c2[n2] up to the norm
        c1 = coherent_fock_coeffs(0.3 + 0.1j, 4)
        c2 = coherent_fock_coeffs(-0.2j, 4)
        raw = np.kron(c1, c2)
        expect = raw / np.linalg.norm(raw)
        assert np.abs(state.coefficients - expect).max() < 1e-14

    def test_overlap_formula(self):
        # |<beta|alpha>|^2 = exp(-|alpha-beta|^2), approximately at N=4
        cfg = FockSpaceConfig(1, 40)
        a, b = 0.5 + 0.2j, 0.1 - 0.3j
        ca = multimode_coherent(CoherentProbe((a,)), cfg).coefficients
        cb = multimode_coherent(CoherentProbe((b,)), cfg).coefficients
        got = abs(np.vdot(cb, ca)) ** 2
        assert got == pytest.approx(np.exp(-abs(a - b) ** 2), abs=1e-10)

    def test_probe_energy(self):
        assert CoherentProbe((0.3, 0.4j)).total_energy == pytest.approx(0.25)
        with pytest.raises(ValueError):
            multimode_coherent(CoherentProbe((0.1,)), CFG24)


class TestQuadratureEigenvectors:
    def test_phase_convention(self):
        # <n|x,theta> = e^{+i n theta} psi_n(x)
        theta, x = 0.8, 1.1
        v = quadrature_eigenvector(theta, x, 4)
        for n in range(5):
            expect = np.exp(1j * n * theta) * hermite_gauss(n, x)
            assert v[n] == pytest.approx(expect, abs=1e-14)

    def test_coherent_density_moments(self):
        """The projector convention must reproduce Gaussian homodyne statistics.

        mean = sqrt(2) Re(alpha e^{-i theta}), variance = 1/2; moments come
        from numeric integration of |<x,theta|alpha>|^2, so a wrong phase
        sign fails loudly.
        """
        cfg = FockSpaceConfig(1, 60)
        alpha, theta = 0.7 - 0.4j, 0.6
        c = multimode_coherent(CoherentProbe((alpha,)), cfg).coefficients
        xs = np.arange(-8.0, 8.0, 0.01)
        table = hermite_gauss_table(xs, cfg.cutoff)
        # <x,theta|alpha> = sum_n conj(<n|x,theta>) c_n, so the dressing
        # enters conjugated
        phases = np.exp(-1j * theta * np.arange(cfg.cutoff + 1))
        amps = table @ (phases * c)
        dens = np.abs(amps) ** 2
        total = dens.sum() * 0.01
        mean = (dens * xs).sum() * 0.01
        var = (dens * xs * xs).sum() * 0.01 - mean ** 2
        assert total == pytest.approx(1.0, abs=1e-9)
        expect_mean = np.sqrt(2.0) * np.real(alpha * np.exp(-1j * theta))
        assert mean == pytest.approx(expect_mean, abs=1e-9)
        assert var == pytest.approx(0.5, abs=1e-9)

    def test_projector_density_not_normalized(self):
        vec = multimode_projector_vector((0.0, 0.0), (0.0, 0.0), CFG24)
        assert not vec.normalized
        # vacuum density at the origin: psi_0(0)^2 per mode
        assert abs(vec.coefficients[0]) ** 2 == pytest.approx(
            0.7511255444649425 ** 4, abs=1e-12
        )

    def test_state_vector_validation(self):
        with pytest.raises(ValueError):
            StateVector(np.ones(7), CFG24)
        with pytest.raises(ValueError):
            StateVector(np.ones(25), CFG24, normalized=True)
