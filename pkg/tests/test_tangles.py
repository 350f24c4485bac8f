import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tripartite import qmat, tangles
from tripartite.channels import ALL_KINDS, NOISY_KINDS, ChannelParams, NoiseKind, channel_state, x_weight
from tripartite.states import bell_states, ghz_basis, ghz_projector, ghz_state, w_state
from tripartite.tangles import (
    I_STAR,
    MU1_X,
    MU2_X,
    X0,
    X1,
    Y_STAR,
    Ensemble,
    alpha_one_x,
    alpha_two_x,
    zero_tangle_suite,
    average_tangle,
    ckw_residual,
    ckw_residual_lower_bound,
    concurrence,
    iso_split,
    j_state,
    j_tangle_closed,
    negativity,
    one_tangle,
    optimal_decomposition,
    pi_family,
    pi_tangle,
    pi_tangle_closed,
    three_tangle_closed,
    three_tangle_pure,
    three_tangle_upper_bound,
    x_family_tangle,
    y_split,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
GRID = (0.0, 0.0234, 0.05, 0.101, 0.146, 0.25, 0.5, 0.609, 1.0)


def werner(p):
    phi = bell_states()[0]
    return p * qmat.dm(phi) + (1 - p) * np.eye(4) / 4


class TestConcurrence:
    def test_bell(self):
        for b in bell_states():
            assert concurrence(qmat.dm(b)) == pytest.approx(1.0, abs=1e-12)

    def test_product(self):
        psi = np.kron([1, 0], [0.6, 0.8])
        assert concurrence(qmat.dm(psi)) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.5, 0.9])
    def test_werner(self, p):
        assert concurrence(werner(p)) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-12)

    @given(st.floats(0, np.pi / 2))
    def test_pure_two_qubit(self, a):
        # cos a |00> + sin a |11> has concurrence sin 2a
        psi = np.array([np.cos(a), 0, 0, np.sin(a)])
        assert concurrence(qmat.dm(psi)) == pytest.approx(np.sin(2 * a), abs=1e-10)

    @given(seeds)
    @settings(max_examples=30)
    def test_invariant_under_local_unitaries(self, seed):
        rng = np.random.default_rng(seed)
        rho = qmat.random_density_matrix(4, rng)
        u = np.kron(qmat.random_unitary(2, rng), qmat.random_unitary(2, rng))
        assert concurrence(u @ rho @ u.conj().T) == pytest.approx(concurrence(rho), abs=1e-9)

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            concurrence(np.eye(8) / 8)


class TestNegativity:
    def test_bell(self):
        assert negativity(qmat.dm(bell_states()[2]), 0) == pytest.approx(1.0, abs=1e-12)

    def test_ghz_splits(self):
        rho = ghz_projector(1)
        for q in range(3):
            assert negativity(rho, q) == pytest.approx(1.0, abs=1e-12)
        for pair in ((0, 1), (0, 2), (1, 2)):
            assert negativity(rho, pair) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("p", [0.1, 0.5, 0.8])
    def test_werner(self, p):
        rho = np.kron(werner(p), np.diag([1.0, 0.0]))
        assert negativity(rho, (0, 1)) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-12)

    def test_z_channel_global_negativity(self):
        rho = channel_state(ChannelParams(NoiseKind.Z, 0.1))
        for q in range(3):
            assert negativity(rho, q) == pytest.approx(math.exp(-0.6), abs=1e-10)


class TestThreeTanglePure:
    def test_landmarks(self):
        assert three_tangle_pure(ghz_state()) == pytest.approx(1.0, abs=1e-14)
        assert three_tangle_pure(w_state()) == pytest.approx(0.0, abs=1e-14)
        assert three_tangle_pure(np.kron(bell_states()[0], [1, 0])) == pytest.approx(0.0, abs=1e-14)

    def test_generalized_ghz(self):
        a = 0.4
        psi = np.zeros(8)
        psi[0], psi[7] = np.cos(a), np.sin(a)
        assert three_tangle_pure(psi) == pytest.approx(np.sin(2 * a) ** 2, abs=1e-14)

    def test_vectorized(self):
        rng = np.random.default_rng(0)
        batch = np.array([qmat.random_pure_state(8, rng) for _ in range(5)])
        out = three_tangle_pure(batch)
        assert out.shape == (5,)
        np.testing.assert_allclose(out, [three_tangle_pure(p) for p in batch], atol=1e-15)

    @given(seeds)
    @settings(max_examples=60)
    def test_equals_ckw_residual(self, seed):
        psi = qmat.random_pure_state(8, np.random.default_rng(seed))
        tau = three_tangle_pure(psi)
        for q in range(3):
            assert ckw_residual(psi, q) == pytest.approx(tau, abs=1e-8)

    @given(seeds)
    @settings(max_examples=30)
    def test_local_unitary_and_phase_invariance(self, seed):
        rng = np.random.default_rng(seed)
        psi = qmat.random_pure_state(8, rng)
        u = qmat.kron(*(qmat.random_unitary(2, rng) for _ in range(3)))
        assert three_tangle_pure(np.exp(0.7j) * (u @ psi)) == pytest.approx(three_tangle_pure(psi), abs=1e-12)

    @given(seeds)
    @settings(max_examples=30)
    def test_qubit_permutation_invariance(self, seed):
        psi = qmat.random_pure_state(8, np.random.default_rng(seed))
        swapped = psi.reshape(2, 2, 2).transpose(2, 0, 1).ravel()
        assert three_tangle_pure(swapped) == pytest.approx(three_tangle_pure(psi), abs=1e-12)

    @given(seeds)
    @settings(max_examples=30)
    def test_in_unit_interval(self, seed):
        tau = three_tangle_pure(qmat.random_pure_state(8, np.random.default_rng(seed)))
        assert -1e-14 <= tau <= 1 + 1e-14

    def test_one_tangle_of_ghz(self):
        for q in range(3):
            assert one_tangle(ghz_state(), q) == pytest.approx(1.0)


class TestPiTangle:
    def test_ghz(self):
        assert pi_tangle(ghz_projector(1)).pi_tangle == pytest.approx(1.0, abs=1e-12)

    def test_w_exact(self):
        br = pi_tangle(w_state())
        assert br.pi_tangle == pytest.approx(4 * (math.sqrt(5) - 1) / 9, abs=1e-12)
        np.testing.assert_allclose(br.global_negativities, 2 * math.sqrt(2) / 3, atol=1e-12)
        np.testing.assert_allclose(br.pairwise, math.sqrt(5) / 3 - 1 / 3, atol=1e-12)

    def test_product(self):
        psi = np.zeros(8)
        psi[0] = 1
        assert pi_tangle(psi).pi_tangle == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    @pytest.mark.parametrize("kt", GRID)
    def test_channel_closed_forms(self, kind, kt):
        ch = ChannelParams(kind, kt)
        br = pi_tangle(channel_state(ch))
        assert br.pi_tangle == pytest.approx(pi_tangle_closed(ch), abs=1e-8)
        np.testing.assert_allclose(br.pairwise, 0, atol=1e-10)

    def test_zero_crossings(self):
        y = lambda kt: pi_tangle_closed(ChannelParams(NoiseKind.Y, kt))  # noqa: E731
        i = lambda kt: pi_tangle_closed(ChannelParams(NoiseKind.ISOTROPIC, kt))  # noqa: E731
        assert y(Y_STAR - 1e-4) > 0 and y(Y_STAR + 1e-9) == 0
        assert i(I_STAR - 1e-4) > 0 and i(I_STAR + 1e-9) == 0
        assert Y_STAR == pytest.approx(0.609378, abs=1e-6)
        assert I_STAR == pytest.approx(0.146435, abs=1e-6)

    @given(seeds)
    @settings(max_examples=30)
    def test_monogamy_residuals_non_negative(self, seed):
        psi = qmat.random_pure_state(8, np.random.default_rng(seed))
        assert min(pi_tangle(psi).residuals) >= -1e-10

    @pytest.mark.parametrize("kind", NOISY_KINDS)
    def test_ckw_lower_bound_on_channels(self, kind):
        for kt in GRID:
            rho = channel_state(ChannelParams(kind, kt))
            assert min(ckw_residual_lower_bound(rho, q) for q in range(3)) >= -1e-10


class TestClosedForms:
    def test_thresholds(self):
        assert MU1_X == pytest.approx(0.0233899, abs=1e-7)
        assert MU2_X == pytest.approx(0.101366, abs=1e-6)
        assert x_weight(MU1_X) == pytest.approx(X1)
        assert x_weight(MU2_X) == pytest.approx(X0)

    def test_z(self):
        for kt in GRID:
            assert three_tangle_closed("z", kt) == pytest.approx(math.exp(-12 * kt), abs=1e-15)

    def test_x_pieces(self):
        assert three_tangle_closed("x", 0.0) == pytest.approx(1.0)
        assert three_tangle_closed("x", MU2_X) == pytest.approx(0.0, abs=1e-12)
        assert three_tangle_closed("x", 0.3) == 0.0
        assert alpha_one_x(X0) == pytest.approx(0.0, abs=1e-12)
        assert alpha_two_x(X1) == pytest.approx(alpha_one_x(X1), abs=1e-14)

    def test_x1_is_tangent_point(self):
        # the line through (1, 1) touches alpha_one_x at x1
        slope = (1 - alpha_one_x(X1)) / (1 - X1)
        h = 1e-6
        deriv = (alpha_one_x(X1 + h) - alpha_one_x(X1 - h)) / (2 * h)
        assert deriv == pytest.approx(slope, abs=1e-6)

    def test_x_family_convex_above_x0(self):
        xs = np.linspace(X0, 1, 501)
        vals = np.array([x_family_tangle(x) for x in xs])
        assert np.all(np.diff(vals, 2) >= -1e-12)

    def test_bad_kinds(self):
        with pytest.raises(ValueError, match="z, x"):
            three_tangle_closed("y", 0.1)
        with pytest.raises(ValueError, match="y, isotropic"):
            three_tangle_upper_bound("x", 0.1)
        with pytest.raises(ValueError):
            three_tangle_closed("z", -1.0)

    @pytest.mark.parametrize("kt", GRID)
    def test_y_split_reconstructs(self, kt):
        xi, y1, y2 = y_split(kt)
        rho = xi * pi_family(1, y1) + (1 - xi) * pi_family(2, y2)
        np.testing.assert_allclose(rho, channel_state(ChannelParams(NoiseKind.Y, kt)), atol=1e-13)

    @pytest.mark.parametrize("kt", GRID)
    def test_iso_split_reconstructs(self, kt):
        zeta, s1, s2 = iso_split(kt)
        assert np.trace(s1).real == pytest.approx(1.0) and np.trace(s2).real == pytest.approx(1.0)
        np.testing.assert_allclose(zeta * s1 + (1 - zeta) * s2, channel_state(ChannelParams(NoiseKind.ISOTROPIC, kt)), atol=1e-13)

    def test_upper_bounds_at_zero(self):
        assert three_tangle_upper_bound("y", 0.0) == pytest.approx(1.0)
        assert three_tangle_upper_bound("isotropic", 0.0) == pytest.approx(1.0)

    def test_isotropic_bound_exceeds_pi_tangle(self):
        for kt in np.linspace(0.01, 1, 50):
            assert three_tangle_upper_bound("isotropic", kt) > pi_tangle_closed(ChannelParams(NoiseKind.ISOTROPIC, kt))


class TestDecompositions:
    @pytest.mark.parametrize("kind", ["z", "x"])
    @pytest.mark.parametrize("kt", GRID)
    def test_reconstruct_and_attain(self, kind, kt):
        e = optimal_decomposition(kind, kt)
        assert e.reconstruction_error(channel_state(ChannelParams(NoiseKind.parse(kind), kt))) < 1e-9
        assert average_tangle(e) == pytest.approx(three_tangle_closed(kind, kt), abs=1e-12)

    def test_rejects_y(self):
        with pytest.raises(ValueError):
            optimal_decomposition("y", 0.1)

    def test_ensemble_validation(self):
        with pytest.raises(ValueError):
            Ensemble([0.5, 0.6], np.eye(2))
        with pytest.raises(ValueError):
            Ensemble([1.0], np.array([[1.0, 1.0]]))
        with pytest.raises(ValueError):
            Ensemble([1.0], np.eye(2))

    def test_mix_drops_zero_weights(self):
        g = Ensemble([1.0], ghz_basis(1)[None, :])
        e = Ensemble.mix((1.0, g), (0.0, g))
        assert len(e) == 1


class TestZeroTangleMixture:
    def test_report(self):
        rep = zero_tangle_suite()
        assert rep.passed
        assert rep.grid_points == 144

    @given(st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi))
    def test_j_closed_form(self, t1, t2):
        assert three_tangle_pure(j_state(t1, t2)) == pytest.approx(j_tangle_closed(t1, t2), abs=1e-10)

    def test_j_zero_pairs(self):
        for a, b in tangles.J_ZERO_PAIRS:
            assert three_tangle_pure(j_state(a, b)) < 1e-12

    def test_mixture(self):
        mix = tangles.pi_ghz_ensemble()
        np.testing.assert_allclose(mix.density_matrix(), tangles.pi_ghz(), atol=1e-12)
