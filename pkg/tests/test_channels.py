import math

import numpy as np
import pytest

from tripartite import qmat
from tripartite.channels import (
    ALL_KINDS,
    NOISY_KINDS,
    ChannelParams,
    LindbladSpec,
    NoiseKind,
    channel_state,
    default_steps,
    evolve_channel,
    lindblad_evolve,
    lindblad_generator,
    x_weight,
    z_weight,
)
from tripartite.states import ghz_basis, ghz_projector

GRID = (0.0, 0.05, 0.1, 0.25, 0.5, 1.0)


def test_parse_aliases():
    assert NoiseKind.parse("I") is NoiseKind.ISOTROPIC
    assert NoiseKind.parse("Z") is NoiseKind.Z
    assert NoiseKind.parse(NoiseKind.Y) is NoiseKind.Y
    with pytest.raises(ValueError, match="unknown noise kind"):
        NoiseKind.parse("w")


def test_negative_kappa_t_rejected():
    with pytest.raises(ValueError):
        ChannelParams(NoiseKind.X, -0.1)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_noiseless_limit(kind):
    np.testing.assert_allclose(channel_state(ChannelParams(kind, 0.0)), ghz_projector(1), atol=1e-15)


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("kt", GRID)
def test_valid_density_matrix(kind, kt):
    rho = channel_state(ChannelParams(kind, kt))
    assert qmat.is_density_matrix(rho)
    assert qmat.eigvalsh(rho).min() >= -1e-12


def test_z_spectrum():
    kt = 0.3
    z = z_weight(kt)
    assert z == pytest.approx(0.5 * (1 + math.exp(-1.8)))
    rho = channel_state(ChannelParams(NoiseKind.Z, kt))
    np.testing.assert_allclose(qmat.eigvalsh(rho), [0] * 6 + [1 - z, z], atol=1e-14)
    g2 = ghz_basis(2)
    assert np.real(g2.conj() @ rho @ g2) == pytest.approx(1 - z)


def test_x_weight_value():
    assert x_weight(0.1) == pytest.approx(0.752740, abs=1e-6)
    rho = channel_state(ChannelParams(NoiseKind.X, 0.1))
    g1 = ghz_basis(1)
    assert np.real(g1.conj() @ rho @ g1) == pytest.approx((1 + 3 * math.exp(-0.4)) / 4)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_purity_non_increasing(kind):
    purity = [np.trace(np.linalg.matrix_power(channel_state(ChannelParams(kind, kt)), 2)).real for kt in GRID]
    assert np.all(np.diff(purity) <= 1e-12)


class TestGenerator:
    def test_maximally_mixed_fixed_point(self):
        np.testing.assert_allclose(lindblad_generator(np.eye(8) / 8, LindbladSpec(NoiseKind.Z)), 0, atol=1e-16)

    @pytest.mark.parametrize("kind", NOISY_KINDS)
    def test_traceless_and_hermitian(self, kind):
        rho = qmat.random_density_matrix(8, np.random.default_rng(0))
        out = lindblad_generator(rho, LindbladSpec(kind))
        assert abs(np.trace(out)) < 1e-13
        np.testing.assert_allclose(out, out.conj().T, atol=1e-13)

    def test_z_support_oracle(self):
        # sigma_z on any qubit maps |GHZ,1> to |GHZ,2>, so the generator stays in that block
        out = lindblad_generator(ghz_projector(1), LindbladSpec(NoiseKind.Z))
        g1, g2 = ghz_basis(1), ghz_basis(2)
        block = np.outer(g1, g1.conj()) + np.outer(g2, g2.conj())
        np.testing.assert_allclose(block @ out @ block, out, atol=1e-15)
        # three dephasers, each contributing rate 2 between the two states
        np.testing.assert_allclose(out, 3 * (ghz_projector(2) - ghz_projector(1)), atol=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            lindblad_generator(np.eye(4), LindbladSpec(NoiseKind.X))

    def test_dissipator_counts(self):
        assert len(LindbladSpec(NoiseKind.X).operators) == 3
        assert len(LindbladSpec(NoiseKind.ISOTROPIC).operators) == 9
        assert len(LindbladSpec(NoiseKind.NONE).operators) == 0


class TestEvolution:
    def test_zero_time(self):
        spec = LindbladSpec(NoiseKind.Y)
        np.testing.assert_allclose(lindblad_evolve(ghz_projector(1), spec, 0.0), ghz_projector(1))

    def test_step_rule(self):
        assert default_steps(0.0) == 1
        assert default_steps(0.2) == 401

    def test_rejects_zero_steps(self):
        with pytest.raises(ValueError):
            lindblad_evolve(ghz_projector(1), LindbladSpec(NoiseKind.Z), 0.1, steps=0)

    @pytest.mark.parametrize("kind", NOISY_KINDS)
    @pytest.mark.parametrize("kt", [0.05, 0.146, 0.2, 0.61])
    def test_matches_closed_form(self, kind, kt):
        params = ChannelParams(kind, kt)
        rho = evolve_channel(params)
        assert np.linalg.norm(rho - channel_state(params)) < 1e-6
        assert abs(np.trace(rho) - 1) < 1e-8

    def test_rate_scaling(self):
        # kappa = 2 for time 0.1 equals kappa t = 0.2
        rho = lindblad_evolve(ghz_projector(1), LindbladSpec(NoiseKind.X, rate=2.0), 0.1)
        np.testing.assert_allclose(rho, channel_state(ChannelParams(NoiseKind.X, 0.2)), atol=1e-9)
