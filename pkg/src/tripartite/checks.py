"""Invariant suites behind ``tripartite verify``.

Each suite returns a list of :class:`Check` records holding the largest
observed error and the tolerance it is held to.  Suites are deterministic in
their seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import convexroof, fidelity, protocol, qmat, tangles
from .channels import (
    ALL_KINDS,
    NOISY_KINDS,
    ChannelParams,
    LindbladSpec,
    NoiseKind,
    channel_state,
    evolve_channel,
    lindblad_generator,
)
from .states import BlochAngles, bell_states, bloch_dm, ghz_projector, ghz_state, w_state

KT_GRID = (0.0, 0.0234, 0.05, 0.101, 0.146, 0.156, 0.25, 0.347, 0.5, 0.609, 1.0)
NU_GRID = (0.0, np.pi / 8, np.pi / 4, 3 * np.pi / 8)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error) and self.error <= self.tol)

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.suite}: {self.name}  max_err={self.error:.3e}  tol={self.tol:.1e}"


def _shortfall(values) -> float:
    """How far the smallest value dips below zero (0 if none do)."""
    return float(max(0.0, -np.min(values)))


def _random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def _random_angles(rng: np.random.Generator, count: int) -> list[BlochAngles]:
    theta = np.arccos(rng.uniform(-1, 1, count))
    phi = rng.uniform(0, 2 * np.pi, count)
    return [BlochAngles(float(t), float(p)) for t, p in zip(theta, phi)]


def qmat_suite(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    recon, ortho, spectrum = 0.0, 0.0, 0.0
    for dim in (2, 3, 4, 8, 16, 32, 64):
        h = _random_hermitian(dim, rng)
        w, v = qmat.herm_eig(h)
        recon = max(recon, np.linalg.norm(v @ np.diag(w) @ v.conj().T - h))
        ortho = max(ortho, np.max(np.abs(v.conj().T @ v - np.eye(dim))))
        spectrum = max(spectrum, np.max(np.abs(w - np.linalg.eigvalsh(h))))

    ptrace = 0.0
    for _ in range(5):
        rho = qmat.random_density_matrix(8, rng)
        t = rho.reshape(2, 2, 2, 2, 2, 2)
        oracle = np.einsum("abcdbf->acdf", t).reshape(4, 4)
        ptrace = max(ptrace, np.max(np.abs(qmat.partial_trace(rho, keep=[0, 2]) - oracle)))

    involution = 0.0
    for _ in range(5):
        rho = qmat.random_density_matrix(8, rng)
        for q in range(3):
            twice = qmat.partial_transpose(qmat.partial_transpose(rho, q), q)
            involution = max(involution, np.max(np.abs(twice - rho)))

    phi_plus = qmat.dm(bell_states()[0])
    tn_bell = abs(qmat.trace_norm(qmat.partial_transpose(phi_plus, 0)) - 2.0)
    tn_ghz = abs(qmat.trace_norm(qmat.partial_transpose(ghz_projector(1), 0)) - 2.0)

    sqrt_err = 0.0
    for dim in (2, 4, 8):
        rho = qmat.random_density_matrix(dim, rng)
        s = qmat.psd_sqrt(rho)
        sqrt_err = max(sqrt_err, np.max(np.abs(s @ s - rho)))

    tn_bound = 0.0
    for _ in range(10):
        h = _random_hermitian(8, rng)
        tn_bound = max(tn_bound, abs(np.trace(h)) - qmat.trace_norm(h))

    s = "qmat"
    return [
        Check(s, "herm_eig reconstruction (Frobenius, dims 2..64)", recon, 1e-10),
        Check(s, "herm_eig eigenvectors orthonormal", ortho, 1e-10),
        Check(s, "herm_eig eigenvalues vs LAPACK", spectrum, 1e-9),
        Check(s, "partial_trace vs index-sum oracle", ptrace, 1e-14),
        Check(s, "partial_transpose is an involution", involution, 0.0),
        Check(s, "trace norm of transposed Bell projector = 2", tn_bell, 1e-12),
        Check(s, "trace norm of transposed GHZ projector = 2", tn_ghz, 1e-12),
        Check(s, "psd_sqrt squares back", sqrt_err, 1e-9),
        Check(s, "trace norm >= |trace|", max(0.0, tn_bound), 1e-12),
    ]


def channels_suite(seed: int = 0) -> list[Check]:
    lindblad = 0.0
    for kind in NOISY_KINDS:
        for kt in (0.05, 0.2, 0.61):
            params = ChannelParams(kind, kt)
            lindblad = max(lindblad, np.linalg.norm(evolve_channel(params) - channel_state(params)))

    valid_eigs, trace_err, purity_rise = 0.0, 0.0, 0.0
    for kind in ALL_KINDS:
        purities = []
        for kt in (0.0, 0.05, 0.1, 0.25, 0.5, 1.0):
            rho = channel_state(ChannelParams(kind, kt))
            valid_eigs = max(valid_eigs, _shortfall(qmat.eigvalsh(rho)))
            trace_err = max(trace_err, abs(np.trace(rho).real - 1))
            purities.append(np.trace(rho @ rho).real)
        purity_rise = max(purity_rise, float(np.max(np.diff(purities), initial=0.0)))

    rng = np.random.default_rng(seed)
    gen_trace = 0.0
    for kind in NOISY_KINDS:
        spec = LindbladSpec(kind)
        rho = qmat.random_density_matrix(8, rng)
        gen_trace = max(gen_trace, abs(np.trace(lindblad_generator(rho, spec))))
    fixed = np.max(np.abs(lindblad_generator(np.eye(8) / 8, LindbladSpec(NoiseKind.Z))))

    s = "channels"
    return [
        Check(s, "RK4 vs closed form, all kinds, kt in {0.05, 0.2, 0.61} (Frobenius)", lindblad, 1e-6),
        Check(s, "channel states PSD on grid", valid_eigs, 1e-12),
        Check(s, "channel states unit trace on grid", trace_err, 1e-12),
        Check(s, "purity non-increasing in kt", max(0.0, purity_rise), 1e-12),
        Check(s, "generator is traceless", gen_trace, 1e-12),
        Check(s, "maximally mixed state is a dephasing fixed point", fixed, 1e-15),
    ]


def protocol_suite(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    angles = _random_angles(rng, 4)
    nus = rng.uniform(0, np.pi / 2, 2)
    p_err, q_err, psd, trace_err = 0.0, 0.0, 0.0, 0.0
    for kind in ALL_KINDS:
        for kt in (0.0, 0.1, 0.5):
            ch = ChannelParams(kind, kt)
            for a in angles:
                for nu in nus:
                    for r in protocol.run_protocol(a, ch, nu):
                        p_err = max(p_err, abs(r.p_m - 0.25))
                        q_err = max(q_err, abs(r.q_mn - protocol.q_closed(a, ch, nu, r.m, r.n)))
                        psd = max(psd, _shortfall(qmat.eigvalsh(r.tau_mn)))
                        trace_err = max(trace_err, abs(np.trace(r.tau_mn).real - 1))

    ident = 0.0
    for a in angles:
        rho_in = bloch_dm(a)
        for r in protocol.run_protocol(a, ChannelParams(NoiseKind.NONE), np.pi / 4):
            ident = max(ident, np.max(np.abs(r.tau_mn - rho_in)))

    linear = 0.0
    ch = ChannelParams(NoiseKind.Y, 0.3)
    maps = protocol.ResponseMaps(ch, 0.4)
    for a in angles:
        rho_in = bloch_dm(a)
        out = maps.apply(rho_in)
        for r in protocol.run_protocol(a, ch, 0.4):
            linear = max(linear, np.max(np.abs(out[r.m - 1, r.n - 1] - r.weight * r.tau_mn)))

    s = "protocol"
    return [
        Check(s, "P_m = 1/4 for all kinds, kt in {0, 0.1, 0.5}", p_err, 1e-12),
        Check(s, "q_mn matches the closed forms", q_err, 1e-10),
        Check(s, "Charlie states PSD", psd, 1e-10),
        Check(s, "Charlie states unit trace", trace_err, 1e-12),
        Check(s, "noiseless nu = pi/4 is the identity channel", ident, 1e-12),
        Check(s, "linear branch maps agree with the branch pipeline", linear, 1e-12),
    ]


def fidelity_suite(seed: int = 0) -> list[Check]:
    kts = (0.0, 0.05, 0.2, 0.61, 1.0)
    c_err, b_err, bt_err = 0.0, 0.0, 0.0
    probe = BlochAngles(1.1, 0.7)
    for kind in ALL_KINDS:
        for kt in kts:
            ch = ChannelParams(kind, kt)
            for nu in NU_GRID:
                c_err = max(c_err, abs(fidelity.charlie_average(ch, nu) - fidelity.charlie_average_closed(ch, nu)))
                bt_err = max(bt_err, abs(fidelity.bob_fidelities(probe, ch, nu).average - 0.5))
                for m in (1, 2, 3, 4):
                    avg = fidelity.bob_fidelities(probe, ch, nu, m).average
                    b_err = max(b_err, abs(avg - fidelity.bob_average_closed(ch, nu, m)))

    rng = np.random.default_rng(seed)
    pc_err, pb_err = 0.0, 0.0
    for a in _random_angles(rng, 6):
        nu = float(rng.uniform(0, np.pi / 2))
        for kind in ALL_KINDS:
            ch = ChannelParams(kind, 0.3)
            pc_err = max(pc_err, abs(fidelity.charlie_pointwise(a, ch, nu) - fidelity.charlie_pointwise_closed(a, ch, nu)))
            for m in (1, 2, 3, 4):
                pb = fidelity.bob_pointwise_protocol(a, ch, nu, m)
                pb_err = max(pb_err, abs(pb - fidelity.bob_pointwise_closed(a, ch, nu, m)))

    none = ChannelParams(NoiseKind.NONE)
    perfect = abs(fidelity.charlie_average(none, np.pi / 4) - 1.0)
    extremes = max(
        abs(fidelity.bob_fidelities(probe, none, 0.0, 1).average - 2 / 3),
        abs(fidelity.bob_fidelities(probe, none, np.pi / 4, 1).average - 0.5),
    )
    quad = abs(fidelity.sphere_average(lambda t, p: np.sin(t) ** 2, vectorized=True) - 2 / 3)

    s = "fidelity"
    return [
        Check(s, "Charlie sphere average vs closed forms (5 kinds x 5 kt x 4 nu)", c_err, 1e-7),
        Check(s, "Bob conditional averages vs closed forms", b_err, 1e-7),
        Check(s, "Bob total fidelity = 1/2", bt_err, 1e-10),
        Check(s, "Charlie pointwise vs closed forms", pc_err, 1e-10),
        Check(s, "Bob conditional pointwise vs reconciled closed form", pb_err, 1e-10),
        Check(s, "noiseless nu = pi/4 gives average fidelity 1", perfect, 1e-10),
        Check(s, "noiseless Bob extremes 2/3 and 1/2", extremes, 1e-10),
        Check(s, "quadrature integrates sin^2 theta to 2/3", quad, 1e-12),
    ]


def tangles_suite(seed: int = 0) -> list[Check]:
    table, pairwise, ckw, mono = 0.0, 0.0, [], []
    for kind in NOISY_KINDS:
        for kt in KT_GRID:
            ch = ChannelParams(kind, kt)
            rho = channel_state(ch)
            br = tangles.pi_tangle(rho)
            table = max(table, abs(br.pi_tangle - tangles.pi_tangle_closed(ch)))
            pairwise = max(pairwise, max(br.pairwise))
            mono.extend(br.residuals)
            ckw.extend(tangles.ckw_residual_lower_bound(rho, q) for q in range(3))

    rng = np.random.default_rng(seed)
    hyper = 0.0
    for _ in range(200):
        psi = qmat.random_pure_state(8, rng)
        residual = tangles.ckw_residual(psi, 0)
        hyper = max(hyper, abs(tangles.three_tangle_pure(psi) - residual))
        ckw.extend(tangles.ckw_residual(psi, q) for q in range(3))
        mono.extend(tangles.pi_tangle(qmat.dm(psi)).residuals)

    z_eq = max(
        abs(tangles.three_tangle_closed(NoiseKind.Z, kt) - tangles.pi_tangle_closed(ChannelParams(NoiseKind.Z, kt)))
        for kt in KT_GRID
    )
    x1 = tangles.X1
    x_cont = abs(tangles.alpha_two_x(x1) - tangles.alpha_one_x(x1))
    x_curve = np.array([tangles.three_tangle_closed(NoiseKind.X, kt) for kt in np.linspace(0, 0.2, 401)])

    decomp_rec, decomp_val = 0.0, 0.0
    for kind in (NoiseKind.Z, NoiseKind.X):
        for kt in KT_GRID:
            e = tangles.optimal_decomposition(kind, kt)
            decomp_rec = max(decomp_rec, e.reconstruction_error(channel_state(ChannelParams(kind, kt))))
            decomp_val = max(decomp_val, abs(tangles.average_tangle(e) - tangles.three_tangle_closed(kind, kt)))

    landmarks = max(
        abs(tangles.three_tangle_pure(ghz_state()) - 1),
        abs(tangles.three_tangle_pure(w_state())),
        abs(tangles.pi_tangle(qmat.dm(ghz_state())).pi_tangle - 1),
        abs(tangles.pi_tangle(qmat.dm(w_state())).pi_tangle - 4 * (math.sqrt(5) - 1) / 9),
    )

    app = tangles.zero_tangle_suite()

    s = "tangles"
    return [
        Check(s, "pi-tangle of channel states vs closed forms", table, 1e-8),
        Check(s, "pairwise negativities vanish for channel states", pairwise, 1e-10),
        Check(s, "CKW residuals non-negative", _shortfall(ckw), 1e-10),
        Check(s, "negativity monogamy residuals non-negative", _shortfall(mono), 1e-10),
        Check(s, "hyperdeterminant = one-tangle minus squared concurrences", hyper, 1e-8),
        Check(s, "Z three-tangle equals Z pi-tangle", z_eq, 1e-12),
        Check(s, "X three-tangle branches meet at x1", x_cont, 1e-12),
        Check(s, "X three-tangle non-increasing in kt", max(0.0, float(np.max(np.diff(x_curve)))), 1e-14),
        Check(s, "optimal decompositions reconstruct the channel", decomp_rec, 1e-9),
        Check(s, "optimal decompositions reach the closed forms", decomp_val, 1e-12),
        Check(s, "GHZ and W landmark values", landmarks, 1e-10),
        Check(s, "J-state tangle closed form on 12x12 grid", app.closed_form_max_error, 1e-10),
        Check(s, "eight J zero pairs have zero tangle", app.zero_pairs_max_tangle, 1e-12),
        Check(s, "eight-member mixture reconstructs Pi_GHZ", app.mixture_reconstruction_error, 1e-12),
    ]


def convexroof_suite(seed: int = 0) -> list[Check]:
    kw = dict(seed=seed)
    z = ChannelParams(NoiseKind.Z, 0.1)
    z_val = convexroof.minimize_tangle(channel_state(z), m=2, restarts=5, **kw).value
    z_err = abs(z_val - math.exp(-1.2))

    x_dead = convexroof.minimize_tangle(channel_state(ChannelParams(NoiseKind.X, 0.12)), m=8, restarts=2, **kw).value
    ghz = abs(convexroof.minimize_tangle(ghz_projector(1), m=3, restarts=2, **kw).value - 1)

    ub_excess = 0.0
    for kind, kt in ((NoiseKind.Y, 0.1), (NoiseKind.Y, 0.4), (NoiseKind.ISOTROPIC, 0.1), (NoiseKind.ISOTROPIC, 0.6)):
        val = convexroof.minimize_tangle(channel_state(ChannelParams(kind, kt)), restarts=2, **kw).value
        ub_excess = max(ub_excess, val - tangles.three_tangle_upper_bound(kind, kt))

    rho = channel_state(ChannelParams(NoiseKind.X, 0.05))
    small = convexroof.minimize_tangle(rho, m=4, restarts=3, **kw)
    wide = convexroof.minimize_tangle(
        rho, m=8, restarts=1, initial=[convexroof.pad_isometry(small.isometry, 8)], **kw
    )
    e = wide.ensemble
    below = tangles.three_tangle_closed(NoiseKind.X, 0.05) - wide.value

    s = "convexroof"
    return [
        Check(s, "Z channel, m = 2, reaches exp(-12 kt)", z_err, 1e-4),
        Check(s, "X channel beyond the last threshold reaches 0", x_dead, 1e-3),
        Check(s, "pure GHZ stays at 1", ghz, 1e-12),
        Check(s, "Y and isotropic bounded by the constructive decompositions", max(0.0, ub_excess), 1e-6),
        Check(s, "wider ensemble never worse (m = rank vs rank + 4)", max(0.0, wide.value - small.value), 0.0),
        Check(s, "no decomposition beats the X closed form", max(0.0, below), 1e-4),
        Check(s, "optimizer ensemble reconstructs rho", e.reconstruction_error(rho), 1e-9),
    ]


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "qmat": qmat_suite,
    "channels": channels_suite,
    "protocol": protocol_suite,
    "fidelity": fidelity_suite,
    "tangles": tangles_suite,
    "convexroof": convexroof_suite,
}


def run_suites(names: list[str], seed: int = 0) -> list[Check]:
    checks = []
    for name in names:
        checks.extend(SUITES[name](seed))
    return checks
