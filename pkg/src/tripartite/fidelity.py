"""Charlie's and Bob's teleportation fidelities.

The numerical route always goes through the protocol branches; the closed
forms live in separate ``*_closed`` functions so that one can be checked
against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .channels import ChannelParams, NoiseKind
from .protocol import ResponseMaps, probability_decay, run_protocol
from .states import BlochAngles, bloch_dm, bob_projectors

GL_NODES = 32
PHI_NODES = 64


@dataclass(frozen=True)
class FidelityReport:
    pointwise: float
    average: float
    kind: NoiseKind
    nu: float
    kappa_t: float
    outcome: int | None = None


def outcome_fidelity(tau: np.ndarray, angles: BlochAngles) -> float:
    """``Tr[tau rho_in]`` for a single-qubit output state."""
    return float(np.real(np.trace(tau @ bloch_dm(angles))))


def charlie_pointwise(angles: BlochAngles, channel: ChannelParams, nu: float) -> float:
    """Branch-weighted Charlie fidelity for one input state."""
    rho_in = bloch_dm(angles)
    records = run_protocol(angles, channel, nu, skip_degenerate=True)
    return float(sum(r.weight * np.real(np.trace(r.tau_mn @ rho_in)) for r in records))


@lru_cache(maxsize=None)
def sphere_nodes() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Quadrature grid ``(theta, phi, weight)`` on the Bloch sphere; weights sum to 1.

    Gauss-Legendre in ``cos(theta)`` times the trapezoid rule in ``phi``.
    """
    u, w = np.polynomial.legendre.leggauss(GL_NODES)
    theta = np.arccos(u)
    phi = 2.0 * np.pi * np.arange(PHI_NODES) / PHI_NODES
    th, ph = np.meshgrid(theta, phi, indexing="ij")
    weights = np.outer(w / 2.0, np.full(PHI_NODES, 1.0 / PHI_NODES))
    return th.ravel(), ph.ravel(), weights.ravel()


def sphere_average(f: Callable, vectorized: bool = False) -> float:
    """Uniform average of ``f(theta, phi)`` over the Bloch sphere.

    With ``vectorized=True`` ``f`` is called once with arrays of node angles;
    otherwise once per node.
    """
    th, ph, w = sphere_nodes()
    if vectorized:
        vals = np.asarray(f(th, ph), dtype=float)
    else:
        vals = np.array([f(t, p) for t, p in zip(th, ph)], dtype=float)
    return float(np.dot(w, vals))


def _input_states(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    a = np.cos(theta / 2) * np.exp(0.5j * phi)
    b = np.sin(theta / 2) * np.exp(-0.5j * phi)
    psi = np.stack([a, b], axis=-1)
    return psi[..., :, None] * psi[..., None, :].conj()


def charlie_fidelity_grid(channel: ChannelParams, nu: float, theta, phi) -> np.ndarray:
    """Charlie fidelity at many inputs at once, via the protocol's linear branch maps."""
    rho = _input_states(np.asarray(theta, float), np.asarray(phi, float))
    out = ResponseMaps(channel, nu).apply(rho).sum(axis=(-4, -3))
    return np.real(np.einsum("...ab,...ba->...", out, rho))


def charlie_average(channel: ChannelParams, nu: float) -> float:
    """Sphere-averaged Charlie fidelity computed from the protocol."""
    maps = ResponseMaps(channel, nu)

    def f(theta, phi):
        rho = _input_states(theta, phi)
        out = maps.apply(rho).sum(axis=(-4, -3))
        return np.real(np.einsum("...ab,...ba->...", out, rho))

    return sphere_average(f, vectorized=True)


def _bob_fidelity_from_maps(maps: ResponseMaps, theta, phi, outcome: int | None) -> np.ndarray:
    rho = _input_states(theta, phi)
    joint = maps.joint_probabilities(rho)  # (..., 4, 2)
    n1, n2 = bob_projectors(maps.nu)
    overlaps = np.stack(
        [np.real(np.einsum("ab,...ba->...", n1, rho)), np.real(np.einsum("ab,...ba->...", n2, rho))],
        axis=-1,
    )
    if outcome is None:
        weights = joint.sum(axis=-2)
    else:
        if outcome not in (1, 2, 3, 4):
            raise ValueError(f"Alice outcome must be 1..4, got {outcome}")
        pm = joint[..., outcome - 1, :]
        weights = pm / pm.sum(axis=-1, keepdims=True)
    return np.sum(weights * overlaps, axis=-1)


def bob_fidelities(
    angles: BlochAngles, channel: ChannelParams, nu: float, m: int | None = None
) -> FidelityReport:
    """Bob's fidelity with the input, pointwise and sphere-averaged.

    Without ``m`` this is the total fidelity, weighting Bob's two projectors
    by their overall probabilities.  With ``m`` it is conditioned on Alice's
    broadcast outcome, weighting by ``q_m1`` and ``q_m2``.
    """
    maps = ResponseMaps(channel, nu)
    point = _bob_fidelity_from_maps(maps, np.array(angles.theta), np.array(angles.phi), m)
    avg = sphere_average(lambda t, p: _bob_fidelity_from_maps(maps, t, p, m), vectorized=True)
    return FidelityReport(float(point), avg, channel.kind, nu, channel.kappa_t, m)


def bob_pointwise_protocol(angles: BlochAngles, channel: ChannelParams, nu: float, m: int | None = None) -> float:
    """Bob's fidelity at one input straight from :func:`run_protocol` records."""
    records = run_protocol(angles, channel, nu, skip_degenerate=True)
    rho_in = bloch_dm(angles)
    overlap = [float(np.real(np.trace(N @ rho_in))) for N in bob_projectors(nu)]
    if m is None:
        return sum(r.weight * overlap[r.n - 1] for r in records)
    return sum(r.q_mn * overlap[r.n - 1] for r in records if r.m == m)


# -- closed forms -------------------------------------------------------------


def charlie_pointwise_closed(angles: BlochAngles, channel: ChannelParams, nu: float) -> float:
    theta, phi = angles
    kind, kt = channel.kind, channel.kappa_t
    s2 = np.sin(2 * nu)
    st2, ct2 = np.sin(theta) ** 2, np.cos(theta) ** 2
    if kind is NoiseKind.NONE:
        return 1 - 0.5 * (1 - s2) * st2
    if kind is NoiseKind.X:
        e = np.exp(-4 * kt)
        return 0.5 * ((1 + st2 * np.cos(phi) ** 2 * s2) + e * (ct2 + st2 * np.sin(phi) ** 2 * s2))
    if kind is NoiseKind.Y:
        return 0.5 * (
            1
            + np.exp(-2 * kt) * st2 * np.sin(phi) ** 2 * s2
            + np.exp(-4 * kt) * ct2
            + np.exp(-6 * kt) * st2 * np.cos(phi) ** 2 * s2
        )
    if kind is NoiseKind.Z:
        return 1 - 0.5 * (1 - s2 * np.exp(-6 * kt)) * st2
    return 0.5 * (1 + np.exp(-8 * kt) * ct2 + np.exp(-12 * kt) * st2 * s2)


def charlie_average_closed(channel: ChannelParams, nu: float) -> float:
    kind, kt = channel.kind, channel.kappa_t
    s2 = np.sin(2 * nu)
    if kind is NoiseKind.NONE:
        return (2 + s2) / 3
    if kind is NoiseKind.X:
        return ((3 + s2) + np.exp(-4 * kt) * (1 + s2)) / 6
    if kind is NoiseKind.Y:
        return (3 + np.exp(-2 * kt) * s2 + np.exp(-4 * kt) + np.exp(-6 * kt) * s2) / 6
    if kind is NoiseKind.Z:
        return (2 + np.exp(-6 * kt) * s2) / 3
    return (3 + np.exp(-8 * kt) + 2 * s2 * np.exp(-12 * kt)) / 6


def bob_total_closed() -> float:
    return 0.5


def bob_average_closed(channel: ChannelParams, nu: float, m: int) -> float:
    """Conditional average ``F_B^m``; ``(3 +- decay cos^2 2nu)/6`` with + for m = 1, 2."""
    if m not in (1, 2, 3, 4):
        raise ValueError(f"Alice outcome must be 1..4, got {m}")
    sign = 1.0 if m in (1, 2) else -1.0
    return (3 + sign * probability_decay(channel) * np.cos(2 * nu) ** 2) / 6


def bob_pointwise_closed(angles: BlochAngles, channel: ChannelParams, nu: float, m: int) -> float:
    """Conditional pointwise ``F_B^m``.

    ``1/2 +- (decay/2) cos(2nu) cos(theta) [cos(2nu) cos(theta) - sin(2nu) sin(theta) cos(phi)]``,
    which is the no-noise form with ``cos 2nu cos theta`` scaled by the channel decay.
    """
    if m not in (1, 2, 3, 4):
        raise ValueError(f"Alice outcome must be 1..4, got {m}")
    theta, phi = angles
    sign = 1.0 if m in (1, 2) else -1.0
    c, s = np.cos(2 * nu), np.sin(2 * nu)
    d = probability_decay(channel)
    return 0.5 + sign * 0.5 * d * c * np.cos(theta) * (c * np.cos(theta) - s * np.sin(theta) * np.cos(phi))


def bob_pointwise_cos2theta_form(angles: BlochAngles, channel: ChannelParams, nu: float, m: int) -> float:
    """Alternative X/Y/isotropic pointwise form with a ``cos 2theta`` factor and no ``phi``.

    Kept only so its mismatch with the protocol can be demonstrated; see
    :func:`bob_pointwise_closed` for the form the protocol produces.
    """
    theta, _ = angles
    sign = 1.0 if m in (1, 2) else -1.0
    c, s = np.cos(2 * nu), np.sin(2 * nu)
    d = probability_decay(channel)
    return 0.5 + sign * 0.5 * c * np.cos(2 * theta) * (c * np.cos(theta) - s * np.sin(theta)) * d


def max_charlie_average_over_nu(channel: ChannelParams) -> tuple[float, float]:
    """Maximize the numerically averaged Charlie fidelity over Bob's angle ``nu``."""
    from scipy.optimize import minimize_scalar

    res = minimize_scalar(
        lambda nu: -charlie_average(channel, nu), bounds=(0.0, np.pi / 2), method="bounded",
        options={"xatol": 1e-10},
    )
    return -float(res.fun), float(res.x)
