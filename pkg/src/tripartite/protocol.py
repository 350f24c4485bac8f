"""Three-party teleportation in density-matrix form.

Qubit layout (0-based): 0 holds Alice's unknown input, 1 is Alice's GHZ
share, 2 is Bob's and 3 is Charlie's.  Alice measures qubits (0, 1) in the
Bell basis, Bob measures qubit 2 in the ``nu``-rotated basis, and Charlie
applies a Pauli correction to qubit 3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelParams, NoiseKind, channel_state
from .qmat import I2, SX, SY, SZ, kron, partial_trace
from .states import BlochAngles, bell_projectors, bloch_dm, bob_projectors

DEGENERATE_TOL = 1e-14

_CORRECTIONS = {
    (1, 1): I2, (2, 2): I2,
    (1, 2): SZ, (2, 1): SZ,
    (3, 1): SX, (4, 2): SX,
    (3, 2): SY, (4, 1): SY,
}


class DegenerateOutcomeError(ValueError):
    """Raised when conditioning on an outcome of (numerically) zero probability."""


@dataclass(frozen=True)
class OutcomeRecord:
    m: int
    n: int
    p_m: float
    q_mn: float
    tau_mn: np.ndarray

    @property
    def weight(self) -> float:
        return self.p_m * self.q_mn


def correction(m: int, n: int) -> np.ndarray:
    try:
        return _CORRECTIONS[(m, n)]
    except KeyError:
        raise ValueError(f"invalid outcome pair (m={m}, n={n})") from None


def prepare_initial(angles: BlochAngles, channel: ChannelParams) -> np.ndarray:
    """16x16 initial state: input qubit tensored with the noisy GHZ channel."""
    return kron(bloch_dm(angles), channel_state(channel))


def _alice_op(m: int) -> np.ndarray:
    if m not in (1, 2, 3, 4):
        raise ValueError(f"Alice outcome must be 1..4, got {m}")
    return kron(bell_projectors()[m - 1], np.eye(4))


def _bob_op(nu: float, n: int) -> np.ndarray:
    if n not in (1, 2):
        raise ValueError(f"Bob outcome must be 1 or 2, got {n}")
    return kron(bob_projectors(nu)[n - 1], I2)


def alice_measure(state: np.ndarray, m: int) -> tuple[float, np.ndarray]:
    """Probability of Bell outcome ``m`` and the normalized post-measurement state."""
    if state.shape != (16, 16):
        raise ValueError(f"expected a 4-qubit state, got shape {state.shape}")
    M = _alice_op(m)
    unnorm = M @ state @ M.conj().T
    p = float(np.trace(unnorm).real)
    if p < DEGENERATE_TOL:
        raise DegenerateOutcomeError(f"Alice outcome {m} has probability {p:.3e}")
    return p, unnorm / p


def bob_measure(pi_34: np.ndarray, nu: float, n: int) -> tuple[float, np.ndarray]:
    """Probability of Bob's outcome ``n`` on the Bob-Charlie state and the post-state."""
    if pi_34.shape != (4, 4):
        raise ValueError(f"expected a 2-qubit state, got shape {pi_34.shape}")
    N = _bob_op(nu, n)
    unnorm = N @ pi_34 @ N.conj().T
    q = float(np.trace(unnorm).real)
    if q < DEGENERATE_TOL:
        raise DegenerateOutcomeError(f"Bob outcome {n} has probability {q:.3e}")
    return q, unnorm / q


def charlie_correct(chi: np.ndarray, m: int, n: int) -> np.ndarray:
    if chi.shape != (2, 2):
        raise ValueError(f"expected a 1-qubit state, got shape {chi.shape}")
    u = correction(m, n)
    return u @ chi @ u.conj().T


def run_protocol(
    angles: BlochAngles, channel: ChannelParams, nu: float, skip_degenerate: bool = False
) -> list[OutcomeRecord]:
    """Evaluate all eight (m, n) branches of the protocol for one input state.

    With ``skip_degenerate`` a branch whose Bob outcome cannot occur is left
    out instead of raising; it carries zero weight in any average.
    """
    initial = prepare_initial(angles, channel)
    records = []
    for m in (1, 2, 3, 4):
        p_m, post = alice_measure(initial, m)
        pi_34 = partial_trace(post, keep=[2, 3])
        for n in (1, 2):
            try:
                q_mn, pi_post = bob_measure(pi_34, nu, n)
            except DegenerateOutcomeError:
                if skip_degenerate:
                    continue
                raise
            chi = partial_trace(pi_post, keep=[1])
            records.append(OutcomeRecord(m, n, p_m, q_mn, charlie_correct(chi, m, n)))
    return records


def branch_operation(rho_in: np.ndarray, channel_rho: np.ndarray, nu: float, m: int, n: int) -> np.ndarray:
    """Unnormalized corrected Charlie state ``P_m q_mn tau_mn`` for branch (m, n).

    Linear in ``rho_in``, which need not be a valid state.
    """
    full = kron(rho_in, channel_rho)
    K = _bob_op(nu, n)
    K = kron(np.eye(4), K) @ _alice_op(m)
    chi = partial_trace(K @ full @ K.conj().T, keep=[3])
    u = correction(m, n)
    return u @ chi @ u.conj().T


class ResponseMaps:
    """Per-branch linear maps from the input qubit to Charlie's unnormalized state.

    Built by pushing the four matrix units ``|i><j|`` through
    :func:`branch_operation`; evaluating on many inputs is then a single
    contraction, which is what the sphere averages use.
    """

    def __init__(self, channel: ChannelParams, nu: float):
        self.channel = channel
        self.nu = nu
        rho_c = channel_state(channel)
        # maps[m-1, n-1] has shape (2, 2, 2, 2): out[a, b] = sum_ij maps[..., a, b, i, j] rho[i, j]
        maps = np.zeros((4, 2, 2, 2, 2, 2), dtype=complex)
        for i in range(2):
            for j in range(2):
                unit = np.zeros((2, 2), dtype=complex)
                unit[i, j] = 1.0
                for m in range(4):
                    for n in range(2):
                        maps[m, n, :, :, i, j] = branch_operation(unit, rho_c, nu, m + 1, n + 1)
        self.maps = maps

    def apply(self, rho_in: np.ndarray) -> np.ndarray:
        """Unnormalized Charlie states, shape ``(..., 4, 2, 2, 2)`` for input ``(..., 2, 2)``."""
        return np.einsum("mnabij,...ij->...mnab", self.maps, rho_in)

    def joint_probabilities(self, rho_in: np.ndarray) -> np.ndarray:
        """``P_m q_mn`` with shape ``(..., 4, 2)``."""
        out = self.apply(rho_in)
        return np.real(np.einsum("...aa->...", out))


# -- closed forms ---------------------------------------------------------------


def probability_decay(channel: ChannelParams) -> float:
    """Factor multiplying ``cos 2nu cos theta`` in Bob's outcome probabilities."""
    kind, kt = channel.kind, channel.kappa_t
    if kind in (NoiseKind.NONE, NoiseKind.Z):
        return 1.0
    if kind in (NoiseKind.X, NoiseKind.Y):
        return float(np.exp(-4 * kt))
    return float(np.exp(-8 * kt))


def q_closed(angles: BlochAngles, channel: ChannelParams, nu: float, m: int, n: int) -> float:
    """Closed-form ``q_mn``; ``P_m`` is always 1/4."""
    correction(m, n)
    sign = -1.0 if (m, n) in ((1, 1), (2, 1), (3, 2), (4, 2)) else 1.0
    return 0.5 * (1 + sign * np.cos(2 * nu) * np.cos(angles.theta) * probability_decay(channel))
