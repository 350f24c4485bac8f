"""Pure states and measurement operators used by the teleportation scheme."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .qmat import dm

_S2 = 1.0 / np.sqrt(2.0)

# (index of |ijk> with the + sign, index with the other sign, relative sign)
_GHZ_TABLE = {
    1: (0b000, 0b111, +1),
    2: (0b000, 0b111, -1),
    3: (0b001, 0b110, +1),
    4: (0b001, 0b110, -1),
    5: (0b010, 0b101, +1),
    6: (0b010, 0b101, -1),
    7: (0b011, 0b100, +1),
    8: (0b011, 0b100, -1),
}


class BlochAngles(NamedTuple):
    """Polar angle ``theta`` in [0, pi] and azimuth ``phi`` in [0, 2 pi)."""

    theta: float
    phi: float


def basis_state(bits: str) -> np.ndarray:
    """Computational basis ket from a bit string such as ``"010"``."""
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int(bits, 2)] = 1.0
    return psi


def bloch_pure(angles: BlochAngles) -> np.ndarray:
    """Single-qubit input state ``cos(t/2) e^{i p/2}|0> + sin(t/2) e^{-i p/2}|1>``."""
    theta, phi = angles
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta={theta} outside [0, pi]")
    if not 0.0 <= phi < 2.0 * np.pi:
        raise ValueError(f"phi={phi} outside [0, 2 pi)")
    return np.array(
        [np.cos(theta / 2) * np.exp(0.5j * phi), np.sin(theta / 2) * np.exp(-0.5j * phi)]
    )


def bloch_dm(angles: BlochAngles) -> np.ndarray:
    return dm(bloch_pure(angles))


def ghz_basis(k: int) -> np.ndarray:
    """The ``k``-th member (1..8) of the three-qubit GHZ basis."""
    if k not in _GHZ_TABLE:
        raise ValueError(f"GHZ basis index must be 1..8, got {k}")
    i, j, sign = _GHZ_TABLE[k]
    psi = np.zeros(8, dtype=complex)
    psi[i] = _S2
    psi[j] = sign * _S2
    return psi


def ghz_projector(k: int) -> np.ndarray:
    return dm(ghz_basis(k))


def ghz_state() -> np.ndarray:
    return ghz_basis(1)


def w_state() -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    psi[[0b001, 0b010, 0b100]] = 1.0 / np.sqrt(3.0)
    return psi


def bell_states() -> list[np.ndarray]:
    """``[Phi+, Phi-, Psi+, Psi-]`` on two qubits."""
    phi_p = np.array([1, 0, 0, 1], dtype=complex) * _S2
    phi_m = np.array([1, 0, 0, -1], dtype=complex) * _S2
    psi_p = np.array([0, 1, 1, 0], dtype=complex) * _S2
    psi_m = np.array([0, 1, -1, 0], dtype=complex) * _S2
    return [phi_p, phi_m, psi_p, psi_m]


def bell_projectors() -> list[np.ndarray]:
    """Alice's measurement operators ``M_1..M_4`` (rank-one Bell projectors)."""
    return [dm(b) for b in bell_states()]


def bob_basis(nu: float) -> tuple[np.ndarray, np.ndarray]:
    """``|mu+> = sin(nu)|0> + cos(nu)|1>`` and ``|mu-> = cos(nu)|0> - sin(nu)|1>``."""
    mu_p = np.array([np.sin(nu), np.cos(nu)], dtype=complex)
    mu_m = np.array([np.cos(nu), -np.sin(nu)], dtype=complex)
    return mu_p, mu_m


def bob_projectors(nu: float) -> tuple[np.ndarray, np.ndarray]:
    """Bob's measurement operators ``(N_1, N_2)`` for measurement angle ``nu``."""
    mu_p, mu_m = bob_basis(nu)
    return dm(mu_p), dm(mu_m)
