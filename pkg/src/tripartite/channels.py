"""Noisy GHZ channel states.

Two independent routes are provided: closed-form spectral decompositions of
the decohered GHZ state for each noise family, and a fixed-step RK4 integrator
for the Pauli Lindblad master equation they solve.  Noise acts on the three
GHZ qubits only, each with the same rate ``kappa`` and no Hamiltonian part.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .qmat import I2, SX, SY, SZ, kron
from .states import ghz_projector


class NoiseKind(enum.Enum):
    NONE = "none"
    X = "x"
    Y = "y"
    Z = "z"
    ISOTROPIC = "isotropic"

    @classmethod
    def parse(cls, value: "str | NoiseKind") -> "NoiseKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"i": "isotropic", "iso": "isotropic", "no": "none", "": "none"}
        key = aliases.get(key, key)
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown noise kind {value!r}; expected one of {[k.value for k in cls]}")


NOISY_KINDS = (NoiseKind.X, NoiseKind.Y, NoiseKind.Z, NoiseKind.ISOTROPIC)
ALL_KINDS = (NoiseKind.NONE,) + NOISY_KINDS


@dataclass(frozen=True)
class ChannelParams:
    kind: NoiseKind
    kappa_t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind.parse(self.kind))
        if not self.kappa_t >= 0.0:
            raise ValueError(f"kappa_t must be non-negative, got {self.kappa_t}")


def x_weight(kappa_t: float) -> float:
    return 0.25 * (1.0 + 3.0 * math.exp(-4.0 * kappa_t))


def y_plus_minus(kappa_t: float) -> tuple[float, float]:
    e = math.exp(-2.0 * kappa_t)
    return 1.0 + e, 1.0 - e


def z_weight(kappa_t: float) -> float:
    return 0.5 * (1.0 + math.exp(-6.0 * kappa_t))


def iso_p(kappa_t: float) -> float:
    return math.exp(-4.0 * kappa_t)


def channel_state(params: ChannelParams) -> np.ndarray:
    """8x8 density matrix of the GHZ state after the selected noise."""
    kind, kt = params.kind, params.kappa_t
    P = ghz_projector
    if kind is NoiseKind.NONE:
        return P(1)
    if kind is NoiseKind.X:
        x = x_weight(kt)
        return x * P(1) + (1.0 - x) / 3.0 * (P(3) + P(5) + P(7))
    if kind is NoiseKind.Y:
        yp, ym = y_plus_minus(kt)
        return (
            yp**3 / 8 * P(1)
            + ym**3 / 8 * P(2)
            + yp * ym**2 / 8 * (P(3) + P(5) + P(7))
            + yp**2 * ym / 8 * (P(4) + P(6) + P(8))
        )
    if kind is NoiseKind.Z:
        z = z_weight(kt)
        return z * P(1) + (1.0 - z) * P(2)
    p = iso_p(kt)
    outer = np.eye(8, dtype=complex)
    outer[0, 0] = outer[7, 7] = 0.0
    return (
        (1 + 3 * p**2 + 4 * p**3) / 8 * P(1)
        + (1 + 3 * p**2 - 4 * p**3) / 8 * P(2)
        + (1 - p**2) / 8 * outer
    )


_PAULI = {"x": SX, "y": SY, "z": SZ}
_AXES = {
    NoiseKind.NONE: (),
    NoiseKind.X: ("x",),
    NoiseKind.Y: ("y",),
    NoiseKind.Z: ("z",),
    NoiseKind.ISOTROPIC: ("x", "y", "z"),
}


def _embed(op: np.ndarray, qubit: int, n: int) -> np.ndarray:
    return kron(*[op if q == qubit else I2 for q in range(n)])


@dataclass(frozen=True)
class LindbladSpec:
    """Pauli dissipators ``sqrt(rate) sigma_alpha`` on every qubit."""

    kind: NoiseKind
    rate: float = 1.0
    qubit_count: int = 3
    operators: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", NoiseKind.parse(self.kind))
        ops = tuple(
            math.sqrt(self.rate) * _embed(_PAULI[a], q, self.qubit_count)
            for q in range(self.qubit_count)
            for a in _AXES[self.kind]
        )
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return 2**self.qubit_count


def lindblad_generator(rho: np.ndarray, spec: LindbladSpec) -> np.ndarray:
    """``d rho / dt`` for the dissipator-only Lindblad equation."""
    rho = np.asarray(rho)
    if rho.shape != (spec.dim, spec.dim):
        raise ValueError(f"rho has shape {rho.shape}, spec expects {(spec.dim, spec.dim)}")
    out = np.zeros_like(rho, dtype=complex)
    for L in spec.operators:
        Ld = L.conj().T
        LdL = Ld @ L
        out += L @ rho @ Ld - 0.5 * (LdL @ rho + rho @ LdL)
    return out


def default_steps(kappa_t: float) -> int:
    return math.ceil(2000 * kappa_t) + 1


def lindblad_evolve(
    rho0: np.ndarray, spec: LindbladSpec, t: float, steps: int | None = None
) -> np.ndarray:
    """Integrate the master equation from ``rho0`` for time ``t`` with RK4.

    ``steps`` defaults to ``ceil(2000 * rate * t) + 1``.
    """
    if steps is None:
        steps = default_steps(spec.rate * t)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rho = np.array(rho0, dtype=complex)
    h = t / steps
    f = lambda r: lindblad_generator(r, spec)  # noqa: E731
    for _ in range(steps):
        k1 = f(rho)
        k2 = f(rho + 0.5 * h * k1)
        k3 = f(rho + 0.5 * h * k2)
        k4 = f(rho + h * k3)
        rho = rho + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return rho


def evolve_channel(params: ChannelParams, steps: int | None = None) -> np.ndarray:
    """Numerically decohere ``|GHZ,1>`` with unit rate for time ``kappa_t``."""
    spec = LindbladSpec(params.kind, rate=1.0)
    return lindblad_evolve(ghz_projector(1), spec, params.kappa_t, steps)
