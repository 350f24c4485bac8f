"""Entanglement measures for two- and three-qubit states.

Covers the Wootters concurrence, global and pairwise negativities, the
pure-state three-tangle from the amplitude hyperdeterminant, the pi-tangle,
and the closed-form three-tangles, upper bounds and decompositions for the
noisy GHZ channels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelParams, NoiseKind, channel_state, iso_p, x_weight, y_plus_minus, z_weight
from .qmat import NEGATIVE_TOL, SY, dm, herm_eig, kron, partial_trace, partial_transpose, psd_sqrt, trace_norm
from .states import ghz_basis, ghz_projector

# thresholds of the closed forms
X0 = 0.75
X1 = (2.0 + math.sqrt(3.0)) / 4.0
X_STAR = (1.0 + 2 ** (1 / 3) + 4 ** (1 / 3)) / 4.0
MU1_X = -0.25 * math.log((4.0 * X1 - 1.0) / 3.0)
MU2_X = -0.25 * math.log(2.0 / 3.0)
NU1_Y = -0.5 * math.log(math.sqrt(3.0) - 1.0)
NU2_Y = 0.5 * math.log(2.0)
Y_STAR = float(np.log((1.0 + np.cbrt(19 + 3 * math.sqrt(33)) + np.cbrt(19 - 3 * math.sqrt(33))) / 3.0))
I_STAR = float(0.25 * np.log((np.cbrt(54 + 3 * math.sqrt(321)) + np.cbrt(54 - 3 * math.sqrt(321))) / 3.0))

_SYSY = kron(SY, SY)
# eigenvalues below this fraction of the largest count as outside the support
SUPPORT_TOL = 1e-13


@dataclass(frozen=True)
class Ensemble:
    """Pure-state decomposition ``sum_i p_i |psi_i><psi_i|``.

    ``states`` has one normalized state vector per row.
    """

    probabilities: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float).ravel()
        s = np.atleast_2d(np.asarray(self.states, dtype=complex))
        if p.shape[0] != s.shape[0]:
            raise ValueError("probabilities and states differ in length")
        if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-10:
            raise ValueError("probabilities must be non-negative and sum to 1")
        norms = np.linalg.norm(s, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-10):
            raise ValueError("ensemble members must be unit vectors")
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "states", s)

    def __len__(self) -> int:
        return len(self.probabilities)

    def density_matrix(self) -> np.ndarray:
        s = self.states
        return (s.T * self.probabilities) @ s.conj()

    def reconstruction_error(self, target: np.ndarray) -> float:
        return float(np.linalg.norm(self.density_matrix() - target))

    @classmethod
    def mix(cls, *parts: tuple[float, "Ensemble"]) -> "Ensemble":
        """Convex combination of ensembles, dropping zero-weight members."""
        probs, states = [], []
        for w, e in parts:
            probs.append(w * e.probabilities)
            states.append(e.states)
        p = np.concatenate(probs)
        s = np.concatenate(states)
        keep = p > 0
        return cls(p[keep], s[keep])


@dataclass(frozen=True)
class TangleBreakdown:
    global_negativities: tuple[float, float, float]
    pairwise: tuple[float, float, float]
    residuals: tuple[float, float, float]
    pi_tangle: float

    @property
    def one_tangles(self) -> tuple[float, float, float]:
        return tuple(n * n for n in self.global_negativities)


# -- two-qubit and bipartite measures -----------------------------------------


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The lambdas (square roots of the eigenvalues of ``sqrt(rho) rho~ sqrt(rho)``)
    are computed as the singular values of ``F^T (sy x sy) F`` with
    ``rho = F F^dagger`` the spectral factor on the numerical support of
    ``rho``.  Taking square roots of near-zero eigenvalues would otherwise turn
    round-off of order 1e-16 into errors of order 1e-8 for rank-deficient
    states.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 matrix, got {rho.shape}")
    w, v = herm_eig(rho)
    if w[0] < -NEGATIVE_TOL:
        raise ValueError(f"rho has a negative eigenvalue {w[0]:.3e}")
    keep = w > SUPPORT_TOL * max(w[-1], 1.0)
    f = v[:, keep] * np.sqrt(w[keep])
    t = f.T @ _SYSY @ f
    r = t.shape[0]
    if r == 0:
        return 0.0
    # singular values of t are the positive eigenvalues of the Hermitian dilation
    dilation = np.block([[np.zeros((r, r)), t], [t.conj().T, np.zeros((r, r))]])
    lam = np.zeros(4)
    lam[:r] = np.clip(herm_eig(dilation).eigenvalues[::-1][:r], 0.0, None)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def negativity(rho: np.ndarray, part: int | tuple[int, int]) -> float:
    """``||rho^T|| - 1``.

    An integer ``part`` transposes that qubit of the full state (global
    negativity).  A pair ``(i, j)`` first reduces to qubits ``i, j`` and then
    transposes qubit ``i``, giving the two-qubit negativity ``N_ij``.
    """
    rho = np.asarray(rho, dtype=complex)
    if isinstance(part, (int, np.integer)):
        pt = partial_transpose(rho, int(part))
    else:
        i, j = part
        reduced = partial_trace(rho, keep=[i, j])
        pt = partial_transpose(reduced, 0 if i < j else 1)
    return max(0.0, trace_norm(pt) - 1.0)


def one_tangle(psi: np.ndarray, qubit: int = 0) -> float:
    """``4 det rho_q`` for a pure state, the squared concurrence of ``q`` with the rest."""
    r = partial_trace(dm(psi), keep=[qubit])
    return float(4.0 * np.real(r[0, 0] * r[1, 1] - r[0, 1] * r[1, 0]))


def ckw_residual(psi: np.ndarray, qubit: int = 0) -> float:
    """``C^2_{q(rest)} - sum of squared pairwise concurrences`` for a 3-qubit pure state."""
    rho = dm(psi)
    others = [k for k in range(3) if k != qubit]
    pairs = sum(concurrence(partial_trace(rho, keep=[qubit, k])) ** 2 for k in others)
    return one_tangle(psi, qubit) - pairs


def ckw_residual_lower_bound(rho: np.ndarray, qubit: int = 0) -> float:
    """Lower bound on the CKW residual of a mixed 3-qubit state.

    The convex-roof concurrence of a qubit against the rest dominates the
    global negativity for qubit-qudit splits, so ``N_q^2`` stands in for the
    one-tangle.
    """
    others = [k for k in range(3) if k != qubit]
    pairs = sum(concurrence(partial_trace(rho, keep=[qubit, k])) ** 2 for k in others)
    return negativity(rho, qubit) ** 2 - pairs


# -- three-qubit measures ----------------------------------------------------


def three_tangle_pure(psi: np.ndarray) -> np.ndarray | float:
    """Three-tangle ``4 |d1 - 2 d2 + 4 d3|`` from the amplitudes ``a_ijk``.

    Accepts a single 8-vector or a stack of them with shape ``(..., 8)``.
    """
    a = np.asarray(psi, dtype=complex)
    a = a.reshape(a.shape[:-1] + (2, 2, 2))
    a000, a001, a010, a011 = a[..., 0, 0, 0], a[..., 0, 0, 1], a[..., 0, 1, 0], a[..., 0, 1, 1]
    a100, a101, a110, a111 = a[..., 1, 0, 0], a[..., 1, 0, 1], a[..., 1, 1, 0], a[..., 1, 1, 1]
    d1 = (a000 * a111) ** 2 + (a001 * a110) ** 2 + (a010 * a101) ** 2 + (a100 * a011) ** 2
    p07, p34, p52, p61 = a000 * a111, a011 * a100, a101 * a010, a110 * a001
    d2 = p07 * p34 + p07 * p52 + p07 * p61 + p34 * p52 + p34 * p61 + p52 * p61
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    tau = 4.0 * np.abs(d1 - 2.0 * d2 + 4.0 * d3)
    return float(tau) if np.ndim(tau) == 0 else tau


def pi_tangle(rho: np.ndarray) -> TangleBreakdown:
    """Negativity-based pi-tangle with its one- and two-qubit ingredients."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (8,):
        rho = dm(rho)
    na, nb, nc = (negativity(rho, q) for q in range(3))
    nab, nac, nbc = negativity(rho, (0, 1)), negativity(rho, (0, 2)), negativity(rho, (1, 2))
    pa = na**2 - (nab**2 + nac**2)
    pb = nb**2 - (nab**2 + nbc**2)
    pc = nc**2 - (nac**2 + nbc**2)
    return TangleBreakdown((na, nb, nc), (nab, nac, nbc), (pa, pb, pc), (pa + pb + pc) / 3.0)


def _clipped_square(g: float) -> float:
    # (|g| - g)^2 / 64 == max(0, -g)^2 / 16
    return max(0.0, -g) ** 2 / 16.0


def pi_tangle_closed(channel: ChannelParams) -> float:
    kind, kt = channel.kind, channel.kappa_t
    if kind is NoiseKind.NONE:
        return 1.0
    if kind is NoiseKind.X:
        return math.exp(-8 * kt)
    if kind is NoiseKind.Z:
        return math.exp(-12 * kt)
    if kind is NoiseKind.Y:
        return _clipped_square(1 - 3 * math.exp(-2 * kt) - math.exp(-4 * kt) - math.exp(-6 * kt))
    return _clipped_square(1 - math.exp(-8 * kt) - 4 * math.exp(-12 * kt))


# -- X-channel curves ---------------------------------------------------------


def alpha_one_x(x: float) -> float:
    """Average tangle of the four-member phase ensemble of ``|X(x, ...)>``."""
    return x * x - (1 - x) ** 2 / 3 - 2 * x * (1 - x) - 8 * math.sqrt(3) / 9 * math.sqrt(x * (1 - x) ** 3)


def alpha_two_x(x: float, x1: float = X1) -> float:
    """Straight line from ``(x1, alpha_one_x(x1))`` to ``(1, 1)``."""
    return ((1 - x) * alpha_one_x(x1) + (x - x1)) / (1 - x1)


def x_family_tangle(x: float) -> float:
    """Three-tangle of ``x |GHZ,1><GHZ,1| + (1-x)/3 (|GHZ,3>,|GHZ,5>,|GHZ,7> projectors)``."""
    if x <= X0:
        return 0.0
    if x <= X1:
        return alpha_one_x(x)
    return alpha_two_x(x, X1)


def three_tangle_closed(kind: NoiseKind | str, kappa_t: float) -> float:
    """Exact three-tangle of the Z- and X-noise channels."""
    kind = NoiseKind.parse(kind)
    if kappa_t < 0:
        raise ValueError("kappa_t must be non-negative")
    if kind is NoiseKind.Z:
        return math.exp(-12 * kappa_t)
    if kind is NoiseKind.X:
        return x_family_tangle(x_weight(kappa_t))
    raise ValueError(f"no exact three-tangle for {kind.value!r}; valid kinds: z, x")


def y_split(kappa_t: float) -> tuple[float, float, float]:
    """``(xi, Y1, Y2)`` with ``eps_Y = xi Pi_1(Y1) + (1 - xi) Pi_2(Y2)``."""
    yp, ym = y_plus_minus(kappa_t)
    xi = yp * (yp**2 + 3 * ym**2) / 8
    return xi, yp**2 / (yp**2 + 3 * ym**2), ym**2 / (3 * yp**2 + ym**2)


def pi_family(which: int, y: float) -> np.ndarray:
    """``Pi_1(y)`` (GHZ 1,3,5,7) or ``Pi_2(y)`` (GHZ 2,4,6,8)."""
    ks = (1, 3, 5, 7) if which == 1 else (2, 4, 6, 8)
    P = ghz_projector
    return y * P(ks[0]) + (1 - y) / 3 * (P(ks[1]) + P(ks[2]) + P(ks[3]))


def iso_split(kappa_t: float) -> tuple[float, np.ndarray, np.ndarray]:
    """``(zeta, Sigma_1, Sigma_2)`` with ``eps_I = zeta Sigma_1 + (1 - zeta) Sigma_2``."""
    p = iso_p(kappa_t)
    zeta = (1 + 3 * p**2) / 4
    w = 0.5 + 2 * p**3 / (1 + 3 * p**2)
    sigma1 = w * ghz_projector(1) + (1 - w) * ghz_projector(2)
    sigma2 = np.eye(8, dtype=complex)
    sigma2[0, 0] = sigma2[7, 7] = 0.0
    return zeta, sigma1, sigma2 / 6.0


def three_tangle_upper_bound(kind: NoiseKind | str, kappa_t: float) -> float:
    """Constructive upper bounds on the Y- and isotropic-channel three-tangles."""
    kind = NoiseKind.parse(kind)
    if kappa_t < 0:
        raise ValueError("kappa_t must be non-negative")
    if kind is NoiseKind.Y:
        xi, y1, _ = y_split(kappa_t)
        return xi * x_family_tangle(y1)
    if kind is NoiseKind.ISOTROPIC:
        p = iso_p(kappa_t)
        return 4 * p**6 / (1 + 3 * p**2)
    raise ValueError(f"no upper bound defined for {kind.value!r}; valid kinds: y, isotropic")


# -- explicit decompositions --------------------------------------------------


def z_state(z: float, phi: float) -> np.ndarray:
    return math.sqrt(z) * ghz_basis(1) - np.exp(1j * phi) * math.sqrt(1 - z) * ghz_basis(2)


def x_state(x: float, phi1: float, phi2: float, phi3: float) -> np.ndarray:
    c = math.sqrt((1 - x) / 3)
    return (
        math.sqrt(x) * ghz_basis(1)
        - np.exp(1j * phi1) * c * ghz_basis(3)
        - np.exp(1j * phi2) * c * ghz_basis(5)
        - np.exp(1j * phi3) * c * ghz_basis(7)
    )


def j_state(theta1: float, theta2: float) -> np.ndarray:
    s = 1 / math.sqrt(3)
    return s * ghz_basis(3) - s * np.exp(1j * theta1) * ghz_basis(5) - s * np.exp(1j * theta2) * ghz_basis(7)


X_PHASES = ((0, 0, 0), (0, np.pi, np.pi), (np.pi, 0, np.pi), (np.pi, np.pi, 0))
J_ZERO_PAIRS = tuple(
    (a * np.pi / 3, b * np.pi / 3)
    for a, b in ((1, 2), (5, 4), (2, 1), (4, 5), (1, 5), (5, 1), (2, 4), (4, 2))
)


def j_tangle_closed(theta1: float, theta2: float) -> float:
    e1, e2 = np.exp(1j * theta1), np.exp(1j * theta2)
    return float(abs(1 - (e1 - e2) ** 2) * abs(1 - (e1 + e2) ** 2) / 9)


def x_phase_ensemble(x: float) -> Ensemble:
    return Ensemble(np.full(4, 0.25), np.array([x_state(x, *ph) for ph in X_PHASES]))


def pi_ghz_ensemble() -> Ensemble:
    """Equal mixture of eight zero-tangle ``|J>`` states reconstructing ``Pi_GHZ``."""
    return Ensemble(np.full(8, 0.125), np.array([j_state(a, b) for a, b in J_ZERO_PAIRS]))


def pi_ghz() -> np.ndarray:
    return (ghz_projector(3) + ghz_projector(5) + ghz_projector(7)) / 3


def optimal_decomposition(kind: NoiseKind | str, kappa_t: float) -> Ensemble:
    """Decomposition attaining the closed-form three-tangle of the Z or X channel."""
    kind = NoiseKind.parse(kind)
    if kind is NoiseKind.Z:
        z = z_weight(kappa_t)
        return Ensemble([0.5, 0.5], np.array([z_state(z, 0.0), z_state(z, np.pi)]))
    if kind is NoiseKind.X:
        x = x_weight(kappa_t)
        if x <= X0:
            return Ensemble.mix((x / X0, x_phase_ensemble(X0)), ((X0 - x) / X0, pi_ghz_ensemble()))
        if x <= X1:
            return x_phase_ensemble(x)
        ghz = Ensemble([1.0], ghz_basis(1)[None, :])
        return Ensemble.mix(((1 - x) / (1 - X1), x_phase_ensemble(X1)), ((x - X1) / (1 - X1), ghz))
    raise ValueError(f"no optimal decomposition for {kind.value!r}; valid kinds: z, x")


def average_tangle(e: Ensemble) -> float:
    keep = e.probabilities >= 1e-12
    return float(np.dot(e.probabilities[keep], three_tangle_pure(e.states[keep])))


# -- Pi_GHZ has zero three-tangle --------------------------------------------------


@dataclass(frozen=True)
class ZeroTangleReport:
    grid_points: int
    closed_form_max_error: float
    zero_pairs_max_tangle: float
    mixture_reconstruction_error: float
    mixture_average_tangle: float

    @property
    def passed(self) -> bool:
        return (
            self.closed_form_max_error < 1e-10
            and self.zero_pairs_max_tangle < 1e-12
            and self.mixture_reconstruction_error < 1e-12
            and self.mixture_average_tangle < 1e-12
        )


def zero_tangle_suite(grid: int = 12) -> ZeroTangleReport:
    """Check the ``|J(t1, t2)>`` tangle formula, its zeros, and the ``Pi_GHZ`` mixture."""
    angles = 2 * np.pi * np.arange(grid) / grid
    err = max(
        abs(three_tangle_pure(j_state(t1, t2)) - j_tangle_closed(t1, t2)) for t1 in angles for t2 in angles
    )
    zeros = max(three_tangle_pure(j_state(a, b)) for a, b in J_ZERO_PAIRS)
    mix = pi_ghz_ensemble()
    rec = float(np.max(np.abs(mix.density_matrix() - pi_ghz())))
    return ZeroTangleReport(grid * grid, float(err), float(zeros), rec, average_tangle(mix))


def channel_pi_tangle(channel: ChannelParams) -> TangleBreakdown:
    return pi_tangle(channel_state(channel))
