"""Dense complex linear algebra for small qubit operators.

Matrices are plain ``numpy`` complex arrays.  Qubits are indexed from 0 and
qubit 0 is the leftmost (most significant) tensor factor, so the basis state
``|ijk>`` of three qubits sits at row ``4*i + 2*j + k``.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
NEGATIVE_TOL = 1e-8
JACOBI_TOL = 1e-12
MAX_SWEEPS = 100

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class EigDecomposition(NamedTuple):
    """Eigenvalues in ascending order and the matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def n_qubits(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 1 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def kron(*mats: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors), left to right."""
    if not mats:
        raise ValueError("kron needs at least one operand")
    out = np.asarray(mats[0])
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m))
    return out


def dm(psi: np.ndarray) -> np.ndarray:
    """Projector ``|psi><psi|`` of a state vector."""
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def _check_indices(indices: Sequence[int], n: int) -> list[int]:
    idx = [int(i) for i in indices]
    for i in idx:
        if not 0 <= i < n:
            raise ValueError(f"qubit index {i} out of range for {n} qubits")
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated qubit index in {idx}")
    return idx


def partial_trace(rho: np.ndarray, keep: Sequence[int] | int) -> np.ndarray:
    """Reduce ``rho`` to the qubits in ``keep``.

    The kept qubits appear in the output in ascending order regardless of the
    order given in ``keep``.
    """
    rho = np.asarray(rho)
    n = n_qubits(rho.shape[0])
    if isinstance(keep, (int, np.integer)):
        keep = [keep]
    keep = sorted(_check_indices(keep, n))
    if not keep:
        raise ValueError("keep must name at least one qubit")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    # trace the highest-numbered qubit first so remaining axis labels stay valid
    for count, q in enumerate(sorted(traced, reverse=True)):
        m = n - count
        t = np.trace(t, axis1=q, axis2=q + m)
    d = 2 ** len(keep)
    return t.reshape(d, d)


def partial_transpose(rho: np.ndarray, part: int | Sequence[int]) -> np.ndarray:
    """Transpose the indices of the qubit(s) ``part``, leaving the rest alone."""
    rho = np.asarray(rho)
    n = n_qubits(rho.shape[0])
    if isinstance(part, (int, np.integer)):
        part = [part]
    part = _check_indices(part, n)
    axes = list(range(2 * n))
    for q in part:
        axes[q], axes[q + n] = axes[q + n], axes[q]
    return rho.reshape([2] * (2 * n)).transpose(axes).reshape(rho.shape)


def is_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    a = np.asarray(a)
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def herm_eig(a: np.ndarray) -> EigDecomposition:
    """Eigen-decompose a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the real symmetric Jacobi rotation that annihilates it.  Sweeps
    stop once the off-diagonal Frobenius norm drops below ``1e-12`` (scaled by
    the matrix norm when that exceeds one).

    Raises
    ------
    ValueError
        If ``a`` is not square or not Hermitian within ``1e-10``.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not is_hermitian(a):
        raise ValueError("herm_eig requires a Hermitian matrix")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    tol = JACOBI_TOL * max(1.0, np.linalg.norm(a))

    offdiag = ~np.eye(n, dtype=bool)

    def off(m: np.ndarray) -> float:
        return float(np.linalg.norm(m[offdiag]))

    for _ in range(MAX_SWEEPS):
        if off(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                # smaller root of t^2 + 2 tau t - 1 = 0 keeps |theta| <= pi/4
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                j = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                cols = a[:, [p, q]] @ j
                a[:, p], a[:, q] = cols[:, 0], cols[:, 1]
                rows = j.conj().T @ a[[p, q], :]
                a[p, :], a[q, :] = rows[0], rows[1]
                a[p, q] = a[q, p] = 0.0
                vc = v[:, [p, q]] @ j
                v[:, p], v[:, q] = vc[:, 0], vc[:, 1]
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return EigDecomposition(w[order], v[:, order])


def eigvalsh(a: np.ndarray) -> np.ndarray:
    return herm_eig(a).eigenvalues


def psd_sqrt(a: np.ndarray) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Negative eigenvalues down to ``-1e-8`` are treated as round-off and
    clamped to zero; anything lower is a genuine negative eigenvalue and is
    rejected.
    """
    w, v = herm_eig(a)
    if w[0] < -NEGATIVE_TOL:
        raise ValueError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def trace_norm(a: np.ndarray) -> float:
    """``Tr sqrt(A A^dagger)``; sums absolute eigenvalues for Hermitian input."""
    a = np.asarray(a, dtype=complex)
    if is_hermitian(a):
        return float(np.sum(np.abs(herm_eig(a).eigenvalues)))
    w = herm_eig(a @ a.conj().T).eigenvalues
    return float(np.sum(np.sqrt(np.clip(w, 0.0, None))))


def is_density_matrix(rho: np.ndarray, tol: float = 1e-10) -> bool:
    rho = np.asarray(rho)
    if not is_hermitian(rho, tol):
        return False
    if abs(np.trace(rho) - 1.0) > tol:
        return False
    return bool(herm_eig(rho).eigenvalues[0] >= -tol)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density matrix ``G G^dagger / Tr`` from a complex Gaussian ``G``."""
    k = dim if rank is None else rank
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with the diagonal phase fix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
