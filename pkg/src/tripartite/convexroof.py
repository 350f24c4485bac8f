"""Numerical convex-roof search for the mixed-state three-tangle.

Every decomposition of ``rho = sum_k lambda_k |v_k><v_k|`` into ``m`` pure
states has the form ``|phi_j> = sum_k U_jk sqrt(lambda_k) |v_k>`` for an
``m x r`` isometry ``U``.  The search walks over isometries by left-multiplying
two-row Givens rotations, so each trial move touches only two members and the
isometry stays exactly orthonormal.  Results are upper bounds on the convex
roof: a local search cannot certify a global minimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmat import herm_eig, random_unitary
from .tangles import Ensemble, three_tangle_pure

RANK_TOL = 1e-12
MAX_DEFAULT_MEMBERS = 12
START_STEP = 0.3
MIN_STEP = 1e-5
MAX_SWEEPS_PER_STEP = 30
POLISH_ROUNDS = 5


@dataclass(frozen=True)
class RoofResult:
    """Best average tangle found, labelled as an upper bound."""

    upper_bound: float
    ensemble: Ensemble
    isometry: np.ndarray
    members: int
    restarts: int
    seed: int

    @property
    def value(self) -> float:
        return self.upper_bound


def spectral_factor(rho: np.ndarray) -> np.ndarray:
    """Rows ``sqrt(lambda_k) <v_k|`` for the non-zero eigenvalues, shape ``(r, dim)``."""
    w, v = herm_eig(rho)
    keep = w > RANK_TOL
    return (v[:, keep] * np.sqrt(w[keep])).T


def rank(rho: np.ndarray) -> int:
    return int(np.sum(herm_eig(rho).eigenvalues > RANK_TOL))


def default_members(rho: np.ndarray) -> int:
    return min(rank(rho) + 4, MAX_DEFAULT_MEMBERS)


def ensemble_from_isometry(rho: np.ndarray, isometry: np.ndarray) -> Ensemble:
    """Decomposition of ``rho`` selected by an ``m x r`` isometry."""
    factor = spectral_factor(rho)
    u = np.asarray(isometry, dtype=complex)
    if u.ndim != 2 or u.shape[1] != factor.shape[0]:
        raise ValueError(f"isometry has shape {u.shape}; rho has rank {factor.shape[0]}")
    if u.shape[0] < u.shape[1]:
        raise ValueError("isometry needs at least as many rows as the rank of rho")
    if np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1]))) > 1e-10:
        raise ValueError("isometry columns are not orthonormal")
    return _ensemble_from_rows(u @ factor)


def _ensemble_from_rows(rows: np.ndarray) -> Ensemble:
    p = np.sum(np.abs(rows) ** 2, axis=1)
    keep = p > 1e-15
    states = rows[keep] / np.sqrt(p[keep])[:, None]
    return Ensemble(p[keep] / p[keep].sum(), states)


def ensemble_avg_tangle(e: Ensemble) -> float:
    """``sum_i p_i tau(psi_i)``, skipping members below ``1e-12`` weight."""
    keep = e.probabilities >= 1e-12
    return float(np.dot(e.probabilities[keep], three_tangle_pure(e.states[keep])))


def _row_terms(rows: np.ndarray) -> np.ndarray:
    # p_j tau(psi_j) == tau(phi_j) / |phi_j|^2 since tau is quartic in the amplitudes
    norm2 = np.sum(np.abs(rows) ** 2, axis=-1)
    out = np.zeros_like(norm2)
    ok = norm2 > 1e-30
    out[ok] = three_tangle_pure(rows[ok]) / norm2[ok]
    return out


def _hyperdet_and_grad(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``D = d1 - 2 d2 + 4 d3`` per row and its holomorphic partials ``dD/da_k``."""
    a = [rows[:, k] for k in range(8)]
    p07, p34, p52, p61 = a[0] * a[7], a[3] * a[4], a[5] * a[2], a[6] * a[1]
    s = p07 + p34 + p52 + p61
    d = (
        p07**2 + p34**2 + p52**2 + p61**2
        - 2 * (p07 * p34 + p07 * p52 + p07 * p61 + p34 * p52 + p34 * p61 + p52 * p61)
        + 4 * (a[0] * a[6] * a[5] * a[3] + a[7] * a[1] * a[2] * a[4])
    )
    # dD/dp = 4 p - 2 s, then the product rule through each p and the d3 terms
    c07, c34, c52, c61 = 4 * p07 - 2 * s, 4 * p34 - 2 * s, 4 * p52 - 2 * s, 4 * p61 - 2 * s
    grad = np.stack(
        [
            c07 * a[7] + 4 * a[6] * a[5] * a[3],
            c61 * a[6] + 4 * a[7] * a[2] * a[4],
            c52 * a[5] + 4 * a[7] * a[1] * a[4],
            c34 * a[4] + 4 * a[0] * a[6] * a[5],
            c34 * a[3] + 4 * a[7] * a[1] * a[2],
            c52 * a[2] + 4 * a[0] * a[6] * a[3],
            c61 * a[1] + 4 * a[0] * a[5] * a[3],
            c07 * a[0] + 4 * a[1] * a[2] * a[4],
        ],
        axis=1,
    )
    return d, grad


def _terms_and_grad(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row terms ``4 |D| / n`` and ``dG/dRe + i dG/dIm`` of their sum w.r.t. the rows.

    Rows with ``D = 0`` get the zero subgradient for the ``|D|`` part.
    """
    d, dd = _hyperdet_and_grad(rows)
    n = np.sum(np.abs(rows) ** 2, axis=1)
    absd = np.abs(d)
    phase = np.divide(d, absd, out=np.zeros_like(d), where=absd > 0)
    # empty rows contribute O(|row|^2): zero value and zero gradient
    ok = n > 1e-30
    inv = np.divide(1.0, n, out=np.zeros_like(n), where=ok)
    grad = 4 * (phase[:, None] * dd.conj() * inv[:, None] - (absd * inv**2)[:, None] * 2 * rows)
    return 4 * absd * inv, grad


def _polish(rows: np.ndarray, rounds: int = POLISH_ROUNDS) -> np.ndarray:
    """Quasi-Newton refinement over left unitaries ``rows -> C(K) rows``.

    ``C(K) = (I - iK/2)^{-1} (I + iK/2)`` is the Cayley map of a Hermitian
    ``K`` with zero diagonal (row phases do not change the objective).  Each
    round runs BFGS from ``K = 0`` and recentres on the result; a round that
    does not improve the objective ends the polish.
    """
    from scipy.optimize import minimize

    m = rows.shape[0]
    iu = np.triu_indices(m, 1)
    npar = len(iu[0])
    eye = np.eye(m)

    def cayley(x):
        k = np.zeros((m, m), dtype=complex)
        k[iu] = x[:npar] + 1j * x[npar:]
        k = k + k.conj().T
        a = 0.5j * k
        b = np.linalg.inv(eye - a)
        return b, b @ (eye + a)

    best = float(_row_terms(rows).sum())
    for _ in range(rounds):
        base = rows

        def fun(x):
            b, c = cayley(x)
            terms, g = _terms_and_grad(c @ base)
            mm = 1j * b @ base @ g.conj().T @ b
            grad = np.concatenate([np.real(mm[iu] + mm.T[iu]), np.imag(mm[iu] - mm.T[iu])])
            return float(terms.sum()), grad

        res = minimize(fun, np.zeros(2 * npar), jac=True, method="BFGS", options={"gtol": 1e-12, "maxiter": 2000})
        cand = cayley(res.x)[1] @ base
        val = float(_row_terms(cand).sum())
        if not val < best - 1e-15:
            break
        rows, best = cand, val
    return rows


def _generators(h: float) -> np.ndarray:
    c, s = np.cos(h), np.sin(h)
    return np.array(
        [
            [[c, -s], [s, c]],
            [[c, s], [-s, c]],
            [[c, 1j * s], [1j * s, c]],
            [[c, -1j * s], [-1j * s, c]],
        ],
        dtype=complex,
    )


def _round_robin(m: int) -> list[np.ndarray]:
    """Rounds of disjoint row pairs covering every pair exactly once."""
    players = list(range(m)) + ([-1] if m % 2 else [])
    n = len(players)
    rounds = []
    for _ in range(n - 1):
        pairs = [(players[i], players[n - 1 - i]) for i in range(n // 2)]
        pairs = [tuple(sorted(p)) for p in pairs if -1 not in p]
        rounds.append(np.array(pairs, dtype=int).reshape(-1, 2))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _descend(
    rows: np.ndarray,
    start: float = START_STEP,
    stop: float = MIN_STEP,
    max_sweeps: int = MAX_SWEEPS_PER_STEP,
) -> np.ndarray:
    """Coordinate descent over pairwise rotations with a halving step.

    Each sweep visits every row pair once and keeps the best of the four
    rotations if it lowers the objective.  The objective is a sum over rows,
    so moves on disjoint pairs are independent and a whole round of disjoint
    pairs is evaluated in one batch.  The step halves after a sweep with no
    accepted move, or after ``max_sweeps`` sweeps at one step size.
    """
    m, dim = rows.shape
    rounds = _round_robin(m)
    terms = _row_terms(rows)
    h = start
    while h >= stop:
        gens = _generators(h)
        for _ in range(max_sweeps):
            improved = False
            for pairs in rounds:
                if len(pairs) == 0:
                    continue
                block = rows[pairs]  # (P, 2, dim)
                current = terms[pairs].sum(axis=1)
                trial = np.einsum("gab,pbd->pgad", gens, block)
                t = _row_terms(trial.reshape(-1, dim)).reshape(len(pairs), len(gens), 2)
                totals = t.sum(axis=2)
                g = np.argmin(totals, axis=1)
                idx = np.arange(len(pairs))
                accept = totals[idx, g] < current - 1e-15
                if np.any(accept):
                    improved = True
                    hit = pairs[accept]
                    rows[hit] = trial[idx[accept], g[accept]]
                    terms[hit] = t[idx[accept], g[accept]]
            if not improved:
                break
        h *= 0.5
    return rows


def pad_isometry(isometry: np.ndarray, m: int) -> np.ndarray:
    """Append zero rows so an ``m0 x r`` isometry becomes ``m x r``."""
    u = np.asarray(isometry, dtype=complex)
    if m < u.shape[0]:
        raise ValueError(f"cannot shrink an isometry from {u.shape[0]} to {m} rows")
    return np.vstack([u, np.zeros((m - u.shape[0], u.shape[1]), dtype=complex)])


def minimize_tangle(
    rho: np.ndarray,
    m: int | None = None,
    restarts: int = 20,
    seed: int = 0,
    start_step: float = START_STEP,
    min_step: float = MIN_STEP,
    initial: list[np.ndarray] | None = None,
    polish: bool = True,
) -> RoofResult:
    """Search for the decomposition of ``rho`` with the smallest average tangle.

    Parameters
    ----------
    rho : ndarray
        Three-qubit density matrix.
    m : int, optional
        Ensemble size; defaults to ``min(rank + 4, 12)``.
    restarts : int
        Number of random isometries to start from.
    seed : int
        Seed for ``numpy.random.default_rng``; the result is deterministic in it.
    start_step, min_step : float
        First and last rotation angle of the halving schedule.
    initial : list of ndarray, optional
        Extra ``m x r`` isometries to descend from before the random ones,
        e.g. a smaller optimum widened with :func:`pad_isometry`.
    polish : bool
        Finish every restart with the quasi-Newton refinement of
        :func:`_polish`.  Coordinate descent alone creeps along the kinks of
        the objective where members approach zero tangle.

    Returns
    -------
    RoofResult
        The lowest average tangle found, which bounds the convex roof from above.
    """
    factor = spectral_factor(rho)
    r = factor.shape[0]
    if m is None:
        m = min(r + 4, MAX_DEFAULT_MEMBERS)
    if m < r:
        raise ValueError(f"ensemble size {m} is below the rank {r} of rho")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    starts = []
    for u in initial or []:
        u = np.asarray(u, dtype=complex)
        if u.shape != (m, r) or np.max(np.abs(u.conj().T @ u - np.eye(r))) > 1e-10:
            raise ValueError(f"initial isometry must be a {m}x{r} matrix with orthonormal columns")
        starts.append(u)
    rng = np.random.default_rng(seed)
    starts += [random_unitary(m, rng)[:, :r] for _ in range(restarts)]
    # rows = U @ factor and factor has orthogonal rows of squared norm lambda_k
    to_isometry = factor.conj().T / np.sum(np.abs(factor) ** 2, axis=1)
    best_val, best_rows = np.inf, None
    for u in starts:
        rows = _descend(u @ factor, start_step, min_step)
        if polish:
            rows = _polish(rows)
        val = float(_row_terms(rows).sum())
        if val < best_val:
            best_val, best_rows = val, rows
    return RoofResult(
        best_val, _ensemble_from_rows(best_rows), best_rows @ to_isometry, m, restarts, seed
    )
