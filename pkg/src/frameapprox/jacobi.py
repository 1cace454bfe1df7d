"""Jacobi rotation eigen- and singular value solvers.

Both solvers use a round-robin (tournament) ordering so that every step
applies ``n // 2`` disjoint rotations at once; a sweep is ``n - 1`` such
steps and touches every pair exactly once. The ordering is fixed, so the
output is deterministic for identical input.
"""

from __future__ import annotations

import numpy as np

__all__ = ["ConvergenceError", "jacobi_eigh", "one_sided_jacobi_svd", "round_robin_pairs"]


class ConvergenceError(RuntimeError):
    """Raised when a Jacobi iteration hits its sweep cap."""


def round_robin_pairs(n):
    """List of ``(p, q)`` index arrays, one per step of a sweep.

    Odd ``n`` is padded with a dummy index which is dropped from the pairs.
    """
    m = n + (n % 2)
    players = list(range(m))
    steps = []
    for _ in range(m - 1):
        p, q = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        steps.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return steps


def _rotation(app, aqq, apq):
    # c, s annihilating the (p, q) entry of [[app, apq], [apq, aqq]]
    c = np.ones_like(apq)
    s = np.zeros_like(apq)
    active = apq != 0.0
    tau = (aqq[active] - app[active]) / (2.0 * apq[active])
    t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    c[active] = 1.0 / np.sqrt(1.0 + t * t)
    s[active] = t * c[active]
    return c, s


def jacobi_eigh(A, tol=1e-14, max_sweeps=60):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm is at most
    ``tol * ||A||_F``.

    Returns
    -------
    w : ndarray
        Eigenvalues, unsorted (diagonal order).
    V : ndarray
        Orthonormal eigenvectors as columns.
    sweeps : int
        Number of sweeps performed.
    """
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    V = np.eye(n)
    if n < 2:
        return np.diag(A).copy(), V, 0
    scale = np.linalg.norm(A)
    steps = round_robin_pairs(n)

    def off(M):
        return np.linalg.norm(M - np.diag(np.diag(M)))

    floor = 1e-3 * np.finfo(float).eps * scale / n
    sweeps = 0
    while off(A) > tol * scale:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off(A):.3e}, target {tol * scale:.3e})"
            )
        for p, q in steps:
            # pairs already below the working-precision floor are left alone
            keep = np.abs(A[p, q]) > floor
            if not np.any(keep):
                continue
            p, q = p[keep], q[keep]
            c, s = _rotation(A[p, p], A[q, q], A[p, q])
            Ap, Aq = A[:, p].copy(), A[:, q].copy()
            A[:, p] = c * Ap - s * Aq
            A[:, q] = s * Ap + c * Aq
            Ap, Aq = A[p, :].copy(), A[q, :].copy()
            A[p, :] = c[:, None] * Ap - s[:, None] * Aq
            A[q, :] = s[:, None] * Ap + c[:, None] * Aq
            A[p, q] = 0.0
            A[q, p] = 0.0
            Vp, Vq = V[:, p].copy(), V[:, q].copy()
            V[:, p] = c * Vp - s * Vq
            V[:, q] = s * Vp + c * Vq
        sweeps += 1
    return np.diag(A).copy(), V, sweeps


def one_sided_jacobi_svd(A, tol=1e-15, max_sweeps=60):
    """Thin SVD of a tall matrix by one-sided (Hestenes) Jacobi.

    Column pairs are rotated until every pair satisfies
    ``|a_p . a_q| <= tol * ||a_p|| ||a_q||``. The relative criterion keeps
    small singular values and their left vectors accurate.

    Returns
    -------
    U : ndarray, shape (M, N)
        Orthogonalized columns divided by their norms (zero columns stay zero).
    sigma : ndarray
        Column norms, unsorted.
    V : ndarray, shape (N, N)
        Accumulated rotations.
    sweeps : int
    """
    W = np.array(A, dtype=float)
    m, n = W.shape
    if m < n:
        raise ValueError("one-sided Jacobi expects a tall matrix (M >= N)")
    V = np.eye(n)
    steps = round_robin_pairs(n) if n > 1 else []
    sweeps = 0
    while True:
        rotated = False
        for p, q in steps:
            Wp, Wq = W[:, p], W[:, q]
            alpha = np.einsum("ij,ij->j", Wp, Wp)
            beta = np.einsum("ij,ij->j", Wq, Wq)
            gamma = np.einsum("ij,ij->j", Wp, Wq)
            act = np.abs(gamma) > tol * np.sqrt(alpha * beta)
            if not np.any(act):
                continue
            rotated = True
            c, s = _rotation(alpha, beta, np.where(act, gamma, 0.0))
            W[:, p] = c * Wp - s * Wq
            W[:, q] = s * Wp + c * Wq
            Vp, Vq = V[:, p].copy(), V[:, q].copy()
            V[:, p] = c * Vp - s * Vq
            V[:, q] = s * Vp + c * Vq
        sweeps += 1
        if not rotated:
            break
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")
    sigma = np.linalg.norm(W, axis=0)
    U = np.zeros_like(W)
    nz = sigma > 0.0
    U[:, nz] = W[:, nz] / sigma[nz]
    return U, sigma, V, sweeps
