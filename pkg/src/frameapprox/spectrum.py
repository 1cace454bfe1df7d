"""Spectral factorization, singular-value selection rules, and regularized solves.

Three thresholding rules choose an index set ``Lambda`` of singular triplets:

* ``TSVD``  keeps every ``sigma_n > eps``;
* ``ASVD1`` additionally drops any term with ``|<y, v_n>| / sigma_n > c ||y||``;
* ``ASVD2`` admits terms smallest-first while the accumulated coefficient norm
  stays within ``c ||y||``.

The coefficients are then ``x = sum_{n in Lambda} <y, v_n> / sigma_n v_n``
(left vectors ``u_n`` replace ``v_n`` inside the inner product for the
rectangular least-squares kind). A Tikhonov filter is provided as a
baseline.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .frames import CollocationSystem, GramSystem, RestrictedLegendre, TruncatedFrame, gram_matrix
from .jacobi import jacobi_eigh, one_sided_jacobi_svd

__all__ = [
    "SpectralFactorization",
    "TSVD",
    "ASVD1",
    "ASVD2",
    "Tikhonov",
    "SelectedSpectrum",
    "Approximant",
    "factor",
    "factor_matrix",
    "gram_factorization",
    "selection_from_indices",
    "select",
    "solve_selected",
    "solve_tikhonov",
    "xi_element_values",
    "approximate",
]

# computed eigenvalues of a PSD Gram matrix in [-CLAMP * sigma_max, 0) are noise
CLAMP = 1e-12


@dataclass(frozen=True)
class SpectralFactorization:
    """Sorted singular values with orthonormal singular vectors.

    For the ``hermitian`` kind ``U`` is ``None`` and ``V`` holds the
    eigenvectors of the Gram matrix.
    """

    sigma: np.ndarray
    V: np.ndarray
    U: Optional[np.ndarray] = None
    clamped: int = 0
    sweeps: int = 0

    @property
    def kind(self) -> str:
        return "hermitian" if self.U is None else "rectangular"

    @property
    def N(self) -> int:
        return self.sigma.size

    @property
    def rows(self) -> int:
        return self.N if self.U is None else self.U.shape[0]

    def projections(self, y) -> np.ndarray:
        """``<y, v_n>`` (hermitian) or ``<y, u_n>`` (rectangular) for every n."""
        y = np.asarray(y, dtype=float)
        if y.shape != (self.rows,):
            raise ValueError(f"rhs has shape {y.shape}, expected ({self.rows},)")
        basis = self.V if self.U is None else self.U
        return basis.T @ y

    def reconstruct(self) -> np.ndarray:
        left = self.V if self.U is None else self.U
        return (left * self.sigma) @ self.V.T


def _fix_signs(*mats):
    # first nonzero entry of each column of the first matrix made positive
    lead = mats[0]
    signs = np.ones(lead.shape[1])
    for j in range(lead.shape[1]):
        col = lead[:, j]
        nz = np.flatnonzero(np.abs(col) > 0.0)
        if nz.size and col[nz[0]] < 0.0:
            signs[j] = -1.0
    return [m * signs for m in mats]


def factor_matrix(matrix, hermitian: bool, tol: float | None = None, max_sweeps: int = 60) -> SpectralFactorization:
    """Factor a PSD Gram matrix (``hermitian=True``) or a tall sample matrix."""
    A = np.asarray(matrix, dtype=float)
    if hermitian:
        w, V, sweeps = jacobi_eigh(A, tol=1e-14 if tol is None else tol, max_sweeps=max_sweeps)
        order = np.argsort(-w, kind="stable")
        w, V = w[order], V[:, order]
        smax = max(w[0], 0.0) if w.size else 0.0
        if w.size and w[-1] < -CLAMP * smax:
            raise ValueError(f"matrix is not positive semidefinite: eigenvalue {w[-1]:.3e}, largest {smax:.3e}")
        negative = w < 0.0
        w = np.where(negative, 0.0, w)
        (V,) = _fix_signs(V)
        return SpectralFactorization(w, V, None, int(negative.sum()), sweeps)

    U, s, V, sweeps = one_sided_jacobi_svd(A, tol=1e-15 if tol is None else tol, max_sweeps=max_sweeps)
    order = np.argsort(-s, kind="stable")
    s, U, V = s[order], U[:, order], V[:, order]
    zero = s == 0.0
    if np.any(zero):
        U = _complete_basis(U, zero)
    V, U = _fix_signs(V, U)
    return SpectralFactorization(s, V, U, 0, sweeps)


def _complete_basis(U, missing):
    # fill columns for exactly-zero singular values with an orthonormal complement
    U = U.copy()
    have = U[:, ~missing]
    for j in np.flatnonzero(missing):
        for k in range(U.shape[0]):
            e = np.zeros(U.shape[0])
            e[k] = 1.0
            e -= have @ (have.T @ e)
            e -= have @ (have.T @ e)
            nrm = np.linalg.norm(e)
            if nrm > 0.5:
                U[:, j] = e / nrm
                have = np.column_stack([have, U[:, j]])
                break
    return U


def factor(system: Union[GramSystem, CollocationSystem], **kwargs) -> SpectralFactorization:
    """Hermitian factorization for a Gram system, thin SVD for a collocation system."""
    return factor_matrix(system.matrix, hermitian=system.kind == "gram", **kwargs)


@lru_cache(maxsize=32)
def gram_factorization(family: RestrictedLegendre, N: int) -> SpectralFactorization:
    """Cached factorization of the Gram matrix, which does not depend on f."""
    fact = factor_matrix(gram_matrix(TruncatedFrame(family, N)), hermitian=True)
    fact.sigma.setflags(write=False)
    fact.V.setflags(write=False)
    return fact


@dataclass(frozen=True)
class TSVD:
    eps: float = 1e-15

    def __post_init__(self):
        if not self.eps >= 0.0:
            raise ValueError(f"threshold must be nonnegative, got {self.eps}")

    name = "TSVD"
    c = None


@dataclass(frozen=True)
class ASVD1:
    eps: float = 1e-15
    c: float = 15.0

    def __post_init__(self):
        if not self.eps >= 0.0:
            raise ValueError(f"threshold must be nonnegative, got {self.eps}")
        if not self.c > 0.0:
            raise ValueError(f"c must be positive, got {self.c}")

    name = "ASVD1"


@dataclass(frozen=True)
class ASVD2:
    eps: float = 1e-15
    c: float = 15.0

    def __post_init__(self):
        if not self.eps >= 0.0:
            raise ValueError(f"threshold must be nonnegative, got {self.eps}")
        if not self.c > 0.0:
            raise ValueError(f"c must be positive, got {self.c}")

    name = "ASVD2"


@dataclass(frozen=True)
class Tikhonov:
    lam: float = 1e-15

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError(f"Tikhonov parameter must be positive, got {self.lam}")

    name = "Tikhonov"
    c = None

    @property
    def eps(self):
        return 0.0


SelectionRule = Union[TSVD, ASVD1, ASVD2, Tikhonov]


@dataclass(frozen=True)
class SelectedSpectrum:
    indices: np.ndarray
    rule: SelectionRule
    min_sigma_kept: float
    max_sigma_dropped: float

    @property
    def size(self) -> int:
        return int(self.indices.size)


def _asvd2_greedy(candidates, ratios, budget):
    # smallest terms first; ties by index because argsort is stable
    order = candidates[np.argsort(ratios[candidates], kind="stable")]
    chosen = []
    acc = 0.0
    for n in order:
        trial = acc + ratios[n] ** 2
        if np.sqrt(trial) > budget:
            break
        acc = trial
        chosen.append(n)
    return np.array(chosen, dtype=int)


def select(rule: SelectionRule, fact: SpectralFactorization, y) -> SelectedSpectrum:
    """Index set chosen by ``rule`` for right-hand side ``y``."""
    sigma = fact.sigma
    b = fact.projections(y)
    y_norm = float(np.linalg.norm(y))
    above = np.flatnonzero(sigma > rule.eps)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(sigma > 0.0, np.abs(b) / np.where(sigma > 0.0, sigma, 1.0), np.inf)

    if isinstance(rule, (TSVD, Tikhonov)):
        lam = above
    elif isinstance(rule, ASVD1):
        lam = above[ratios[above] <= rule.c * y_norm]
    elif isinstance(rule, ASVD2):
        lam = np.sort(_asvd2_greedy(above, ratios, rule.c * y_norm))
    else:
        raise TypeError(f"unknown selection rule {rule!r}")

    mask = np.zeros(sigma.size, dtype=bool)
    mask[lam] = True
    kept = sigma[mask]
    dropped = sigma[~mask]
    return SelectedSpectrum(
        indices=lam,
        rule=rule,
        min_sigma_kept=float(kept.min()) if kept.size else float("nan"),
        max_sigma_dropped=float(dropped.max()) if dropped.size else 0.0,
    )


def selection_from_indices(fact: SpectralFactorization, indices, rule=None) -> SelectedSpectrum:
    """Wrap an arbitrary index set (e.g. for checking the projection bounds)."""
    idx = np.unique(np.asarray(indices, dtype=int))
    if idx.size and (idx[0] < 0 or idx[-1] >= fact.N):
        raise IndexError("index set out of range")
    mask = np.zeros(fact.N, dtype=bool)
    mask[idx] = True
    kept, dropped = fact.sigma[mask], fact.sigma[~mask]
    return SelectedSpectrum(
        indices=idx,
        rule=rule,
        min_sigma_kept=float(kept.min()) if kept.size else float("nan"),
        max_sigma_dropped=float(dropped.max()) if dropped.size else 0.0,
    )


def solve_selected(fact: SpectralFactorization, y, sel: SelectedSpectrum) -> np.ndarray:
    """Coefficients ``x = sum_{n in Lambda} <y, v_n> / sigma_n v_n``."""
    idx = sel.indices
    if idx.size and np.any(fact.sigma[idx] <= 0.0):
        raise ValueError("selected index set contains a zero singular value")
    b = fact.projections(y)
    return fact.V[:, idx] @ (b[idx] / fact.sigma[idx])


def solve_tikhonov(fact: SpectralFactorization, y, lam: float) -> np.ndarray:
    """Minimizer of ``||A z - y||^2 + lam^2 ||z||^2`` via the spectral filter."""
    if not lam > 0.0:
        raise ValueError(f"Tikhonov parameter must be positive, got {lam}")
    b = fact.projections(y)
    s = fact.sigma
    return fact.V @ (s / (s * s + lam * lam) * b)


def xi_element_values(frame: TruncatedFrame, fact: SpectralFactorization, n: int, points) -> np.ndarray:
    """Values of ``xi_n = sum_m (v_n)_m phi_m`` at ``points``."""
    if fact.kind != "hermitian":
        raise ValueError("xi elements are defined for the Gram (hermitian) factorization")
    if not 0 <= n < fact.N:
        raise IndexError(f"index {n} out of range for N = {fact.N}")
    return frame.evaluate(points) @ fact.V[:, n]


@dataclass(frozen=True)
class Approximant:
    frame: TruncatedFrame
    x: np.ndarray
    selection: SelectedSpectrum
    method: str

    def __call__(self, t):
        return self.frame.evaluate(t) @ self.x

    @property
    def coeff_norm(self) -> float:
        return float(np.linalg.norm(self.x))


def approximate(system, rule: SelectionRule, fact: SpectralFactorization | None = None) -> Approximant:
    """Factor (unless ``fact`` is given), select and solve in one call."""
    if fact is None:
        fact = factor(system)
    sel = select(rule, fact, system.rhs)
    if isinstance(rule, Tikhonov):
        x = solve_tikhonov(fact, system.rhs, rule.lam)
    else:
        x = solve_selected(fact, system.rhs, sel)
    return Approximant(system.frame, x, sel, rule.name)
