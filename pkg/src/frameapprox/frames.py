"""Frame families, truncation, and assembly of Gram and collocation systems."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .polyquad import GradedRule, QuadratureRule, gauss_legendre_rule, legendre_table, map_rule

__all__ = [
    "RestrictedLegendre",
    "AugmentedLogLegendre",
    "TruncatedFrame",
    "TargetFunction",
    "CollocationGrid",
    "GramSystem",
    "CollocationSystem",
    "element_eval",
    "gram_matrix",
    "gram_system",
    "analysis_vector",
    "chebyshev_grid",
    "collocation_system",
    "synthesis_eval",
]


@dataclass(frozen=True)
class RestrictedLegendre:
    """Orthonormal Legendre basis of L2(-1, 1) restricted to ``(lo, hi)``.

    Restriction of an orthonormal basis to a subinterval gives a Parseval
    frame, so both frame bounds equal one.
    """

    lo: float = -0.5
    hi: float = 0.5

    def __post_init__(self):
        if not -1.0 <= self.lo < self.hi <= 1.0:
            raise ValueError(f"restriction interval must satisfy -1 <= lo < hi <= 1, got ({self.lo}, {self.hi})")

    @property
    def domain(self) -> tuple[float, float]:
        return (float(self.lo), float(self.hi))

    @property
    def frame_bounds(self) -> tuple[float, float]:
        return (1.0, 1.0)

    @property
    def is_parseval(self) -> bool:
        return True

    @property
    def label(self) -> str:
        return f"restricted_legendre({self.lo:g},{self.hi:g})"

    def evaluate(self, N, t):
        t = np.asarray(t, dtype=float)
        if np.any((t < self.lo) | (t > self.hi)):
            raise ValueError(f"points outside the restriction interval {self.domain}")
        return legendre_table(N, t)


@dataclass(frozen=True)
class AugmentedLogLegendre:
    """Orthonormal Legendre basis on (0, 1) augmented with ``log(t)`` multiples.

    Elements ``0..K-1`` are ``log(t) * phi_j(t)``; the polynomials follow.
    The upper bound ``B = 1 + 2K`` is reporting metadata only
    (``||log||^2`` on (0, 1) equals 2).
    """

    K: int = 4

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"K must be a positive integer, got {self.K}")

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, 1.0)

    @property
    def frame_bounds(self) -> tuple[float, float]:
        return (1.0, 1.0 + 2.0 * self.K)

    @property
    def is_parseval(self) -> bool:
        return False

    @property
    def label(self) -> str:
        return f"augmented_log_legendre(K={self.K})"

    def evaluate(self, N, t):
        t = np.asarray(t, dtype=float)
        if N <= self.K:
            raise ValueError(f"augmented frame needs N > K = {self.K}, got N = {N}")
        if np.any((t <= 0.0) | (t > 1.0)):
            raise ValueError("log elements are only finite for t in (0, 1]")
        poly = np.sqrt(2.0) * legendre_table(max(N - self.K, self.K), 2.0 * t - 1.0)
        sing = np.log(t)[..., None] * poly[..., : self.K]
        return np.concatenate([sing, poly[..., : N - self.K]], axis=-1)


FrameFamily = Union[RestrictedLegendre, AugmentedLogLegendre]


@dataclass(frozen=True)
class TruncatedFrame:
    """The first ``N`` elements of a frame family, in the family's fixed order."""

    family: FrameFamily
    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if isinstance(self.family, AugmentedLogLegendre) and self.N <= self.family.K:
            raise ValueError(f"augmented frame needs N > K = {self.family.K}, got N = {self.N}")

    @property
    def domain(self):
        return self.family.domain

    def evaluate(self, t) -> np.ndarray:
        """Matrix of element values, shape ``t.shape + (N,)``."""
        return self.family.evaluate(self.N, t)


@dataclass(frozen=True)
class TargetFunction:
    evaluator: Callable[[np.ndarray], np.ndarray]
    label: str = "f"
    params: dict = field(default_factory=dict)

    def __call__(self, t):
        return self.evaluator(np.asarray(t, dtype=float))


@dataclass(frozen=True)
class CollocationGrid:
    M: int
    nodes: np.ndarray


@dataclass(frozen=True)
class GramSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    frame: TruncatedFrame
    kind: str = "gram"


@dataclass(frozen=True)
class CollocationSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    frame: TruncatedFrame
    grid: CollocationGrid
    kind: str = "collocation"


def element_eval(frame: TruncatedFrame, n: int, t):
    """Value of frame element ``n`` at ``t``."""
    if not 0 <= n < frame.N:
        raise IndexError(f"element index {n} out of range for N = {frame.N}")
    family = frame.family
    if isinstance(family, RestrictedLegendre):
        vals = family.evaluate(n + 1, t)[..., n]
    else:
        t = np.asarray(t, dtype=float)
        if np.any((t < 0.0) | (t > 1.0)):
            raise ValueError("points outside (0, 1)")
        j = n if n < family.K else n - family.K
        vals = np.sqrt(2.0) * legendre_table(j + 1, 2.0 * t - 1.0)[..., j]
        if n < family.K:
            if np.any(t == 0.0):
                raise ValueError("log element is not finite at t = 0")
            vals = np.log(t) * vals
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite frame element value")
    return float(vals) if np.ndim(vals) == 0 else vals


def synthesis_eval(frame: TruncatedFrame, x, t):
    """Evaluate ``sum_n x_n phi_n(t)``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (frame.N,):
        raise ValueError(f"coefficient vector has shape {x.shape}, expected ({frame.N},)")
    vals = frame.evaluate(t) @ x
    return float(vals) if np.ndim(vals) == 0 else vals


def gram_matrix(frame: TruncatedFrame, quad: QuadratureRule | None = None) -> np.ndarray:
    """Gram matrix of the restricted Legendre frame.

    Entries are polynomials of degree at most ``2N - 2``, so an N-point
    Gauss rule on the restriction interval is exact up to rounding.
    """
    family = frame.family
    if not isinstance(family, RestrictedLegendre):
        raise TypeError("Gram assembly is only provided for the restricted Legendre frame")
    if quad is None:
        quad = gauss_legendre_rule(frame.N)
    if len(quad) < frame.N:
        raise ValueError(f"quadrature with {len(quad)} nodes cannot integrate degree {2 * frame.N - 2} exactly")
    quad = map_rule(quad, family.domain) if quad.interval != family.domain else quad
    B = frame.evaluate(quad.nodes) * np.sqrt(quad.weights)[:, None]
    G = B.T @ B
    return 0.5 * (G + G.T)


def analysis_vector(frame: TruncatedFrame, f: Callable, quad: QuadratureRule | GradedRule) -> np.ndarray:
    """Inner products ``<f, phi_n>`` for n < N using ``quad`` over the frame's domain."""
    if tuple(quad.interval) != tuple(frame.domain):
        raise ValueError(f"quadrature interval {quad.interval} differs from the frame domain {frame.domain}")
    fvals = np.asarray(f(quad.nodes), dtype=float)
    if not np.all(np.isfinite(fvals)):
        raise ValueError("non-finite target values at quadrature nodes")
    B = frame.evaluate(quad.nodes)
    if not np.all(np.isfinite(B)):
        raise ValueError("non-finite frame values at quadrature nodes")
    return B.T @ (quad.weights * fvals)


def gram_system(frame: TruncatedFrame, f: Callable, quad: QuadratureRule) -> GramSystem:
    """Assemble ``G_N x = y``; ``quad`` is used for the right-hand side."""
    G = gram_matrix(frame)
    y = analysis_vector(frame, f, quad)
    return GramSystem(G, y, frame)


def chebyshev_grid(M: int) -> CollocationGrid:
    """Chebyshev nodes ``(cos((2m-1) pi / 2M) + 1) / 2`` for m = 1..M."""
    if int(M) != M or M < 1:
        raise ValueError(f"M must be a positive integer, got {M}")
    m = np.arange(1, M + 1)
    nodes = (np.cos((2 * m - 1) * np.pi / (2 * M)) + 1.0) / 2.0
    nodes.setflags(write=False)
    return CollocationGrid(int(M), nodes)


def collocation_system(frame: TruncatedFrame, f: Callable, grid: CollocationGrid) -> CollocationSystem:
    """Oversampled least-squares system ``G_{M,N} z ~ y`` from point samples."""
    if grid.M < frame.N:
        raise ValueError(f"collocation needs M >= N, got M = {grid.M}, N = {frame.N}")
    A = frame.evaluate(grid.nodes)
    y = np.asarray(f(grid.nodes), dtype=float)
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite target values at collocation nodes")
    return CollocationSystem(A, y, frame, grid)
