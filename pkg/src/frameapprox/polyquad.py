"""Orthonormal Legendre polynomials and Gauss-Legendre quadrature.

Includes composite rules graded geometrically toward the left endpoint,
used for integrands carrying a ``log(t)`` factor on ``(0, hi)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "QuadratureRule",
    "GradedRule",
    "gauss_legendre_rule",
    "map_rule",
    "composite_rule",
    "graded_log_rule",
    "legendre_orthonormal",
    "legendre_table",
]

_NEWTON_TOL = 1e-15
_NEWTON_MAXITER = 100


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights on an interval ``(lo, hi)``."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.interval
        if not lo < hi:
            raise ValueError(f"degenerate interval {self.interval}")
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "interval", (float(lo), float(hi)))

    def __len__(self):
        return self.nodes.size

    def integrate(self, func: Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.dot(self.weights, func(self.nodes)))


@dataclass(frozen=True)
class GradedRule:
    """Composite Gauss rule with panels shrinking geometrically toward ``lo``.

    ``panels`` are listed from the right end of the interval toward the
    singular endpoint; the last panel touches ``lo``.
    """

    base: QuadratureRule
    panels: tuple[tuple[float, float], ...]
    ratio: float
    levels: int
    interval: tuple[float, float]

    @cached_property
    def rule(self) -> QuadratureRule:
        return _flatten(self.base, self.panels, self.interval)

    @property
    def nodes(self) -> np.ndarray:
        return self.rule.nodes

    @property
    def weights(self) -> np.ndarray:
        return self.rule.weights

    def __len__(self):
        return len(self.base) * len(self.panels)

    def integrate(self, func: Callable[[np.ndarray], np.ndarray]) -> float:
        return self.rule.integrate(func)


def _legendre_and_derivative(m, x):
    # P_m(x) and P_m'(x) by the three-term recurrence
    p0 = np.ones_like(x)
    p1 = x.copy()
    if m == 0:
        return p0, np.zeros_like(x)
    for k in range(2, m + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = m * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=64)
def _gauss_nodes_weights(m):
    if m == 1:
        return np.array([0.0]), np.array([2.0])
    k = np.arange(1, m + 1)
    x = np.cos(np.pi * (k - 0.25) / (m + 0.5))
    for _ in range(_NEWTON_MAXITER):
        p, dp = _legendre_and_derivative(m, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= _NEWTON_TOL:
            break
    p, dp = _legendre_and_derivative(m, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    # enforce exact symmetry, ascending order
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    order = np.argsort(x)
    return x[order], w[order]


def gauss_legendre_rule(m: int) -> QuadratureRule:
    """m-point Gauss-Legendre rule on (-1, 1), exact for degree ``2m - 1``.

    Nodes are found by Newton iteration on the Legendre recurrence started
    from Chebyshev-like guesses.
    """
    if int(m) != m or m < 1:
        raise ValueError(f"Gauss rule needs m >= 1, got {m}")
    x, w = _gauss_nodes_weights(int(m))
    return QuadratureRule(x.copy(), w.copy(), (-1.0, 1.0))


def map_rule(rule: QuadratureRule, target: tuple[float, float]) -> QuadratureRule:
    """Affine image of ``rule`` on the interval ``target``."""
    lo, hi = float(target[0]), float(target[1])
    if not lo < hi:
        raise ValueError(f"degenerate target interval {target}")
    a, b = rule.interval
    if (a, b) == (lo, hi):
        return rule
    scale = (hi - lo) / (b - a)
    nodes = lo + (rule.nodes - a) * scale
    return QuadratureRule(nodes, rule.weights * scale, (lo, hi))


def _flatten(base, panels, interval):
    nodes, weights = [], []
    for lo, hi in sorted(panels):
        mapped = map_rule(base, (lo, hi))
        nodes.append(mapped.nodes)
        weights.append(mapped.weights)
    return QuadratureRule(np.concatenate(nodes), np.concatenate(weights), interval)


def composite_rule(m: int, panels: int, interval=(-1.0, 1.0)) -> QuadratureRule:
    """m-point Gauss rule repeated on ``panels`` equal subintervals."""
    if panels < 1:
        raise ValueError("need at least one panel")
    edges = np.linspace(interval[0], interval[1], panels + 1)
    return _flatten(gauss_legendre_rule(m), tuple(zip(edges[:-1], edges[1:])), interval)


def graded_log_rule(interval=(0.0, 1.0), base_order=24, levels=30, ratio=0.5) -> GradedRule:
    """Gauss panels ``[hi*r^(k+1), hi*r^k]`` for k < levels plus ``[0, hi*r^levels]``.

    The open Gauss nodes never touch ``t = 0``, so integrands like
    ``t**j * log(t)`` can be evaluated directly.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if lo != 0.0 or hi <= 0.0:
        raise ValueError(f"graded rule expects an interval (0, hi) with hi > 0, got {interval}")
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"grading ratio must lie in (0, 1), got {ratio}")
    if int(levels) != levels or levels < 1:
        raise ValueError(f"levels must be a positive integer, got {levels}")
    levels = int(levels)
    edges = hi * ratio ** np.arange(levels + 1)
    panels = tuple((float(edges[k + 1]), float(edges[k])) for k in range(levels))
    panels += ((0.0, float(edges[-1])),)
    return GradedRule(gauss_legendre_rule(base_order), panels, float(ratio), levels, (lo, hi))


def legendre_table(N: int, t) -> np.ndarray:
    """Values ``sqrt(n + 1/2) P_n(t)`` for n < N, shape ``t.shape + (N,)``.

    Uses the recurrence for the orthonormal family directly, which keeps
    intermediate values bounded by ``sqrt(n + 1/2)`` on [-1, 1].
    """
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0):
        raise ValueError("Legendre evaluation points must lie in [-1, 1]")
    out = np.empty(t.shape + (N,))
    if N == 0:
        return out
    out[..., 0] = np.sqrt(0.5)
    if N > 1:
        out[..., 1] = np.sqrt(1.5) * t
    for n in range(1, N - 1):
        a = np.sqrt((2 * n + 3) * (2 * n + 1)) / (n + 1)
        b = n / (n + 1) * np.sqrt((2 * n + 3) / (2 * n - 1))
        out[..., n + 1] = a * t * out[..., n] - b * out[..., n - 1]
    return out


def legendre_orthonormal(n: int, t):
    """Orthonormal Legendre polynomial ``sqrt(n + 1/2) P_n(t)`` on [-1, 1].

    Examples
    --------
    >>> round(legendre_orthonormal(2, 1.0), 12)
    1.581138830084
    """
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n}")
    vals = legendre_table(int(n) + 1, t)[..., -1]
    return float(vals) if vals.ndim == 0 else vals
