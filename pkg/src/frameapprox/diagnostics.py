"""Norms, frame coefficients, and executable checks of the error and coefficient bounds.

Every check returns a :class:`BoundReport`. The inequalities hold for all
candidate coefficient vectors ``z``, so each report is evaluated for one
concrete ``z`` rather than the infimum over ``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .frames import RestrictedLegendre, TruncatedFrame, analysis_vector
from .polyquad import QuadratureRule, gauss_legendre_rule, map_rule
from .spectrum import (
    ASVD1,
    ASVD2,
    TSVD,
    SelectedSpectrum,
    gram_factorization,
    select,
    solve_selected,
)

__all__ = [
    "REL_SLACK",
    "ABS_SLACK",
    "BoundReport",
    "CandidateCoefficients",
    "StableApproxWitness",
    "L2Measure",
    "l2_norm",
    "frame_coefficients_parseval",
    "cap_report",
    "check_error_bound",
    "check_coeff_bound",
    "check_projection_bounds",
    "check_coef_convergence",
    "check_y_norm_bound",
    "check_stable_approx",
    "check_limit_behavior",
]

REL_SLACK = 1e-9
ABS_SLACK = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one inequality ``lhs <= rhs``.

    ``passed`` is vacuously true when the precondition fails; ``verified``
    counts only checks whose precondition held and whose inequality holds.
    """

    bound: str
    lhs: float
    rhs: float
    precondition: bool = True
    detail: str = ""

    @property
    def holds(self) -> bool:
        return bool(self.lhs <= self.rhs * (1.0 + REL_SLACK) + ABS_SLACK)

    @property
    def passed(self) -> bool:
        return self.holds if self.precondition else True

    @property
    def verified(self) -> bool:
        return self.precondition and self.holds

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        if not self.precondition:
            status += " (vacuous)"
        return f"{self.bound:<28s} lhs={self.lhs:.3e} rhs={self.rhs:.3e} {status}"


@dataclass(frozen=True)
class CandidateCoefficients:
    z: np.ndarray
    provenance: str = "user"

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        if not np.all(np.isfinite(z)):
            raise ValueError("candidate coefficients must be finite")
        object.__setattr__(self, "z", z)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.z))


class L2Measure:
    """L2 norms of ``f - T_N z`` on the frame's domain via a fixed quadrature rule.

    Frame and target values at the nodes are computed once.
    """

    def __init__(self, frame: TruncatedFrame, f: Callable, quad):
        if tuple(quad.interval) != tuple(frame.domain):
            raise ValueError(f"quadrature interval {quad.interval} differs from the frame domain {frame.domain}")
        self.frame = frame
        self.weights = np.asarray(quad.weights)
        self.nodes = np.asarray(quad.nodes)
        self.fvals = np.asarray(f(self.nodes), dtype=float)
        self.basis = frame.evaluate(self.nodes)
        if not (np.all(np.isfinite(self.fvals)) and np.all(np.isfinite(self.basis))):
            raise ValueError("non-finite integrand at a quadrature node")
        self.norm_f = float(np.sqrt(np.dot(self.weights, self.fvals**2)))

    def residual(self, z) -> float:
        z = z.z if isinstance(z, CandidateCoefficients) else np.asarray(z, dtype=float)
        r = self.fvals - self.basis @ z
        return float(np.sqrt(np.dot(self.weights, r * r)))

    def analysis(self) -> np.ndarray:
        return self.basis.T @ (self.weights * self.fvals)


def l2_norm(g: Callable, quad) -> float:
    """``sqrt(integral of g^2)`` with the given rule."""
    vals = np.asarray(g(quad.nodes), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ValueError("non-finite integrand at a quadrature node")
    return float(np.sqrt(np.dot(quad.weights, vals * vals)))


def frame_coefficients_parseval(frame: TruncatedFrame, f: Callable, quad) -> np.ndarray:
    """Frame coefficients ``<f, phi_n>``; valid because the frame operator is the identity."""
    if not frame.family.is_parseval:
        raise TypeError(f"{frame.family.label} is not a Parseval frame; its dual frame is not available")
    return analysis_vector(frame, f, quad)


def _as_vector(z):
    return z.z if isinstance(z, CandidateCoefficients) else np.asarray(z, dtype=float)


def _over_sqrt(num, denom):
    # num / sqrt(denom) with 0/0 read as 0
    if num == 0.0:
        return 0.0
    return math.inf if denom <= 0.0 else num / math.sqrt(denom)


def cap_report(rule, x, y_norm: float, N: int) -> BoundReport:
    """Built-in coefficient cap: ``c ||y||`` (ASVD2) or ``c sqrt(N) ||y||`` (ASVD1)."""
    lhs = float(np.linalg.norm(x))
    if isinstance(rule, ASVD2):
        return BoundReport("ASVD2 cap c||y||", lhs, rule.c * y_norm)
    if isinstance(rule, ASVD1):
        return BoundReport("ASVD1 cap c*sqrt(N)||y||", lhs, rule.c * math.sqrt(N) * y_norm)
    return BoundReport(f"{rule.name} cap", lhs, math.inf, precondition=False)


def check_error_bound(rule, measure: L2Measure, z, x, y_norm: float) -> BoundReport:
    """Error bound for the TSVD / ASVD1 / ASVD2 approximation with coefficients ``x``."""
    z = _as_vector(z)
    lhs = measure.residual(x)
    r = measure.residual(z)
    zn = float(np.linalg.norm(z))
    root = math.sqrt(rule.eps)
    if isinstance(rule, TSVD):
        return BoundReport("error TSVD", lhs, r + root * zn)
    if isinstance(rule, ASVD1):
        gap = rule.c * y_norm - zn
        if not gap > 0.0:
            return BoundReport("error ASVD1", lhs, math.nan, precondition=False, detail="||z|| >= c||y||")
        return BoundReport("error ASVD1", lhs, r + max(root, r / gap) * zn)
    if isinstance(rule, ASVD2):
        gap = rule.c * y_norm - _over_sqrt(r, rule.eps) - 2.0 * zn
        if not gap > 0.0:
            return BoundReport(
                "error ASVD2", lhs, math.nan, precondition=False, detail="r/sqrt(eps) + 2||z|| >= c||y||"
            )
        return BoundReport("error ASVD2", lhs, r + max(root, r / gap) * zn)
    raise TypeError(f"no error bound for {rule!r}")


def check_coeff_bound(rule, measure: L2Measure, z, x, B: float | None = None) -> BoundReport:
    """Coefficient bound ``||x|| <= min(cap, ||f - T_N z|| / sqrt(eps) + ||z||)``."""
    z = _as_vector(z)
    if B is None:
        B = measure.frame.family.frame_bounds[1]
    lhs = float(np.linalg.norm(x))
    zn = float(np.linalg.norm(z))
    general = _over_sqrt(measure.residual(z), rule.eps) + zn
    N = measure.frame.N
    if isinstance(rule, TSVD):
        return BoundReport("coeff TSVD", lhs, general)
    if isinstance(rule, ASVD1):
        return BoundReport("coeff ASVD1", lhs, min(rule.c * math.sqrt(B * N) * measure.norm_f, general))
    if isinstance(rule, ASVD2):
        return BoundReport("coeff ASVD2", lhs, min(rule.c * math.sqrt(B) * measure.norm_f, general))
    raise TypeError(f"no coefficient bound for {rule!r}")


def check_projection_bounds(sel: SelectedSpectrum, measure: L2Measure, z, x) -> tuple[BoundReport, BoundReport]:
    """Projection error and coefficient bounds for an arbitrary index set.

    Error: ``||f - P f|| <= ||f - T_N z|| + sqrt(max dropped sigma) ||z||``.
    Coefficients: ``||x|| <= ||f - T_N z|| / sqrt(min kept sigma) + ||z||``.
    """
    z = _as_vector(z)
    r = measure.residual(z)
    zn = float(np.linalg.norm(z))
    err = BoundReport("projection error", measure.residual(x), r + math.sqrt(sel.max_sigma_dropped) * zn)
    if sel.size == 0:
        coef = BoundReport("projection coefficients", 0.0, math.nan, precondition=False, detail="empty index set")
    else:
        coef = BoundReport("projection coefficients", float(np.linalg.norm(x)), _over_sqrt(r, sel.min_sigma_kept) + zn)
    return err, coef


def check_coef_convergence(sel: SelectedSpectrum, x, a_N, tail: float, frame_bounds=(1.0, 1.0)) -> BoundReport:
    """Distance of ``x`` (extended by zero) to the full frame coefficients.

    ``tail`` is the norm of the frame coefficients beyond index ``N - 1``.
    """
    A, B = frame_bounds
    a_N = np.asarray(a_N, dtype=float)
    lhs = math.hypot(float(np.linalg.norm(a_N - x)), tail)
    a_norm = math.hypot(float(np.linalg.norm(a_N)), tail)
    if sel.size == 0:
        return BoundReport("coefficient convergence", lhs, math.nan, precondition=False)
    lead = 1.0 + math.sqrt(B / sel.min_sigma_kept) if sel.min_sigma_kept > 0.0 else math.inf
    rhs = lead * tail + math.sqrt(sel.max_sigma_dropped / A) * a_norm
    return BoundReport("coefficient convergence", lhs, rhs)


def check_y_norm_bound(measure: L2Measure, z, y_norm: float) -> BoundReport:
    """``||y|| >= (||f||^2 - ||f - T_N z|| ||f||) / ||z||`` for nonzero ``z``."""
    z = _as_vector(z)
    zn = float(np.linalg.norm(z))
    if zn == 0.0:
        return BoundReport("||y|| lower bound", math.nan, y_norm, precondition=False)
    nf = measure.norm_f
    lower = (nf * nf - measure.residual(z) * nf) / zn
    return BoundReport("||y|| lower bound", lower, y_norm)


@dataclass(frozen=True)
class StableApproxWitness:
    """Coefficients ``z`` with ``||f - T_N z|| <= delta ||f||`` and ``||z|| <= a ||f||``."""

    a: float
    delta: float
    z: CandidateCoefficients
    measure: L2Measure

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError(f"a must be positive, got {self.a}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if not isinstance(self.z, CandidateCoefficients):
            object.__setattr__(self, "z", CandidateCoefficients(self.z))
        nf = self.measure.norm_f
        r = self.measure.residual(self.z)
        if r > self.delta * nf * (1.0 + REL_SLACK):
            raise ValueError(f"residual {r:.3e} exceeds delta*||f|| = {self.delta * nf:.3e}")
        if self.z.norm > self.a * nf * (1.0 + REL_SLACK):
            raise ValueError(f"||z|| = {self.z.norm:.3e} exceeds a*||f|| = {self.a * nf:.3e}")

    @classmethod
    def tightest(cls, measure: L2Measure, z, min_delta: float = 1e-14):
        """Witness with the smallest admissible ``a`` and ``delta`` for ``z``."""
        z = z if isinstance(z, CandidateCoefficients) else CandidateCoefficients(z)
        nf = measure.norm_f
        delta = max(measure.residual(z) / nf, min_delta)
        return cls(a=z.norm / nf, delta=delta, z=z, measure=measure)


def check_stable_approx(witness: StableApproxWitness, rule, x) -> BoundReport:
    """Error bound implied by the (a, delta)-stable approximation property."""
    a, d = witness.a, witness.delta
    nf = witness.measure.norm_f
    lhs = witness.measure.residual(x)
    root = math.sqrt(rule.eps)
    if isinstance(rule, TSVD):
        return BoundReport("stable approx TSVD", lhs, (d + a * root) * nf)
    if isinstance(rule, ASVD1):
        threshold = a * a / (1.0 - d)
        if not rule.c > threshold:
            return BoundReport("stable approx ASVD1", lhs, math.nan, False, f"c <= a^2/(1-delta) = {threshold:.3g}")
        extra = max(a * root, a * a * d / (rule.c * (1.0 - d) - a * a))
        return BoundReport("stable approx ASVD1", lhs, (d + extra) * nf)
    if isinstance(rule, ASVD2):
        if root == 0.0:
            return BoundReport("stable approx ASVD2", lhs, math.nan, False, "eps = 0")
        b = d / root
        denom = 1.0 - b * root
        threshold = a * (2.0 * a + b) / denom
        if not rule.c > threshold:
            return BoundReport("stable approx ASVD2", lhs, math.nan, False, f"c <= a(2a+b)/(1-b sqrt(eps)) = {threshold:.3g}")
        extra = max(a, a * a * b / (rule.c * denom - a * b - 2.0 * a * a))
        return BoundReport("stable approx ASVD2", lhs, (b + extra) * root * nf)
    raise TypeError(f"no stable-approximation bound for {rule!r}")


def _limit_precondition(rule, A):
    if isinstance(rule, TSVD):
        return True, ""
    if isinstance(rule, ASVD1):
        return rule.c > 1.0 / A, f"needs c > 1/A = {1.0 / A:g}"
    if isinstance(rule, ASVD2):
        return rule.c > 2.0 / A, f"needs c > 2/A = {2.0 / A:g}"
    return False, f"no limit statement for {rule.name}"


def check_limit_behavior(
    f: Callable,
    rule,
    N_list: Sequence[int],
    family: RestrictedLegendre | None = None,
    quad: QuadratureRule | None = None,
    relaxation: float = 1.5,
    abs_slack: float = 0.0,
) -> tuple[BoundReport, BoundReport, BoundReport]:
    """Finite-N stand-in for the three limsup statements, evaluated at ``max(N_list)``.

    Returns reports for ``||x|| <= R ||a_N||``,
    ``||a_N - x|| <= R sqrt(eps / A) ||a_N||`` and
    ``||f - P f|| <= R sqrt(eps) ||a_N|| + abs_slack``, where ``R`` is the
    relaxation factor and ``a_N`` the first N frame coefficients.
    """
    family = RestrictedLegendre() if family is None else family
    N_list = list(N_list)
    if not N_list or any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be nonempty and strictly increasing")
    N = N_list[-1]
    frame = TruncatedFrame(family, N)
    if quad is None:
        quad = map_rule(gauss_legendre_rule(N + 200), family.domain)
    measure = L2Measure(frame, f, quad)
    y = measure.analysis()
    fact = gram_factorization(family, N)
    sel = select(rule, fact, y)
    x = solve_selected(fact, y, sel)
    a_N = frame_coefficients_parseval(frame, f, quad)
    A = family.frame_bounds[0]
    ok, why = _limit_precondition(rule, A)
    a_norm = float(np.linalg.norm(a_N))
    root = math.sqrt(rule.eps)
    tag = f"{rule.name} N={N}"
    return (
        BoundReport(f"limit coeff norm {tag}", float(np.linalg.norm(x)), relaxation * a_norm, ok, why),
        BoundReport(
            f"limit coeff distance {tag}",
            float(np.linalg.norm(a_N - x)),
            relaxation * math.sqrt(rule.eps / A) * a_norm,
            ok,
            why,
        ),
        BoundReport(f"limit error {tag}", measure.residual(x), relaxation * root * a_norm + abs_slack, ok, why),
    )
