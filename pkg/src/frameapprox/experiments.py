"""Config-driven N-sweeps, the built-in target functions, and CSV output.

A sweep factors the system once per N, applies every configured method to
the shared factorization, measures the L2 error with a quadrature rule fixed
for the whole sweep, and runs the bound checkers on each cell.

Config files hold one ``key = value`` setting per line::

    family = restricted_legendre
    interval = -0.5, 0.5
    function = f1
    methods = TSVD(1e-15); ASVD1(1e-15, 15); Tikhonov(1e-15)
    N = 4, 8, 16, 32, 64, 128, 256
    mode = gram

See the README for the full key list.
"""

from __future__ import annotations

import configparser
import csv
import math
import re
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence, Union

import numpy as np

from .diagnostics import (
    BoundReport,
    CandidateCoefficients,
    L2Measure,
    StableApproxWitness,
    cap_report,
    check_coef_convergence,
    check_coeff_bound,
    check_error_bound,
    check_projection_bounds,
    check_limit_behavior,
    check_stable_approx,
    check_y_norm_bound,
)
from .frames import (
    AugmentedLogLegendre,
    CollocationGrid,
    RestrictedLegendre,
    TargetFunction,
    TruncatedFrame,
    chebyshev_grid,
    collocation_system,
)
from .polyquad import gauss_legendre_rule, graded_log_rule, legendre_orthonormal, map_rule
from .spectrum import (
    ASVD1,
    ASVD2,
    TSVD,
    Tikhonov,
    factor,
    gram_factorization,
    select,
    solve_selected,
    solve_tikhonov,
)

__all__ = [
    "CSV_HEADER",
    "DEFAULT_N",
    "SweepConfig",
    "SweepRecord",
    "SweepError",
    "builtin_function",
    "parse_method",
    "load_config",
    "run_sweep",
    "run_checks",
    "write_csv",
    "read_csv",
    "write_matrix_csv",
    "parse_config",
]

CSV_HEADER = (
    "N",
    "method",
    "epsilon",
    "c",
    "lambda_size",
    "error_l2",
    "coeff_norm",
    "y_norm",
    "min_sigma_kept",
    "max_sigma_dropped",
    "bound_checks_passed",
)
DEFAULT_N = (4, 8, 16, 32, 64, 128, 256)


class SweepError(RuntimeError):
    """A sweep cell failed to assemble or factor."""


def builtin_function(fid: str, params: dict | None = None) -> TargetFunction:
    """Registry of target functions.

    ``f1``, ``f2``, ``f3`` are smooth test functions; ``singular`` needs the
    parameter ``alpha``; ``phi`` is the orthonormal Legendre polynomial of
    degree ``n`` (a function lying exactly in the frame's span).

    Examples
    --------
    >>> round(builtin_function("f2")(0.0), 15)
    1.754385964912281
    """
    params = dict(params or {})
    if fid == "f1":
        g = lambda t: 1.0 / (1.0 + 75.0 * t * t)
    elif fid == "f2":
        g = lambda t: 1.0 / (0.57 - t)
    elif fid == "f3":
        g = lambda t: np.exp(np.sin(20.0 * t + 0.5)) * np.sqrt(1.0 + t) * np.cos(10.0 * t)
    elif fid == "singular":
        if "alpha" not in params:
            raise ValueError("function 'singular' requires the parameter alpha")
        alpha = float(params["alpha"])
        params["alpha"] = alpha
        g = lambda t: np.exp(np.sin(15.0 * t + 0.5)) + np.log(t) * np.cos(alpha * t)
    elif fid == "phi":
        n = int(params.get("n", 0))
        params["n"] = n
        g = lambda t: legendre_orthonormal(n, t)
    else:
        raise ValueError(f"unknown function id {fid!r}; expected one of f1, f2, f3, singular, phi")

    def evaluator(t):
        out = g(np.asarray(t, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    return TargetFunction(evaluator, fid, params)


_METHOD_RE = re.compile(r"^\s*(TSVD|ASVD1|ASVD2|Tikhonov)\s*\(([^)]*)\)\s*$", re.IGNORECASE)
_CANON = {"tsvd": TSVD, "asvd1": ASVD1, "asvd2": ASVD2, "tikhonov": Tikhonov}


def parse_method(text: str):
    """Parse ``TSVD(eps)``, ``ASVD1(eps, c)``, ``ASVD2(eps, c)`` or ``Tikhonov(lambda)``."""
    m = _METHOD_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse method {text!r}")
    cls = _CANON[m.group(1).lower()]
    args = [float(a) for a in m.group(2).split(",") if a.strip()]
    expected = 2 if cls in (ASVD1, ASVD2) else 1
    if len(args) != expected:
        raise ValueError(f"{cls.__name__} takes {expected} argument(s), got {text!r}")
    return cls(*args)


def _method_label(rule) -> str:
    if isinstance(rule, Tikhonov):
        return f"Tikhonov({rule.lam:g})"
    if rule.c is None:
        return f"{rule.name}({rule.eps:g})"
    return f"{rule.name}({rule.eps:g}, {rule.c:g})"


@dataclass(frozen=True)
class SweepConfig:
    """Settings for one N-sweep.

    ``function`` is a built-in id (with ``params``) or a ready
    :class:`TargetFunction`. ``quad_extra`` sets the Gauss order
    ``max(N) + quad_extra`` used for every right-hand side and error norm in
    Gram mode; ``error_quad_base`` is the minimum per-panel order of the
    graded rule used for errors in collocation mode.
    """

    family: Union[RestrictedLegendre, AugmentedLogLegendre] = field(default_factory=RestrictedLegendre)
    function: Union[str, TargetFunction] = "f1"
    params: dict = field(default_factory=dict)
    methods: tuple = (TSVD(1e-15),)
    N_list: tuple = DEFAULT_N
    mode: str = "gram"
    oversampling: float = 2.0
    collocation_opt_in: bool = False
    quad_extra: int = 200
    error_quad_base: int = 24
    limit_N: int | None = None
    output: str | None = None

    def __post_init__(self):
        N_list = tuple(int(n) for n in self.N_list)
        if any(b <= a for a, b in zip(N_list, N_list[1:])):
            raise ValueError(f"N list must be strictly increasing, got {N_list}")
        if N_list and N_list[0] < 1:
            raise ValueError("N values must be positive")
        object.__setattr__(self, "N_list", N_list)
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.mode not in ("gram", "collocation"):
            raise ValueError(f"mode must be 'gram' or 'collocation', got {self.mode!r}")
        if self.mode == "gram" and not isinstance(self.family, RestrictedLegendre):
            raise ValueError("Gram mode is only available for the restricted Legendre frame")
        if self.mode == "collocation":
            if not (isinstance(self.family, AugmentedLogLegendre) or self.collocation_opt_in):
                raise ValueError("collocation mode needs the augmented family or collocation_opt_in = true")
            if not self.oversampling >= 1.0:
                raise ValueError(f"oversampling ratio must be at least 1, got {self.oversampling}")
        if self.quad_extra < 0:
            raise ValueError("quad_extra must be nonnegative")

    def target(self) -> TargetFunction:
        if isinstance(self.function, TargetFunction):
            return self.function
        return builtin_function(self.function, self.params)


def _floats(text):
    return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]


def _bool(text):
    v = text.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_KNOWN_KEYS = {
    "family", "interval", "k", "function", "alpha", "n_param", "methods", "n", "mode",
    "oversampling", "collocation_opt_in", "quad_extra", "error_quad_base", "limit_n", "output",
}


def load_config(path) -> SweepConfig:
    """Read a flat ``key = value`` config file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text, source=str(path))


def parse_config(text: str, source: str = "<string>") -> SweepConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    parser.read_string("[sweep]\n" + text, source=source)
    raw = dict(parser["sweep"])
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ValueError(f"{source}: unknown config keys {sorted(unknown)}")

    fam = raw.get("family", "restricted_legendre").strip().lower()
    if fam == "restricted_legendre":
        lo, hi = _floats(raw.get("interval", "-0.5, 0.5"))
        family = RestrictedLegendre(lo, hi)
    elif fam == "augmented_log_legendre":
        family = AugmentedLogLegendre(int(raw.get("k", "4")))
    else:
        raise ValueError(f"{source}: unknown family {fam!r}")

    params = {}
    if "alpha" in raw:
        params["alpha"] = float(raw["alpha"])
    if "n_param" in raw:
        params["n"] = int(raw["n_param"])
    methods = tuple(parse_method(m) for m in raw.get("methods", "TSVD(1e-15)").split(";") if m.strip())
    N_list = tuple(int(v) for v in _floats(raw["n"])) if "n" in raw else DEFAULT_N
    limit_N = int(raw["limit_n"]) if raw.get("limit_n", "").strip() else None
    return SweepConfig(
        family=family,
        function=raw.get("function", "f1").strip(),
        params=params,
        methods=methods,
        N_list=N_list,
        mode=raw.get("mode", "gram").strip().lower(),
        oversampling=float(raw.get("oversampling", "2")),
        collocation_opt_in=_bool(raw.get("collocation_opt_in", "false")),
        quad_extra=int(raw.get("quad_extra", "200")),
        error_quad_base=int(raw.get("error_quad_base", "24")),
        limit_N=limit_N,
        output=raw.get("output"),
    )


@dataclass(frozen=True)
class SweepRecord:
    """One (N, method) cell; ``reports`` holds every bound check run on it."""

    N: int
    method: str
    epsilon: float
    c: float
    lambda_size: int
    error_l2: float
    coeff_norm: float
    y_norm: float
    min_sigma_kept: float
    max_sigma_dropped: float
    bound_checks_passed: int
    reports: tuple = field(default=(), compare=False, repr=False)
    x: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def checks_applicable(self) -> int:
        return sum(r.precondition for r in self.reports)

    @property
    def failures(self) -> list[BoundReport]:
        return [r for r in self.reports if not r.passed]

    def row(self) -> list:
        return [getattr(self, k) for k in CSV_HEADER]


@contextmanager
def _cell(N, rule):
    try:
        yield
    except Exception as exc:
        raise SweepError(f"sweep cell N={N}, method={_method_label(rule)} failed: {exc}") from exc


def _solve(fact, y, sel, rule):
    if isinstance(rule, Tikhonov):
        return solve_tikhonov(fact, y, rule.lam)
    return solve_selected(fact, y, sel)


def _gram_checks(rule, measure, x, y_norm, sel, a_N, tail):
    if isinstance(rule, Tikhonov):
        zs = [CandidateCoefficients(a_N, "a_N"), CandidateCoefficients(x, "x")]
        return [check_y_norm_bound(measure, z, y_norm) for z in zs]
    reports = [cap_report(rule, x, y_norm, measure.frame.N)]
    for z in (CandidateCoefficients(np.zeros_like(x), "0"), CandidateCoefficients(a_N, "a_N"),
              CandidateCoefficients(x, "x")):
        reports.append(check_error_bound(rule, measure, z, x, y_norm))
        reports.append(check_coeff_bound(rule, measure, z, x))
        reports.extend(check_projection_bounds(sel, measure, z, x))
        reports.append(check_y_norm_bound(measure, z, y_norm))
    reports.append(check_coef_convergence(sel, x, a_N, tail, measure.frame.family.frame_bounds))
    try:
        witness = StableApproxWitness.tightest(measure, a_N)
    except ValueError:
        witness = None
    if witness is not None:
        reports.append(check_stable_approx(witness, rule, x))
    return reports


def _run_gram(config: SweepConfig, f: TargetFunction):
    family = config.family
    quad = map_rule(gauss_legendre_rule(max(config.N_list) + config.quad_extra), family.domain)
    for N in config.N_list:
        frame = TruncatedFrame(family, N)
        try:
            measure = L2Measure(frame, f, quad)
            fact = gram_factorization(family, N)
        except Exception as exc:
            raise SweepError(f"assembly or factorization failed at N={N}: {exc}") from exc
        y = measure.analysis()
        y_norm = float(np.linalg.norm(y))
        a_N = y  # Parseval frame: the frame coefficients are the analysis vector
        tail = math.sqrt(max(measure.norm_f**2 - y_norm**2, 0.0))
        for rule in config.methods:
            with _cell(N, rule):
                sel = select(rule, fact, y)
                x = _solve(fact, y, sel, rule)
                reports = _gram_checks(rule, measure, x, y_norm, sel, a_N, tail)
                rec = _record(N, rule, sel, x, measure.residual(x), y_norm, reports)
            yield rec


def _run_collocation(config: SweepConfig, f: TargetFunction):
    family = config.family
    for N in config.N_list:
        frame = TruncatedFrame(family, N)
        M = int(math.ceil(config.oversampling * N))
        try:
            grid = chebyshev_grid(M)
            lo, hi = family.domain
            if (lo, hi) != (0.0, 1.0):
                grid = CollocationGrid(M, lo + (hi - lo) * grid.nodes)
            system = collocation_system(frame, f, grid)
            fact = factor(system)
            if isinstance(family, AugmentedLogLegendre):
                quad = graded_log_rule(family.domain, base_order=max(config.error_quad_base, N + 24))
            else:
                quad = map_rule(gauss_legendre_rule(N + config.quad_extra), family.domain)
            measure = L2Measure(frame, f, quad)
        except Exception as exc:
            raise SweepError(f"assembly or factorization failed at N={N}: {exc}") from exc
        y = system.rhs
        y_norm = float(np.linalg.norm(y))
        for rule in config.methods:
            with _cell(N, rule):
                sel = select(rule, fact, y)
                x = _solve(fact, y, sel, rule)
                reports = [] if isinstance(rule, Tikhonov) else [cap_report(rule, x, y_norm, N)]
                rec = _record(N, rule, sel, x, measure.residual(x), y_norm, reports)
            yield rec


def _record(N, rule, sel, x, err, y_norm, reports):
    tik = isinstance(rule, Tikhonov)
    return SweepRecord(
        N=N,
        method=rule.name,
        epsilon=rule.lam if tik else rule.eps,
        c=math.nan if rule.c is None else float(rule.c),
        lambda_size=sel.size,
        error_l2=err,
        coeff_norm=float(np.linalg.norm(x)),
        y_norm=y_norm,
        min_sigma_kept=sel.min_sigma_kept,
        max_sigma_dropped=sel.max_sigma_dropped,
        bound_checks_passed=sum(r.verified for r in reports),
        reports=tuple(reports),
        x=x,
    )


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """One record per (N, method), ordered by N and then by configured method order."""
    if not config.N_list:
        return []
    f = config.target()
    runner = _run_gram if config.mode == "gram" else _run_collocation
    return list(runner(config, f))


def run_checks(config: SweepConfig, records: Sequence[SweepRecord] | None = None) -> list[tuple[str, BoundReport]]:
    """Every bound report of a sweep, labelled by cell, plus limit checks when ``limit_N`` is set."""
    if records is None:
        records = run_sweep(config)
    out = [(f"N={r.N} {r.method}", rep) for r in records for rep in r.reports]
    if config.limit_N is not None:
        if config.mode != "gram":
            raise ValueError("limit checks need Gram mode")
        f = config.target()
        grid = tuple(n for n in config.N_list if n < config.limit_N) + (config.limit_N,)
        for rule in config.methods:
            if isinstance(rule, Tikhonov):
                continue
            for rep in check_limit_behavior(f, rule, grid, family=config.family, abs_slack=1e-6):
                out.append((f"limit {rule.name}", rep))
    return out


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def write_csv(records: Sequence[SweepRecord], path) -> None:
    """Write records with the fixed header; floats use 17 significant digits."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for rec in records:
                w.writerow([_fmt(v) for v in rec.row()])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv(path) -> list[dict]:
    """Rows of a sweep CSV with numeric fields converted."""
    ints = {"N", "lambda_size", "bound_checks_passed"}
    rows = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append({k: (v if k == "method" else int(v) if k in ints else float(v)) for k, v in row.items()})
    return rows


def write_matrix_csv(matrix, path) -> None:
    """Plain CSV of a matrix, one row per line, 17 significant digits."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            for row in np.asarray(matrix, dtype=float):
                w.writerow([_fmt(v) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc
