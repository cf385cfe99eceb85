"""Convergence experiments, one per limit theorem.

Each ``run_*`` function takes an :class:`~bdop.config.ExperimentConfig` and
returns an :class:`ExperimentReport`: a CSV table plus named pass/fail
criteria.  Rows (independent ``n`` values) are computed on a thread pool
sized by the ``BDOP_THREADS`` environment variable; output order is fixed.
"""

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import ExperimentConfig
from .errors import ConfigError
from .funcmodel import PiecewiseFunction
from .kernel_dist import KernelDistribution
from .limits import (
    appendix_convergence_check,
    lupas_limit_function,
    nu_closed_form,
    nu_from_gaussian,
    nu_from_integral,
    predicted_limit,
)
from .operators import lupas_op, weighted_durrmeyer_op
from .specfun import normal_cdf
from .stats import CdfFunction, assert_decreasing_trend, dkw_bound, ecdf, ks_distance

__all__ = [
    "ExperimentReport",
    "run_experiment",
    "run_kernel_normality",
    "run_bv_limit",
    "run_lupas_limit",
    "run_beta_pdf",
    "run_nu_table",
]

# distances this small are round-off; no trend is read into them
NOISE_FLOOR = 1e-12


@dataclass
class ExperimentReport:
    experiment: str
    header: list
    rows: list
    criteria: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.criteria)

    def column(self, name):
        i = self.header.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self):
        lines = [",".join(self.header)]
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.experiment}: {status} ({self.wall_time:.2f} s)"]
        for name, ok, detail in self.criteria:
            lines.append(f"  [{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        return "\n".join(lines)


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _map(func, items):
    threads = int(os.environ.get("BDOP_THREADS", "1") or 1)
    if threads <= 1:
        return [func(i) for i in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def _stream_seed(seed, n):
    # independent stream per (seed, n)
    return int(np.random.SeedSequence([seed, n]).generate_state(1, np.uint64)[0])


def _grid(cfg, default):
    lo, hi, pts = cfg.grid if cfg.grid is not None else default
    return np.linspace(lo, hi, pts)


def run_kernel_normality(cfg):
    """KS distance between the CDF of ``sqrt(n)(X_n - x)`` and N(0, 2x(1-x))."""
    x = cfg.x
    var = 2.0 * x * (1.0 - x)
    sigma = math.sqrt(var)
    n_values = cfg.n_values or [64, 256, 1024, 4096]
    grid = _grid(cfg, (-6.0 * sigma, 6.0 * sigma, 4001))
    target = CdfFunction(lambda s: normal_cdf(s, 0.0, var))
    tol = 0.02 if cfg.tolerance is None else cfg.tolerance

    def row(n):
        d = KernelDistribution(n, x)
        exact = CdfFunction(d.standardized_cdf)
        out = [n, ks_distance(exact, target, grid)]
        if cfg.mc_samples > 0:
            draws = d.sample(_stream_seed(cfg.seed, n), cfg.mc_samples)
            emp = ecdf(math.sqrt(n) * (draws - x))
            out += [ks_distance(emp, target, grid), dkw_bound(cfg.mc_samples)]
        return out

    rows = _map(row, n_values)
    header = ["n", "ks_exact"] + (["ks_mc", "dkw_bound"] if cfg.mc_samples > 0 else [])
    report = ExperimentReport("kernel-normality", header, rows)
    ks = report.column("ks_exact")
    report.criteria.append(
        ("ks_exact nonincreasing in n", assert_decreasing_trend(ks, 0.0, NOISE_FLOOR), _series(ks))
    )
    report.criteria.append((f"ks_exact < {tol:g} at n={n_values[-1]}", ks[-1] < tol, f"{ks[-1]:.3e}"))
    if cfg.mc_samples > 0:
        gaps = [abs(r[2] - r[1]) - r[3] for r in rows]
        report.criteria.append(
            ("|ks_mc - ks_exact| within DKW radius", all(g <= 0 for g in gaps), f"max excess {max(gaps):.3e}")
        )
    return report


def _series(values):
    return " > ".join(f"{v:.3e}" for v in values)


def _default_step(x):
    return PiecewiseFunction.step(x, 0.0, 1.0)


def run_bv_limit(cfg):
    """Weighted Bernstein-Durrmeyer values against their predicted limit."""
    x = cfg.x
    f = cfg.f or _default_step(x)
    w = cfg.w or PiecewiseFunction.constant(1.0)
    n_values = cfg.n_values or [128, 512, 2048]
    tol = 0.02 if cfg.tolerance is None else cfg.tolerance
    limit = predicted_limit(f, w, x)

    def row(n):
        value = weighted_durrmeyer_op(f, w, n, x)
        return [n, value, limit, abs(value - limit)]

    rows = _map(row, n_values)
    report = ExperimentReport("bv-limit", ["n", "M_nw_value", "predicted_limit", "abs_error"], rows)
    err = report.column("abs_error")
    report.criteria.append(
        ("abs_error decreasing in n", assert_decreasing_trend(err, 0.0, NOISE_FLOOR), _series(err))
    )
    report.criteria.append((f"abs_error < {tol:g} at n={n_values[-1]}", err[-1] < tol, f"{err[-1]:.3e}"))
    return report


def lupas_sup_error(f, x, n, alphas):
    """``sup_alpha |L_n(f)(k_n(alpha)/n) - limit(alpha)|`` with ``k_n = xn + alpha sqrt(n)``
    clamped to [0, n]."""
    k = np.clip(x * n + np.asarray(alphas) * math.sqrt(n), 0.0, n)
    values = np.array([lupas_op(f, n, kk / n) for kk in k])
    return float(np.max(np.abs(values - lupas_limit_function(f, x, alphas))))


def run_lupas_limit(cfg):
    """Uniform-in-alpha convergence of the Lupas operator along ``xn + alpha sqrt(n)``."""
    x = cfg.x
    f = cfg.f or _default_step(x)
    n_values = cfg.n_values or [64, 256, 1024]
    alphas = _grid(cfg, (-3.0, 3.0, 61))

    rows = _map(lambda n: [n, lupas_sup_error(f, x, n, alphas)], n_values)
    report = ExperimentReport("lupas-limit", ["n", "sup_error"], rows)
    err = report.column("sup_error")
    report.criteria.append(
        ("sup_error decreasing in n", assert_decreasing_trend(err, 0.0, NOISE_FLOOR), _series(err))
    )
    if cfg.tolerance is not None:
        report.criteria.append(
            (f"sup_error < {cfg.tolerance:g} at n={n_values[-1]}", err[-1] < cfg.tolerance, f"{err[-1]:.3e}")
        )
    return report


def run_beta_pdf(cfg):
    """Standardized Beta density vs N(0, gamma(1-gamma)) along r1 = gamma s, r2 = (1-gamma) s."""
    grid = _grid(cfg, (-3.0, 3.0, 601))
    tol = 0.01 if cfg.tolerance is None else cfg.tolerance
    rows = []
    report = ExperimentReport("beta-pdf", ["gamma", "scale", "sup_error"], rows)
    for g in cfg.gamma:
        table = appendix_convergence_check(g, cfg.scales, grid)
        rows.extend([g, s, e] for s, e in table)
        errs = [e for _, e in table]
        strict = all(b < a for a, b in zip(errs, errs[1:]))
        report.criteria.append((f"gamma={g:g}: sup_error strictly decreasing", strict, _series(errs)))
        report.criteria.append(
            (f"gamma={g:g}: sup_error < {tol:g} at scale {table[-1][0]:g}", errs[-1] < tol, f"{errs[-1]:.3e}")
        )
    return report


def run_nu_table(cfg):
    """The jump weight by closed form, u-integral and Gaussian integral."""
    tol = 1e-8 if cfg.tolerance is None else cfg.tolerance
    rows = []
    for r in cfg.r_values:
        if r < 0:
            raise ConfigError("r_values must be non-negative")
        closed = nu_closed_form(r).nu
        integral = nu_from_integral(1.0, r).nu
        gauss = nu_from_gaussian(1.0, r, cfg.x).nu
        spread = max(closed, integral, gauss) - min(closed, integral, gauss)
        rows.append([r, closed, integral, gauss, spread])
    report = ExperimentReport(
        "nu-table", ["r", "nu_closed", "nu_integral", "nu_gaussian", "max_discrepancy"], rows
    )
    worst = max(report.column("max_discrepancy"))
    report.criteria.append((f"max_discrepancy <= {tol:g}", worst <= tol, f"{worst:.3e}"))
    return report


_RUNNERS = {
    "kernel-normality": run_kernel_normality,
    "bv-limit": run_bv_limit,
    "lupas-limit": run_lupas_limit,
    "beta-pdf": run_beta_pdf,
    "nu-table": run_nu_table,
}


def run_experiment(cfg):
    """Dispatch on ``cfg.experiment`` and time the run."""
    if not isinstance(cfg, ExperimentConfig):
        raise TypeError("expected an ExperimentConfig")
    start = time.perf_counter()
    report = _RUNNERS[cfg.experiment](cfg)
    report.wall_time = time.perf_counter() - start
    return report
