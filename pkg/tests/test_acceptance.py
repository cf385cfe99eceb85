"""Acceptance criteria 1-9, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion with the measured values.
"""

import math
import time

import numpy as np
import pytest

from bdop.config import ExperimentConfig
from bdop.experiments import NOISE_FLOOR, lupas_sup_error, run_kernel_normality
from bdop.funcmodel import PiecewiseFunction
from bdop.kernel_dist import KernelDistribution
from bdop.limits import (
    appendix_convergence_check,
    lupas_limit_function,
    nu_closed_form,
    nu_from_gaussian,
    nu_from_integral,
)
from bdop.operators import (
    bernstein_op,
    durrmeyer_op,
    lupas_moment,
    lupas_op,
    weighted_durrmeyer_op,
)
from bdop.specfun import bernstein_basis
from bdop.stats import CdfFunction, assert_decreasing_trend, dkw_bound, ecdf, ks_distance

STEP = PiecewiseFunction.step(0.5, 0.0, 1.0)
ONE = PiecewiseFunction.constant(1.0)


def _fmt(values):
    return ", ".join(f"{v:.3e}" for v in values)


# -- 1 ------------------------------------------------------------------------


@pytest.mark.criterion(1, "kernel normality: KS nonincreasing, < 0.02 at n=4096, < 60 s per x")
@pytest.mark.parametrize("x", [0.2, 0.5, 0.8])
def test_kernel_normality(x, measure):
    cfg = ExperimentConfig("kernel-normality", x=x, n_values=[64, 256, 1024, 4096])
    start = time.process_time()
    report = run_kernel_normality(cfg)
    cpu = time.process_time() - start
    ks = report.column("ks_exact")
    measure(f"x={x}: KS = {_fmt(ks)} ({cpu:.1f} s CPU)")
    assert assert_decreasing_trend(ks)
    assert ks[-1] < 0.02
    assert cpu < 60.0


# -- 2 ------------------------------------------------------------------------


@pytest.mark.criterion(2, "variance constant: n Var(X_n) within 2% of 2x(1-x) at n=1e4")
@pytest.mark.parametrize("x", [0.3, 0.5])
def test_variance_constant(x, measure):
    d = KernelDistribution(10_000, x)
    ratio = d.n * d.variance / (2 * x * (1 - x))
    measure(f"x={x}: n Var / 2x(1-x) = {ratio:.6f}")
    assert abs(ratio - 1) < 0.02


# -- 3 ------------------------------------------------------------------------


@pytest.mark.criterion(3, "unweighted jump limit 1/2: error < 0.01 at n=2048, decreasing")
def test_guo_limit(measure):
    errs = [abs(durrmeyer_op(STEP, n, 0.5) - 0.5) for n in (128, 512, 2048)]
    measure(f"x=0.5: |M_n(step) - 1/2| = {_fmt(errs)} (zero up to round-off by symmetry)")
    assert errs[-1] < 0.01
    assert assert_decreasing_trend(errs, 0.0, NOISE_FLOOR)


@pytest.mark.criterion(3, "unweighted jump limit 1/2: error < 0.01 at n=2048, decreasing")
def test_guo_limit_off_centre(measure):
    # same limit at a jump away from 1/2, where the error is not forced to vanish
    f = PiecewiseFunction.step(0.3, 0.0, 1.0)
    errs = [abs(durrmeyer_op(f, n, 0.3) - 0.5) for n in (128, 512, 2048)]
    measure(f"x=0.3: |M_n(step) - 1/2| = {_fmt(errs)}")
    assert errs[-1] < 0.01
    assert all(b < a for a, b in zip(errs, errs[1:]))


# -- 4 ------------------------------------------------------------------------


@pytest.mark.criterion(4, "weighted jump limit 2 - 2 ln 2: decreasing, final error < 0.02")
def test_weighted_limit(measure):
    w = PiecewiseFunction.step(0.5, 1.0, 2.0)
    target = 2 - 2 * math.log(2)
    vals = [weighted_durrmeyer_op(STEP, w, n, 0.5) for n in (128, 512, 2048)]
    errs = [abs(v - target) for v in vals]
    measure(f"M_nw = {', '.join(f'{v:.8f}' for v in vals)}; error = {_fmt(errs)}")
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 0.02


# -- 5 ------------------------------------------------------------------------


@pytest.mark.criterion(5, "three-path nu agreement within 1e-8, Gaussian path x-independent")
def test_three_path_nu(measure):
    worst = worst_x = 0.0
    for r in [0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0, 100.0]:
        c = nu_closed_form(r).nu
        i = nu_from_integral(1.0, r).nu
        g3 = nu_from_gaussian(1.0, r, 0.3).nu
        g7 = nu_from_gaussian(1.0, r, 0.7).nu
        worst = max(worst, abs(c - i), abs(i - g3), abs(c - g3))
        worst_x = max(worst_x, abs(g3 - g7))
    measure(f"max pairwise discrepancy {worst:.2e}; max |x=0.3 - x=0.7| {worst_x:.2e}")
    assert worst <= 1e-8
    assert worst_x <= 1e-8


# -- 6 ------------------------------------------------------------------------


@pytest.mark.criterion(6, "Lupas limit uniform on alpha in [-3, 3]: sup error decreasing")
def test_lupas_uniform(measure):
    alphas = np.linspace(-3, 3, 61)
    errs = [lupas_sup_error(STEP, 0.5, n, alphas) for n in (64, 256, 1024)]
    measure(f"sup error = {_fmt(errs)}")
    assert all(b < a for a, b in zip(errs, errs[1:]))
    # the limit curve itself: Psi(-alpha) f(x-) + (1 - Psi(-alpha)) f(x+)
    assert lupas_limit_function(STEP, 0.5, 0.0) == 0.5


# -- 7 ------------------------------------------------------------------------


@pytest.mark.criterion(7, "standardized Beta pdf: sup error strictly decreasing, < 0.01 at s=1e4, gamma=0.5")
@pytest.mark.parametrize("gamma", [0.3, 0.5])
def test_appendix_pdf(gamma, measure):
    grid = np.linspace(-3, 3, 601)
    table = appendix_convergence_check(gamma, [1e2, 1e3, 1e4], grid)
    errs = [e for _, e in table]
    measure(f"gamma={gamma}: sup error = {_fmt(errs)}")
    assert all(b < a for a, b in zip(errs, errs[1:]))
    if gamma == 0.5:
        assert errs[-1] < 0.01


# -- 8 ------------------------------------------------------------------------


@pytest.mark.criterion(8, "sampler: ECDF of 1e5 draws inside the 99% DKW band for >= 48 of 50 seeds")
def test_sampler_fidelity(measure):
    d = KernelDistribution(50, 0.4)
    m = 100_000
    radius = dkw_bound(m, 0.01)
    exact = CdfFunction(lambda z: d.cdf(z, method="bernstein"))
    grid = np.linspace(0, 1, 2001)
    dists = [ks_distance(ecdf(d.sample(seed, m)), exact, grid) for seed in range(50)]
    inside = sum(v <= radius for v in dists)
    measure(f"{inside}/50 seeds inside radius {radius:.5f}; largest KS {max(dists):.5f}")
    assert inside >= 48


# -- 9 ------------------------------------------------------------------------

GRID = [(n, x) for n in (1, 5, 40, 300, 1000) for x in (0.01, 0.3, 0.5, 0.97)]


def _random_nonneg(rng):
    cuts = np.sort(rng.choice(np.arange(1, 20) / 20, size=rng.integers(0, 4), replace=False))
    edges = np.concatenate([[0.0], cuts, [1.0]])
    return PiecewiseFunction.from_intervals(
        [(lo, hi, rng.uniform(0, 3, rng.integers(1, 5))) for lo, hi in zip(edges[:-1], edges[1:])]
    )


def _plus(f, h):
    edges = sorted(set(f.edges) | set(h.edges))
    out = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        out.append((lo, hi, np.polynomial.polynomial.polyadd(f._piece_at(mid).coeffs, h._piece_at(mid).coeffs)))
    return PiecewiseFunction.from_intervals(out)


def _ops(f, n, x, w):
    return np.array(
        [bernstein_op(f, n, x), durrmeyer_op(f, n, x), weighted_durrmeyer_op(f, w, n, x), lupas_op(f, n, x)]
    )


@pytest.mark.criterion(9, "operator algebra suite green; whole suite < 5 min")
def test_operator_algebra(measure):
    start = time.perf_counter()
    w = PiecewiseFunction.step(0.6, 1.0, 3.0)

    # partition of unity
    t = np.linspace(0, 1, 101)
    pu = max(
        float(np.max(np.abs(bernstein_basis(n, np.arange(n + 1)[:, None], t[None, :]).sum(axis=0) - 1)))
        for n in range(1, 201)
    )
    assert pu <= 1e-12

    # constants are fixed points
    const = max(float(np.max(np.abs(_ops(ONE, n, x, w) - 1))) for n, x in GRID)
    assert const <= 1e-10

    # positivity and monotonicity on seeded random piecewise polynomials
    rng = np.random.default_rng(20240601)
    worst_neg = 0.0
    worst_order = 0.0
    for _ in range(30):
        f, h = _random_nonneg(rng), _random_nonneg(rng)
        g = _plus(f, h)
        n = int(rng.integers(1, 200))
        x = float(rng.uniform(0.01, 0.99))
        vf, vg = _ops(f, n, x, w), _ops(g, n, x, w)
        worst_neg = min(worst_neg, float(vf.min()))
        worst_order = max(worst_order, float(np.max(vf - vg)))
    assert worst_neg >= -1e-14
    assert worst_order <= 1e-12

    # Lupas against exact Beta moments
    lup = 0.0
    for n in (1, 2, 5, 10, 50, 100, 250, 500):
        for y in np.linspace(0, 1, 11):
            for m in range(7):
                f = PiecewiseFunction.polynomial([0.0] * m + [1.0])
                lup = max(lup, abs(lupas_op(f, n, y) - lupas_moment(n, y, m)))
    assert lup <= 1e-10

    # weighted operator with w = 1 is the plain operator
    fs = [
        PiecewiseFunction.polynomial([0.2, -1.0, 3.0]),
        PiecewiseFunction.step(0.37, 1.0, -2.0),
        PiecewiseFunction.from_intervals([(0, 0.5, [0, 1]), (0.5, 1, [2, 0, -1])]),
    ]
    red = max(abs(weighted_durrmeyer_op(f, ONE, n, x) - durrmeyer_op(f, n, x)) for f in fs for n, x in GRID)
    assert red <= 1e-10

    measure(
        f"unity {pu:.1e}, constants {const:.1e}, min value {worst_neg:.1e}, "
        f"order violation {worst_order:.1e}, Lupas moments {lup:.1e}, w=1 reduction {red:.1e} "
        f"({time.perf_counter() - start:.1f} s)"
    )
