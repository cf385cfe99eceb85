"""Closed-form limit objects.

* the jump weight ``nu`` splitting the limit of the weighted operator between
  ``f(x-)`` and ``f(x+)``, by three independent routes (closed form in the
  weight ratio ``r``, an integral over ``u`` in [0, 1], and the Gaussian
  integral it comes from);
* the predicted limit ``(1 - nu) f(x-) + nu f(x+)``;
* the limit of the Lupas operator along ``k = xn + alpha sqrt(n)``;
* the density of the standardized Beta variable and its normal target.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HypothesisViolation
from .quadrature import QuadratureRule, gauss_legendre, integrate
from .specfun import _log_power_terms, normal_cdf, normal_pdf

__all__ = [
    "NuResult",
    "StandardizedBetaParams",
    "nu_closed_form",
    "nu_from_integral",
    "nu_from_gaussian",
    "predicted_limit",
    "lupas_limit_function",
    "standardized_beta_pdf",
    "appendix_convergence_check",
]

_SERIES_RADIUS = 1e-4


@dataclass(frozen=True)
class NuResult:
    nu: float
    r: float
    path: str

    def __float__(self):
        return self.nu


def _ratio(w_left, w_right):
    if w_left < 0 or w_right < 0:
        raise DomainError("weight limits must be non-negative")
    if w_left == 0 and w_right == 0:
        raise HypothesisViolation("w(x-) and w(x+) both vanish")
    return math.inf if w_left == 0 else w_right / w_left


def nu_closed_form(r):
    """``nu = (r^2 - r (1 + ln r)) / (r - 1)^2``.

    Extended continuously by ``nu(0) = 0``, ``nu(inf) = 1``; within
    ``|r - 1| < 1e-4`` the Taylor series
    ``1/2 + sum_j (-1)^(j+1) (r-1)^j / ((j+1)(j+2))`` replaces the 0/0 form.
    """
    r = float(r)
    if math.isnan(r) or r < 0:
        raise DomainError("r must be >= 0 (or +inf)")
    if r == 0:
        nu = 0.0
    elif math.isinf(r):
        nu = 1.0
    elif abs(r - 1.0) < _SERIES_RADIUS:
        e = r - 1.0
        nu = 0.5 + sum((-1) ** (j + 1) * e**j / ((j + 1) * (j + 2)) for j in range(1, 9))
    else:
        # same expression as r (r - 1 - ln r) / (r - 1)^2, minus the cancellation
        e = r - 1.0
        nu = r * (e - math.log1p(e)) / (e * e)
    return NuResult(nu, r, "closed-form")


_U_RULE = QuadratureRule("adaptive", panels=4, nodes_per_panel=20, abs_tol=1e-13)


def nu_from_integral(w_left, w_right):
    """``nu = int_0^1 w+ (1-u) / (w- u + w+ (1-u)) du`` by adaptive quadrature."""
    r = _ratio(w_left, w_right)
    if w_left == 0:
        return NuResult(1.0, r, "u-integral")
    if w_right == 0:
        return NuResult(0.0, r, "u-integral")

    def g(u):
        return w_right * (1.0 - u) / (w_left * u + w_right * (1.0 - u))

    return NuResult(float(integrate(g, 0.0, 1.0, _U_RULE)), r, "u-integral")


def nu_from_gaussian(w_left, w_right, x):
    """``nu`` as the Gaussian integral over ``alpha ~ N(0, x(1-x))``.

    The integrand ``w+ (1 - Psi(-alpha)) / (w- Psi(-alpha) + w+ (1 - Psi(-alpha)))``
    is integrated against the normal density on ``[-8 sigma, 8 sigma]`` with
    a composite Gauss-Legendre rule; the neglected tails carry < 1.3e-15 mass.
    The result does not depend on ``x``.
    """
    if not 0 < x < 1:
        raise DomainError("x must lie in (0, 1)")
    r = _ratio(w_left, w_right)
    var = x * (1.0 - x)
    sigma = math.sqrt(var)

    def g(alpha):
        psi = normal_cdf(-alpha, 0.0, var)
        num = w_right * (1.0 - psi)
        return num / (w_left * psi + num) * normal_pdf(alpha, 0.0, var)

    nu = float(gauss_legendre(g, -8.0 * sigma, 8.0 * sigma, panels=64, nodes_per_panel=20))
    return NuResult(nu, r, "gaussian-integral")


def _limits(f, x):
    if hasattr(f, "one_sided_limits"):
        return f.one_sided_limits(x)
    raise TypeError("expected a PiecewiseFunction")


def predicted_limit(f, w, x):
    """Limit of the weighted Bernstein-Durrmeyer operator at ``x``."""
    if not 0 < x < 1:
        raise DomainError("x must lie in (0, 1)")
    fl = _limits(f, x)
    wl = _limits(w, x)
    r = _ratio(wl.left, wl.right)
    nu = nu_from_integral(wl.left, wl.right) if wl.left == 0 else nu_closed_form(r)
    return (1.0 - nu.nu) * fl.left + nu.nu * fl.right


def lupas_limit_function(f, x, alpha):
    """``Psi(-alpha) f(x-) + (1 - Psi(-alpha)) f(x+)``, Psi the N(0, x(1-x)) CDF."""
    if not 0 < x < 1:
        raise DomainError("x must lie in (0, 1)")
    fl = _limits(f, x)
    psi = normal_cdf(-np.asarray(alpha, dtype=float), 0.0, x * (1.0 - x))
    out = psi * fl.left + (1.0 - psi) * fl.right
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class StandardizedBetaParams:
    """Beta(r1, r2) centred at its mean ratio and scaled by ``sqrt(r1 + r2)``.

    ``gamma`` is the ratio the parameters are heading to; it only fixes the
    normal target ``N(0, gamma (1 - gamma))``.
    """

    r1: float
    r2: float
    gamma: float = None

    def __post_init__(self):
        if not (self.r1 > 0 and self.r2 > 0):
            raise DomainError("r1 and r2 must be positive")
        if self.gamma is None:
            object.__setattr__(self, "gamma", self.r1 / (self.r1 + self.r2))
        if not 0 < self.gamma < 1:
            raise DomainError("gamma must lie in (0, 1)")

    @property
    def support(self):
        root = math.sqrt(self.r1 + self.r2)
        return -self.r1 / root, self.r2 / root


def standardized_beta_pdf(params, y):
    """Density of ``sqrt(r1 + r2) (beta - r1 / (r1 + r2))``, beta ~ Beta(r1, r2)."""
    r1, r2 = float(params.r1), float(params.r2)
    c = r1 + r2
    root = math.sqrt(c)
    y = np.asarray(y, dtype=float)
    lo, hi = params.support
    out = np.zeros(y.shape)
    inside = (y > lo) & (y < hi)
    if np.any(inside):
        yi = y[inside]
        # both coordinates formed directly so neither suffers 1 - t cancellation
        t = r1 / c + yi / root
        tc = r2 / c - yi / root
        n = yi.size
        log_pdf = _log_power_terms(np.full(n, r1), np.full(n, r2), t, tc) - np.log(t * tc)
        out[inside] = np.exp(log_pdf) / root
    return out if out.ndim else float(out)


def appendix_convergence_check(gamma, scales, grid):
    """Sup-norm gap between the standardized Beta density and its normal target.

    For each scale ``s`` uses ``r1 = gamma s``, ``r2 = (1 - gamma) s`` and
    returns rows ``(s, sup_y |f_Y(y) - phi(y)|)`` over the points ``grid``.
    """
    if not 0 < gamma < 1:
        raise DomainError("gamma must lie in (0, 1)")
    scales = [float(s) for s in scales]
    if any(b <= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be increasing")
    grid = np.asarray(grid, dtype=float)
    target = normal_pdf(grid, 0.0, gamma * (1.0 - gamma))
    rows = []
    for s in scales:
        p = StandardizedBetaParams(gamma * s, (1.0 - gamma) * s, gamma)
        rows.append((s, float(np.max(np.abs(standardized_beta_pdf(p, grid) - target)))))
    return rows
