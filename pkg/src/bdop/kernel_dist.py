"""The law ``K_n(x, t) dt`` as a Binomial-indexed mixture of Beta laws.

``X_n`` is drawn by flipping a coin with heads-probability ``x`` ``n`` times
and, given ``k`` heads, drawing from Beta(k + 1, n - k + 1).  Its CDF is

    F(z) = sum_k p_{n,k}(x) I_z(k + 1, n - k + 1).

Because ``I_z(k+1, n-k+1) = P(Bin(n+1, z) >= k+1)``, the same CDF is also the
degree ``n + 1`` Bernstein polynomial ``sum_j p_{n+1,j}(z) P(C_n <= j-1)``;
``method="bernstein"`` uses that form, which avoids continued fractions and is
several times faster when the CDF is needed at very many points.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .operators import durrmeyer_kernel
from .specfun import bernstein_basis, reg_inc_beta

__all__ = ["KernelDistribution", "gamma_variates", "beta_variates"]

# mixture components with weight below this are dropped (total < (n+1) * 1e-25)
_WEIGHT_CUTOFF = 1e-25
_CHUNK = 1 << 21


def gamma_variates(rng, shape, size=None):
    """Gamma(shape, 1) variates for ``shape >= 1`` by Marsaglia-Tsang rejection.

    ``shape`` may be an array; ``size`` defaults to its shape.
    """
    shape = np.asarray(shape, dtype=float)
    if np.any(shape < 1):
        raise DomainError("gamma_variates needs shape >= 1")
    target = shape.shape if size is None else size
    shape = np.broadcast_to(shape, target).ravel()
    d = shape - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * d)
    out = np.empty(shape.size)
    todo = np.arange(shape.size)
    while todo.size:
        z = rng.standard_normal(todo.size)
        u = rng.random(todo.size)
        v = 1.0 + c[todo] * z
        ok = v > 0
        v3 = np.where(ok, v**3, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            accept = ok & (
                np.log(u) < 0.5 * z * z + d[todo] - d[todo] * v3 + d[todo] * np.log(v3)
            )
        out[todo[accept]] = d[todo[accept]] * v3[accept]
        todo = todo[~accept]
    return out.reshape(target)


def beta_variates(rng, a, b):
    """Beta(a, b) variates as ``G_a / (G_a + G_b)`` (``a, b >= 1``)."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    ga = gamma_variates(rng, a)
    gb = gamma_variates(rng, b)
    return ga / (ga + gb)


@dataclass(frozen=True)
class KernelDistribution:
    """Distribution of ``X_n`` with density ``K_n(x, .)`` on [0, 1]."""

    n: int
    x: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError("n must be a positive integer")
        if not 0 < self.x < 1:
            raise DomainError("x must lie in (0, 1)")
        object.__setattr__(self, "n", int(self.n))

    def _mixture(self):
        k = np.arange(self.n + 1)
        w = bernstein_basis(self.n, k, self.x)
        keep = w >= _WEIGHT_CUTOFF
        return k[keep], w[keep]

    def cdf(self, z, method="beta"):
        """Exact ``P(X_n <= z)`` for any real ``z``.

        ``method`` is ``"beta"`` (incomplete-Beta mixture) or ``"bernstein"``
        (degree n+1 polynomial form); they agree to rounding.
        """
        z = np.asarray(z, dtype=float)
        flat = np.clip(z.ravel(), 0.0, 1.0)
        out = np.empty(flat.size)
        if method == "beta":
            k, w = self._mixture()
            step = max(1, _CHUNK // k.size)
            for s in range(0, flat.size, step):
                zz = flat[s : s + step, None]
                out[s : s + step] = reg_inc_beta(zz, k + 1.0, self.n - k + 1.0) @ w
        elif method == "bernstein":
            # coefficients P(C_n <= j - 1), j = 0..n+1
            k = np.arange(self.n + 1)
            coef = np.concatenate([[0.0], np.cumsum(bernstein_basis(self.n, k, self.x))])
            coef = np.minimum(coef, 1.0)
            j = np.arange(self.n + 2)
            step = max(1, _CHUNK // j.size)
            for s in range(0, flat.size, step):
                zz = flat[s : s + step, None]
                out[s : s + step] = bernstein_basis(self.n + 1, j[None, :], zz) @ coef
        else:
            raise ValueError(f"unknown method {method!r}")
        out = np.clip(out, 0.0, 1.0)
        out[flat <= 0] = 0.0
        out[flat >= 1] = 1.0
        out = out.reshape(z.shape)
        return out if out.ndim else float(out)

    def pdf(self, z):
        """Density ``K_n(x, z)`` (zero outside [0, 1])."""
        z = np.asarray(z, dtype=float)
        out = np.zeros(z.shape)
        inside = (z >= 0) & (z <= 1)
        if np.any(inside):
            out[inside] = durrmeyer_kernel(self.n, self.x, z[inside])
        return out if out.ndim else float(out)

    def standardized_cdf(self, s, method="beta"):
        """CDF of ``sqrt(n) (X_n - x)`` at ``s``."""
        s = np.asarray(s, dtype=float)
        return self.cdf(self.x + s / math.sqrt(self.n), method=method)

    @property
    def mean(self):
        return (self.n * self.x + 1.0) / (self.n + 2.0)

    @property
    def variance(self):
        """Closed form of ``E Var(B | C) + Var E(B | C)``, ``C ~ Bin(n, x)``.

        ``Var(B | k) = (k+1)(n-k+1) / ((n+2)^2 (n+3))`` and
        ``E[(k+1)(n-k+1)] = n + 1 + n^2 x - n x (1-x) - n^2 x^2``.
        """
        n, x = self.n, self.x
        within = (n + 1 + n * n * x * (1 - x) - n * x * (1 - x)) / ((n + 2) ** 2 * (n + 3))
        between = n * x * (1 - x) / (n + 2) ** 2
        return within + between

    def moments(self):
        return self.mean, self.variance

    def sample(self, seed, count):
        """``count`` independent draws of ``X_n``; deterministic in ``seed``."""
        if count < 1:
            raise ValueError("count must be >= 1")
        rng = np.random.default_rng(np.uint64(seed))
        k = rng.binomial(self.n, self.x, size=count)
        return beta_variates(rng, k + 1.0, self.n - k + 1.0)
