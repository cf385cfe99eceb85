"""The Lupas operator near a jump, and the normal limit of a rescaled Beta density."""

import math

import numpy as np

from bdop import PiecewiseFunction, lupas_limit_function, lupas_op
from bdop.limits import appendix_convergence_check

spacer = "_" * 60
step = PiecewiseFunction.step(0.5, 0.0, 1.0)
x = 0.5

print("Lupas operator evaluated at y = k/n, k = xn + alpha sqrt(n):")
print(f"{'alpha':>6} {'n=64':>10} {'n=1024':>10} {'limit':>10}")
for alpha in (-2.0, -1.0, 0.0, 1.0, 2.0):
    row = []
    for n in (64, 1024):
        k = min(max(x * n + alpha * math.sqrt(n), 0.0), n)
        row.append(lupas_op(step, n, k / n))
    print(f"{alpha:>6} {row[0]:10.6f} {row[1]:10.6f} {lupas_limit_function(step, x, alpha):10.6f}")

print(spacer)
print("\nsqrt(r1 + r2) (Beta(r1, r2) - r1/(r1 + r2)) against N(0, g(1 - g)):")
grid = np.linspace(-3, 3, 601)
for gamma in (0.3, 0.5):
    for s, err in appendix_convergence_check(gamma, [1e2, 1e3, 1e4, 1e5], grid):
        print(f"  gamma={gamma} s={s:8.0f}: sup error {err:.3e}")
