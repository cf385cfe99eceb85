"""Four Bernstein-type operators applied to a smooth function and to a jump."""

import math

import numpy as np

from bdop import (
    ExprPiece,
    PiecewiseFunction,
    bernstein_op,
    durrmeyer_op,
    lupas_moment,
    lupas_op,
    weighted_durrmeyer_op,
)

spacer = "_" * 60

f = PiecewiseFunction.from_intervals([(0, 1, ExprPiece("sin", 1.0, 2 * math.pi))])
x = 0.3
print("f(t) = sin(2 pi t), evaluated at x =", x, "-> f(x) =", round(f(x), 6))
print(f"{'n':>6} {'B_n':>12} {'M_n':>12} {'L_n':>12}")
for n in (8, 32, 128, 512):
    print(f"{n:>6} {bernstein_op(f, n, x):12.8f} {durrmeyer_op(f, n, x):12.8f} {lupas_op(f, n, x):12.8f}")

print(spacer)
print("\nPolynomial pieces are integrated exactly (moment ratios times incomplete")
print("Beta probabilities), so the Lupas operator reproduces Beta moments:")
for m in range(5):
    t_m = PiecewiseFunction.polynomial([0.0] * m + [1.0])
    print(f"  m={m}: L_8(t^m)(0.25) = {lupas_op(t_m, 8, 0.25):.15f}   exact {lupas_moment(8, 0.25, m):.15f}")

print(spacer)
print("\nAt a jump the Durrmeyer operator splits the difference:")
step = PiecewiseFunction.step(0.3, 0.0, 1.0)
for n in (128, 512, 2048):
    print(f"  n={n:5d}: M_n(step)(0.3) = {durrmeyer_op(step, n, 0.3):.6f}")

print("\n...unless a weight with its own jump tilts the balance (w = 1 | 2):")
w = PiecewiseFunction.step(0.3, 1.0, 2.0)
for n in (128, 512, 2048):
    print(f"  n={n:5d}: M_nw(step)(0.3) = {weighted_durrmeyer_op(step, w, n, 0.3):.6f}")
print(f"  2 - 2 ln 2 = {2 - 2 * math.log(2):.6f}")

print(spacer)
print("\nPositivity: a nonnegative function maps to nonnegative values.")
rng = np.random.default_rng(1)
g = PiecewiseFunction.from_intervals([(0, 0.5, rng.uniform(0, 1, 3)), (0.5, 1, rng.uniform(0, 1, 2))])
print("  min over x of M_40(g)(x):", min(durrmeyer_op(g, 40, xx) for xx in np.linspace(0.01, 0.99, 50)))
