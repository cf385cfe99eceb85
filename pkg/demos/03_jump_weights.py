"""The weight nu that a jump in the weight function assigns to f(x+).

Three independent evaluations: the closed form in r = w(x+)/w(x-),
an integral over [0, 1], and the Gaussian integral it comes from.
"""

import numpy as np

from bdop import nu_closed_form, nu_from_gaussian, nu_from_integral

print(f"{'r':>8} {'closed':>20} {'u-integral':>20} {'gaussian':>20}")
for r in (0.0, 0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0, 100.0):
    c = nu_closed_form(r).nu
    i = nu_from_integral(1.0, r).nu
    g = nu_from_gaussian(1.0, r, 0.3).nu
    print(f"{r:>8} {c:20.16f} {i:20.16f} {g:20.16f}")

print("\nA weight that vanishes on the left puts everything on the right:")
print("  nu(w- = 0, w+ = 1) =", nu_from_integral(0.0, 1.0).nu)

print("\nSwapping the sides: nu(r) + nu(1/r) = 1")
for r in np.logspace(-2, 2, 5):
    print(f"  r = {r:8.3f}: {nu_closed_form(r).nu + nu_closed_form(1 / r).nu:.15f}")
