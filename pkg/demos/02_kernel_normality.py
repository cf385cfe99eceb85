"""The Durrmeyer kernel as a probability law, and its normal limit.

X_n is drawn by tossing n coins with bias x, then drawing from
Beta(k + 1, n - k + 1) given k heads.  Its density is the kernel
K_n(x, .), and sqrt(n) (X_n - x) approaches N(0, 2x(1 - x)).
"""

import math

import numpy as np

from bdop import KernelDistribution, normal_cdf
from bdop.stats import CdfFunction, dkw_bound, ecdf, ks_distance

spacer = "_" * 60
x = 0.2
var = 2 * x * (1 - x)
grid = np.linspace(-6 * math.sqrt(var), 6 * math.sqrt(var), 4001)
target = CdfFunction(lambda s: normal_cdf(s, 0.0, var))

print(f"x = {x}; target N(0, {var:.2f})")
print(f"{'n':>6} {'mean':>10} {'n*var':>10} {'KS exact':>12}")
for n in (64, 256, 1024, 4096):
    d = KernelDistribution(n, x)
    ks = ks_distance(CdfFunction(d.standardized_cdf), target, grid)
    print(f"{n:>6} {d.mean:10.6f} {n * d.variance:10.6f} {ks:12.3e}")

print(spacer)
print("\nMonte Carlo cross-check with the two-stage sampler (n = 256):")
d = KernelDistribution(256, x)
m = 20_000
draws = d.sample(seed=42, count=m)
emp = ecdf(math.sqrt(d.n) * (draws - x))
print(f"  KS(ecdf, exact)  = {ks_distance(emp, CdfFunction(d.standardized_cdf), grid):.4f}")
print(f"  KS(ecdf, normal) = {ks_distance(emp, target, grid):.4f}")
print(f"  99% DKW radius   = {dkw_bound(m):.4f}")

print(spacer)
print("\nThe two closed forms of the CDF agree to rounding:")
z = np.linspace(0, 1, 9)
print("  beta mixture :", np.round(d.cdf(z), 12))
print("  Bernstein    :", np.round(d.cdf(z, method="bernstein"), 12))
