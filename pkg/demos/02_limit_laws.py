"""
Limit laws of the rescaled extremes
===================================

n**(1/b) * (max - 1) converges to a reversed Weibull law.  For integer shapes
the finite-n law G_n is available in closed form, so the convergence can be
watched directly.
"""

import numpy as np

from degx import BetaParams, finite_n_cdf_Gn, gn_bracketed, limiting_cdf_G, limiting_kth_extreme_cdf

p = BetaParams(2, 3)
us = np.linspace(-1.5, -0.25, 6)
print("u      " + "  ".join(f"{u:7.2f}" for u in us))
for n in (10**2, 10**4, 10**6):
    print(f"n=1e{int(np.log10(n))}  " + "  ".join(f"{finite_n_cdf_Gn(u, n, p).value:7.4f}" for u in us))
print("limit  " + "  ".join(f"{limiting_cdf_G(u, p):7.4f}" for u in us))

# G_n is squeezed between the leading-term form with no correction and with
# the worst-case correction factor
u, n = -1.0, 1000
r = finite_n_cdf_Gn(u, n, p)
print()
print(f"G_n({u}) at n={n}: {gn_bracketed(u, n, p, r.f_ab_bound):.6f} <= {r.value:.6f} <= {gn_bracketed(u, n, p):.6f}")

# second and third largest: mass moves away from the endpoint
print()
for k in (1, 2, 3):
    print(f"k={k}: P(rescaled <= -1) = {limiting_kth_extreme_cdf(-1.0, k, p):.4f}")
