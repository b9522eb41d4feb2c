"""
Shifted power laws for ordered degrees
======================================

Ranked expected degrees are often summarized as c / (s + k)**gamma.  For Beta
weights the ranked tail instead follows 1 / (1 + (beta(a,b) b k / n)**(1/b));
fitting a shifted power law to it shows how close the two shapes are.
"""

import numpy as np

from degx import BetaParams, beta_decay_curve, fit_shifted_power_law, power_law_curve

n = 4000
p = BetaParams(1, 9)
k = np.arange(1, 201)
curve = np.array([beta_decay_curve(int(r), n, p) for r in k])

fit = fit_shifted_power_law(k, curve)
print(f"c = {fit.c:.4f}, s = {fit.s:.4f}, gamma = {fit.gamma:.5f}, log-space SSE = {fit.sse:.3e}")
resid = power_law_curve(k, fit) / curve - 1
print(f"largest relative misfit over k=1..200: {np.abs(resid).max():.2e}")

# the fitted exponent is small because the decay is only through k**(1/b)
for b in (2, 4, 9):
    q = BetaParams(1, b)
    f = fit_shifted_power_law(k, [beta_decay_curve(int(r), n, q) for r in k])
    print(f"b={b}: gamma = {f.gamma:.4f}, s = {f.s:.2f}")

# exact synthetic data are recovered to rounding error
f = fit_shifted_power_law(k, 2.0 / (5.0 + k) ** 0.5)
print(f"synthetic (2, 5, 0.5) -> ({f.c:.8f}, {f.s:.8f}, {f.gamma:.8f})")
