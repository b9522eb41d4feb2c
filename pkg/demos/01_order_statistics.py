"""
Exact and asymptotic order statistics of Beta samples
=====================================================

The largest of n Beta(a, b) draws sits close to 1.  Its exact law is a
binomial sum over the incomplete Beta function; for large n the gap to 1
shrinks like n**(-1/b) and follows a generalized Gamma law.
"""

import numpy as np

from degx import BetaParams, RankSpec, Side, exact_order_stat_cdf, oracle_order_stat_moment, predict_extreme

# exact CDF of the maximum of 4000 Beta(1, 9) draws
p = BetaParams(1, 9)
n = 4000
for x in (0.4, 0.55, 0.6, 0.65, 0.8):
    print(f"P(max <= {x:.2f}) = {exact_order_stat_cdf(x, n, n, p):.6f}")

# asymptotic mean of the k-th largest: two closed forms against quadrature of
# the exact density
print()
print(f"{'k':>4} {'quadrature':>12} {'beta ratio':>12} {'simplified':>12}")
for k in (1, 2, 5, 20, 100):
    exact = oracle_order_stat_moment(n - k + 1, n, p)
    pred = predict_extreme(RankSpec(k), n, p)
    print(f"{k:>4} {exact:12.6f} {pred.mean_beta_ratio:12.6f} {pred.mean_simplified:12.6f}")

# the beta-ratio form tracks the exact mean; the simplified form drops the
# Gamma-function ratio and is off by O(1/k) in the tail distance
# The min side works the same way with a in place of b.
p = BetaParams(2, 4)
print()
for j in (1, 5, 20):
    exact = oracle_order_stat_moment(j, 1000, p)
    pred = predict_extreme(RankSpec(j, Side.MIN), 1000, p)
    print(f"j={j:>2}: quadrature {exact:.6f}  beta ratio {pred.mean_beta_ratio:.6f}  simplified {pred.mean_simplified:.6f}")

# the variance scales like k**(2/b - 1): flat in k when b = 2
ks = np.array([1, 10, 100])
v = [predict_extreme(RankSpec(int(k)), 10**6, BetaParams(1, 2)).var_beta_ratio for k in ks]
print()
print("variance of k-th largest, Beta(1, 2), n=1e6:", dict(zip(ks.tolist(), np.round(v, 10).tolist())))
