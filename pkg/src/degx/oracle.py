"""Quadrature oracle for moments of exact order statistics.

Independent of the asymptotic formulas: it integrates the exact finite-n
density of the ``j``-th smallest Beta variate.  That density is sharply
peaked for extreme ranks, so the unit interval is cut at quantiles of the
order statistic before handing each piece to an adaptive Gauss-Kronrod rule.
"""

import math
import warnings

from scipy import integrate, special, stats

from .errors import ConvergenceError, DomainError
from .theory import _check_rank, log_exact_order_stat_pdf

MAX_N = 100_000
REL_TOL = 1e-9

# Probability levels at which the integration range is split.  F(X_(j)) is
# Beta(j, n - j + 1), so mapping these levels through its quantile and then
# the Beta(a, b) quantile brackets the peak at every scale.
_LEVELS = (
    1e-16, 1e-12, 1e-8, 1e-5, 1e-3, 0.02, 0.1, 0.3, 0.5,
    0.7, 0.9, 0.98, 1 - 1e-3, 1 - 1e-5, 1 - 1e-8, 1 - 1e-12, 1 - 1e-16,
)


def _breakpoints(j, n, params):
    q = stats.beta.ppf(_LEVELS, j, n - j + 1)
    xs = special.betaincinv(params.a, params.b, q)
    pts = sorted({0.0, 1.0, *(float(x) for x in xs if 0.0 < x < 1.0)})
    return pts


def oracle_order_stat_moment(j, n, params, m=1):
    """``E[X_(j)**m]`` for the ``j``-th smallest of ``n`` iid Beta(a, b) draws.

    Raises :class:`ConvergenceError` if the summed error estimate exceeds a
    relative ``1e-9``.
    """
    j, n = _check_rank(j, n)
    if n > MAX_N:
        raise DomainError(f"oracle supports n <= {MAX_N}, got {n}")
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")

    def integrand(x):
        if x <= 0.0 or x >= 1.0:
            return 0.0
        lp = log_exact_order_stat_pdf(x, j, n, params)
        return math.exp(m * math.log(x) + lp) if lp > -math.inf else 0.0

    pts = _breakpoints(j, n, params)
    # Scale for the absolute tolerance: the integrand mass sits near the median.
    mid = pts[len(pts) // 2]
    scale = max(mid**m, 1e-300)
    total = 0.0
    err = 0.0
    # quad's round-off warnings are advisory; the summed estimate is checked below
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in zip(pts[:-1], pts[1:]):
            val, e = integrate.quad(
                integrand, lo, hi, epsabs=1e-14 * scale, epsrel=1e-12, limit=200
            )
            total += val
            err += e
    if not math.isfinite(total) or total <= 0 or err > REL_TOL * total:
        raise ConvergenceError(
            f"quadrature error estimate {err:.3g} exceeds tolerance for value {total:.6g}"
        )
    return total
