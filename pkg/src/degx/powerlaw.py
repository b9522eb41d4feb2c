"""Shifted power laws versus the Beta-tail decay of ordered expected degrees."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import ln_beta

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_GRID_POINTS = 400


@dataclass(frozen=True)
class PowerLawFit:
    """``mean_k ~ c / (s + k)**gamma``; ``sse`` is the log-space residual sum of squares."""

    c: float
    s: float
    gamma: float
    sse: float
    degenerate: bool = False


def beta_decay_curve(k, n, params):
    """``x / (x + k**(1/b))`` with ``x = (n / (beta(a, b) b))**(1/b)``.

    This is ``1 / (1 + (beta(a, b) b k / n)**(1/b))``, a first-order proxy for
    the simplified mean of the ``k``-th largest that has the algebraic shape
    of a shifted power law.
    """
    if not k > 0:
        raise DomainError(f"k must be > 0, got {k!r}")
    if k > n / 2:
        raise DomainError(f"k={k} exceeds n/2; the curve is only meant for k << n")
    b = params.b
    ratio = math.exp((ln_beta(params.a, b) + math.log(b) + math.log(k) - math.log(n)) / b)
    return 1.0 / (1.0 + ratio)


def _ls_at_shift(s, k, y):
    # closed-form least squares of y on [1, -log(s + k)]
    x = -np.log(s + k)
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0.0:
        return ym, 0.0, float(((y - ym) ** 2).sum())
    gamma = float(dx @ (y - ym)) / sxx
    ln_c = ym - gamma * xm
    resid = y - ln_c - gamma * x
    return ln_c, gamma, float(resid @ resid)


def fit_shifted_power_law(ranks, means, s_max=None, tol=1e-13):
    """Least-squares fit of ``log mean = log c - gamma * log(s + k)``.

    For each shift ``s`` the pair ``(log c, gamma)`` has a closed form, so
    only ``s`` is searched: a log-spaced scan over ``[0, s_max]`` brackets
    the best shift and golden-section search refines it.  ``s_max`` defaults
    to ten times the largest rank.

    Constant data leave ``gamma`` unidentifiable; the result then has
    ``gamma = 0``, ``s = 0``, ``c`` equal to the common value and
    ``degenerate = True``.  A non-positive fitted exponent is flagged the
    same way.
    """
    k = np.asarray(ranks, dtype=float)
    m = np.asarray(means, dtype=float)
    if k.shape != m.shape or k.ndim != 1:
        raise DomainError("ranks and means must be 1-d sequences of equal length")
    if k.size < 4:
        raise DomainError(f"need at least 4 points, got {k.size}")
    if np.any(k <= 0) or np.any(m <= 0) or not np.all(np.isfinite(m)):
        raise DomainError("ranks and means must be positive and finite")
    y = np.log(m)
    if np.ptp(y) == 0.0:
        return PowerLawFit(c=float(m[0]), s=0.0, gamma=0.0, sse=0.0, degenerate=True)

    if s_max is None:
        s_max = 10.0 * float(k.max())
    best = {}

    def sse(s):
        if s not in best:
            best[s] = _ls_at_shift(s, k, y)
        return best[s][2]

    grid = np.concatenate([[0.0], np.geomspace(1e-6 * max(1.0, k.min()), s_max, _GRID_POINTS)])
    vals = [sse(float(s)) for s in grid]
    i = int(np.argmin(vals))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, grid.size - 1)])

    # golden-section refinement inside the bracket
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = sse(x1), sse(x2)
    while hi - lo > tol * (1.0 + abs(lo)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = sse(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = sse(x2)

    s_best = min(best, key=lambda s: (best[s][2], s))
    ln_c, gamma, err = best[s_best]
    return PowerLawFit(
        c=math.exp(ln_c), s=s_best, gamma=gamma, sse=err, degenerate=not gamma > 0
    )


def power_law_curve(k, fit):
    """Evaluate ``c / (s + k)**gamma``."""
    return fit.c / (fit.s + np.asarray(k, dtype=float)) ** fit.gamma

