"""Exact and asymptotic laws for extreme order statistics of Beta samples.

Conventions
-----------
Exact results (``exact_order_stat_cdf``/``pdf``) index ranks from the
smallest, as in classical order-statistics texts: ``j = 1`` is the minimum
and ``j = n`` the maximum.

Asymptotic results take a :class:`RankSpec`.  On the max side rank ``k``
counts from the largest (``k = 1`` is the maximum); on the min side rank
``j`` counts from the smallest.  The max-side limit is that of
``n**(1/b) * (pi - 1)`` and the min-side limit that of ``n**(1/a) * pi``.
"""

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import DomainError, RegimeError
from .sampling import BetaParams
from .special import beta_cdf_sf, ln_beta, ln_gamma, log_beta_pdf


class Side(enum.Enum):
    MAX = "max"
    MIN = "min"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"side must be 'max' or 'min', got {value!r}") from None


@dataclass(frozen=True)
class RankSpec:
    rank: int
    side: Side = Side.MAX

    def __post_init__(self):
        if int(self.rank) != self.rank or self.rank < 1:
            raise DomainError(f"rank must be a positive integer, got {self.rank!r}")
        object.__setattr__(self, "rank", int(self.rank))
        object.__setattr__(self, "side", Side.parse(self.side))


@dataclass(frozen=True)
class GenGammaLaw:
    """Generalized Gamma limit of a rescaled ``K``-th extreme.

    The density of ``Y = |rescaled extreme|`` is
    ``c / (lam * Gamma(K)) * (y/lam)**(K*c - 1) * exp(-(y/lam)**c)`` for
    ``y >= 0``, with ``lam = scale``, ``K = shape_count``, ``c = shape_exponent``.
    """

    scale: float
    shape_count: int
    shape_exponent: float
    side: Side

    def rescaling(self, n):
        """Normalizing constants ``(a_n, b_n)`` such that ``a_n (pi - b_n)`` converges."""
        a_n = float(n) ** (1.0 / self.shape_exponent)
        return a_n, (1.0 if self.side is Side.MAX else 0.0)


@dataclass(frozen=True)
class TheoryPrediction:
    rank_spec: RankSpec
    mean_beta_ratio: float
    mean_simplified: float
    var_beta_ratio: float
    var_simplified: float
    n: int
    params: BetaParams


def _tail_shape(params, side):
    """Exponent governing the relevant tail: ``b`` at the top, ``a`` at the bottom."""
    return params.b if side is Side.MAX else params.a


def _ln_tail_const(params, side):
    # log of beta(a,b) * b (max side) or beta(a,b) * a (min side)
    return ln_beta(params.a, params.b) + math.log(_tail_shape(params, side))


def gen_gamma_law(rank, params, side=Side.MAX):
    """Limit law of the rescaled ``rank``-th extreme on ``side``."""
    side = Side.parse(side)
    rs = RankSpec(rank, side)
    c = _tail_shape(params, side)
    lam = math.exp(_ln_tail_const(params, side) / c)
    return GenGammaLaw(scale=lam, shape_count=rs.rank, shape_exponent=c, side=side)


def gen_gamma_moment(m, law):
    """``E[Y**m] = lam**m * Gamma(K + m/c) / Gamma(K)``, evaluated in log space."""
    if int(m) != m or m < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {m!r}")
    if m == 0:
        return 1.0
    K, c = law.shape_count, law.shape_exponent
    # Gamma(K + m/c) / Gamma(K) = Gamma(m/c) / beta(K, m/c); the log-beta route
    # avoids cancelling two large log-gammas when K is in the thousands.
    return math.exp(m * math.log(law.scale) + ln_gamma(m / c) - ln_beta(K, m / c))


# --- exact finite-n laws ---------------------------------------------------


def _check_rank(j, n):
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if int(j) != j or not 1 <= j <= n:
        raise DomainError(f"rank j={j!r} must be an integer in [1, n={n}]")
    return int(j), int(n)


def _ln_binom(n, k):
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def exact_order_stat_cdf(x, j, n, params):
    """CDF of the ``j``-th smallest of ``n`` iid Beta(a, b) variates.

    ``sum_{i=j}^{n} C(n, i) F^i (1 - F)^(n - i)`` with ``F = I_x(a, b)``,
    summed as a log-sum-exp of the individual terms.
    """
    j, n = _check_rank(j, n)
    F, S = beta_cdf_sf(x, params.a, params.b)
    if F == 0.0:
        return 0.0
    if S == 0.0:
        return 1.0
    i = np.arange(j, n + 1, dtype=float)
    ln_c = math.lgamma(n + 1) - gammaln(i + 1) - gammaln(n - i + 1)
    terms = ln_c + i * math.log(F) + (n - i) * math.log(S)
    return float(min(1.0, math.exp(logsumexp(terms))))


def log_exact_order_stat_pdf(x, j, n, params):
    j, n = _check_rank(j, n)
    ld = log_beta_pdf(x, params.a, params.b)
    if ld == math.inf:
        raise DomainError(
            f"Beta({params.a}, {params.b}) density is unbounded at x={x}; "
            "the order-statistic density is undefined there"
        )
    if ld == -math.inf:
        return -math.inf
    F, S = beta_cdf_sf(x, params.a, params.b)
    out = _ln_binom(n, j) + math.log(j) + ld
    if j > 1:
        out += (j - 1) * math.log(F) if F > 0 else -math.inf
    if j < n:
        out += (n - j) * math.log(S) if S > 0 else -math.inf
    return out


def exact_order_stat_pdf(x, j, n, params):
    """Density ``C(n, j) j F^(j-1) (1 - F)^(n-j) f(x)`` of the ``j``-th smallest."""
    return math.exp(log_exact_order_stat_pdf(x, j, n, params))


def expected_uniform_order_stat(j, n, theta=1.0):
    """Mean of the ``j``-th smallest of ``n`` iid Uniform(0, theta) draws."""
    j, n = _check_rank(j, n)
    if not theta > 0:
        raise DomainError(f"theta must be > 0, got {theta!r}")
    return theta * j / (n + 1)


# --- asymptotic moments ----------------------------------------------------


def predict_extreme(rank_spec, n, params):
    """Asymptotic mean and variance of an extreme order statistic.

    Two forms are returned.  The "beta ratio" form is the first moment of the
    generalized Gamma limit law mapped back to the proportion scale; the
    "simplified" form replaces ``Gamma(k + 1/b) / Gamma(k)`` by ``k**(1/b)``.

    Raises
    ------
    DomainError
        If the rank exceeds ``n / 2``; the asymptotics are for ranks much
        smaller than ``n``.
    RegimeError
        If either mean lands outside ``[0, 1]``.  Nothing is clamped.
    """
    if not isinstance(rank_spec, RankSpec):
        rank_spec = RankSpec(*rank_spec)
    k = rank_spec.rank
    _, n = _check_rank(1, n)
    if k > n / 2:
        raise DomainError(f"rank {k} exceeds n/2 = {n / 2}; asymptotic regime not claimed there")
    side = rank_spec.side
    c = _tail_shape(params, side)
    inv_c = 1.0 / c
    ln_const = _ln_tail_const(params, side)

    law = gen_gamma_law(k, params, side)
    # distance from the endpoint (1 on the max side, 0 on the min side)
    tail_ratio = gen_gamma_moment(1, law) / n**inv_c
    tail_simple = math.exp(inv_c * (ln_const + math.log(k) - math.log(n)))

    # beta(k, 1/c) / beta(k + 1/c, 1/c) - 1  and  ((k + 1/c) / k)**(1/c) - 1
    spread_ratio = math.expm1(ln_beta(k, inv_c) - ln_beta(k + inv_c, inv_c))
    spread_simple = math.expm1(inv_c * math.log1p(inv_c / k))

    if side is Side.MAX:
        mean_ratio, mean_simple = 1.0 - tail_ratio, 1.0 - tail_simple
    else:
        mean_ratio, mean_simple = tail_ratio, tail_simple
    for label, value in (("beta-ratio", mean_ratio), ("simplified", mean_simple)):
        if not 0.0 <= value <= 1.0:
            raise RegimeError(
                f"{label} mean {value:.6g} for rank {k} ({side.value} side), n={n}, "
                f"Beta({params.a}, {params.b}) lies outside [0, 1]",
                mean_beta_ratio=mean_ratio,
                mean_simplified=mean_simple,
            )
    return TheoryPrediction(
        rank_spec=rank_spec,
        mean_beta_ratio=mean_ratio,
        mean_simplified=mean_simple,
        var_beta_ratio=tail_ratio**2 * spread_ratio,
        var_simplified=tail_simple**2 * spread_simple,
        n=n,
        params=params,
    )


# --- limit laws --------------------------------------------------------------


def limiting_cdf_G(u, params, side=Side.MAX):
    """Limit law of the rescaled extreme.

    Max side (``u <= 0``): the reversed Weibull CDF
    ``exp(-(-u)**b / (beta(a, b) b))`` of ``n**(1/b) * (pi_max - 1)``.

    Min side (``u >= 0``): ``exp(-u**a / (beta(a, b) a))``.  This expression
    decreases in ``u``, so as a statement about ``n**(1/a) * pi_min`` it is the
    limiting *survival* function; the CDF is one minus it (see
    :data:`MIN_SIDE_IS_SURVIVAL`).
    """
    side = Side.parse(side)
    u = float(u)
    if side is Side.MAX:
        if u > 0:
            raise DomainError(f"max-side limit law is supported on u <= 0, got u={u}")
        return math.exp(-((-u) ** params.b) / math.exp(_ln_tail_const(params, side)))
    if u < 0:
        raise DomainError(f"min-side limit law is supported on u >= 0, got u={u}")
    return math.exp(-(u**params.a) / math.exp(_ln_tail_const(params, side)))


#: The min-side expression returned by :func:`limiting_cdf_G` is a survival
#: function of ``n**(1/a) * pi_min``, not a CDF.
MIN_SIDE_IS_SURVIVAL = True


def limiting_kth_extreme_cdf(u, k, params):
    """Limiting CDF of ``n**(1/b) * (pi_(k) - 1)`` for the ``k``-th largest.

    ``G(u) * sum_{i<k} t**i / i!`` with ``t = -log G(u)``.
    """
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    u = float(u)
    if u > 0:
        raise DomainError(f"u must be <= 0, got {u}")
    t = (-u) ** params.b / math.exp(_ln_tail_const(params, Side.MAX))
    if t == 0.0:
        return 1.0
    lt = math.log(t)
    terms = [-t + i * lt - math.lgamma(i + 1) for i in range(int(k))]
    return min(1.0, math.exp(logsumexp(terms)))


class GnResult(NamedTuple):
    value: float
    f_ab_bound: float


def _check_integer_params(params):
    for name in ("a", "b"):
        v = getattr(params, name)
        if v != int(v):
            raise DomainError(f"finite-n CDF is defined here for integer shapes only; {name}={v}")


def _integer_beta_sf(x, h, a, b):
    # 1 - I_x(a, b) as a finite sum of positive terms, h = 1 - x
    m = a + b - 1
    return math.fsum(math.comb(m, i) * x**i * h ** (m - i) for i in range(a))


def finite_n_cdf_Gn(u, n, params):
    """``G_n(u) = [I_x(a, b)]**n`` at ``x = 1 + u / n**(1/b)``, integer ``a``, ``b``.

    Also returns the bound on the relative correction ``f_ab(u, n)`` that
    separates ``G_n`` from its leading-term form (see :func:`gn_bracketed`).
    """
    _check_integer_params(params)
    _, n = _check_rank(1, n)
    u = float(u)
    if u > 0:
        raise DomainError(f"u must be <= 0, got {u}")
    a, b = params.a, params.b
    h = -u / n ** (1.0 / b)
    x = 1.0 - h
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"1 + u/n^(1/b) = {x} lies outside [0, 1]")
    sf = _integer_beta_sf(x, h, int(a), int(b))
    value = 0.0 if sf >= 1.0 else math.exp(n * math.log1p(-sf))
    if a >= 2 and h > 0:
        bound = (a - 1.0) / (b + 1.0) * h * x ** (1.0 - a) if x > 0 else math.inf
    else:
        bound = 0.0
    return GnResult(value, bound)


def gn_bracketed(u, n, params, f_ab=0.0):
    """Leading-term form ``[1 - (beta(a,b) b)^-1 x^(a-1) h^b (1 + f_ab)]**n``.

    Here ``h = -u / n**(1/b)`` and ``x = 1 - h``.  With the exact ``f_ab`` this
    equals :func:`finite_n_cdf_Gn`; ``f_ab = 0`` gives the leading term alone.
    """
    _check_integer_params(params)
    u = float(u)
    a, b = params.a, params.b
    h = -u / n ** (1.0 / b)
    x = 1.0 - h
    if h <= 0.0:
        lead = 0.0
    elif x == 0.0:
        lead = math.exp(-_ln_tail_const(params, Side.MAX)) if a == 1.0 else 0.0
    else:
        lead = math.exp(
            -_ln_tail_const(params, Side.MAX) + (a - 1.0) * math.log(x) + b * math.log(h)
        )
    tail = lead * (1.0 + f_ab)
    if tail >= 1.0:
        return 0.0
    return math.exp(n * math.log1p(-tail))
