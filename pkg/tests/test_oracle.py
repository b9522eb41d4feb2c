import mpmath
import numpy as np
import pytest

from degx.errors import DomainError
from degx.oracle import MAX_N, oracle_order_stat_moment
from degx.sampling import BetaParams, SeedSpec, derive_stream, sample_beta
from degx.theory import RankSpec, predict_extreme

mpmath.mp.dps = 40


@pytest.mark.parametrize("j, n", [(1, 1), (1, 10), (5, 10), (10, 10), (1, 5000), (5000, 5000), (2500, 5000)])
def test_uniform_means(j, n):
    assert oracle_order_stat_moment(j, n, BetaParams(1, 1)) == pytest.approx(j / (n + 1), rel=1e-9)


@pytest.mark.parametrize("a, b", [(1, 9), (2, 4), (0.4, 0.7)])
def test_single_draw_moments(a, b):
    p = BetaParams(a, b)
    assert oracle_order_stat_moment(1, 1, p) == pytest.approx(a / (a + b), rel=1e-9)
    second = a * (a + 1) / ((a + b) * (a + b + 1))
    assert oracle_order_stat_moment(1, 1, p, m=2) == pytest.approx(second, rel=1e-9)


def test_uniform_second_moment():
    j, n = 3, 40
    assert oracle_order_stat_moment(j, n, BetaParams(1, 1), 2) == pytest.approx(
        j * (j + 1) / ((n + 1) * (n + 2)), rel=1e-9
    )


def test_against_high_precision_integral():
    # the maximum of n draws has density n F^(n-1) f
    a, b, n = 2, 4, 30
    f = lambda x: n * mpmath.betainc(a, b, 0, x, regularized=True) ** (n - 1) * x ** (a - 1) * (1 - x) ** (b - 1) / mpmath.beta(a, b)
    ref = mpmath.quad(lambda x: x * f(x), [0, 0.5, 0.7, 1])
    assert oracle_order_stat_moment(n, n, BetaParams(a, b)) == pytest.approx(float(ref), rel=1e-9)


def test_against_simulation():
    p = BetaParams(2, 4)
    n, reps = 50, 40_000
    x = sample_beta(p, derive_stream(SeedSpec(8)), size=(reps, n))
    x.sort(axis=1)
    for j in (1, 25, 50):
        col = x[:, j - 1]
        se = col.std(ddof=1) / np.sqrt(reps)
        assert abs(oracle_order_stat_moment(j, n, p) - col.mean()) < 4 * se


@pytest.mark.parametrize("b", [2.0, 9.0])
def test_approaches_asymptotic_mean(b):
    p = BetaParams(1, b)
    gaps = []
    for n in (1000, 10_000, 100_000):
        exact = oracle_order_stat_moment(n, n, p)
        pred = predict_extreme(RankSpec(1), n, p).mean_beta_ratio
        gaps.append(abs(exact - pred) / (1 - exact))
    assert gaps[-1] < 1e-3
    assert gaps[0] >= gaps[1] >= gaps[2]


def test_domain():
    with pytest.raises(DomainError):
        oracle_order_stat_moment(1, MAX_N + 1, BetaParams(1, 1))
    with pytest.raises(DomainError):
        oracle_order_stat_moment(0, 10, BetaParams(1, 1))
    with pytest.raises(DomainError):
        oracle_order_stat_moment(1, 10, BetaParams(1, 1), m=0)
