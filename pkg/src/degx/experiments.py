"""Monte Carlo harness: simulated order statistics against the asymptotic predictions."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import integrate, stats

from .errors import DomainError
from .graphsim import Source, normalize_and_sort, sample_graph_degrees, weights_only_sequence
from .sampling import BetaParams, SeedSpec, derive_stream
from .special import log_beta_pdf
from .theory import RankSpec, Side, predict_extreme

HIST_BINS = 50


@dataclass(frozen=True, eq=False)
class MCSummary:
    trials: int
    n: int
    params: BetaParams
    side: Side
    ranks: tuple
    empirical_mean: np.ndarray
    empirical_var: np.ndarray
    empirical_stderr: np.ndarray
    source: Source
    base_seed: int
    mean_clamp_fraction: Optional[float] = None

    def __eq__(self, other):
        if not isinstance(other, MCSummary):
            return NotImplemented
        same_meta = (
            self.trials, self.n, self.params, self.side, tuple(self.ranks),
            self.source, self.base_seed, self.mean_clamp_fraction,
        ) == (
            other.trials, other.n, other.params, other.side, tuple(other.ranks),
            other.source, other.base_seed, other.mean_clamp_fraction,
        )
        return same_meta and all(
            np.array_equal(getattr(self, f), getattr(other, f))
            for f in ("empirical_mean", "empirical_var", "empirical_stderr")
        )


@dataclass(frozen=True)
class ComparisonRow:
    """Empirical mean at one rank next to both predicted means.

    ``abs_error`` and ``rel_tail_error`` are measured against the simplified
    prediction; the ``*_beta_ratio`` fields against the beta-ratio one.  Tail
    errors divide by the predicted distance from the nearer endpoint.
    """

    rank: int
    empirical_mean: float
    predicted_mean_beta_ratio: float
    predicted_mean_simplified: float
    abs_error: float
    rel_tail_error: float
    abs_error_beta_ratio: float
    rel_tail_error_beta_ratio: float


def default_ranks(n):
    """Ranks ``1..100`` plus powers of two, capped at ``n / 2``."""
    cap = n // 2
    ranks = set(range(1, min(100, cap) + 1))
    p = 1
    while p <= cap:
        ranks.add(p)
        p *= 2
    return sorted(ranks)


def _trial_values(config, source, side, ranks, t):
    stream = derive_stream(SeedSpec(config.seed.base_seed, t))
    if source is Source.WEIGHTS:
        seq = weights_only_sequence(config, stream)
        frac = None
    else:
        sample = sample_graph_degrees(config, stream)
        seq = normalize_and_sort(sample.degrees, config.n, Source.GRAPH)
        frac = sample.clamped_pairs / (config.n * (config.n - 1) / 2)
    props = seq.sorted_proportions
    idx = ranks - 1 if side is Side.MAX else config.n - ranks
    return props[idx], frac


def _validate_ranks(ranks, n):
    r = np.asarray(sorted(set(int(k) for k in ranks)), dtype=np.int64)
    if r.size == 0 or r[0] < 1 or r[-1] > n:
        raise DomainError(f"ranks must lie in [1, n={n}]")
    return r


def simulate_ranked(config, trials, ranks, side=Side.MAX, source=Source.GRAPH, threads=1):
    """Per-trial ranked proportions, shape ``(trials, len(ranks))``.

    Ranks are deduplicated and sorted.  Trial ``t`` draws from stream
    ``(config.seed.base_seed, t)`` and rows are stored in trial order, so the
    result is identical for any ``threads``.  Also returns the per-trial
    clamped-pair fractions (empty for the weights-only source).
    """
    side = Side.parse(side)
    source = Source.parse(source)
    if int(trials) != trials or trials < 1:
        raise DomainError(f"trials must be a positive integer, got {trials!r}")
    r = _validate_ranks(ranks, config.n)

    def one(t):
        return _trial_values(config, source, side, r, t)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as ex:
            results = list(ex.map(one, range(trials)))
    else:
        results = [one(t) for t in range(trials)]
    values = np.stack([v for v, _ in results])
    fracs = np.array([f for _, f in results if f is not None])
    return r, values, fracs


def run_monte_carlo(config, trials, ranks, side=Side.MAX, source=Source.GRAPH, threads=1):
    """Average the ranked normalized degrees over independent trials.

    The reduction runs over trials in index order; the summary depends only
    on ``config.seed.base_seed`` and ``trials``.
    """
    side = Side.parse(side)
    source = Source.parse(source)
    if int(trials) != trials or trials < 2:
        raise DomainError(f"trials must be an integer >= 2, got {trials!r}")
    r, values, fracs = simulate_ranked(config, trials, ranks, side, source, threads)
    var = values.var(axis=0, ddof=1)
    return MCSummary(
        trials=int(trials),
        n=config.n,
        params=config.params,
        side=side,
        ranks=tuple(int(k) for k in r),
        empirical_mean=values.mean(axis=0),
        empirical_var=var,
        empirical_stderr=np.sqrt(var / trials),
        source=source,
        base_seed=config.seed.base_seed,
        mean_clamp_fraction=float(fracs.mean()) if fracs.size else None,
    )


def _tail(mean, side):
    return 1.0 - mean if side is Side.MAX else mean


def compare_theory(summary):
    """One :class:`ComparisonRow` per simulated rank."""
    rows = []
    for k, emp in zip(summary.ranks, summary.empirical_mean):
        pred = predict_extreme(RankSpec(k, summary.side), summary.n, summary.params)
        emp = float(emp)
        err_s = abs(emp - pred.mean_simplified)
        err_r = abs(emp - pred.mean_beta_ratio)
        rows.append(
            ComparisonRow(
                rank=k,
                empirical_mean=emp,
                predicted_mean_beta_ratio=pred.mean_beta_ratio,
                predicted_mean_simplified=pred.mean_simplified,
                abs_error=err_s,
                rel_tail_error=err_s / _tail(pred.mean_simplified, summary.side),
                abs_error_beta_ratio=err_r,
                rel_tail_error_beta_ratio=err_r / _tail(pred.mean_beta_ratio, summary.side),
            )
        )
    return rows


def degree_histogram(config, trials, source=Source.GRAPH, bins=HIST_BINS):
    """Pooled density histogram of normalized degrees on ``[0, 1]``.

    Returns ``(edges, density, beta_density)`` where the last is the Beta(a, b)
    density at the bin centres, for overlaying.
    """
    source = Source.parse(source)
    edges = np.linspace(0.0, 1.0, bins + 1)
    counts = np.zeros(bins, dtype=np.int64)
    for t in range(trials):
        stream = derive_stream(SeedSpec(config.seed.base_seed, t))
        if source is Source.WEIGHTS:
            props = weights_only_sequence(config, stream).sorted_proportions
        else:
            props = sample_graph_degrees(config, stream).degrees / config.n
        counts += np.histogram(props, bins=edges)[0]
    density = counts / (counts.sum() * np.diff(edges))
    centres = 0.5 * (edges[:-1] + edges[1:])
    beta_pdf = np.array([math.exp(log_beta_pdf(x, config.params.a, config.params.b)) for x in centres])
    return edges, density, beta_pdf


def expected_clamp_fraction(params):
    """Large-n probability that a random pair has ``pi_i pi_j > E[pi]``.

    In that event ``w_i w_j / ||w||_1`` exceeds 1 and the link probability is
    clamped.  Computed by quadrature over the Beta law.
    """
    dist = stats.beta(params.a, params.b)
    mu = params.mean
    val, _ = integrate.quad(lambda x: dist.pdf(x) * dist.sf(mu / x), mu, 1.0, limit=200)
    return val


def expected_clamped_degree(weights, i):
    """``sum_j min(1, w_i w_j / ||w||_1)`` over all ``j`` (loop included)."""
    w = weights.weights
    return float(np.minimum(1.0, w[i] * w / weights.total).sum())
