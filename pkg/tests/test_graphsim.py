import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degx.errors import DomainError
from degx.experiments import expected_clamped_degree
from degx.graphsim import (
    GraphConfig,
    LoopsPolicy,
    OutputMode,
    Source,
    WeightVector,
    clamp_fraction,
    edge_prob,
    generate_weights,
    normalize_and_sort,
    read_edge_list,
    sample_graph_degrees,
    weights_only_sequence,
    write_edge_list,
)
from degx.sampling import BetaParams, SeedSpec, derive_stream


def cfg(n, a=2, b=4, seed=0, **kw):
    return GraphConfig(n, BetaParams(a, b), SeedSpec(seed), **kw)


def test_config_validation():
    with pytest.raises(DomainError):
        cfg(1)
    with pytest.raises(DomainError):
        cfg(10.5)


def test_weights_mean():
    w = generate_weights(cfg(200_000, 1, 9), derive_stream(SeedSpec(3)))
    assert len(w) == 200_000
    assert w.total == pytest.approx(w.weights.sum())
    assert abs(w.weights.mean() / 200_000 - 0.1) < 0.002


def test_weight_vector_validation():
    with pytest.raises(DomainError):
        WeightVector.from_array([1.0, -1.0])
    with pytest.raises(DomainError):
        WeightVector.from_array([[1.0]])


def test_edge_prob():
    w = WeightVector.from_array([1.0, 2.0, 3.0, 4.0])
    assert edge_prob(0, 1, w) == pytest.approx(0.2)
    assert edge_prob(2, 3, w) == 1.0
    assert edge_prob(1, 0, w) == edge_prob(0, 1, w)
    assert edge_prob(0, 1, WeightVector.from_array([0.0, 0.0])) == 0.0


def test_zero_weights_give_empty_graph():
    c = cfg(50)
    s = sample_graph_degrees(c, derive_stream(SeedSpec(0)), WeightVector.from_array(np.zeros(50)))
    assert not s.degrees.any() and s.n_edges == 0 and s.n_loops == 0


def test_two_nodes_certain_link():
    w = WeightVector.from_array([2.0, 2.0])
    s = sample_graph_degrees(cfg(2, loops_policy=LoopsPolicy.EXCLUDE), derive_stream(SeedSpec(0)), w)
    assert tuple(s.degrees) == (1, 1)
    s = sample_graph_degrees(cfg(2), derive_stream(SeedSpec(0)), w)
    # each loop contributes one to its node's degree
    assert tuple(s.degrees) == (2, 2) and s.n_loops == 2 and s.n_edges == 1


def test_weight_length_mismatch():
    with pytest.raises(DomainError):
        sample_graph_degrees(cfg(5), derive_stream(SeedSpec(0)), WeightVector.from_array(np.ones(4)))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 120), st.integers(0, 2**32), st.sampled_from(list(LoopsPolicy)))
def test_degree_invariants(n, seed, loops):
    c = cfg(n, 1, 2, seed, loops_policy=loops)
    s = sample_graph_degrees(c, derive_stream(c.seed))
    assert s.degrees.sum() == 2 * s.n_edges + s.n_loops
    assert np.all((s.degrees >= 0) & (s.degrees <= n))
    if loops is LoopsPolicy.EXCLUDE:
        assert s.n_loops == 0 and s.degrees.max() <= n - 1


def test_determinism():
    c = cfg(500, 1, 9, 77)
    s1 = sample_graph_degrees(c, derive_stream(c.seed))
    s2 = sample_graph_degrees(c, derive_stream(c.seed))
    assert np.array_equal(s1.degrees, s2.degrees)
    s3 = sample_graph_degrees(c, derive_stream(SeedSpec(77, 1)))
    assert not np.array_equal(s1.degrees, s3.degrees)


@pytest.mark.parametrize("a, b", [(2, 4), (1, 9)])
def test_degrees_match_clamped_expectation(a, b):
    # conditional on fixed weights, d_i is a sum of independent Bernoullis
    n, trials = 1000, 200
    c = cfg(n, a, b, 5)
    w = generate_weights(c, derive_stream(SeedSpec(5, 10**6)))
    total = np.zeros(n)
    for t in range(trials):
        total += sample_graph_degrees(c, derive_stream(SeedSpec(5, t)), w).degrees
    emp = total / trials
    p = np.minimum(1.0, np.outer(w.weights, w.weights) / w.total)
    off = p.copy()
    np.fill_diagonal(off, 0.0)
    var = (off * (1 - off)).sum(axis=1) + np.diag(p) * (1 - np.diag(p))
    expected = np.array([expected_clamped_degree(w, i) for i in range(n)])
    assert np.allclose(expected, p.sum(axis=1))
    z = (emp - expected) / np.sqrt(var / trials + 1e-300)
    z = z[var > 0]
    # Bonferroni-level bound over all nodes, plus a global chi-square-style check
    assert np.max(np.abs(z)) < 4.5
    assert abs(np.mean(z**2) - 1) < 0.2


def test_unclamped_conditional_mean_is_weight():
    n, trials = 1000, 150
    # concentrated weights keep max(w)**2 below ||w||_1
    c = cfg(n, 50, 50, 9)
    w = generate_weights(c, derive_stream(SeedSpec(9, 10**6)))
    assert clamp_fraction(w) == 0.0 and w.weights.max() ** 2 <= w.total
    deg = np.zeros(n)
    for t in range(trials):
        deg += sample_graph_degrees(c, derive_stream(SeedSpec(9, t)), w).degrees
    top = np.argsort(w.weights)[-5:]
    se = np.sqrt(w.weights[top] / trials)
    assert np.all(np.abs(deg[top] / trials - w.weights[top]) < 3 * se)


def test_clamp_fraction_bruteforce():
    rng = np.random.default_rng(4)
    for _ in range(20):
        w = WeightVector.from_array(rng.pareto(1.5, size=60) * 10)
        p = np.outer(w.weights, w.weights) / w.total
        iu = np.triu_indices(60, 1)
        assert clamp_fraction(w) == pytest.approx(np.mean(p[iu] > 1.0))


def test_clamp_count_reported():
    c = cfg(300, 1, 9, 2)
    s = sample_graph_degrees(c, derive_stream(c.seed))
    assert s.clamped_pairs / (300 * 299 / 2) == pytest.approx(clamp_fraction(s.weights))


def test_normalize_examples():
    s = normalize_and_sort(np.array([1, 3, 2, 3]), 4)
    assert list(s.sorted_proportions) == [0.75, 0.75, 0.5, 0.25]
    assert s.kth_largest(1) == 0.75 and s.jth_smallest(1) == 0.25
    with pytest.raises(DomainError):
        normalize_and_sort(np.array([1, 5]), 2)
    with pytest.raises(DomainError):
        normalize_and_sort(np.array([1, 2, 3]), 2)


@given(st.lists(st.integers(0, 40), min_size=2, max_size=40))
def test_normalize_is_sorted_permutation(degs):
    n = max(len(degs), max(degs))
    degs = degs + [0] * (n - len(degs))
    s = normalize_and_sort(np.array(degs), n)
    props = s.sorted_proportions
    assert np.all(np.diff(props) <= 0)
    assert sorted(np.rint(props * n).astype(int)) == sorted(degs)


def test_weights_only_sequence():
    c = cfg(100, 1, 9, 4)
    seq = weights_only_sequence(c, derive_stream(c.seed))
    w = generate_weights(c, derive_stream(c.seed))
    assert seq.source is Source.WEIGHTS
    assert np.allclose(seq.sorted_proportions, np.sort(w.weights / 100)[::-1])


def test_edge_list_round_trip():
    c = cfg(40, 1, 2, 12, output_mode=OutputMode.EDGE_LIST)
    s = sample_graph_degrees(c, derive_stream(c.seed))
    deg = np.zeros(40, dtype=int)
    for i, j in s.edges:
        deg[i] += 1
        if j != i:
            deg[j] += 1
    assert np.array_equal(deg, s.degrees)
    buf = io.StringIO()
    write_edge_list(buf, s.edges, c)
    text = buf.getvalue()
    assert text.startswith("# n=40 seed=12/0\n")
    assert "\r" not in text
    n, base, stream, edges = read_edge_list(io.StringIO(text))
    assert (n, base, stream) == (40, 12, 0)
    assert {tuple(e) for e in edges} == {tuple(e) for e in s.edges}
    lines = text.splitlines()[1:]
    assert lines == sorted(lines, key=lambda l: tuple(map(int, l.split())))


def test_degrees_only_has_no_edges():
    s = sample_graph_degrees(cfg(30), derive_stream(SeedSpec(0)))
    assert s.edges is None
