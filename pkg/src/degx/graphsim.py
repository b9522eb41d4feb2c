"""Chung-Lu (log-linear) random graphs with Beta-distributed expected degrees.

Node ``i`` gets weight ``w_i = n * pi_i`` with ``pi_i ~ Beta(a, b)``, and the
pair ``(i, j)``, ``i <= j``, is linked independently with probability
``min(1, w_i w_j / sum(w))``.  A self-loop adds 1 to its node's degree, so
``E d_i = w_i`` whenever no probability needs clamping.

Degrees are accumulated row by row without materializing the adjacency
matrix: ``O(n)`` memory, ``O(n**2)`` time.
"""

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError
from .sampling import BetaParams, SeedSpec, sample_beta


class LoopsPolicy(enum.Enum):
    INCLUDE = "include"
    EXCLUDE = "exclude"


class OutputMode(enum.Enum):
    DEGREES_ONLY = "degrees"
    EDGE_LIST = "edges"


class Source(enum.Enum):
    GRAPH = "graph"
    WEIGHTS = "weights"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"source must be 'graph' or 'weights', got {value!r}") from None


@dataclass(frozen=True)
class GraphConfig:
    n: int
    params: BetaParams
    seed: SeedSpec = field(default_factory=lambda: SeedSpec(0))
    loops_policy: LoopsPolicy = LoopsPolicy.INCLUDE
    output_mode: OutputMode = OutputMode.DEGREES_ONLY

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True, eq=False)
class WeightVector:
    weights: np.ndarray
    total: float

    @classmethod
    def from_array(cls, weights):
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise DomainError("weights must be a 1-d vector of finite nonnegative reals")
        w.setflags(write=False)
        return cls(w, float(w.sum()))

    def __len__(self):
        return self.weights.size


@dataclass(frozen=True, eq=False)
class NormalizedDegreeSequence:
    """Proportions sorted so that ``sorted_proportions[0]`` is the largest."""

    n: int
    sorted_proportions: np.ndarray
    source: Source

    def kth_largest(self, k):
        return float(self.sorted_proportions[k - 1])

    def jth_smallest(self, j):
        return float(self.sorted_proportions[self.n - j])


class GraphSample(NamedTuple):
    weights: WeightVector
    degrees: np.ndarray
    clamped_pairs: int
    n_edges: int
    n_loops: int
    edges: Optional[np.ndarray] = None


def generate_weights(config, stream):
    """Expected-degree weights ``n * Beta(a, b)``."""
    draws = sample_beta(config.params, stream, size=config.n)
    return WeightVector.from_array(config.n * draws)


def edge_prob(i, j, w):
    """Link probability ``min(1, w_i w_j / ||w||_1)``; 0 when all weights vanish."""
    if w.total == 0.0:
        return 0.0
    return min(1.0, w.weights[i] * w.weights[j] / w.total)


def sample_graph_degrees(config, stream, weights=None):
    """Sample one graph and return its degree vector.

    Weights are drawn from ``stream`` first unless supplied.  Pair ``(i, j)``
    with ``i < j`` consumes one uniform from ``stream``; loops (if included)
    consume one uniform each, in row-major order.
    """
    w = generate_weights(config, stream) if weights is None else weights
    n = config.n
    if len(w) != n:
        raise DomainError(f"weight vector has length {len(w)}, expected n={n}")
    wv = w.weights
    include_loops = config.loops_policy is LoopsPolicy.INCLUDE
    want_edges = config.output_mode is OutputMode.EDGE_LIST
    degrees = np.zeros(n, dtype=np.int64)
    clamped = 0
    n_edges = 0
    n_loops = 0
    edge_chunks = []
    scale = 1.0 / w.total if w.total > 0 else 0.0
    for i in range(n):
        start = i if include_loops else i + 1
        if start >= n:
            break
        p = wv[i] * wv[start:] * scale
        over = p > 1.0
        clamped += int(np.count_nonzero(over[1:] if include_loops else over))
        hit = stream.random(p.size) < p
        if include_loops and hit[0]:
            degrees[i] += 1
            n_loops += 1
            if want_edges:
                edge_chunks.append(np.array([[i, i]]))
        row = hit[1:] if include_loops else hit
        cnt = int(np.count_nonzero(row))
        if cnt:
            degrees[i] += cnt
            degrees[i + 1:] += row
            n_edges += cnt
            if want_edges:
                js = np.flatnonzero(row) + i + 1
                edge_chunks.append(np.column_stack([np.full(js.size, i), js]))
    edges = None
    if want_edges:
        edges = np.concatenate(edge_chunks) if edge_chunks else np.empty((0, 2), dtype=np.int64)
    return GraphSample(w, degrees, clamped, n_edges, n_loops, edges)


def clamp_fraction(weights):
    """Fraction of unordered pairs ``i < j`` whose link probability is clamped at 1."""
    wv = np.sort(weights.weights)
    n = wv.size
    if weights.total == 0.0 or n < 2:
        return 0.0
    # for each i, partners j > i (in sorted order) with w_j > total / w_i
    with np.errstate(divide="ignore"):
        thresh = weights.total / wv
    first = np.searchsorted(wv, thresh, side="right")
    first = np.maximum(first, np.arange(1, n + 1))
    count = int(np.sum(n - first))
    return count / (n * (n - 1) / 2)


def normalize_and_sort(degrees, n, source=Source.GRAPH):
    """Proportions ``d / n`` in descending order.

    The sort is stable, so equal degrees keep their original node order.
    """
    d = np.asarray(degrees)
    if d.shape != (n,):
        raise DomainError(f"expected {n} degrees, got shape {d.shape}")
    if np.any(d < 0) or np.any(d > n):
        raise DomainError("degrees must lie in [0, n]")
    order = np.argsort(-d, kind="stable")
    props = d[order] / n
    props.setflags(write=False)
    return NormalizedDegreeSequence(n, props, Source.parse(source))


def weights_only_sequence(config, stream):
    """Sorted Beta proportions with no graph sampled on top."""
    w = generate_weights(config, stream)
    props = np.sort(w.weights / config.n)[::-1].copy()
    props.setflags(write=False)
    return NormalizedDegreeSequence(config.n, props, Source.WEIGHTS)


def write_edge_list(fh, edges, config):
    """Write edges as ``i j`` lines (0-based, ascending) under a ``# n=... seed=...`` header."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    fh.write(f"# n={config.n} seed={config.seed.base_seed}/{config.seed.stream_index}\n")
    for i, j in edges[order]:
        fh.write(f"{i} {j}\n")


def read_edge_list(fh):
    """Inverse of :func:`write_edge_list`; returns ``(n, base_seed, stream_index, edges)``."""
    header = fh.readline().strip()
    if not header.startswith("#"):
        raise DomainError("edge list is missing its '# n=... seed=...' header")
    fields = dict(tok.split("=", 1) for tok in header[1:].split())
    base, stream = fields["seed"].split("/")
    rows = [tuple(map(int, line.split())) for line in fh if line.strip()]
    edges = np.array(rows, dtype=np.int64).reshape(-1, 2)
    return int(fields["n"]), int(base), int(stream), edges
