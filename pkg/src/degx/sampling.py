"""Reproducible random streams and Beta variates.

Streams come from numpy's PCG64 generator (128-bit state).  Each stream is
seeded from a ``SeedSequence`` keyed by ``(base_seed, stream_index)``, so the
draws of stream ``t`` depend only on that pair and never on the order in
which streams are created or consumed.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class BetaParams:
    """Shape pair of a Beta(a, b) law: ``a`` governs the left tail, ``b`` the right."""

    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.integer, np.floating)):
                raise DomainError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"{name} must be finite and > 0, got {value!r}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def mean(self):
        return self.a / (self.a + self.b)

    @property
    def variance(self):
        s = self.a + self.b
        return self.a * self.b / (s * s * (s + 1.0))


@dataclass(frozen=True)
class SeedSpec:
    base_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= int(self.base_seed) < 2**64:
            raise DomainError(f"base_seed must be a 64-bit unsigned integer, got {self.base_seed!r}")
        if int(self.stream_index) < 0:
            raise DomainError(f"stream_index must be >= 0, got {self.stream_index!r}")
        object.__setattr__(self, "base_seed", int(self.base_seed))
        object.__setattr__(self, "stream_index", int(self.stream_index))


def derive_stream(seed):
    """Independent deterministic generator for ``seed``.

    The ``SeedSequence`` hashes ``(base_seed, stream_index)`` into the PCG64
    state, so distinct indices give practically independent streams.
    """
    ss = np.random.SeedSequence(entropy=seed.base_seed, spawn_key=(seed.stream_index,))
    return np.random.Generator(np.random.PCG64(ss))


def _log_gamma_variates(shape, stream, size):
    # Marsaglia-Tsang (numpy's standard_gamma) for shape >= 1.  For shape < 1
    # use G(shape) = G(shape + 1) * U**(1/shape), kept in log space so tiny
    # shapes do not underflow to 0.
    if shape >= 1.0:
        return np.log(stream.standard_gamma(shape, size))
    g = stream.standard_gamma(shape + 1.0, size)
    u = stream.random(size)
    with np.errstate(divide="ignore"):
        return np.log(g) + np.log(u) / shape


def sample_beta(params, stream, size=None):
    """Beta(a, b) draws as the ratio ``X / (X + Y)`` of independent Gamma variates.

    Returns a float when ``size`` is None, otherwise an array of that shape.
    """
    lx = _log_gamma_variates(params.a, stream, size)
    ly = _log_gamma_variates(params.b, stream, size)
    # X / (X + Y) = 1 / (1 + exp(log Y - log X))
    with np.errstate(over="ignore", invalid="ignore"):
        out = 1.0 / (1.0 + np.exp(ly - lx))
    # nan only if both log-gammas are -inf (both uniforms exactly 0)
    out = np.where(np.isnan(out), 0.5, out)
    if size is None:
        return float(out)
    return out
