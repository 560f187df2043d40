"""Seedable randomness and the discrete laws used by the Boltzmann samplers:
uniform(0,1), geometric, Poisson, positive Poisson, and the maximum
replicated-index law of the multiset construction.
"""

from __future__ import annotations

import bisect
import math
import secrets

import numpy as np

from .core import check_boltzmann_param
from .oracle import DEFAULT_CONFIG, OracleConfig, log_multiset_gf

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


# Sequential inversion is exact while exp(-lam) stays away from the float
# underflow threshold (~745); splitting by Poisson additivity keeps every
# sub-draw below this bound.
_POISSON_SPLIT = 500.0


class RandomSource:
    """Deterministic uniform source keyed by (seed, stream).

    Distinct stream ids on the same seed give statistically independent
    substreams. ``uniform01`` values are strictly inside (0, 1) so logarithms
    of either the value or the parameter are always finite.
    """

    def __init__(self, seed: int | None = None, stream: int = 0):
        if seed is None:
            seed = secrets.randbits(63)
        self.seed = int(seed)
        self.stream = int(stream)
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def spawn(self, stream: int) -> "RandomSource":
        """Independent substream with the same seed."""
        return RandomSource(self.seed, stream)

    @property
    def generator(self) -> np.random.Generator:
        """Underlying generator, for jitted kernels that draw inline."""
        return self._gen

    def uniform01(self) -> float:
        u = self._gen.random()
        while u == 0.0:
            u = self._gen.random()
        return u

    def uniform01_batch(self, n: int) -> np.ndarray:
        out = self._gen.random(n)
        zero = out == 0.0
        while zero.any():
            out[zero] = self._gen.random(int(zero.sum()))
            zero = out == 0.0
        return out

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, stream={self.stream})"


def uniform01(rng: RandomSource) -> float:
    """One uniform draw, strictly inside (0, 1)."""
    return rng.uniform01()


def geometric(x: float, rng: RandomSource) -> int:
    """Geometric law P(k) = x^k (1 - x) on k >= 0, drawn in O(1).

    Closed form floor(ln U / ln x); x = 0 returns 0 deterministically.
    """
    x = float(x)
    if not (0.0 <= x < 1.0):
        raise ValueError(f"geometric parameter must satisfy 0 <= x < 1, got {x}")
    if x == 0.0:
        return 0
    return int(math.log(rng.uniform01()) / math.log(x))


def geometric_batch(log_params: np.ndarray, rng: RandomSource) -> np.ndarray:
    """One geometric draw per entry; log_params[i] = ln of the i-th parameter."""
    if log_params.size == 0:
        return np.zeros(0, dtype=np.int64)
    u = rng.uniform01_batch(log_params.size)
    return np.floor(np.log(u) / log_params).astype(np.int64)


@njit(cache=True)
def _poisson_inversion(lam: float, us: np.ndarray) -> np.ndarray:
    """Sequential-inversion Poisson draws, one per uniform; needs lam <= ~700."""
    out = np.empty(us.size, dtype=np.int64)
    for t in range(us.size):
        u = us[t]
        p = math.exp(-lam)
        cum = p
        k = 0
        while u > cum and p > 0.0:
            k += 1
            p *= lam / k
            cum += p
        out[t] = k
    return out


@njit(cache=True)
def _poisson_inversion_many(lams: np.ndarray, us: np.ndarray) -> np.ndarray:
    """Per-entry-parameter inversion; every lams[t] must be <= ~700."""
    out = np.empty(us.size, dtype=np.int64)
    for t in range(us.size):
        lam = lams[t]
        u = us[t]
        p = math.exp(-lam)
        cum = p
        k = 0
        while u > cum and p > 0.0:
            k += 1
            p *= lam / k
            cum += p
        out[t] = k
    return out


def poisson(lam: float, rng: RandomSource) -> int:
    """Poisson(lam) by sequential inversion, split additively for large lam."""
    lam = float(lam)
    if not (lam >= 0.0 and math.isfinite(lam)):
        raise ValueError(f"Poisson rate must be finite and >= 0, got {lam}")
    if lam == 0.0:
        return 0
    m = 1 if lam <= _POISSON_SPLIT else int(math.ceil(lam / _POISSON_SPLIT))
    us = rng.uniform01_batch(m)
    return int(_poisson_inversion(lam / m, us).sum())


def poisson_positive(lam: float, rng: RandomSource) -> int:
    """Positive Poisson law P(k) = lam^k / (k! (e^lam - 1)) on k >= 1.

    Inversion with the k = 0 mass excluded; for large lam, rejection of 0
    from the plain Poisson (which then almost never triggers).
    """
    lam = float(lam)
    if not (lam > 0.0 and math.isfinite(lam)):
        raise ValueError(f"positive Poisson rate must be finite and > 0, got {lam}")
    if lam > _POISSON_SPLIT:
        while True:
            k = poisson(lam, rng)
            if k > 0:
                return k
    p0 = math.exp(-lam)
    target = p0 + rng.uniform01() * (1.0 - p0)
    p = p0
    cum = p0
    k = 0
    while target > cum and p > 0.0:
        k += 1
        p *= lam / k
        cum += p
    return max(k, 1)


class MaxIndexSampler:
    """Largest replicated-atom index of the multiset construction at fixed x.

    The law is F(k) = P(K <= k) = exp(-sum_{j>k} A(x^j)/j). A draw takes one
    uniform U and returns the smallest k with F(k) >= U; prefix sums of the
    series are cached across draws, so repeated calls at the same x (the
    rejection-loop pattern) pay amortised O(log k) per draw.
    """

    def __init__(self, x: float, config: OracleConfig = DEFAULT_CONFIG):
        self.x = check_boltzmann_param(x)
        self.config = config
        self.log_total = log_multiset_gf(self.x, config)  # sum of all terms
        self._lnx = math.log(self.x)
        self._prefix = [0.0]  # prefix[k] = sum_{j<=k} A(x^j)/j

    def term(self, j: int) -> float:
        """A(x^j)/j, the Poisson rate of replication order j."""
        xj = math.exp(j * self._lnx)
        return xj / ((1.0 - xj) ** 2 * j)

    def _extend_to(self, threshold: float) -> bool:
        """Grow the prefix cache until it reaches threshold; False if the
        remaining terms are below float resolution."""
        while self._prefix[-1] < threshold:
            j = len(self._prefix)
            nxt = self._prefix[-1] + self.term(j)
            if nxt == self._prefix[-1]:
                return False
            self._prefix.append(nxt)
        return True

    def cdf(self, k: int) -> float:
        """F(k) = exp(-(total - prefix_k))."""
        if k < 0:
            return 0.0
        while len(self._prefix) <= k:
            j = len(self._prefix)
            self._prefix.append(self._prefix[-1] + self.term(j))
        return math.exp(-(self.log_total - self._prefix[k]))

    def draw(self, rng: RandomSource) -> int:
        u = rng.uniform01()
        threshold = self.log_total + math.log(u)
        if threshold <= 0.0:
            return 0
        if not self._extend_to(threshold):
            # Tail mass below float resolution: report the deepest index.
            return len(self._prefix) - 1
        return bisect.bisect_left(self._prefix, threshold)


def max_index(x: float, rng: RandomSource, config: OracleConfig = DEFAULT_CONFIG) -> int:
    """One draw of the maximum replicated index at parameter x.

    Convenience wrapper; rejection loops should hold a MaxIndexSampler so the
    series prefix cache is reused across draws.
    """
    return MaxIndexSampler(x, config).draw(rng)


__all__ = [
    "RandomSource",
    "uniform01",
    "geometric",
    "geometric_batch",
    "poisson",
    "poisson_positive",
    "MaxIndexSampler",
    "max_index",
]


def _seed_from_env(value: str | None) -> int | None:
    """Parse an environment-provided seed; None when absent or empty."""
    if value is None or value == "":
        return None
    return int(value, 0)
