"""Deterministic pseudo-random number generation.

Everything stochastic in this package draws from a splitmix64 stream so
that identical seeds give bit-identical results across runs, platforms
and languages.  The mapping from raw 64-bit words to other types is
fixed:

* uniform real in [0, 1): the top 53 bits, ``(word >> 11) * 2**-53``
* integer in [0, n):       ``word % n``
* standard normal:         Box-Muller on two uniform reals, where the
  first real is shifted to (0, 1] to avoid log(0)

Output ``k`` of a stream with seed ``s`` is ``mix64(s + k * GAMMA)``
(wrapping 64-bit arithmetic, ``k`` starting at 1), which makes the
stream freely vectorizable.
"""

from __future__ import annotations

import numpy as np

MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
GAMMA = np.uint64(0x9E3779B97F4A7C15)

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)

_INV_2_53 = 2.0 ** -53


def mix64(z):
    """splitmix64 finalizer; accepts a python int or a uint64 array."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        z = z ^ (z >> np.uint64(31))
    if z.ndim == 0:
        return int(z)
    return z


def child_seed(seed: int, index: int) -> int:
    """Derive a sub-stream seed, e.g. one per video for parallel work."""
    return mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) ^ np.uint64(index))


class SplitMix64:
    """Counter-based splitmix64 stream with vectorized draws."""

    def __init__(self, seed: int):
        self._seed = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        self._count = 0

    def u64(self, n: int) -> np.ndarray:
        """Next ``n`` raw 64-bit words as a uint64 array."""
        ks = np.arange(self._count + 1, self._count + n + 1, dtype=np.uint64)
        self._count += n
        with np.errstate(over="ignore"):
            return mix64(self._seed + ks * GAMMA)

    def next_u64(self) -> int:
        return int(self.u64(1)[0])

    def floats(self, n: int) -> np.ndarray:
        """Uniform float64 samples in [0, 1)."""
        return (self.u64(n) >> np.uint64(11)).astype(np.float64) * _INV_2_53

    def randint(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def normals(self, n: int) -> np.ndarray:
        """Standard normal samples via Box-Muller."""
        m = (n + 1) // 2
        w = self.u64(2 * m)
        u1 = ((w[:m] >> np.uint64(11)).astype(np.float64) + 1.0) * _INV_2_53
        u2 = (w[m:] >> np.uint64(11)).astype(np.float64) * _INV_2_53
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        out = np.concatenate([r * np.cos(theta), r * np.sin(theta)])
        return out[:n]

    def sample_without_replacement(self, n: int, k: int) -> np.ndarray:
        """``k`` distinct indices from range(n), via partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} distinct values from range({n})")
        idx = np.arange(n)
        for i in range(k):
            j = i + self.randint(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]

    def permutation(self, n: int) -> np.ndarray:
        return self.sample_without_replacement(n, n)
