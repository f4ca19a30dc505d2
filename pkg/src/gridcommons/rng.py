"""Counter-based random number generation.

Every draw is a pure function of (key, counter), so the n-th value of a
stream never depends on how earlier values were consumed, on batch layout,
or on thread schedule.  A batch of simulator instances carries one (key,
counter) pair per instance; advancing instance i never perturbs instance j.

The bit mixer is the SplitMix64 finalizer applied to ``key + counter * GAMMA``
(64-bit wraparound arithmetic throughout).  Child streams made by ``split``
get fresh keys derived through the same mixer with a domain-separation tag,
so parent and children produce unrelated sequences; key collisions, the only
way two streams could ever overlap, have probability ~2^-64 per pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_SPLIT_TAG = np.uint64(0xA3EC4E93C0A5B915)
_U53_SCALE = float(2.0**-53)


def _mix(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer over a uint64 array (wraps mod 2^64)."""
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def _hash64(key: np.ndarray, counter: np.ndarray) -> np.ndarray:
    return _mix(key + counter * _GAMMA)


@dataclass
class Rng:
    """A batch of independent counter-based streams.

    key, counter: uint64 arrays of identical shape (one stream per entry).
    """

    key: np.ndarray
    counter: np.ndarray

    def copy(self) -> "Rng":
        return Rng(self.key.copy(), self.counter.copy())


def make_rng(seed, n: int = 1) -> Rng:
    """Build n streams from integer seed material.

    seed may be a scalar (streams are derived per index) or an array of n
    per-stream seeds.
    """
    seed_arr = np.asarray(seed, dtype=np.uint64)
    if seed_arr.ndim == 0:
        idx = np.arange(n, dtype=np.uint64)
        key = _mix(_mix(seed_arr[None] * _GAMMA + _GAMMA) + idx * _GAMMA)
    else:
        key = _mix(seed_arr * _GAMMA + _GAMMA)
    return Rng(key=key.astype(np.uint64), counter=np.zeros(key.shape, dtype=np.uint64))


def rng_bits(rng: Rng, n: int) -> tuple[Rng, np.ndarray]:
    """Draw n uint64 words per stream; returns (advanced rng, (..., n) array)."""
    if n < 0:
        raise ValueError("draw count must be >= 0")
    offsets = np.arange(n, dtype=np.uint64)
    words = _hash64(rng.key[..., None], rng.counter[..., None] + offsets)
    out = Rng(rng.key, rng.counter + np.uint64(n))
    return out, words


def rng_uniform(rng: Rng, n: int) -> tuple[Rng, np.ndarray]:
    """Draw n floats in [0, 1) per stream.

    Advances each counter by exactly n; the values are the deterministic
    continuation of each stream.
    """
    rng, words = rng_bits(rng, n)
    return rng, (words >> np.uint64(11)).astype(np.float64) * _U53_SCALE


def rng_split(rng: Rng, n_children: int = 1) -> tuple[Rng, Rng]:
    """Derive n_children fresh streams per parent stream.

    Consumes one parent draw.  Child keys depend on (parent key, parent
    counter, child index), so repeated splits at different points yield
    distinct children.  Returns (advanced parent, children) where children
    has shape parent_shape + (n_children,).
    """
    base = _hash64(rng.key ^ _SPLIT_TAG, rng.counter)
    idx = np.arange(n_children, dtype=np.uint64)
    child_keys = _mix(base[..., None] + idx * _GAMMA)
    parent = Rng(rng.key, rng.counter + np.uint64(1))
    children = Rng(child_keys, np.zeros(child_keys.shape, dtype=np.uint64))
    return parent, children
