"""Deterministic counter-based random numbers (SplitMix64).

The benchmark must be reproducible bit-for-bit from a 64-bit seed alone, in
serial and parallel runs alike, so the generator is pinned down here rather
than delegated to a library default:

- state advances by the 64-bit golden-ratio increment 0x9E3779B97F4A7C15 and
  each output is the SplitMix64 finalizer of the state (Steele, Lea &
  Flood's generator);
- doubles take the top 53 bits: ``(u >> 11) * 2**-53`` in [0, 1);
- normals come from Box-Muller, one value per pair of uniforms (no spare
  caching): ``sqrt(-2 ln(1-u1)) * cos(2 pi u2)``;
- trial substreams: trial ``i`` of seed ``s`` starts from state
  ``mix(s XOR mix((i + 1) * 0x9E3779B97F4A7C15))`` where ``mix`` is the
  SplitMix64 finalizer; all arithmetic wraps modulo 2**64.
"""

import math

__all__ = ["SplitMix64", "substream"]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z):
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed):
        self._state = int(seed) & _MASK

    def next_u64(self):
        self._state = (self._state + _GOLDEN) & _MASK
        return _mix(self._state)

    def uniform(self, low=0.0, high=1.0):
        u = (self.next_u64() >> 11) * 2.0**-53
        return low + (high - low) * u

    def normal(self):
        u1 = (self.next_u64() >> 11) * 2.0**-53
        u2 = (self.next_u64() >> 11) * 2.0**-53
        return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)

    def integers(self, n):
        """Uniform integer in [0, n) by rejection-free modulo of the mix."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n


def substream(seed, index):
    """Independent generator for trial ``index`` of master ``seed``."""
    if index < 0:
        raise ValueError("substream index must be nonnegative")
    return SplitMix64(_mix((int(seed) ^ _mix(((index + 1) * _GOLDEN) & _MASK)) & _MASK))
