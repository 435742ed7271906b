"""Byte-level randomness source shared by all sampling routines."""

import hashlib
import os


class RandomSource:
    """Uniform byte stream: OS entropy by default, a SHA-256 counter stream
    when seeded.

    Seeded streams are deterministic and platform-independent, which fixture
    generation and the CLI ``--seed`` option rely on.  A RandomSource is
    stateful and must stay confined to one thread.
    """

    def __init__(self, seed=None):
        if seed is None:
            self._key = None
            return
        if isinstance(seed, int):
            if seed < 0:
                raise ValueError("seed must be non-negative")
            seed = seed.to_bytes((seed.bit_length() + 7) // 8 or 1, "big")
        elif isinstance(seed, str):
            seed = seed.encode()
        elif not isinstance(seed, (bytes, bytearray)):
            raise TypeError(f"unsupported seed type: {type(seed).__name__}")
        self._key = hashlib.sha256(bytes(seed)).digest()
        self._counter = 0
        self._pool = b""

    @property
    def seeded(self):
        return self._key is not None

    def take(self, n):
        """Return exactly n fresh bytes."""
        if n < 0:
            raise ValueError("byte count must be non-negative")
        if self._key is None:
            return os.urandom(n)
        while len(self._pool) < n:
            block = hashlib.sha256(self._key + self._counter.to_bytes(8, "big")).digest()
            self._counter += 1
            self._pool += block
        out, self._pool = self._pool[:n], self._pool[n:]
        return out

    def bit(self):
        return self.take(1)[0] & 1

    def fork(self, label):
        """Derive an independent deterministic child stream (seeded mode only)."""
        if self._key is None:
            return RandomSource()
        if isinstance(label, str):
            label = label.encode()
        return RandomSource(self._key + bytes(label))


def sample_below(rng, bound):
    """Uniform integer in [0, bound) via rejection sampling.

    Draws ceil(bits/8) bytes per attempt and masks down to the bit length of
    bound - 1, so each attempt accepts with probability >= 1/2.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    if bound == 1:
        return 0
    bits = (bound - 1).bit_length()
    nbytes = (bits + 7) // 8
    mask = (1 << bits) - 1
    while True:
        v = int.from_bytes(rng.take(nbytes), "big") & mask
        if v < bound:
            return v
