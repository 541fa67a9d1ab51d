"""Deterministic random generator used for all key material and simulations.

SHA-256 in counter mode over an injected seed: the same seed always yields
the same byte stream regardless of platform or interpreter version, which
is what makes seeded CLI pipelines and simulations byte-reproducible.
"""

import hashlib
import os


class HashDrbg:
    """Counter-mode SHA-256 generator over a byte seed."""

    def __init__(self, seed: bytes):
        if not isinstance(seed, (bytes, bytearray)):
            raise TypeError("seed must be bytes")
        self._key = hashlib.sha256(b"mdbv-drbg:" + bytes(seed)).digest()
        self._counter = 0

    def randbytes(self, n: int) -> bytes:
        out = bytearray()
        while len(out) < n:
            block = hashlib.sha256(
                self._key + self._counter.to_bytes(8, "big")
            ).digest()
            self._counter += 1
            out.extend(block)
        return bytes(out[:n])

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            raise ValueError("k must be positive")
        nbytes = (k + 7) // 8
        value = int.from_bytes(self.randbytes(nbytes), "big")
        return value >> (nbytes * 8 - k)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        k = n.bit_length()
        while True:
            value = self.getrandbits(k)
            if value < n:
                return value

    def randrange(self, low: int, high: int) -> int:
        return low + self.randbelow(high - low)

    def scalar(self, q) -> int:
        """Uniform nonzero scalar in [1, q)."""
        return 1 + self.randbelow(int(q) - 1)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return self.getrandbits(53) / (1 << 53)


def system_rng() -> HashDrbg:
    """Fresh generator seeded from the operating system."""
    return HashDrbg(os.urandom(32))
