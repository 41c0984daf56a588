"""Counter-mode random streams with salted derivation.

Every stochastic component (room layout, device placement, behavior
transitions, traffic timing, attack sequencing) draws from its own salted
stream, so adding draws to one component never perturbs another.

The generator is SHA-256 in counter mode: block ``i`` is
``SHA256(key || i)`` with ``i`` encoded little-endian over 8 bytes, consumed
as four little-endian 64-bit words. The 16-byte key mixes the master seed
with a hash of the salt label::

    key[0:8]  = (seed mod 2**64) XOR SHA256(salt)[0:8]
    key[8:16] = SHA256(salt)[8:16]

This is portable (no dependence on platform RNG state), collision-resistant
across salts, and reproducible bit-for-bit for a given (seed, salt).
"""

from __future__ import annotations

import hashlib
import math
from typing import Sequence

_WORDS_PER_BLOCK = 4
_U64_MASK = 0xFFFFFFFFFFFFFFFF


class Stream:
    """One independent random stream identified by a 16-byte key."""

    __slots__ = ("key", "_counter", "_buffer")

    def __init__(self, key: bytes):
        if len(key) != 16:
            raise ValueError("stream key must be 16 bytes")
        self.key = key
        self._counter = 0
        self._buffer: list[int] = []

    @classmethod
    def from_seed(cls, seed: int, salt: str) -> "Stream":
        digest = hashlib.sha256(salt.encode("utf-8")).digest()
        mixed = (seed & _U64_MASK) ^ int.from_bytes(digest[0:8], "little")
        return cls(mixed.to_bytes(8, "little") + digest[8:16])

    def spawn(self, label: str) -> "Stream":
        """Derive an independent child stream; does not consume this stream."""
        child = hashlib.sha256(self.key + b"/" + label.encode("utf-8")).digest()
        return Stream(child[:16])

    def _refill(self) -> None:
        block = hashlib.sha256(self.key + self._counter.to_bytes(8, "little")).digest()
        self._counter += 1
        self._buffer = [
            int.from_bytes(block[i * 8 : (i + 1) * 8], "little")
            for i in range(_WORDS_PER_BLOCK)
        ]

    def u64(self) -> int:
        if not self._buffer:
            self._refill()
        return self._buffer.pop()

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.u64() >> 11) * (2.0**-53)

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randrange(self, n: int) -> int:
        """Unbiased integer in [0, n) via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange() requires n >= 1")
        limit = (2**64 // n) * n
        while True:
            x = self.u64()
            if x < limit:
                return x % n

    def choice(self, seq: Sequence):
        if not seq:
            raise ValueError("choice() from empty sequence")
        return seq[self.randrange(len(seq))]

    def weighted_index(self, weights: Sequence[float]) -> int:
        total = 0.0
        for w in weights:
            if w < 0:
                raise ValueError("weights must be non-negative")
            total += w
        if total <= 0:
            raise ValueError("weights must not all be zero")
        target = self.random() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += w
            if target < acc:
                return i
        return len(weights) - 1  # guard against fp round-off

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Gaussian draw via Box-Muller (two uniforms per call)."""
        u1 = 1.0 - self.random()  # (0, 1], keeps log() finite
        u2 = self.random()
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        return mu + sigma * z

    def exponential(self, scale: float = 1.0) -> float:
        return -scale * math.log(1.0 - self.random())

    def poisson(self, lam: float) -> int:
        """Poisson draw; Knuth's product method, split for large rates."""
        if lam < 0:
            raise ValueError("poisson() rate must be >= 0")
        count = 0
        while lam > 32.0:  # exp(-lam) underflow guard; Poisson sums are Poisson
            half = lam / 2.0
            count += self.poisson(half)
            lam -= half
        threshold = math.exp(-lam)
        k = 0
        p = 1.0
        while True:
            p *= self.random()
            if p <= threshold:
                return count + k
            k += 1

    def dirichlet(self, alpha: int, n: int) -> list[float]:
        """Symmetric Dirichlet(alpha, ..., alpha) over n parts, integer alpha.

        Uses the sum-of-exponentials form of the integer-shape Gamma, so the
        draw is exact and consumes exactly alpha * n uniforms.
        """
        if alpha < 1 or n < 1:
            raise ValueError("dirichlet() requires alpha >= 1 and n >= 1")
        gammas = []
        for _ in range(n):
            acc = 0.0
            for _ in range(alpha):
                acc += self.exponential()
            gammas.append(acc)
        total = sum(gammas)
        return [g / total for g in gammas]


def derive_stream(seed: int, salt: str) -> Stream:
    """Stream for one named component of a seeded run."""
    return Stream.from_seed(seed, salt)
