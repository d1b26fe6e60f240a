"""Deterministic random number generation for the simulator.

Every replica draws from its own xoshiro256++ stream (period 2^256 - 1),
seeded as

    seed_i = mix64(base_seed XOR (GOLDEN * i mod 2^64))

where mix64 is the splitmix64 finalizer and GOLDEN is the 64-bit golden-ratio
increment. The 256-bit generator state is expanded from seed_i by a splitmix64
walk, the seeding the xoshiro authors recommend. Replica i's stream depends
only on (base_seed, i), so results are bit-reproducible no matter how replicas
are scheduled.

This module is the pure-Python reference; the numba kernel in _kernels.py
implements the identical arithmetic and must produce identical streams
(property-tested in tests/test_simulator.py).
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15  # 2^64 / phi, rounded to odd


def mix64(x: int) -> int:
    """splitmix64 finalizer: a 64-bit bijective mixer."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def replica_seed(base_seed: int, index: int) -> int:
    """64-bit seed for replica `index` of a batch keyed by `base_seed`."""
    return mix64((base_seed ^ (GOLDEN * index)) & MASK64)


class Xoshiro256PP:
    """xoshiro256++ with splitmix64 state expansion.

    Integer-only arithmetic, bit-for-bit equal to the jitted version.
    """

    __slots__ = ("s0", "s1", "s2", "s3")

    def __init__(self, seed: int):
        x = seed & MASK64
        state = []
        for _ in range(4):
            x = (x + GOLDEN) & MASK64
            state.append(mix64(x))
        self.s0, self.s1, self.s2, self.s3 = state

    def next64(self) -> int:
        x = (self.s0 + self.s3) & MASK64
        result = ((((x << 23) | (x >> 41)) & MASK64) + self.s0) & MASK64
        t = (self.s1 << 17) & MASK64
        self.s2 ^= self.s0
        self.s3 ^= self.s1
        self.s1 ^= self.s2
        self.s0 ^= self.s3
        self.s2 ^= t
        self.s3 = ((self.s3 << 45) | (self.s3 >> 19)) & MASK64
        return result

    def bounded(self, n: int) -> int:
        # Rejection below 2^64 mod n keeps the draw exactly uniform on [0, n).
        lim = (1 << 64) % n
        while True:
            r = self.next64()
            if r >= lim:
                return r % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates using bounded draws."""
        for i in range(len(items) - 1, 0, -1):
            j = self.bounded(i + 1)
            items[i], items[j] = items[j], items[i]
