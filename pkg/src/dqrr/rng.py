"""Deterministic splittable counter-based generator (splitmix64 core).

Children are derived from (seed, label) so independent checks can draw
their own reproducible streams; all state is explicit integers, so runs
are byte-reproducible across platforms.
"""

from __future__ import annotations

from fractions import Fraction

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK
    return z ^ (z >> 31)


class Rng:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK
        return _mix(self.state)

    def child(self, label: str) -> "Rng":
        h = self.state
        for ch in label.encode():
            h = _mix((h ^ ch) * GAMMA & MASK)
        return Rng(h)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform in [lo, hi]."""
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]

    def rational(self, max_num=9, max_den=4) -> Fraction:
        num = self.randint(-max_num, max_num)
        den = self.randint(1, max_den)
        return Fraction(num, den)

    def nonzero_rational(self, max_num=9, max_den=4) -> Fraction:
        while True:
            q = self.rational(max_num, max_den)
            if q:
                return q
