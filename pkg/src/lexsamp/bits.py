"""Seeded fair-bit streams with bit-exact replay.

Every random decision in the sampler is a fair bit pulled from a
:class:`BitStream`. The stream is generated by splitmix64 and bits are
extracted most-significant-bit first from each 64-bit word, so a given
seed produces the same bit sequence on every platform and every run.
Substreams (one per recursion level, one per replicate) are derived with
:func:`derive_seed`, which is itself the splitmix64 output sequence.
"""

import secrets

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

GENERATOR_ID = "splitmix64/msb"


def mix64(z: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """The index-th output of the splitmix64 sequence seeded at `seed`."""
    return mix64((seed + (index + 1) * _GOLDEN) & MASK64)


def resolve_seed(seed: int | None) -> int:
    """Replace None with 64 bits of OS entropy; reduce ints mod 2**64."""
    if seed is None:
        return secrets.randbits(64)
    return int(seed) & MASK64


class BitStream:
    """Iid fair bits: splitmix64 words, bits MSB-first within each word.

    `consumed` counts every bit handed out by this stream.
    """

    generator = GENERATOR_ID

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._state = self.seed
        self._word = 0
        self._avail = 0
        self.consumed = 0

    def _next_word(self) -> int:
        self._state = (self._state + _GOLDEN) & MASK64
        return mix64(self._state)

    def bit(self) -> int:
        """Next single fair bit."""
        if self._avail == 0:
            self._word = self._next_word()
            self._avail = 64
        self._avail -= 1
        self.consumed += 1
        return (self._word >> self._avail) & 1

    def take(self, count: int) -> list[int]:
        """Next `count` fair bits as a list of 0/1 ints."""
        out: list[int] = []
        word, avail = self._word, self._avail
        need = count
        while need > 0:
            if avail == 0:
                word = self._next_word()
                avail = 64
            grab = need if need < avail else avail
            base = avail - 1
            out.extend([(word >> (base - j)) & 1 for j in range(grab)])
            avail -= grab
            need -= grab
        self._word, self._avail = word, avail
        self.consumed += count
        return out
