"""Seeded 64-bit generators used to derive random shift plans.

The algorithms are part of the ``.wmplan`` contract: a plan stores only its
key, so every implementation must reproduce the same draws. State is seeded
by one SplitMix64 step from the key, then advanced with xorshift64*.
"""

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> tuple[int, int]:
    """One SplitMix64 step: returns ``(new_state, output)``."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


class XorShift64Star:
    """xorshift64* (Vigna, 2014) with shifts 12/25/27."""

    def __init__(self, key: int):
        _, state = splitmix64(key & MASK64)
        self.state = state or 0x9E3779B97F4A7C15  # the all-zero state is absorbing

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection (no modulo bias)."""
        if n < 1:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


def derive_key(key: int, *salt: int) -> int:
    """Mix extra integers into a key, e.g. a trial number in a sweep."""
    state = key & MASK64
    for s in salt:
        state, out = splitmix64(state ^ (s & MASK64))
        state = out
    return state
