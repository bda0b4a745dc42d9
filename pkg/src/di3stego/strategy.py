"""Keyed pseudorandom stream and DI3 embedding-strategy generation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StrategyError, ZeroBound

_MASK = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class KeyedPrng:
    """xoshiro256** seeded through splitmix64.

    The output stream depends only on the 64-bit seed, so sender and
    receiver regenerate identical strategies on any platform.
    """

    def __init__(self, seed: int):
        self.seed = seed & _MASK
        sm = self.seed
        s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            s.append(out)
        self._s = s

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK, 7) * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def next_below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound - 1]`` by rejection sampling."""
        if bound < 1:
            raise ZeroBound(f"bound must be >= 1, got {bound}")
        if bound == 1:
            return 0
        # reject the low 2**64 mod bound outputs so every residue is equally likely
        threshold = (1 << 64) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def shuffle(self, items: list) -> list:
        """Fisher-Yates shuffle in place; returns ``items``."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


def prng_new(seed: int) -> KeyedPrng:
    return KeyedPrng(seed)


def next_below(prng: KeyedPrng, bound: int) -> int:
    return prng.next_below(bound)


@dataclass(frozen=True, eq=False)
class Strategy:
    terms: np.ndarray
    P: int
    N: int

    @property
    def iterations(self) -> int:
        return len(self.terms)

    @property
    def n0(self) -> int:
        return len(self.terms) - self.P

    def __eq__(self, other):
        if not isinstance(other, Strategy):
            return NotImplemented
        return (self.P, self.N) == (other.P, other.N) and np.array_equal(self.terms, other.terms)


def make_strategy(N: int, P: int, iterations: int, prng: KeyedPrng) -> Strategy:
    """Build a strategy of length ``iterations`` over message indices ``0..P-1``.

    The first ``iterations - P`` terms are free draws; the final ``P`` terms
    are a keyed permutation of ``0..P-1`` so every message index is visited.
    """
    n0 = iterations - P
    if P > N or n0 < 0:
        raise StrategyError(f"invalid strategy request N={N}, P={P}, iterations={iterations}")
    if P < 1:
        raise StrategyError(f"message width must be >= 1, got {P}")
    prefix = [prng.next_below(P) for _ in range(n0)]
    arrangement = prng.shuffle(list(range(P)))
    terms = np.array(prefix + arrangement, dtype=np.int64)
    terms.setflags(write=False)
    return Strategy(terms=terms, P=P, N=N)
