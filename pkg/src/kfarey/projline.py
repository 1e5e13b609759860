"""The projective line over Z/rZ and the reduction map on Farey vertices.

A line is a class of pairs (a, b) with gcd(a, b, r) = 1 under unit scaling.
Reducing a vertex mod r is constant on components of the exact-k graph when
r = k, and is a proper coloring of the at-most-k graph when r > k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import FareyVertex, InvalidInputError


@dataclass(frozen=True)
class ProjLine:
    """Canonical representative: the lexicographic minimum of the unit orbit."""

    r: int
    a: int
    b: int

    def __str__(self) -> str:
        return f"[{self.a}:{self.b}] mod {self.r}"

    @property
    def key(self) -> tuple[int, int]:
        return (self.a, self.b)


@lru_cache(maxsize=None)
def _units(r: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, r) if math.gcd(u, r) == 1)


def line(r: int, a: int, b: int) -> ProjLine:
    """Canonicalize the pair (a, b) mod r; rejects inadmissible pairs."""
    if r < 2:
        raise InvalidInputError("modulus must be >= 2")
    a %= r
    b %= r
    if math.gcd(math.gcd(a, b), r) != 1:
        raise InvalidInputError(f"({a}, {b}) is not admissible mod {r}")
    best = min((a * u % r, b * u % r) for u in _units(r))
    return ProjLine(r, best[0], best[1])


def phi(r: int, v: FareyVertex) -> ProjLine:
    """Reduce a vertex mod r.  Always admissible since gcd(p, q) = 1."""
    return line(r, v.p % r, v.q % r)


@dataclass(frozen=True)
class ReductionMap:
    """phi with the modulus fixed; handy as a coloring function."""

    r: int

    def __post_init__(self):
        if self.r < 2:
            raise InvalidInputError("modulus must be >= 2")

    def __call__(self, v: FareyVertex) -> ProjLine:
        return phi(self.r, v)


def enumerate_lines(r: int) -> list[ProjLine]:
    """All lines mod r, sorted by canonical representative."""
    if r < 2:
        raise InvalidInputError("modulus must be >= 2")
    seen = set()
    for a in range(r):
        for b in range(r):
            if math.gcd(math.gcd(a, b), r) == 1:
                seen.add(line(r, a, b))
    return sorted(seen, key=lambda ln: ln.key)


@lru_cache(maxsize=None)
def line_count(r: int) -> int:
    return len(enumerate_lines(r))


# Deterministic Miller-Rabin witnesses; exact for everything below 3.3e24,
# far beyond any modulus this package touches.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(k: int) -> int:
    """Smallest prime strictly greater than k."""
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    n = k + 1
    while not is_prime(n):
        n += 1
    return n


def min_line_count_above(k: int, r_max: int) -> tuple[int, int]:
    """(r, |lines mod r|) minimizing the line count over k < r <= r_max.

    The count at the winning r is an upper bound for the chromatic number
    of the at-most-k graph.  Several moduli often share the minimal count;
    the reported one is the smallest prime among them when a prime ties
    (prime moduli carry the classical bound), otherwise the smallest.
    """
    if k < 1 or k >= r_max:
        raise InvalidInputError("need 1 <= k < r_max")
    counts = [(line_count(r), r) for r in range(k + 1, r_max + 1)]
    best = min(c for c, _ in counts)
    ties = [r for c, r in counts if c == best]
    winner = next((r for r in ties if is_prime(r)), ties[0])
    return winner, best
