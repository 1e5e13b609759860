"""Exact arithmetic on Farey vertices.

A vertex is a reduced fraction p/q together with the point 1/0 at infinity.
Two vertices pair through the absolute determinant |p*b - q*a|; everything
else in the package is built on top of that pairing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Level = int


class InvalidInputError(ValueError):
    """An argument violates an operation's precondition."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured safety limit."""


@dataclass(frozen=True)
class FareyVertex:
    """Reduced fraction p/q with q > 0, or (1, 0) for infinity."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0 or (self.q == 0 and self.p != 1):
            raise InvalidInputError(f"vertex ({self.p}, {self.q}) is not canonical")
        if math.gcd(abs(self.p), self.q) != 1:
            raise InvalidInputError(f"vertex ({self.p}, {self.q}) is not reduced")

    @property
    def key(self) -> tuple[int, int]:
        """Deterministic sort key; every vertex list is ordered by (q, p)."""
        return (self.q, self.p)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


INFINITY = FareyVertex(1, 0)


def canonicalize(p: int, q: int) -> FareyVertex:
    """Reduce p/q to the canonical representative (q > 0, or (1, 0))."""
    if p == 0 and q == 0:
        raise InvalidInputError("0/0 does not name a vertex")
    g = math.gcd(abs(p), abs(q))
    p //= g
    q //= g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return FareyVertex(p, q)


def parse_vertex(text: str) -> FareyVertex:
    """Parse 'p/q' (or a bare integer) into a vertex."""
    s = text.strip()
    try:
        if "/" in s:
            a, b = s.split("/")
            return canonicalize(int(a), int(b))
        return canonicalize(int(s), 1)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"cannot parse vertex from {text!r}") from exc


def det_pair(v: FareyVertex, w: FareyVertex) -> int:
    """Absolute determinant |v.p * w.q - v.q * w.p|; zero iff v == w."""
    return abs(v.p * w.q - v.q * w.p)


def level(v: FareyVertex) -> Level:
    """max(|p|, |q|); the exhaustion parameter for windowed graphs."""
    return max(abs(v.p), v.q)


def circular_key(v: FareyVertex):
    """Position of v in the boundary order: rationals by value, 1/0 last."""
    if v.q == 0:
        return (1, Fraction(0))
    return (0, Fraction(v.p, v.q))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, x, y) with a*x + b*y == g
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def find_seed_neighbor(v: FareyVertex, k: int) -> FareyVertex:
    """Some vertex at determinant exactly k from v, via the extended gcd.

    Solves p*y - q*x = k and then shifts along (p, q) until the solution is
    a reduced fraction.  Deterministic: the smallest |shift| wins, positive
    side first.
    """
    if k < 1:
        raise InvalidInputError("determinant target must be >= 1")
    g, u, w = _ext_gcd(v.p, v.q)
    # g == 1 because v is reduced; p*u + q*w == 1
    x0, y0 = -w * k, u * k
    t = 0
    while True:
        for s in ((t, -t) if t else (0,)):
            x, y = x0 + s * v.p, y0 + s * v.q
            if math.gcd(abs(x), abs(y)) == 1:
                return canonicalize(x, y)
        t += 1


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _shift_range(x0: int, y0: int, p: int, q: int, cap: int):
    """Integer shifts t with |x0 + t*p| <= cap and |y0 + t*q| <= cap."""
    lo, hi = None, None
    for c, s in ((x0, p), (y0, q)):
        if s == 0:
            if abs(c) > cap:
                return range(0)
            continue
        if s > 0:
            a, b = _ceil_div(-cap - c, s), _floor_div(cap - c, s)
        else:
            a, b = _ceil_div(cap - c, s), _floor_div(-cap - c, s)
        lo = a if lo is None else max(lo, a)
        hi = b if hi is None else min(hi, b)
    if lo is None:
        raise InvalidInputError("degenerate direction (0, 0)")
    return range(lo, hi + 1)


def neighbors_exact(v: FareyVertex, seed: FareyVertex, k: int,
                    level_cap: Level) -> list[FareyVertex]:
    """All u with det_pair(v, u) == k and level(u) <= level_cap.

    The solutions of p*y - q*x = +-k form two arithmetic families
    +-(seed) + t*(p, q); both are swept and filtered to reduced fractions.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    if level_cap < 0:
        raise InvalidInputError("level cap must be >= 0")
    if det_pair(v, seed) != k:
        raise InvalidInputError(f"seed {seed} is not at determinant {k} from {v}")
    found = set()
    for sx, sy in ((seed.p, seed.q), (-seed.p, -seed.q)):
        for t in _shift_range(sx, sy, v.p, v.q, level_cap):
            x, y = sx + t * v.p, sy + t * v.q
            if math.gcd(abs(x), abs(y)) == 1:
                found.add(canonicalize(x, y))
    return sorted(found, key=lambda u: u.key)


def predecessors(v: FareyVertex, k: int) -> list[FareyVertex]:
    """Neighbors of v in the exact-k graph dominated coordinatewise by v.

    A vertex a/b counts when |a| <= |p| and |b| <= |q|.  1/0 never has any.
    """
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    if v.q == 0:
        return []
    seed = find_seed_neighbor(v, k)
    return [u for u in neighbors_exact(v, seed, k, level(v))
            if abs(u.p) <= abs(v.p) and u.q <= v.q]


@dataclass(frozen=True)
class Mobius:
    """Integer matrix [[a, b], [c, d]] with determinant +-1, modulo sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c not in (1, -1):
            raise InvalidInputError("matrix determinant must be +1 or -1")
        for entry in (self.a, self.b, self.c, self.d):
            if entry:
                if entry < 0:
                    for f in ("a", "b", "c", "d"):
                        object.__setattr__(self, f, -getattr(self, f))
                break

    def apply(self, v: FareyVertex) -> FareyVertex:
        return canonicalize(self.a * v.p + self.b * v.q,
                            self.c * v.p + self.d * v.q)

    def compose(self, other: "Mobius") -> "Mobius":
        return Mobius(self.a * other.a + self.b * other.c,
                      self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c,
                      self.c * other.b + self.d * other.d)

    def invert(self) -> "Mobius":
        # adjugate; the +-1 determinant is absorbed by the sign convention
        return Mobius(self.d, -self.b, -self.c, self.a)
