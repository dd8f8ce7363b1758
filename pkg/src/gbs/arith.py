"""Exact arithmetic support: unreduced rationals, factorization over a fixed
prime set (with -1 as a formal sign prime), and simultaneous congruences.

Integers are plain Python ``int`` throughout; they are arbitrary precision,
carry a canonical zero, and round-trip through decimal text.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

# Unreduced fractions are normalized lazily once either component grows past
# this many bits; equality and arithmetic never require it.
_NORMALIZE_BITS = 4096


class ArithError(ValueError):
    """Raised for domain violations (zero input, foreign prime factor, ...)."""


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate for desk-scale inputs."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def first_primes(m: int) -> tuple[int, ...]:
    """The first ``m`` primes, ascending."""
    out: list[int] = []
    n = 2
    while len(out) < m:
        if is_prime(n):
            out.append(n)
        n += 1
    return tuple(out)


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of ``|n|``, ascending, by trial division."""
    n = abs(n)
    out: list[int] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


class ExactRational:
    """A fraction of integers that is *not* kept reduced.

    Equality is by cross-multiplication, so unreduced and reduced
    representations of the same value compare equal.  Components are reduced
    by their gcd only when they grow past an internal bit threshold, which
    bounds growth in long products without the cost of reducing every result.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ArithError("zero denominator")
        if num.bit_length() > _NORMALIZE_BITS or den.bit_length() > _NORMALIZE_BITS:
            g = math.gcd(num, den)
            if g > 1:
                num //= g
                den //= g
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(other) -> "ExactRational":
        if isinstance(other, ExactRational):
            return other
        if isinstance(other, int):
            return ExactRational(other, 1)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactRational(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.num == 0:
            raise ArithError("division by zero")
        return ExactRational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return ExactRational(-self.num, self.den)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        g = math.gcd(self.num, self.den)
        n, d = self.num // g, self.den // g
        if d < 0:
            n, d = -n, -d
        return hash((n, d))

    def is_zero(self) -> bool:
        return self.num == 0

    def is_integer(self) -> bool:
        return self.num % self.den == 0

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ArithError(f"{self} is not an integer")
        return self.num // self.den

    def divisible_by(self, d: int) -> bool:
        """Whether the value is an integer multiple of ``d``."""
        if d == 0:
            raise ArithError("zero divisor")
        if not self.is_integer():
            return False
        return self.as_integer() % d == 0

    def __repr__(self):
        return f"ExactRational({self.num}, {self.den})"

    def __str__(self):
        return f"{self.num}/{self.den}"


@dataclass(frozen=True)
class PrimeSet:
    """An ordered tuple of distinct primes, optionally led by the formal
    sign prime -1 (used to track signs in factor vectors)."""

    primes: tuple[int, ...]

    def __post_init__(self):
        seen = set()
        for i, p in enumerate(self.primes):
            if p in seen:
                raise ArithError(f"duplicate prime {p}")
            seen.add(p)
            if p == -1:
                if i != 0:
                    raise ArithError("-1 must come first in a prime set")
            elif not is_prime(p):
                raise ArithError(f"{p} is not prime")

    @property
    def has_sign(self) -> bool:
        return bool(self.primes) and self.primes[0] == -1

    @property
    def real_primes(self) -> tuple[int, ...]:
        return self.primes[1:] if self.has_sign else self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


@dataclass(frozen=True)
class FactoredInt:
    """``residual * prod(p**e)`` decomposition of a nonzero integer over a
    prime set; the residual is positive and coprime to every real prime."""

    residual: int
    exps: tuple[int, ...]
    primes: PrimeSet

    def value(self) -> int:
        v = self.residual
        for p, e in zip(self.primes, self.exps):
            v *= p ** e
        return v


def valuation(d: int, p: int) -> int:
    """Largest e with ``p**e | d`` for a prime p >= 2; for the formal prime
    -1, the sign bit (1 if ``d < 0`` else 0)."""
    if d == 0:
        raise ArithError("valuation of zero is undefined")
    if p == -1:
        return 1 if d < 0 else 0
    if p < 2 or not is_prime(p):
        raise ArithError(f"{p} is not a prime or -1")
    e = 0
    d = abs(d)
    while d % p == 0:
        d //= p
        e += 1
    return e


def factor_over(k: int, primes: PrimeSet) -> FactoredInt:
    """Split nonzero ``k`` into exponents over ``primes`` and a coprime
    positive residual.  Negative ``k`` requires the sign prime -1."""
    if k == 0:
        raise ArithError("cannot factor zero")
    residual = abs(k)
    exps = []
    for p in primes:
        if p == -1:
            exps.append(1 if k < 0 else 0)
            continue
        e = 0
        while residual % p == 0:
            residual //= p
            e += 1
        exps.append(e)
    if k < 0 and not primes.has_sign:
        raise ArithError("negative input needs the sign prime -1")
    return FactoredInt(residual, tuple(exps), primes)


def _prime_valuations(congruences: Sequence[tuple[int, int]], primes: PrimeSet):
    """Per real prime, the list of (valuation of the modulus, residue).
    Rejects moduli with a prime factor outside the set."""
    real = primes.real_primes
    table: dict[int, list[tuple[int, int]]] = {p: [] for p in real}
    for c, d in congruences:
        if d == 0:
            raise ArithError("zero modulus")
        rest = abs(d)
        for p in real:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            table[p].append((e, c))
        if rest != 1:
            raise ArithError(f"modulus {d} has a prime factor outside the set")
    return table


def crt_solvable(congruences: Sequence[tuple[int, int]], primes: PrimeSet) -> bool:
    """Whether ``x = c_i mod d_i`` has a simultaneous integer solution.

    Decided prime by prime: for each p, every pair of congruences must agree
    modulo p to the smaller of the two valuations of their moduli.
    """
    table = _prime_valuations(congruences, primes)
    for p, rows in table.items():
        for a in range(len(rows)):
            ea, ca = rows[a]
            for b in range(a + 1, len(rows)):
                eb, cb = rows[b]
                if (ca - cb) % p ** min(ea, eb) != 0:
                    return False
    return True


def crt_solve(congruences: Sequence[tuple[int, int]], primes: PrimeSet) -> Optional[tuple[int, int]]:
    """A concrete solution of the system, as ``(x0, modulus)`` with
    ``0 <= x0 < modulus``, or None when unsolvable."""
    if not crt_solvable(congruences, primes):
        return None
    x, mod = 0, 1
    table = _prime_valuations(congruences, primes)
    for p, rows in table.items():
        e, c = max(rows, default=(0, 0))
        pe = p ** e
        if pe == 1:
            continue
        # combine x mod `mod` with c mod pe; moduli are coprime
        t = ((c - x) * pow(mod, -1, pe)) % pe
        x += mod * t
        mod *= pe
    return x % mod, mod
