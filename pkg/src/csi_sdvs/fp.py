"""Prime-field arithmetic over moduli of the shape p = 4*l1*...*ln - 1.

Values are arbitrary-precision, so the same code serves the desk-scale
modulus p = 419 and 512-bit production-shaped moduli.
"""

import random

from .rng import sample_below

_MR_ROUNDS = 64
_SMALL_PRIME_LIMIT = 1 << 64


def _trial_division_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _miller_rabin(n, rounds=_MR_ROUNDS):
    if n < 2 or n % 2 == 0:
        return n == 2
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # bases drawn from a stream seeded by n itself, so results are repeatable
    picker = random.Random(n)
    for _ in range(rounds):
        a = picker.randrange(2, n - 1)
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


def is_prime(n):
    """Exact below 2^64 (trial division), 64-round Miller-Rabin above."""
    if n < _SMALL_PRIME_LIMIT:
        return _trial_division_prime(n)
    return _miller_rabin(n)


class PrimeModulus:
    """The field characteristic p together with the odd primes l_i dividing
    (p + 1) / 4.  Validated on construction: p must be prime, congruent to
    3 mod 4, and equal to 4 * l_1 * ... * l_n - 1 exactly.
    """

    __slots__ = ("p", "ells")

    def __init__(self, p, ells):
        ells = tuple(int(e) for e in ells)
        p = int(p)
        if not ells:
            raise ValueError("at least one odd prime factor required")
        if len(set(ells)) != len(ells):
            raise ValueError("factors must be distinct")
        for e in ells:
            if e < 3 or e % 2 == 0 or not _trial_division_prime(e):
                raise ValueError(f"{e} is not a small odd prime")
        prod = 1
        for e in ells:
            prod *= e
        if 4 * prod - 1 != p:
            raise ValueError("p != 4 * l_1 * ... * l_n - 1")
        if p % 4 != 3:
            raise ValueError("p must be 3 mod 4")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.ells = ells

    @property
    def byte_length(self):
        return (self.p.bit_length() + 7) // 8

    def __eq__(self, other):
        return isinstance(other, PrimeModulus) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return f"PrimeModulus(p={self.p}, ells={self.ells})"

    def element(self, value):
        return FieldElement(value, self)

    @property
    def zero(self):
        return FieldElement(0, self)

    @property
    def one(self):
        return FieldElement(1, self)


class FieldElement:
    """Canonical residue in [0, p).  Mixed-modulus operations raise."""

    __slots__ = ("value", "modulus")

    def __init__(self, value, modulus):
        self.value = int(value) % modulus.p
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, int):
            return FieldElement(other, self.modulus)
        if isinstance(other, FieldElement):
            if other.modulus.p != self.modulus.p:
                raise ValueError("operands have different moduli")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.modulus.p), self.modulus)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, self.modulus.p - 2, self.modulus.p), self.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def legendre(self):
        """Euler's criterion: 0 for zero, +1 for nonzero squares, -1 otherwise."""
        if self.value == 0:
            return 0
        r = pow(self.value, (self.modulus.p - 1) // 2, self.modulus.p)
        return 1 if r == 1 else -1

    def is_zero(self):
        return self.value == 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.modulus.p
        if isinstance(other, FieldElement):
            return self.modulus.p == other.modulus.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus.p))

    def __repr__(self):
        return f"FieldElement({self.value} mod {self.modulus.p})"


def sample_uniform(rng, modulus):
    """Uniform field element drawn by rejection sampling."""
    return FieldElement(sample_below(rng, modulus.p), modulus)
