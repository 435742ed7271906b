"""Cyclic group action on set elements, with two interchangeable backends.

The toy isogeny backend acts on supersingular Montgomery curves over a
small prime field through real degree-l isogenies; the full orbit of the
generator ideal is enumerated once and certified, after which the action
is an O(1) table rotation.  The mock additive backend acts on Z_N by
modular addition at production parameter shapes.  Both expose the same
surface: a base element, act(), scalar sampling, and canonical encodings.

Set elements are MontgomeryCurve values (toy) or plain ints (mock).
"""

from .curve import MontgomeryCurve, is_supersingular, sample_point_of_order, velu_isogeny
from .fp import FieldElement, PrimeModulus
from .rng import RandomSource, sample_below

# Desk-scale defaults: p = 4*3*5*7 - 1, base curve A = 0, generator the prime
# ideal above 3.  The generator's orbit covers all 27 supersingular
# coefficients over F_419, so the frozen class number is 27.
TOY_PRIME = 419
TOY_ELLS = (3, 5, 7)
TOY_BASE_A = 0
TOY_GENERATOR = (1, 0, 0)
TOY_CLASS_NUMBER = 27

# The 74-prime CSIDH-512 factor list (73 smallest odd primes plus 587).
# Recorded for parameter-shape validation only; this package never walks
# isogenies at this size.
CSIDH512_ELLS = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157,
    163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227,
    229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
    293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367,
    373, 587,
)

DEFAULT_MAX_ORBIT_STEPS = 1 << 20


def _scalar_byte_length(n):
    # bytes needed for values in [0, n)
    return ((n - 1).bit_length() + 7) // 8


def act_ideal_vector(curve, exponents, rng=None):
    """Apply the ideal with the given exponent vector to a curve.

    Exponent e_i applies |e_i| successive degree-l_i isogenies; positive
    exponents use kernels rational on the curve, negative ones kernels on
    the twist.  The codomain is independent of processing order and of
    which kernel generator gets sampled.
    """
    modulus = curve.modulus
    if len(exponents) != len(modulus.ells):
        raise ValueError("exponent vector length does not match the prime list")
    if rng is None:
        rng = RandomSource()
    for ell, e in zip(modulus.ells, exponents):
        twist = e < 0
        for _ in range(abs(e)):
            kernel = sample_point_of_order(curve, ell, rng, twist=twist)
            curve = velu_isogeny(curve, kernel, ell)
    return curve


def build_orbit(base, generator, rng=None, max_steps=DEFAULT_MAX_ORBIT_STEPS):
    """Walk base, g*base, g^2*base, ... until the cycle closes.

    Returns (cycle length, tuple of curve coefficients).  A repeat of any
    non-base entry before closure means the action is not free and raises;
    exceeding max_steps means the generator's orbit is implausibly long for
    the configured parameters.
    """
    if not isinstance(base, MontgomeryCurve):
        raise TypeError("orbit construction applies to curve elements only")
    if rng is None:
        rng = RandomSource()
    start = base.a.value
    table = [start]
    seen = {start}
    cur = base
    for _ in range(max_steps):
        cur = act_ideal_vector(cur, generator, rng)
        value = cur.a.value
        if value == start:
            return len(table), tuple(table)
        if value in seen:
            raise RuntimeError("orbit repeated before closing: action is not free")
        seen.add(value)
        table.append(value)
    raise RuntimeError(f"orbit did not close within {max_steps} steps")


class ToyIsogenyBackend:
    """Class-group action realized by real isogenies over a tiny field.

    The orbit of the generator ideal is built once at construction; its
    distinctness and cyclic closure certify the group order N and the
    generator simultaneously.  UNSAFE-TOY: no security at this scale.
    """

    kind = "toy-isogeny"
    kind_byte = 1

    def __init__(self, modulus=None, base_a=TOY_BASE_A, generator=TOY_GENERATOR,
                 rng=None, expected_order=None, max_steps=DEFAULT_MAX_ORBIT_STEPS):
        if modulus is None:
            modulus = PrimeModulus(TOY_PRIME, TOY_ELLS)
        self.modulus = modulus
        base = MontgomeryCurve(FieldElement(base_a, modulus))
        if not is_supersingular(base, rng):
            raise ValueError("base curve is not supersingular")
        self.generator = tuple(int(e) for e in generator)
        n, table = build_orbit(base, self.generator, rng, max_steps)
        if expected_order is not None and n != expected_order:
            raise ValueError(f"orbit length {n} does not match expected order {expected_order}")
        self.N = n
        self.orbit = table
        self._elements = tuple(
            MontgomeryCurve(FieldElement(a, modulus)) for a in table
        )
        self._index = {a: i for i, a in enumerate(table)}
        self.base = self._elements[0]

    @property
    def scalar_len(self):
        return _scalar_byte_length(self.N)

    @property
    def element_len(self):
        return self.modulus.byte_length

    @property
    def element_store_len(self):
        # public keys store set elements at the width the field dictates
        return self.modulus.byte_length

    def index_of(self, element):
        try:
            return self._index[element.a.value]
        except (KeyError, AttributeError):
            raise ValueError("set element is outside the stored orbit") from None

    def act(self, scalar, element):
        if not 0 <= scalar < self.N:
            raise ValueError("scalar out of range [0, N)")
        k = self.index_of(element)
        return self._elements[(k + scalar) % self.N]

    def act_ideal(self, element, exponents, rng=None):
        self.index_of(element)  # reject foreign curves up front
        return act_ideal_vector(element, exponents, rng)

    def sample_scalar(self, rng):
        return sample_below(rng, self.N)

    def element_eq(self, a, b):
        return a == b

    def element_to_int(self, element):
        self.index_of(element)
        return element.a.value

    def element_from_int(self, value):
        if value not in self._index:
            raise ValueError("coefficient is not in the stored orbit")
        return self._elements[self._index[value]]


class MockAdditiveBackend:
    """Stand-in group action: Z_N acting on itself by addition.

    Carries no security whatsoever, but has exactly the parameter shape of
    the real construction, so serialization widths and all protocol-level
    distributions can be exercised at production sizes.  element_bits sets
    the stored width of a public set element (twice the scalar width by
    default, matching the p ~ N^2 shape of the isogeny instantiation).
    """

    kind = "mock-additive"
    kind_byte = 2

    def __init__(self, order, element_bits=None):
        order = int(order)
        if order < 2:
            raise ValueError("group order must be at least 2")
        self.N = order
        scalar_bits = (order - 1).bit_length()
        if element_bits is None:
            element_bits = 2 * 8 * _scalar_byte_length(order)
        if element_bits % 8 != 0 or element_bits < scalar_bits:
            raise ValueError("element_bits must be a byte multiple wide enough for N")
        self.element_bits = element_bits
        self.base = 0

    @property
    def scalar_len(self):
        return _scalar_byte_length(self.N)

    @property
    def element_len(self):
        return self.scalar_len

    @property
    def element_store_len(self):
        return self.element_bits // 8

    def act(self, scalar, element):
        if not 0 <= scalar < self.N:
            raise ValueError("scalar out of range [0, N)")
        if not 0 <= element < self.N:
            raise ValueError("set element out of range [0, N)")
        return (element + scalar) % self.N

    def sample_scalar(self, rng):
        return sample_below(rng, self.N)

    def element_eq(self, a, b):
        return a == b

    def element_to_int(self, element):
        if not 0 <= element < self.N:
            raise ValueError("set element out of range [0, N)")
        return element

    def element_from_int(self, value):
        if not 0 <= value < self.N:
            raise ValueError("set element out of range [0, N)")
        return value


def gaip_bruteforce(backend, start, target, rng=None):
    """The unique scalar a with [a]*start == target, found the hard way.

    On the toy backend this walks real isogenies step by step, independent
    of the orbit table, so it doubles as a vectorization oracle against the
    table-driven action.  Feasible at desk scale only.  On the mock backend
    the group is transparent and the scalar is read off directly.
    """
    if isinstance(backend, MockAdditiveBackend):
        return (backend.element_to_int(target) - backend.element_to_int(start)) % backend.N
    cur = start
    for a in range(backend.N):
        if backend.element_eq(cur, target):
            return a
        cur = act_ideal_vector(cur, backend.generator, rng)
    raise ValueError("target is not in the orbit of the start element")


def toy_backend(rng=None, expected_order=TOY_CLASS_NUMBER):
    """The default desk-scale backend with its frozen class number."""
    return ToyIsogenyBackend(rng=rng, expected_order=expected_order)
