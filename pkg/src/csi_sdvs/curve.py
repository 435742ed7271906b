"""x-only Montgomery curve arithmetic, supersingularity checks, and
odd-degree isogeny computation via the kernel-product formulas.

All point math works on the projective x-line (X : Z); Z = 0 encodes the
group identity.  x-only formulas are agnostic to whether an x-coordinate
lies on the curve or on its quadratic twist, which is exactly what the
two-direction ideal action needs.
"""

from .fp import FieldElement, sample_uniform

_EXACT_COUNT_LIMIT = 1 << 20
_SAMPLE_RETRIES = 128


class MontgomeryCurve:
    """The coefficient A of y^2 = x^3 + A x^2 + x.  A^2 = 4 is rejected."""

    __slots__ = ("a", "_a24")

    def __init__(self, a):
        if not isinstance(a, FieldElement):
            raise TypeError("coefficient must be a FieldElement")
        if (a * a).value == 4 % a.modulus.p:
            raise ValueError("singular curve: A^2 = 4")
        self.a = a
        self._a24 = None

    @property
    def modulus(self):
        return self.a.modulus

    def a24(self):
        # (A + 2) / 4, the constant the doubling formula wants
        if self._a24 is None:
            self._a24 = (self.a + 2) * FieldElement(4, self.modulus).inverse()
        return self._a24

    def rhs(self, x):
        """x^3 + A x^2 + x; its quadratic character decides curve vs twist."""
        return x * x * x + self.a * x * x + x

    def __eq__(self, other):
        return isinstance(other, MontgomeryCurve) and self.a == other.a

    def __hash__(self):
        return hash(("mont", self.a.value, self.modulus.p))

    def __repr__(self):
        return f"MontgomeryCurve(A={self.a.value} mod {self.modulus.p})"


class XOnlyPoint:
    """Projective x-line representative (X : Z); Z = 0 is the identity."""

    __slots__ = ("x", "z")

    def __init__(self, x, z):
        if x.is_zero() and z.is_zero():
            raise ValueError("(0 : 0) is not a point")
        self.x = x
        self.z = z

    @classmethod
    def identity(cls, modulus):
        return cls(modulus.one, modulus.zero)

    @classmethod
    def from_x(cls, x):
        return cls(x, x.modulus.one)

    def is_identity(self):
        return self.z.is_zero()

    def affine_x(self):
        if self.is_identity():
            raise ZeroDivisionError("identity has no affine x-coordinate")
        return self.x * self.z.inverse()

    def __repr__(self):
        return f"XOnlyPoint({self.x.value} : {self.z.value})"


def proj_equal(p, q):
    """Equality on the x-line: X1*Z2 == X2*Z1."""
    return (p.x * q.z) == (q.x * p.z)


def xdbl(curve, p):
    """x([2]P) from x(P)."""
    if p.is_identity():
        return p
    s = p.x + p.z
    d = p.x - p.z
    ss = s * s
    dd = d * d
    c = ss - dd
    x2 = ss * dd
    z2 = c * (dd + curve.a24() * c)
    if z2.is_zero():
        return XOnlyPoint.identity(curve.modulus)
    return XOnlyPoint(x2, z2)


def xadd(p, q, diff):
    """x(P + Q) from x(P), x(Q) and x(P - Q); requires P - Q != identity."""
    if p.is_identity():
        return q
    if q.is_identity():
        return p
    u = (p.x - p.z) * (q.x + q.z)
    v = (p.x + p.z) * (q.x - q.z)
    s = u + v
    d = u - v
    x3 = diff.z * s * s
    z3 = diff.x * d * d
    if x3.is_zero() and z3.is_zero():
        return XOnlyPoint.identity(p.x.modulus)
    if z3.is_zero():
        return XOnlyPoint.identity(p.x.modulus)
    return XOnlyPoint(x3, z3)


def scalar_mult(curve, k, p):
    """x([k]P) by the Montgomery ladder; [0]P is the identity."""
    if k < 0:
        raise ValueError("scalar must be non-negative")
    if k == 0 or p.is_identity():
        return XOnlyPoint.identity(curve.modulus)
    if k == 1:
        return p
    r0, r1 = p, xdbl(curve, p)
    for bit in bin(k)[3:]:
        if bit == "1":
            r0, r1 = xadd(r0, r1, p), xdbl(curve, r1)
        else:
            r0, r1 = xdbl(curve, r0), xadd(r0, r1, p)
    return r0


def point_count(curve):
    """Exact group order of E(F_p) by summing quadratic characters."""
    modulus = curve.modulus
    n = 1  # the identity
    for x in range(modulus.p):
        ls = curve.rhs(FieldElement(x, modulus)).legendre()
        if ls == 1:
            n += 2
        elif ls == 0:
            n += 1
    return n


def is_supersingular(curve, rng=None, trials=20):
    """True iff #E(F_p) = p + 1.

    Decides exactly by point counting below 2^20; above that, checks
    [p+1]P = identity for `trials` random points on the curve and the same
    number on the twist, which ordinary curves fail with overwhelming
    probability.
    """
    modulus = curve.modulus
    if modulus.p < _EXACT_COUNT_LIMIT:
        return point_count(curve) == modulus.p + 1

    from .rng import RandomSource

    if rng is None:
        rng = RandomSource()
    need = {1: trials, -1: trials}
    while need[1] > 0 or need[-1] > 0:
        x = sample_uniform(rng, modulus)
        side = curve.rhs(x).legendre()
        if side == 0 or need[side] == 0:
            continue
        q = scalar_mult(curve, modulus.p + 1, XOnlyPoint.from_x(x))
        if not q.is_identity():
            return False
        need[side] -= 1
    return True


def sample_point_of_order(curve, ell, rng, twist=False):
    """Random x-line point of exact order ell in the rational part of the
    curve (or, with twist=True, of its quadratic twist).

    Draws x until the right quadratic character comes up, multiplies by the
    cofactor (p+1)/ell, and retries while the result is the identity.
    """
    modulus = curve.modulus
    if (modulus.p + 1) % ell != 0:
        raise ValueError(f"{ell} does not divide p + 1")
    cofactor = (modulus.p + 1) // ell
    want = -1 if twist else 1
    for _ in range(_SAMPLE_RETRIES):
        x = sample_uniform(rng, modulus)
        if curve.rhs(x).legendre() != want:
            continue
        q = scalar_mult(curve, cofactor, XOnlyPoint.from_x(x))
        if q.is_identity():
            continue
        if not scalar_mult(curve, ell, q).is_identity():
            raise ValueError("cofactor multiple has wrong order: corrupt parameters")
        return q
    raise RuntimeError(f"no point of order {ell} found in {_SAMPLE_RETRIES} attempts")


def velu_isogeny(curve, kernel_gen, ell):
    """Codomain coefficient of the degree-ell isogeny with kernel
    <kernel_gen>, for odd prime ell.

    Kernel-product form: with x_i = x([i]K) for i = 1 .. (ell-1)/2,
        A' = pi^2 * (A - 6*sigma + 6*sigma_inv)
    where sigma = sum x_i, sigma_inv = sum 1/x_i, pi = prod x_i.
    """
    if ell < 3 or ell % 2 == 0:
        raise ValueError("degree must be an odd prime")
    if kernel_gen.is_identity():
        raise ValueError("kernel generator is the identity")
    if not scalar_mult(curve, ell, kernel_gen).is_identity():
        raise ValueError(f"kernel generator does not have order {ell}")

    modulus = curve.modulus
    sigma = modulus.zero
    sigma_inv = modulus.zero
    pi = modulus.one

    prev = None
    cur = kernel_gen
    for i in range(1, (ell - 1) // 2 + 1):
        xi = cur.affine_x()
        sigma = sigma + xi
        sigma_inv = sigma_inv + xi.inverse()
        pi = pi * xi
        if i == 1:
            nxt = xdbl(curve, cur)
        else:
            nxt = xadd(cur, kernel_gen, prev)
        prev, cur = cur, nxt

    a_new = pi * pi * (curve.a - 6 * sigma + 6 * sigma_inv)
    return MontgomeryCurve(a_new)
