import pytest
from hypothesis import given, strategies as st

from csi_sdvs import FieldElement, PrimeModulus, RandomSource, sample_below, sample_uniform
from csi_sdvs.action import CSIDH512_ELLS
from csi_sdvs.fp import is_prime

from helpers import chi_square_uniform


def fe(v, m):
    return FieldElement(v, m)


class TestModulusValidation:
    def test_toy_modulus_accepted(self):
        m = PrimeModulus(419, (3, 5, 7))
        assert m.p == 419
        assert m.ells == (3, 5, 7)
        assert m.byte_length == 2

    def test_product_mismatch_rejected(self):
        with pytest.raises(ValueError):
            PrimeModulus(419, (3, 5))

    def test_composite_p_rejected(self):
        # 4*3*5*13 - 1 = 779 = 19 * 41
        with pytest.raises(ValueError, match="not prime"):
            PrimeModulus(779, (3, 5, 13))

    def test_duplicate_factors_rejected(self):
        with pytest.raises(ValueError, match="distinct"):
            PrimeModulus(4 * 3 * 3 - 1, (3, 3))

    def test_even_factor_rejected(self):
        with pytest.raises(ValueError):
            PrimeModulus(4 * 3 * 4 - 1, (3, 4))

    def test_csidh512_shape_validates(self):
        # 511-bit modulus takes the probabilistic primality path
        prod = 1
        for e in CSIDH512_ELLS:
            prod *= e
        m = PrimeModulus(4 * prod - 1, CSIDH512_ELLS)
        assert m.p.bit_length() == 511
        assert m.p % 4 == 3

    def test_is_prime_dispatch(self):
        assert is_prime(419)
        assert not is_prime(779)
        assert is_prime((1 << 89) - 1)       # Mersenne prime above 2^64
        assert not is_prime((1 << 67) - 1)   # 2^67 - 1 = 193707721 * 761838257287


class TestArithmeticExamples:
    @pytest.fixture(autouse=True)
    def _modulus(self, p419):
        self.m = p419

    def test_add(self):
        assert fe(3, self.m) + fe(5, self.m) == 8
        assert fe(418, self.m) + fe(1, self.m) == 0
        assert fe(0, self.m) + fe(7, self.m) == 7

    def test_mul(self):
        assert fe(2, self.m) * fe(210, self.m) == 1
        assert fe(1, self.m) * fe(57, self.m) == 57
        assert fe(20, self.m) * fe(21, self.m) == 1

    def test_inverse(self):
        assert fe(1, self.m).inverse() == 1
        assert fe(2, self.m).inverse() == 210
        with pytest.raises(ZeroDivisionError):
            fe(0, self.m).inverse()

    def test_legendre(self):
        assert fe(1, self.m).legendre() == 1
        assert fe(0, self.m).legendre() == 0
        assert fe(418, self.m).legendre() == -1  # -1 is a non-square for p = 3 mod 4

    def test_modulus_mismatch_raises(self):
        other = PrimeModulus(4 * 3 - 1, (3,))
        with pytest.raises(ValueError, match="moduli"):
            fe(1, self.m) + fe(1, other)
        with pytest.raises(ValueError, match="moduli"):
            fe(1, self.m) * fe(1, other)


class TestFieldAxioms:
    def test_axioms_on_random_triples(self, p419):
        rng = RandomSource(2024)
        for _ in range(1000):
            a = sample_uniform(rng, p419)
            b = sample_uniform(rng, p419)
            c = sample_uniform(rng, p419)
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inverse() == 1

    def test_legendre_of_squares_exhaustive(self, p419):
        for v in range(1, 419):
            a = fe(v, p419)
            assert (a * a).legendre() == 1

    @given(x=st.integers(min_value=-10**9, max_value=10**9),
           y=st.integers(min_value=-10**9, max_value=10**9))
    def test_outputs_canonical(self, x, y):
        m = PrimeModulus(419, (3, 5, 7))
        a, b = fe(x, m), fe(y, m)
        for r in (a + b, a - b, a * b, -a, a ** 5):
            assert 0 <= r.value < m.p


class TestSampling:
    def test_fixed_seed_reproducible(self, p419):
        a = sample_uniform(RandomSource(5), p419)
        b = sample_uniform(RandomSource(5), p419)
        assert a == b
        assert 0 <= a.value < 419

    def test_uniformity_chi_square(self, p419):
        rng = RandomSource(99)
        counts = [0] * 16
        for _ in range(10_000):
            v = sample_uniform(rng, p419).value
            counts[v * 16 // 419] += 1
        # buckets hold 26 or 27 residues each, so weight the expectation
        sizes = [sum(1 for v in range(419) if v * 16 // 419 == k) for k in range(16)]
        probs = [s / 419 for s in sizes]
        ok, stat, crit = chi_square_uniform(counts, significance=0.001, probabilities=probs)
        assert ok, f"chi-square {stat:.1f} exceeds critical {crit:.1f}"

    def test_rejection_never_exceeds_bound(self):
        rng = RandomSource(7)
        assert all(sample_below(rng, 419) < 419 for _ in range(100_000))
