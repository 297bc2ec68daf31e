import cmath
import math
import random

import pytest

from sqfpairs.expsums import (
    complex_close,
    gauss_closed_odd,
    gauss_direct,
    gauss_direct_table,
    gauss_reduce,
    kloosterman_direct,
    kloosterman_row,
    phase_table,
    unit_table,
)
from sqfpairs.ntcore import gcd_many, tau


def gauss_oracle(q, n, m):
    """Direct summation with cmath only, independent of the numpy path."""
    return sum(cmath.exp(2j * cmath.pi * ((n * x * x + m * x) % q) / q) for x in range(1, q + 1))


def kloosterman_oracle(q, n, m):
    total = 0j
    for x in range(1, q + 1):
        if math.gcd(x, q) == 1:
            xbar = pow(x, -1, q) if q > 1 else 0
            total += cmath.exp(2j * cmath.pi * ((n * x + m * xbar) % q) / q)
    return total


class TestGaussDirect:
    def test_modulus_one(self):
        for n, m in [(0, 0), (3, -5), (7, 2)]:
            assert gauss_direct(1, n, m) == 1

    def test_zero_coefficients(self):
        for q in (1, 2, 5, 12, 97):
            assert complex_close(gauss_direct(q, 0, 0), complex(q))

    def test_cube_root_case(self):
        # 1 + 2*e(1/3) = i*sqrt(3)
        got = gauss_direct(3, 1, 0)
        assert complex_close(got, 1j * math.sqrt(3))
        assert complex_close(got, gauss_oracle(3, 1, 0))

    def test_against_cmath_oracle(self):
        rng = random.Random(21)
        for _ in range(150):
            q = rng.randrange(1, 80)
            n, m = rng.randrange(-2 * q, 2 * q), rng.randrange(-2 * q, 2 * q)
            assert complex_close(gauss_direct(q, n, m), gauss_oracle(q, n, m))

    def test_rejects_zero_modulus(self):
        with pytest.raises(ValueError):
            gauss_direct(0, 1, 1)


class TestGaussReduce:
    def test_nondivisible_linear_term_vanishes(self):
        assert gauss_reduce(6, 2, 3) == 0  # gcd(6,2)=2 does not divide 3

    def test_zero_quadratic_term(self):
        # gcd(q, 0) = q, so the sum is q when q | m and 0 otherwise
        for q in (5, 9, 12):
            for m in range(1, q):
                assert gauss_reduce(q, 0, m) == 0
            assert complex_close(gauss_reduce(q, 0, 0), complex(q))

    def test_reduction_example(self):
        want = 2 * gauss_direct(3, 1, 2)
        assert complex_close(gauss_reduce(6, 2, 4), want)
        assert complex_close(gauss_direct(6, 2, 4), want)

    def test_equals_direct_on_small_grid(self):
        for q in range(1, 41):
            for n in range(q):
                for m in range(q):
                    assert complex_close(gauss_reduce(q, n, m), gauss_direct(q, n, m)), (q, n, m)


class TestGaussClosedOdd:
    @pytest.mark.parametrize("q,n,m", [(3, 1, 0), (5, 1, 0), (15, 2, 1), (9, 2, 5),
                                       (21, 4, 13), (49, 3, 48)])
    def test_matches_direct(self, q, n, m):
        assert complex_close(gauss_closed_odd(q, n, m), gauss_direct(q, n, m))

    def test_branch_pins(self):
        # the sign convention is legal only if it reproduces direct sums
        assert complex_close(gauss_closed_odd(5, 1, 0), math.sqrt(5))
        assert complex_close(gauss_closed_odd(3, 1, 0), 1j * math.sqrt(3))

    def test_random_odd_moduli(self):
        rng = random.Random(31)
        for _ in range(200):
            q = 2 * rng.randrange(0, 60) + 1
            n = rng.randrange(1, 3 * q + 1)
            if math.gcd(q, 2 * n) != 1:
                continue
            m = rng.randrange(-(2 * q), 2 * q)
            assert complex_close(gauss_closed_odd(q, n, m), gauss_direct(q, n, m))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            gauss_closed_odd(6, 1, 0)  # even modulus
        with pytest.raises(ValueError):
            gauss_closed_odd(9, 3, 0)  # gcd(q, n) > 1


class TestGaussSquareIdentity:
    def test_square_identity_sample(self):
        for q in range(1, 402, 2):
            g = gauss_direct(q, 1, 0)
            target = q if q % 4 == 1 else -q
            assert abs(g * g - target) <= 1e-6 * q


class TestKloosterman:
    def test_modulus_one(self):
        assert kloosterman_direct(1, 5, -3) == 1

    def test_unit_count_at_zero(self):
        for p in (3, 5, 7, 11, 13):
            assert complex_close(kloosterman_direct(p, 0, 0), complex(p - 1))

    def test_five_one_one(self):
        want = 2 + 2 * math.cos(4 * math.pi / 5)
        got = kloosterman_direct(5, 1, 1)
        assert complex_close(got, want)
        assert complex_close(got, kloosterman_oracle(5, 1, 1))
        assert abs(want - 0.3819660112501051) < 1e-12

    def test_against_cmath_oracle(self):
        rng = random.Random(41)
        for _ in range(100):
            q = rng.randrange(1, 60)
            n, m = rng.randrange(-q, q + 1), rng.randrange(-q, q + 1)
            assert complex_close(kloosterman_direct(q, n, m), kloosterman_oracle(q, n, m))

    def test_weil_bound_sample(self):
        rng = random.Random(43)
        for _ in range(300):
            q = rng.randrange(1, 500)
            n, m = rng.randrange(-2 * q, 2 * q + 1), rng.randrange(-2 * q, 2 * q + 1)
            bound = tau(q) * math.sqrt(q) * math.sqrt(gcd_many([q, n, m]))
            assert abs(kloosterman_direct(q, n, m)) <= bound + 1e-7

    def test_diagonal_is_real(self):
        for q in range(1, 120):
            for n in (0, 1, q // 2):
                v = kloosterman_direct(q, n, n)
                assert abs(v.imag) <= 1e-9 * max(1.0, abs(v))


class TestBatchHelpers:
    @pytest.mark.parametrize("q", [1, 2, 3, 8, 12, 25, 37, 60])
    def test_gauss_table_matches_scalar(self, q):
        table = gauss_direct_table(q)
        rng = random.Random(q)
        for _ in range(12):
            n, m = rng.randrange(q), rng.randrange(q)
            assert complex_close(complex(table[n, m]), gauss_direct(q, n, m))

    @pytest.mark.parametrize("q", [1, 2, 5, 9, 12, 30, 49])
    def test_kloosterman_row_matches_scalar(self, q):
        row = kloosterman_row(q, 1)
        for c in range(q):
            assert complex_close(complex(row[c]), kloosterman_direct(q, 1, c))

    def test_tables_are_read_only(self):
        roots = phase_table(7)
        with pytest.raises(ValueError):
            roots[0] = 0
        units, invs = unit_table(12)
        assert (units * invs % 12 == 1).all()


class TestComplexClose:
    def test_scaling(self):
        assert complex_close(1000.0 + 0j, 1000.0 + 1e-4j)  # scaled by magnitude
        assert not complex_close(0.0, 2e-6 + 0j)
        assert complex_close(0.0, 0.5e-6 + 0j)

    def test_rejects_nonfinite(self):
        assert not complex_close(complex("inf"), 1.0)
        assert not complex_close(complex("nan"), complex("nan"))
