import cmath
import math
import random

import numpy as np
import pytest

from sqfpairs.expsums import complex_close
from sqfpairs.lambdasums import (
    LAMBDA_TOLERANCE,
    _solve_general,
    lambda_any,
    lambda_any_table,
    lambda_direct,
    lambda_direct_table,
    lambda_fast_odd,
    lambda_multiplicative,
    solve_circle,
)
from sqfpairs.ntcore import BudgetError


def brute_solutions(q):
    """Exhaustive oracle over [1, q]^2."""
    return [(x, y) for x in range(1, q + 1) for y in range(1, q + 1)
            if (x * x + y * y + 1) % q == 0]


def lambda_oracle(q, n, m):
    return sum(cmath.exp(2j * cmath.pi * ((n * x + m * y) % q) / q)
               for x, y in brute_solutions(q))


class TestSolveCircle:
    def test_modulus_one(self):
        assert solve_circle(1).pairs() == [(1, 1)]

    def test_modulus_two(self):
        assert solve_circle(2).pairs() == [(1, 2), (2, 1)]

    def test_modulus_four_empty(self):
        assert solve_circle(4).pairs() == []
        assert {(x * x + y * y + 1) % 4 for x in range(4) for y in range(4)} == {1, 2, 3}

    @pytest.mark.parametrize("q", list(range(1, 61)))
    def test_matches_exhaustive_oracle(self, q):
        assert solve_circle(q).pairs() == brute_solutions(q)

    @pytest.mark.parametrize("q", [101, 113, 121, 125, 147, 169, 242, 245, 330, 361, 490])
    def test_general_path_matches_oracle(self, q):
        # q > 100 exercises the per-x square-root route
        assert solve_circle(q).pairs() == brute_solutions(q)

    def test_general_equals_exhaustive_below_cutoff(self):
        for q in (9, 25, 45, 50, 98, 99, 100):
            assert _solve_general(q).pairs() == solve_circle(q).pairs()

    def test_invariants(self):
        for q in (3, 5, 50, 65, 101, 325):
            sols = solve_circle(q)
            pairs = sols.pairs()
            assert len(set(pairs)) == len(pairs)
            assert pairs == sorted(pairs)
            for x, y in pairs:
                assert 1 <= x <= q and 1 <= y <= q
                assert (x * x + y * y + 1) % q == 0

    def test_counts(self):
        assert len(solve_circle(3)) == 4
        assert len(solve_circle(5)) == 4
        assert len(solve_circle(9)) == 12
        assert len(solve_circle(25)) == 20

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            solve_circle(0)
        with pytest.raises(BudgetError):
            solve_circle(10**9)

    def test_arrays_read_only(self):
        sols = solve_circle(13)
        with pytest.raises(ValueError):
            sols.xs[0] = 0


class TestLambdaDirect:
    def test_solution_counts(self):
        assert complex_close(lambda_direct(3, 0, 0), 4)
        assert complex_close(lambda_direct(5, 0, 0), 4)
        assert lambda_direct(1, 17, -9) == 1

    def test_matches_oracle(self):
        rng = random.Random(77)
        for _ in range(120):
            q = rng.randrange(1, 70)
            n, m = rng.randrange(-2 * q, 2 * q), rng.randrange(-2 * q, 2 * q)
            assert complex_close(lambda_direct(q, n, m), lambda_oracle(q, n, m))

    def test_periodicity_is_exact(self):
        rng = random.Random(78)
        for _ in range(200):
            q = rng.randrange(1, 300)
            if q % 8 == 0:
                continue
            n, m = rng.randrange(q), rng.randrange(q)
            base = lambda_direct(q, n, m)
            assert lambda_direct(q, n + q, m) == base
            assert lambda_direct(q, n, m + q) == base
            assert lambda_direct(q, n - q, m) == base

    def test_conjugate_symmetry(self):
        rng = random.Random(79)
        for _ in range(200):
            q = rng.randrange(1, 301)
            n, m = rng.randrange(q), rng.randrange(q)
            assert complex_close(lambda_direct(q, -n, -m), lambda_direct(q, n, m).conjugate())

    def test_values_are_real(self):
        # the solution set is closed under (x, y) -> (q-x, q-y)
        rng = random.Random(80)
        for _ in range(100):
            q = rng.randrange(1, 200)
            v = lambda_direct(q, rng.randrange(q), rng.randrange(q))
            assert abs(v.imag) <= 1e-9 * max(1.0, abs(v))


class TestLambdaFastOdd:
    def test_count_case(self):
        assert abs(lambda_fast_odd(3, 0, 0) - 4) <= LAMBDA_TOLERANCE * 3

    @pytest.mark.parametrize("q,n,m", [(15, 1, 2), (9, 3, 6), (45, 15, 30), (225, 30, 45),
                                       (3, 1, 0), (1, 0, 0), (105, 0, 35)])
    def test_against_direct(self, q, n, m):
        a = lambda_fast_odd(q, n, m)
        b = lambda_direct(q, n, m)
        assert abs(a - b) <= LAMBDA_TOLERANCE * q, (q, n, m, a, b)

    def test_divisor_terms_exercised(self):
        # arguments sharing a factor with q activate the l < q terms
        for q, n, m in [(9, 3, 6), (27, 9, 18), (45, 9, 36), (49, 7, 14)]:
            assert math.gcd(math.gcd(n, m), q) > 1
            a = lambda_fast_odd(q, n, m)
            b = lambda_direct(q, n, m)
            assert abs(a - b) <= LAMBDA_TOLERANCE * q

    def test_random_odd_moduli(self):
        rng = random.Random(91)
        for _ in range(150):
            q = 2 * rng.randrange(0, 150) + 1
            n, m = rng.randrange(-2 * q, 2 * q + 1), rng.randrange(-2 * q, 2 * q + 1)
            a = lambda_fast_odd(q, n, m)
            b = lambda_direct(q, n, m)
            assert abs(a - b) <= LAMBDA_TOLERANCE * q, (q, n, m)

    def test_rejects_even(self):
        with pytest.raises(ValueError):
            lambda_fast_odd(6, 0, 0)


class TestLambdaMultiplicative:
    def test_trivial_factor(self):
        for q in (2, 7, 12):
            assert complex_close(lambda_multiplicative(1, q, 3, 4), lambda_direct(q, 3, 4))

    def test_three_times_five(self):
        got = lambda_multiplicative(3, 5, 0, 0)
        assert complex_close(got, 16)
        assert complex_close(lambda_direct(15, 0, 0), 16)

    def test_nine_times_twenty_five(self):
        got = lambda_multiplicative(9, 25, 2, 7)
        want = lambda_direct(225, 2, 7)
        assert abs(got - want) <= LAMBDA_TOLERANCE * 225

    def test_random_coprime_pairs(self):
        rng = random.Random(101)
        done = 0
        while done < 60:
            q1, q2 = rng.randrange(1, 80), rng.randrange(1, 80)
            if math.gcd(q1, q2) != 1:
                continue
            n, m = rng.randrange(-50, 50), rng.randrange(-50, 50)
            got = lambda_multiplicative(q1, q2, n, m)
            want = lambda_direct(q1 * q2, n, m)
            assert abs(got - want) <= LAMBDA_TOLERANCE * q1 * q2, (q1, q2, n, m)
            done += 1

    def test_rejects_common_factor(self):
        with pytest.raises(ValueError):
            lambda_multiplicative(6, 10, 0, 0)


class TestLambdaAny:
    def test_four_vanishes(self):
        assert lambda_any(4, 5, -3) == 0

    def test_two(self):
        assert complex_close(lambda_any(2, 0, 0), 2)

    def test_fifty(self):
        a = lambda_any(50, 3, 4)
        b = lambda_direct(50, 3, 4)
        assert abs(a - b) <= LAMBDA_TOLERANCE * 50

    def test_all_moduli_to_200(self):
        rng = random.Random(111)
        for q in range(1, 201):
            if q % 8 == 0:
                continue
            for n, m in [(0, 0), (rng.randrange(-q, q), rng.randrange(-q, q))]:
                a = lambda_any(q, n, m)
                b = lambda_direct(q, n, m)
                assert abs(a - b) <= LAMBDA_TOLERANCE * q, (q, n, m)

    def test_rejects_multiples_of_eight(self):
        for q in (8, 16, 24, 1000):
            with pytest.raises(ValueError):
                lambda_any(q, 0, 0)


class TestBatchTables:
    @pytest.mark.parametrize("q", [1, 2, 3, 4, 6, 9, 12, 15, 25, 30, 49, 50, 60, 77])
    def test_tables_match_scalars(self, q):
        direct = lambda_direct_table(q)
        fast = lambda_any_table(q)
        assert np.abs(direct - fast).max() <= LAMBDA_TOLERANCE * q
        rng = random.Random(q)
        for _ in range(10):
            n, m = rng.randrange(q), rng.randrange(q)
            assert complex_close(complex(direct[n, m]), lambda_direct(q, n, m))
            assert abs(fast[n, m] - lambda_any(q, n, m)) <= LAMBDA_TOLERANCE * q

    def test_table_rejects_eight(self):
        with pytest.raises(ValueError):
            lambda_any_table(16)


class TestBounds:
    def test_divisor_bound_sample(self):
        from sqfpairs.ntcore import gcd_many, tau
        rng = random.Random(121)
        for _ in range(300):
            q = rng.randrange(1, 400)
            if q % 8 == 0:
                continue
            n, m = rng.randrange(-2 * q, 2 * q + 1), rng.randrange(-2 * q, 2 * q + 1)
            bound = 16 * tau(q) ** 2 * math.sqrt(q) * math.sqrt(gcd_many([q, n, m]))
            assert abs(lambda_direct(q, n, m)) <= bound + 1e-7

    def test_prime_square_lift(self):
        for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
            lp = len(solve_circle(p))
            lp2 = len(solve_circle(p * p))
            assert lp2 == p * lp
            assert lp == p - (1 if p % 4 == 1 else -1)
