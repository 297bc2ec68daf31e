import math
import random

import numpy as np
import pytest

from sqfpairs.counting import (
    DEFAULT_MEMORY_BUDGET,
    PairCountReport,
    build_sieve,
    congruent_pair_count,
    count_pairs_direct,
    count_pairs_mobius,
    count_pairs_mobius_truncated,
    residue_count,
)
from sqfpairs.lambdasums import solve_circle
from sqfpairs.ntcore import BudgetError, mobius


def is_squarefree_oracle(n):
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def brute_pair_count(H):
    return sum(
        1
        for x in range(1, H + 1)
        for y in range(1, H + 1)
        if is_squarefree_oracle(x * x + y * y + 1)
    )


class TestBuildSieve:
    def test_small(self):
        sieve = build_sieve(10)
        got = {n for n in range(1, 11) if sieve.is_squarefree(n)}
        assert got == {1, 2, 3, 5, 6, 7, 10}

    def test_single_entry(self):
        sieve = build_sieve(1)
        assert sieve.is_squarefree(1)
        assert sieve.count_squarefree() == 1

    def test_matches_mobius_square(self):
        sieve = build_sieve(10**5)
        rng = random.Random(17)
        for _ in range(1000):
            n = rng.randrange(1, 10**5 + 1)
            assert sieve.is_squarefree(n) == (mobius(n) ** 2 == 1)

    def test_budget_enforced(self):
        with pytest.raises(BudgetError):
            build_sieve(10**7, memory_budget=100)
        with pytest.raises(ValueError):
            build_sieve(0)

    def test_lookup_vectorized(self):
        sieve = build_sieve(5000)
        vals = np.arange(1, 5001, dtype=np.uint64)
        flags = sieve.lookup(vals)
        assert flags.sum() == sieve.count_squarefree(5000)
        for n in (1, 4, 8, 9, 12, 49, 50, 4999):
            assert bool(flags[n - 1]) == is_squarefree_oracle(n)

    def test_count_prefix(self):
        sieve = build_sieve(1000)
        for upto in (1, 2, 7, 8, 9, 63, 64, 65, 999, 1000):
            want = sum(1 for n in range(1, upto + 1) if is_squarefree_oracle(n))
            assert sieve.count_squarefree(upto) == want

    def test_crosses_segment_boundary(self):
        # limits straddling the internal segment size keep flags aligned
        from sqfpairs import counting
        n = counting._SEGMENT_BITS + 17
        sieve = build_sieve(n)
        for probe in (n, n - 1, counting._SEGMENT_BITS, counting._SEGMENT_BITS + 1, 12345):
            assert sieve.is_squarefree(probe) == is_squarefree_oracle(probe)


class TestCountPairsDirect:
    @pytest.mark.parametrize("H,want", [(1, 1), (2, 3), (3, 8)])
    def test_small_values(self, H, want):
        assert count_pairs_direct(H).S == want

    def test_against_brute_force(self):
        for H in (5, 9, 17, 30):
            assert count_pairs_direct(H).S == brute_pair_count(H)

    def test_report_fields(self):
        rep = count_pairs_direct(7)
        assert isinstance(rep, PairCountReport)
        assert rep.method == "value-sieve"
        assert rep.H == 7 and 0 <= rep.S <= 49 and rep.elapsed >= 0

    def test_threads_do_not_change_result(self):
        sieve = build_sieve(2 * 300 * 300 + 1)
        a = count_pairs_direct(300, sieve=sieve, threads=1).S
        b = count_pairs_direct(300, sieve=sieve, threads=3).S
        c = count_pairs_direct(300, sieve=sieve, threads=8).S
        assert a == b == c

    def test_sieve_reuse_requires_coverage(self):
        sieve = build_sieve(100)
        with pytest.raises(ValueError):
            count_pairs_direct(50, sieve=sieve)

    def test_rejects_bad_H(self):
        with pytest.raises(ValueError):
            count_pairs_direct(0)


class TestResidueCount:
    def test_modulus_one(self):
        for H in (1, 5, 120):
            assert residue_count(H, 1, 0) == H
            assert residue_count(H, 1, 7) == H

    def test_ten_three_one(self):
        assert residue_count(10, 3, 1) == 4  # h in {1, 4, 7, 10}

    def test_empty_class(self):
        assert residue_count(5, 7, 6) == 0

    def test_matches_enumeration(self):
        rng = random.Random(23)
        for _ in range(300):
            H = rng.randrange(1, 200)
            q = rng.randrange(1, 50)
            x = rng.randrange(-2 * q, 2 * q + 1)
            want = sum(1 for h in range(1, H + 1) if (h - x) % q == 0)
            assert residue_count(H, q, x) == want

    def test_partition_and_deviation(self):
        for H, q in [(10, 3), (100, 7), (55, 56), (1000, 13)]:
            counts = [residue_count(H, q, x) for x in range(1, q + 1)]
            assert sum(counts) == H
            assert all(abs(c - H / q) <= 1 for c in counts)


class TestCongruentPairCount:
    def test_modulus_one(self):
        for H in (1, 4, 31):
            assert congruent_pair_count(H, 1) == H * H

    def test_opposite_parity(self):
        assert congruent_pair_count(4, 2) == 8

    def test_against_direct_scan(self):
        for H, q in [(10, 9), (10, 3), (25, 13), (12, 50), (30, 4), (17, 49)]:
            want = sum(
                1
                for x in range(1, H + 1)
                for y in range(1, H + 1)
                if (x * x + y * y + 1) % q == 0
            )
            assert congruent_pair_count(H, q) == want, (H, q)

    def test_upper_bound(self):
        for H in (10, 40):
            for q in range(1, 120):
                if q % 8 == 0:
                    continue
                t = congruent_pair_count(H, q)
                assert 0 <= t <= len(solve_circle(q)) * (H / q + 1) ** 2

    def test_rejects_multiple_of_eight(self):
        with pytest.raises(ValueError):
            congruent_pair_count(10, 8)


class TestCountPairsMobius:
    def test_h_equals_one(self):
        rep = count_pairs_mobius(1)
        assert rep.S == 1 and rep.method == "mobius-identity"

    def test_h_equals_two_decomposition(self):
        # d = 1 contributes 4, d = 3 removes the single pair at (2, 2)
        assert congruent_pair_count(2, 1) == 4
        assert congruent_pair_count(2, 9) == 1
        assert count_pairs_mobius(2).S == 3

    def test_matches_value_sieve(self):
        for H in range(1, 36):
            assert count_pairs_mobius(H).S == count_pairs_direct(H).S

    def test_fifty(self):
        assert count_pairs_mobius(50).S == count_pairs_direct(50).S

    def test_truncated_variant(self):
        H = 60
        exact = count_pairs_mobius(H).S
        full_z = math.isqrt(2 * H * H + 1)
        assert count_pairs_mobius_truncated(H, full_z) == exact
        trunc = count_pairs_mobius_truncated(H, H ** (2 / 3))
        assert isinstance(trunc, int)
        # truncation drops tail terms; deviation stays desk-scale small
        assert abs(trunc - exact) <= 100

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            count_pairs_mobius(0)
        with pytest.raises(ValueError):
            count_pairs_mobius_truncated(10, 0.5)


def test_default_budget_is_two_gib():
    assert DEFAULT_MEMORY_BUDGET == 2**31
