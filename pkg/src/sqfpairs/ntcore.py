"""Elementary and modular number theory primitives.

Factorization, the Moebius and divisor-count functions, Jacobi symbols,
modular inverses and square roots modulo odd prime powers, for inputs
fitting in a signed 64-bit word.  Everything here is a pure function of
its arguments; returned arrays and tuples are safe to share across
threads.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = [
    "BudgetError",
    "MAX_INPUT",
    "factorize",
    "mobius",
    "mobius_sieve",
    "tau",
    "gcd_many",
    "mod_inverse",
    "jacobi",
    "sqrt_mod",
    "is_prime",
    "primes_upto",
    "divisors",
]

# Inputs are promised to fit in a signed 64-bit word.
MAX_INPUT = (1 << 63) - 1

# Trial division handles factors below this; survivors go through
# deterministic Miller-Rabin and, if composite, Brent's rho.
_TRIAL_LIMIT = 10**6

# Default memory budget for mobius_sieve, in bytes (one int8 per value).
DEFAULT_SIEVE_BUDGET = 2**28

# Witnesses that make Miller-Rabin deterministic for all n < 3.3e24,
# comfortably covering the 64-bit input range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class BudgetError(Exception):
    """An operation would exceed its configured memory budget."""


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (empty for limit < 2)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(primes_upto(_TRIAL_LIMIT).tolist())


def _mr_composite(a: int, n: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


@lru_cache(maxsize=1 << 16)
def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n <= 2**63 - 1."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return not any(_mr_composite(a, n, d, s) for a in _MR_WITNESSES)


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of an odd composite n (Brent's variant)."""
    for c in range(1, 100):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g, y = 1, ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if 1 < g < n:
            return g
    raise ArithmeticError(f"rho could not split {n}")


def factorize(n: int) -> list[tuple[int, int]]:
    """Canonical prime factorization as (prime, exponent) pairs.

    Primes are strictly increasing; factorize(1) is the empty list.
    Rejects n < 1 and n > 2**63 - 1.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"expected a positive integer, got {n!r}")
    if n < 1 or n > MAX_INPUT:
        raise ValueError(f"n must satisfy 1 <= n <= 2**63 - 1, got {n}")
    factors: list[tuple[int, int]] = []
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    if n == 1:
        return factors
    if n < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(n):
        # No factor up to min(sqrt(n), 1e6), so the survivor is prime.
        factors.append((n, 1))
        return factors
    # 64-bit composite with both factors above 1e6: split recursively.
    big: dict[int, int] = {}
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            big[m] = big.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    factors.extend(sorted(big.items()))
    factors.sort()
    return factors


def mobius(n: int) -> int:
    """Moebius function: 0 unless n is squarefree, else (-1)**#primes."""
    facs = factorize(n)
    if any(e >= 2 for _, e in facs):
        return 0
    return -1 if len(facs) % 2 else 1


def mobius_sieve(N: int, budget: int = DEFAULT_SIEVE_BUDGET) -> np.ndarray:
    """Array a with a[n] = mobius(n) for 1 <= n <= N (a[0] is 0).

    Needs about 2N bytes of scratch; rejects N beyond the byte budget.
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if 2 * (N + 1) > budget:
        raise BudgetError(f"mobius_sieve({N}) needs ~{2 * (N + 1)} bytes, budget is {budget}")
    mu = np.ones(N + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_upto(N):
        mu[p::p] *= -1
        sq = p * p
        if sq <= N:
            mu[sq::sq] = 0
    return mu


def tau(n: int) -> int:
    """Number of positive divisors of n."""
    result = 1
    for _, e in factorize(n):
        result *= e + 1
    return result


def gcd_many(values) -> int:
    """Nonnegative gcd of one or more integers; all-zero input gives 0."""
    values = list(values)
    if not values:
        raise ValueError("gcd_many needs at least one value")
    return math.gcd(*values)


def mod_inverse(k: int, q: int) -> int:
    """The r in [0, q) with k*r = 1 (mod q); requires gcd(k, q) = 1."""
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    g = math.gcd(k, q)
    if g != 1:
        raise ValueError(f"{k} is not invertible modulo {q} (gcd = {g})")
    return pow(k, -1, q)


def jacobi(a: int, q: int) -> int:
    """Jacobi symbol (a/q) for odd q >= 1; 0 iff gcd(a, q) > 1."""
    if q < 1 or q % 2 == 0:
        raise ValueError(f"modulus must be an odd positive integer, got {q}")
    a %= q
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if q % 8 in (3, 5):
                result = -result
        a, q = q, a
        if a % 4 == 3 and q % 4 == 3:
            result = -result
        a %= q
    return result if q == 1 else 0


def _tonelli(a: int, p: int):
    """One square root of a modulo an odd prime p, or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # p = 1 (mod 4): Tonelli-Shanks.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return r


def sqrt_mod(a: int, p: int, e: int = 1) -> list[int]:
    """All y in [0, p**e) with y*y = a (mod p**e), for an odd prime p.

    Solves modulo p with Tonelli-Shanks, then lifts.  Returns a sorted
    list, empty when a has no square root.  Rejects p = 2 (the caller
    is expected to scan the few residues of a 2-power modulus directly).
    """
    if p == 2:
        raise ValueError("p = 2 not supported; scan the 2-power modulus directly")
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    modulus = p**e
    a %= modulus
    if a == 0:
        step = p ** ((e + 1) // 2)
        return list(range(0, modulus, step))
    # Split off the p-part of a: a = p**k * b with b a unit.
    k, b = 0, a
    while b % p == 0:
        b //= p
        k += 1
    if k % 2:
        return []
    f = e - k  # roots are p**(k//2) * w with w*w = b (mod p**f)
    r = _tonelli(b % p, p)
    if r is None:
        return []
    pj = p
    target = p**f
    while pj < target:
        pj = min(pj * pj, target)
        r = (r - (r * r - b) * pow(2 * r, -1, pj)) % pj
    half = p ** (k // 2)
    out = []
    for w0 in (r, target - r):
        out.extend(half * (w0 + t * target) for t in range(half))
    return sorted(out)


@lru_cache(maxsize=1 << 14)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**j for d in divs for j in range(e + 1)]
    return tuple(sorted(divs))
