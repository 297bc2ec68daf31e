"""Solutions of x^2 + y^2 + 1 = 0 (mod q) and the attached exponential sums.

`solve_circle` enumerates the full solution set with representatives in
[1, q]^2.  `lambda_direct` sums phases over that set and is the oracle;
`lambda_fast_odd` evaluates the same sum through its Kloosterman-sum
decomposition, and `lambda_multiplicative` through the coprime-splitting
identity.  `lambda_any` combines the fast odd path with direct handling
of the 2-part for any modulus not divisible by 8.

Solution sets are memoized in a module-level cache: they are immutable,
reads need no lock, and writes are guarded so concurrent callers are
safe (at worst a set is computed twice with identical results).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

from .ntcore import BudgetError, divisors, factorize, mod_inverse, sqrt_mod
from .expsums import kloosterman_direct, kloosterman_row, phase_table

__all__ = [
    "SolutionSet",
    "solve_circle",
    "lambda_direct",
    "lambda_fast_odd",
    "lambda_multiplicative",
    "lambda_any",
    "lambda_direct_table",
    "lambda_any_table",
    "LAMBDA_TOLERANCE",
]

# Moduli above this are rejected by solve_circle to bound memory.
DEFAULT_SOLVE_CEILING = 10**8

# Exhaustive q*q scanning below this; per-x modular square roots above.
_EXHAUSTIVE_LIMIT = 100

# Oracle-equality tolerance for the lambda evaluators is LAMBDA_TOLERANCE
# scaled by q: the divisor-sum route multiplies by q, amplifying rounding.
LAMBDA_TOLERANCE = 1e-5


@dataclass(frozen=True, eq=False)
class SolutionSet:
    """All (x, y) in [1, q]^2 with x^2 + y^2 + 1 = 0 (mod q), sorted."""

    q: int
    xs: np.ndarray = field(repr=False)
    ys: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.xs.setflags(write=False)
        self.ys.setflags(write=False)

    def __len__(self) -> int:
        return int(self.xs.size)

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.xs.tolist(), self.ys.tolist()))


_CACHE: dict[int, SolutionSet] = {}
_CACHE_LOCK = threading.Lock()


def _solve_exhaustive(q: int) -> SolutionSet:
    r = np.arange(1, q + 1, dtype=np.int64)
    sq = r * r
    hit = (sq[:, None] + sq[None, :] + 1) % q == 0
    xi, yi = np.nonzero(hit)
    return SolutionSet(q, (xi + 1).astype(np.int64), (yi + 1).astype(np.int64))


@lru_cache(maxsize=4096)
def _root_table(pe: int, p: int, e: int) -> tuple[tuple[int, ...], ...]:
    """table[r] = the y in [0, pe) with y^2 = -r^2 - 1 (mod pe = p**e)."""
    if p == 2:
        # 2-power moduli are tiny here (8 never divides the moduli we
        # enumerate); scan the at most 4 residues directly.
        table = []
        for r in range(pe):
            a = (-r * r - 1) % pe
            table.append(tuple(y for y in range(pe) if y * y % pe == a))
        return tuple(table)
    return tuple(tuple(sqrt_mod(-r * r - 1, p, e)) for r in range(pe))


def _solve_general(q: int) -> SolutionSet:
    """Per-x enumeration: for each x, CRT-combine the square roots of
    -x^2 - 1 over the prime-power components of q."""
    empty = SolutionSet(q, np.empty(0, np.int64), np.empty(0, np.int64))
    if q % 4 == 0:
        # x^2 + y^2 + 1 is 1, 2 or 3 mod 4, never 0.
        return empty
    comps = []
    for p, e in factorize(q):
        comps.append((p**e, p, e))
    tables = [_root_table(pe, p, e) for pe, p, e in comps]
    xs: list[int] = []
    ys: list[int] = []
    if len(comps) == 1:
        pe = comps[0][0]
        table = tables[0]
        for x in range(1, q + 1):
            for y in table[x % pe]:
                xs.append(x)
                ys.append(y if y else q)
    else:
        mods = [pe for pe, _, _ in comps]
        basis = [(q // pe) * mod_inverse(q // pe, pe) % q for pe in mods]
        for x in range(1, q + 1):
            local = []
            for table, pe in zip(tables, mods):
                roots = table[x % pe]
                if not roots:
                    break
                local.append(roots)
            else:
                for combo in product(*local):
                    y = sum(r * b for r, b in zip(combo, basis)) % q
                    xs.append(x)
                    ys.append(y if y else q)
    if not xs:
        return empty
    ax = np.array(xs, dtype=np.int64)
    ay = np.array(ys, dtype=np.int64)
    order = np.lexsort((ay, ax))
    return SolutionSet(q, ax[order], ay[order])


def solve_circle(q: int, ceiling: int = DEFAULT_SOLVE_CEILING) -> SolutionSet:
    """Complete solution set of x^2 + y^2 + 1 = 0 (mod q) in [1, q]^2."""
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 1:
        raise ValueError(f"modulus must be a positive integer, got {q!r}")
    q = int(q)
    if q > ceiling:
        raise BudgetError(f"solve_circle({q}) exceeds the ceiling {ceiling}")
    cached = _CACHE.get(q)
    if cached is not None:
        return cached
    sols = _solve_exhaustive(q) if q <= _EXHAUSTIVE_LIMIT else _solve_general(q)
    with _CACHE_LOCK:
        _CACHE.setdefault(q, sols)
    return _CACHE[q]


def lambda_direct(q: int, n: int, m: int) -> complex:
    """Sum of exp(2*pi*i*(n*x + m*y)/q) over the solution set mod q.

    At (n, m) = (0, 0) this is real and equals the solution count.
    """
    sols = solve_circle(q)
    n %= q
    m %= q
    t = (n * sols.xs + m * sols.ys) % q
    return complex(phase_table(q)[t].sum())


def _sign(l: int) -> float:
    # (-1)**((l-1)/2) for odd l.
    return -1.0 if l % 4 == 3 else 1.0


def lambda_fast_odd(q: int, n: int, m: int) -> complex:
    """The circle sum for odd q via its Kloosterman-sum decomposition.

    Over the divisors l of q with (q/l) | gcd(n, m), with n' = n*l/q and
    m' = m*l/q, the sum equals

        q * sum_l (-1)**((l-1)/2) / l * K(l; 1, -inv(4)*(n'^2 + m'^2)).
    """
    if q < 1 or q % 2 == 0:
        raise ValueError(f"modulus must be odd and positive, got {q}")
    n %= q
    m %= q
    g = math.gcd(n, m)  # 0 when n = m = 0: every divisor contributes
    total = 0j
    for l in divisors(q):
        r = q // l
        if g % r:
            continue
        np_, mp_ = n // r, m // r
        if l == 1:
            total += 1.0
            continue
        c = (-pow(4, -1, l) * (np_ * np_ + mp_ * mp_)) % l
        total += _sign(l) / l * kloosterman_direct(l, 1, c)
    return complex(q * total)


def lambda_multiplicative(q1: int, q2: int, n: int, m: int) -> complex:
    """The circle sum mod q1*q2 assembled from coprime factors.

    Each factor is the direct sum with its arguments twisted by the
    inverse of the complementary modulus.
    """
    if math.gcd(q1, q2) != 1:
        raise ValueError(f"moduli must be coprime, got ({q1}, {q2})")
    c1 = mod_inverse(q2, q1) if q1 > 1 else 0
    c2 = mod_inverse(q1, q2) if q2 > 1 else 0
    return lambda_direct(q1, n * c1, m * c1) * lambda_direct(q2, n * c2, m * c2)


def lambda_any(q: int, n: int, m: int) -> complex:
    """The circle sum for any q with 8 not dividing q.

    Splits q = 2**h * q1 (h <= 2), evaluates the 2-part by direct
    enumeration (at most 16 candidate pairs) and the odd part by
    `lambda_fast_odd`, and recombines multiplicatively.
    """
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if q % 8 == 0:
        raise ValueError(f"modulus divisible by 8 is out of contract: {q}")
    h = (q & -q).bit_length() - 1  # 2-adic valuation, here 0, 1 or 2
    if h == 0:
        return lambda_fast_odd(q, n, m)
    t2 = 1 << h
    q1 = q >> h
    c2 = mod_inverse(q1, t2)
    codd = mod_inverse(t2, q1) if q1 > 1 else 0
    even_part = lambda_direct(t2, n * c2, m * c2)
    odd_part = lambda_fast_odd(q1, n * codd, m * codd)
    return even_part * odd_part


def lambda_direct_table(q: int) -> np.ndarray:
    """lambda_direct(q, n, m) for every (n, m) in [0, q)^2 as a (q, q) array.

    Batched direct summation: 2-D inverse DFT of the solution-set
    indicator, scaled by q^2.
    """
    sols = solve_circle(q)
    hist = np.zeros((q, q))
    np.add.at(hist, (sols.xs % q, sols.ys % q), 1.0)
    return np.fft.ifft2(hist) * (q * q)


def _fast_odd_table(q: int) -> np.ndarray:
    # Batched lambda_fast_odd for odd q: one Kloosterman row per divisor,
    # scattered onto the (n, m) pairs whose gcd condition it serves.
    table = np.zeros((q, q), dtype=complex)
    for l in divisors(q):
        r = q // l
        row = kloosterman_row(l, 1)
        a = np.arange(l, dtype=np.int64)
        if l == 1:
            c = np.zeros((1, 1), dtype=np.int64)
        else:
            inv4 = pow(4, -1, l)
            c = (-inv4 * (a[:, None] ** 2 + a[None, :] ** 2)) % l
        idx = r * a
        table[np.ix_(idx, idx)] += (q * _sign(l) / l) * row[c]
    return table


def lambda_any_table(q: int) -> np.ndarray:
    """lambda_any(q, n, m) for every (n, m) in [0, q)^2 as a (q, q) array.

    Same decomposition as `lambda_any`, evaluated for the whole argument
    grid at once (the Kloosterman rows come from one FFT per divisor).
    """
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if q % 8 == 0:
        raise ValueError(f"modulus divisible by 8 is out of contract: {q}")
    h = (q & -q).bit_length() - 1
    if h == 0:
        return _fast_odd_table(q)
    if h == 2:
        return np.zeros((q, q), dtype=complex)
    # q = 2 * q1: lambda(2; u, u') is (-1)**u + (-1)**u' and the odd part
    # is the fast table with arguments twisted by inv(2) mod q1.
    q1 = q // 2
    if q1 == 1:
        odd = np.ones((1, 1), dtype=complex)
        codd = 0
    else:
        odd = _fast_odd_table(q1)
        codd = mod_inverse(2, q1)
    a = np.arange(q, dtype=np.int64)
    two_factor = ((-1.0) ** (a[:, None] % 2)) + ((-1.0) ** (a[None, :] % 2))
    oi = (a * codd) % q1
    return two_factor * odd[np.ix_(oi, oi)]
