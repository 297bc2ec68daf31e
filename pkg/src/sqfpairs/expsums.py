"""Gauss and Kloosterman exponential sums.

Direct summation over residues is the ground truth here; the
identity-based evaluators (`gauss_reduce`, `gauss_closed_odd`) must
reproduce it and are tested against it.  Sums are accumulated by numpy,
whose pairwise summation keeps rounding error orders of magnitude below
the 1e-6 comparison tolerance for every modulus in scope.

The batch helpers (`gauss_direct_table`, `kloosterman_row`) evaluate the
same direct sums for a whole grid of arguments at once via an FFT; they
exist because several verification sweeps range over all (n, m) pairs.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .ntcore import jacobi, mod_inverse

__all__ = [
    "complex_close",
    "phase_table",
    "unit_table",
    "gauss_direct",
    "gauss_reduce",
    "gauss_closed_odd",
    "gauss_direct_table",
    "kloosterman_direct",
    "kloosterman_row",
]

# Absolute comparison tolerance, scaled by max(1, magnitude).
TOLERANCE = 1e-6


def complex_close(a: complex, b: complex, tol: float = TOLERANCE) -> bool:
    """True when a and b agree within tol * max(1, |a|, |b|)."""
    if not (math.isfinite(a.real) and math.isfinite(a.imag)
            and math.isfinite(b.real) and math.isfinite(b.imag)):
        return False
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@lru_cache(maxsize=512)
def phase_table(q: int) -> np.ndarray:
    """roots[t] = exp(2*pi*i*t/q) for t in [0, q); shared and read-only."""
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    roots.setflags(write=False)
    return roots


@lru_cache(maxsize=512)
def unit_table(q: int) -> tuple[np.ndarray, np.ndarray]:
    """(units, inverses): the x in [1, q] coprime to q and their inverses mod q.

    For q = 1 the single residue is x = 1 with inverse 0, matching the
    convention that a sum over units mod 1 has exactly one term.
    """
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if q == 1:
        units = np.array([1], dtype=np.int64)
        invs = np.array([0], dtype=np.int64)
    else:
        x = np.arange(1, q + 1, dtype=np.int64)
        units = x[np.gcd(x, q) == 1]
        invs = np.array([pow(int(u), -1, q) for u in units], dtype=np.int64)
    units.setflags(write=False)
    invs.setflags(write=False)
    return units, invs


def _check_modulus(q) -> int:
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 1:
        raise ValueError(f"modulus must be a positive integer, got {q!r}")
    return int(q)


def gauss_direct(q: int, n: int, m: int) -> complex:
    """Sum of exp(2*pi*i*(n*x^2 + m*x)/q) over x = 1..q by direct summation."""
    q = _check_modulus(q)
    n %= q
    m %= q
    if q == 1:
        return 1 + 0j
    x = np.arange(1, q + 1, dtype=np.int64)
    t = (n * x % q * x + m * x) % q
    return complex(phase_table(q)[t].sum())


def gauss_reduce(q: int, n: int, m: int) -> complex:
    """Quadratic Gauss sum via gcd reduction of the quadratic coefficient.

    With d = gcd(q, n): the sum equals d * G(q/d; n/d, m/d) when d | m
    and vanishes otherwise.  The reduced sum is evaluated directly.
    """
    q = _check_modulus(q)
    n %= q
    m %= q
    d = math.gcd(q, n)
    if m % d:
        return 0j
    return d * gauss_direct(q // d, n // d, m // d)


def _gauss_unit(q: int) -> complex:
    # G(q; 1) for odd q: sqrt(q) when q = 1 (mod 4), i*sqrt(q) when q = 3.
    # The square is (-1)**((q-1)/2) * q; the branch is pinned by direct
    # summation at q = 5 and q = 3 (see the test suite).
    return math.sqrt(q) * (1 if q % 4 == 1 else 1j)


def gauss_closed_odd(q: int, n: int, m: int) -> complex:
    """Closed form of the Gauss sum for odd q with gcd(q, 2n) = 1.

    Equals e_q(-inv(4n) * m^2) * jacobi(n, q) * G(q; 1).
    """
    q = _check_modulus(q)
    if math.gcd(q, 2 * n) != 1:
        raise ValueError(f"need gcd(q, 2n) = 1, got q={q}, n={n}")
    n %= q
    m %= q
    if q == 1:
        return 1 + 0j
    inv4n = mod_inverse(4 * n, q)
    t = (-inv4n * m * m) % q
    return complex(phase_table(q)[t] * jacobi(n, q) * _gauss_unit(q))


def kloosterman_direct(q: int, n: int, m: int) -> complex:
    """Sum of exp(2*pi*i*(n*x + m*inv(x))/q) over the units x mod q."""
    q = _check_modulus(q)
    n %= q
    m %= q
    if q == 1:
        return 1 + 0j
    units, invs = unit_table(q)
    t = (n * units + m * invs) % q
    return complex(phase_table(q)[t].sum())


def gauss_direct_table(q: int) -> np.ndarray:
    """gauss_direct(q, n, m) for every (n, m) in [0, q)^2, as a (q, q) array.

    Batched direct summation: the grid is the 2-D inverse DFT of the
    histogram of (x^2 mod q, x mod q) over x = 1..q, scaled by q^2.
    """
    q = _check_modulus(q)
    x = np.arange(1, q + 1, dtype=np.int64)
    hist = np.zeros((q, q))
    np.add.at(hist, (x * x % q, x % q), 1.0)
    return np.fft.ifft2(hist) * (q * q)


def kloosterman_row(q: int, n: int = 1) -> np.ndarray:
    """kloosterman_direct(q, n, c) for every c in [0, q), as a length-q array.

    Batched direct summation: substituting y = inv(x) turns the sum into
    a 1-D inverse DFT of y -> e_q(n * inv(y)) over the units y.
    """
    q = _check_modulus(q)
    n %= q
    units, invs = unit_table(q)
    v = np.zeros(q, dtype=complex)
    v[units % q] = phase_table(q)[(n * invs) % q]
    return np.fft.ifft(v) * q
