"""The leading constant and the measured error term of the pair count.

The density of pairs with x^2 + y^2 + 1 squarefree is the Euler product
c = prod_p (1 - lam(p^2)/p^4), where lam(q) counts solutions of
x^2 + y^2 + 1 = 0 (mod q).  `constant_c` evaluates the product up to a
cutoff together with an explicit bound on the log-deviation from the
infinite product.  `error_scan` measures E(H) = S(H) - c*H^2 on a
ladder of H values and fits the growth exponent of |E|.

Also here: the sawtooth 1/2 - {t}, its truncated Fourier series, and
the harmonic-weighted absolute sums of the circle exponential sums that
the error analysis is built on.  Those sums are bound checks only; the
counting pipeline never consumes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ntcore import factorize, is_prime, mobius_sieve, primes_upto, tau
from .counting import PairCountReport, build_sieve, count_pairs_direct
from .lambdasums import lambda_any, lambda_any_table, solve_circle

__all__ = [
    "EulerProductEstimate",
    "ScanRow",
    "ScanResult",
    "lambda_p_squared",
    "constant_c",
    "error_scan",
    "rho",
    "rho_fourier",
    "harmonic_lambda_sums",
    "dirichlet_partial_sum",
    "dirichlet_tail_bound",
]

# The closed form for lam(p^2) is cross-checked against enumeration up
# to this prime and trusted beyond it.
_ENUMERATION_LIMIT = 47

# Above this modulus harmonic_lambda_sums falls back from the batched
# (q, q) table to memoized scalar evaluation.
_TABLE_LIMIT = 4096


def lambda_p_squared(p: int) -> int:
    """Number of solutions of x^2 + y^2 + 1 = 0 (mod p^2) for prime p.

    Enumerated outright for p <= 47; larger odd p use the lift law
    lam(p^2) = p * (p - (-1)**((p-1)/2)), which the enumeration range
    certifies (each solution mod p lifts to exactly p solutions mod p^2
    because the gradient (2x, 2y) never vanishes on the solution set).
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if p <= _ENUMERATION_LIMIT:
        return len(solve_circle(p * p))
    return p * (p - 1) if p % 4 == 1 else p * (p + 1)


@dataclass(frozen=True)
class EulerProductEstimate:
    """Partial Euler product with a tail bound.

    `tail_bound` bounds |log(true product / value)|: every omitted
    factor is 1 - lam(p^2)/p^4 with 0 <= lam(p^2) <= p^2 + p.
    """

    cutoff: int
    value: float
    tail_bound: float


def constant_c(P: int) -> EulerProductEstimate:
    """prod_{p <= P} (1 - lam(p^2)/p^4) with an explicit tail bound.

    The tail bound sums -log(1 - u_p) <= u_p / (1 - u_p) with
    u_p = (p^2 + p)/p^4 over the primes in (P, 10P], then closes with
    an integral comparison over all integers beyond 10P.
    """
    if P < 2:
        raise ValueError(f"cutoff must be >= 2, got {P}")
    value = 1.0
    for p in primes_upto(P).tolist():
        value *= 1.0 - lambda_p_squared(p) / p**4
    if not 0.0 < value <= 1.0:
        raise ArithmeticError(f"product escaped (0, 1]: {value}")
    tail = 0.0
    for p in primes_upto(10 * P).tolist():
        if p <= P:
            continue
        u = (p * p + p) / p**4
        tail += u / (1.0 - u)
    N = 10 * P
    u_n = (N * N + N) / N**4
    tail += (1.0 / N + 0.5 / (N * N)) / (1.0 - u_n)
    return EulerProductEstimate(P, value, tail)


@dataclass(frozen=True)
class ScanRow:
    """One ladder step: exact count, error against c*H^2, timing."""

    H: int
    S: int
    E: float
    elapsed: float


@dataclass(frozen=True)
class ScanResult:
    rows: list[ScanRow]
    alpha: float | None  # least-squares slope of log|E| vs log H
    c: float
    cutoff: int
    excluded: list[int]  # H values dropped from the fit because E = 0

    @property
    def reports(self) -> list[PairCountReport]:
        return [PairCountReport(r.H, r.S, "value-sieve", r.elapsed) for r in self.rows]


# A meaningful slope needs at least this many usable (E != 0) rows.
_MIN_FIT_ROWS = 4


def error_scan(
    H_values,
    P: int,
    threads: int = 1,
    memory_budget: int | None = None,
) -> ScanResult:
    """Measure E(H) = S(H) - c*H^2 over a ladder of H values.

    S(H) comes from the value sieve (built once, at the largest H) and
    c from `constant_c(P)`.  The fitted exponent is the least-squares
    slope of log|E| against log H; rows with E = 0 are excluded and
    reported, and the fit is skipped (alpha None) below 4 usable rows.
    """
    H_values = [int(h) for h in H_values]
    if not H_values:
        raise ValueError("need at least one H value")
    if any(h < 1 for h in H_values):
        raise ValueError(f"H values must be positive: {H_values}")
    if any(b <= a for a, b in zip(H_values, H_values[1:])):
        raise ValueError(f"H values must be strictly increasing: {H_values}")
    c = constant_c(P).value
    sieve = build_sieve(2 * H_values[-1] ** 2 + 1, memory_budget)
    rows = []
    for H in H_values:
        rep = count_pairs_direct(H, sieve=sieve, threads=threads)
        rows.append(ScanRow(H, rep.S, rep.S - c * H * H, rep.elapsed))
    usable = [r for r in rows if r.E != 0.0]
    excluded = [r.H for r in rows if r.E == 0.0]
    if len(usable) >= _MIN_FIT_ROWS:
        logs_h = np.log([r.H for r in usable])
        logs_e = np.log([abs(r.E) for r in usable])
        alpha = float(np.polyfit(logs_h, logs_e, 1)[0])
    else:
        alpha = None
    return ScanResult(rows, alpha, c, P, excluded)


def rho(t: float) -> float:
    """The sawtooth 1/2 - {t}, with values in (-1/2, 1/2]."""
    return 0.5 - (t % 1.0)


def rho_fourier(D: float, t: float) -> float:
    """Truncated Fourier series of the sawtooth: sum over 1 <= |n| <= D
    of e(nt) / (2*pi*i*n).

    Both halves of the sum are evaluated and the imaginary part is
    checked to cancel (the n and -n terms are conjugate), then dropped.
    """
    if D < 2:
        raise ValueError(f"D must be >= 2, got {D}")
    n = np.arange(1, int(D) + 1)
    phase = np.exp(2j * np.pi * n * t)
    total = (phase / (2j * np.pi * n)).sum()
    total += (np.conj(phase) / (-2j * np.pi * n)).sum()
    if abs(total.imag) > 1e-9 * max(1.0, abs(total.real)):
        raise ArithmeticError(f"imaginary part failed to cancel: {total}")
    return float(total.real)


def harmonic_lambda_sums(q: int, D: int) -> tuple[float, float]:
    """The harmonic-weighted absolute sums of the circle sums:

        U = sum_{1 <= n <= D}      |lam(q; n, 0)| / n
        V = sum_{1 <= n, m <= D}   |lam(q; n, m)| / (n m)

    lam is q-periodic in both arguments, so the weights 1/n collapse
    onto residues and the sums need one |lam| value per residue pair,
    taken from the batched evaluator (scalar fallback for large q).
    """
    if D < 2:
        raise ValueError(f"D must be >= 2, got {D}")
    if q % 8 == 0:
        raise ValueError(f"modulus divisible by 8 is out of contract: {q}")
    n = np.arange(1, D + 1)
    weights = np.zeros(q)
    np.add.at(weights, n % q, 1.0 / n)
    if q <= _TABLE_LIMIT:
        mags = np.abs(lambda_any_table(q))
    else:
        mags = np.empty((q, q))
        cache: dict[tuple[int, int], float] = {}
        for a in range(q):
            for b in range(q):
                key = (a, b) if a <= b else (b, a)
                if key not in cache:
                    cache[key] = abs(lambda_any(q, key[0], key[1]))
                mags[a, b] = cache[key]
    U = float(mags[:, 0] @ weights)
    V = float(weights @ mags @ weights)
    return U, V


def dirichlet_partial_sum(dmax: int) -> float:
    """sum_{d <= dmax} mu(d) * lam(d^2) / d^4, the series form of c.

    For squarefree d the solution count mod d^2 is multiplicative, so
    lam(d^2) is assembled from lambda_p_squared over d's prime factors.
    """
    if dmax < 1:
        raise ValueError(f"dmax must be positive, got {dmax}")
    mu = mobius_sieve(dmax)
    total = 0.0
    for d in range(1, dmax + 1):
        sign = int(mu[d])
        if not sign:
            continue
        lam = 1
        for p, _ in factorize(d):
            lam *= lambda_p_squared(p)
        total += sign * lam / d**4
    return total


def dirichlet_tail_bound(dmax: int) -> float:
    """Bound on |sum_{d > dmax} mu(d) lam(d^2) / d^4|.

    For squarefree d each prime factor contributes p(p +- 1) <= 2p^2,
    so the term is at most tau(d)/d^2.  That is summed exactly out to
    20*dmax and closed with tau(d) <= 2*sqrt(d) beyond.
    """
    if dmax < 1:
        raise ValueError(f"dmax must be positive, got {dmax}")
    M = 20 * dmax
    mu = mobius_sieve(M)
    total = sum(tau(d) / (d * d) for d in range(dmax + 1, M + 1) if mu[d])
    return total + 4.0 / math.sqrt(M)
