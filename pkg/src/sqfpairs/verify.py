"""Cross-oracle property suites.

Each suite pits an evaluator against an independent route to the same
quantity (direct summation, exhaustive enumeration, a proved bound) over
a fixed grid plus seeded random samples, and reports how many checks ran
and which failed.  The CLI `verify` command runs these; the acceptance
tests call them with the parameters they guarantee.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import asymptotic, counting, expsums, lambdasums, ntcore
from .expsums import complex_close
from .lambdasums import LAMBDA_TOLERANCE

__all__ = ["SuiteResult", "ALL_SUITES", "run_suites", "DEFAULT_SEED"]

DEFAULT_SEED = 12345

_MAX_REPORTED_FAILURES = 10


@dataclass
class SuiteResult:
    name: str
    ok: bool
    checked: int
    elapsed: float
    failures: list[str] = field(default_factory=list)
    notes: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        msg = f"{self.name}: {status} ({self.checked} checks, {self.elapsed:.2f}s)"
        if self.notes:
            msg += f" {self.notes}"
        for f in self.failures[:_MAX_REPORTED_FAILURES]:
            msg += f"\n    {f}"
        if len(self.failures) > _MAX_REPORTED_FAILURES:
            msg += f"\n    ... {len(self.failures) - _MAX_REPORTED_FAILURES} more"
        return msg


class _Recorder:
    def __init__(self, name):
        self.name = name
        self.checked = 0
        self.failures = []
        self.start = time.perf_counter()

    def check(self, ok, describe):
        self.checked += 1
        if not ok and len(self.failures) < 1000:
            self.failures.append(describe() if callable(describe) else describe)

    def result(self, notes="") -> SuiteResult:
        return SuiteResult(
            self.name,
            not self.failures,
            self.checked,
            time.perf_counter() - self.start,
            self.failures,
            notes,
        )


# ---------------------------------------------------------------------------
# number theory primitives
# ---------------------------------------------------------------------------

def suite_mobius_identity(seed=DEFAULT_SEED, limit=10_000) -> SuiteResult:
    """sum of mu(d) over d^2 | n equals mu(n)^2, per-value mu as oracle."""
    rec = _Recorder("mobius-identity")
    mu_small = ntcore.mobius_sieve(math.isqrt(limit))
    acc = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, math.isqrt(limit) + 1):
        acc[d * d :: d * d] += int(mu_small[d])
    for n in range(1, limit + 1):
        expect = ntcore.mobius(n) ** 2
        rec.check(acc[n] == expect, lambda n=n, e=expect: f"n={n}: sum={acc[n]} mu^2={e}")
    return rec.result()


def suite_inverse_involution(seed=DEFAULT_SEED, trials=500) -> SuiteResult:
    """mod_inverse applied twice returns to the start."""
    rec = _Recorder("inverse-involution")
    rng = random.Random(seed)
    for _ in range(trials):
        q = rng.randrange(2, 10**6)
        k = rng.randrange(1, q)
        while math.gcd(k, q) != 1:
            k = rng.randrange(1, q)
        r = ntcore.mod_inverse(k, q)
        rec.check(
            k * r % q == 1 and ntcore.mod_inverse(r, q) == k % q,
            lambda k=k, q=q, r=r: f"k={k} q={q} inv={r}",
        )
    return rec.result()


def suite_jacobi(seed=DEFAULT_SEED, trials=500) -> SuiteResult:
    """Complete multiplicativity, plus the per-prime Euler-criterion oracle."""
    rec = _Recorder("jacobi")
    rng = random.Random(seed)

    def euler(a, p):
        if a % p == 0:
            return 0
        t = pow(a, (p - 1) // 2, p)
        return -1 if t == p - 1 else t

    for _ in range(trials):
        q = 2 * rng.randrange(0, 5 * 10**4) + 1
        a = rng.randrange(-(10**5), 10**5)
        b = rng.randrange(-(10**5), 10**5)
        lhs = ntcore.jacobi(a, q) * ntcore.jacobi(b, q)
        rhs = ntcore.jacobi(a * b, q)
        rec.check(lhs == rhs, lambda a=a, b=b, q=q: f"({a}/{q})({b}/{q}) != ({a * b}/{q})")
    for p in ntcore.primes_upto(311).tolist():
        if p == 2:
            continue
        for _ in range(40):
            a = rng.randrange(-3 * p, 3 * p)
            rec.check(
                ntcore.jacobi(a, p) == euler(a, p),
                lambda a=a, p=p: f"jacobi({a},{p}) != euler criterion",
            )
    return rec.result()


def suite_sqrt_mod(seed=DEFAULT_SEED, limit=2000) -> SuiteResult:
    """sqrt_mod returns exactly the exhaustive root set for all p^e <= limit."""
    rec = _Recorder("sqrt-mod-exhaustive")
    for p in ntcore.primes_upto(limit).tolist():
        if p == 2:
            continue
        e = 1
        while p**e <= limit:
            m = p**e
            buckets = [[] for _ in range(m)]
            for y in range(m):
                buckets[y * y % m].append(y)
            for a in range(m):
                got = ntcore.sqrt_mod(a, p, e)
                rec.check(
                    got == buckets[a],
                    lambda a=a, p=p, e=e, g=got, w=buckets[a]: f"sqrt_mod({a},{p},{e})={g} want {w}",
                )
            e += 1
    return rec.result()


def suite_tau_growth(seed=DEFAULT_SEED, lo=10_000, hi=100_000) -> SuiteResult:
    """tau(n) <= n everywhere and tau(n) <= n**0.6 beyond 1e4."""
    rec = _Recorder("tau-growth")
    counts = np.zeros(hi + 1, dtype=np.int32)
    for d in range(1, hi + 1):
        counts[d::d] += 1
    worst = 0.0
    for n in range(1, hi + 1):
        t = int(counts[n])
        ok = t <= n and (n <= lo or t <= n**0.6)
        if n > lo:
            worst = max(worst, t / n**0.6)
        rec.check(ok, lambda n=n, t=t: f"tau({n})={t}")
    return rec.result(notes=f"max tau(n)/n^0.6 = {worst:.3f}")


# ---------------------------------------------------------------------------
# Gauss and Kloosterman sums
# ---------------------------------------------------------------------------

def suite_weil_bound(seed=DEFAULT_SEED, qmax=2000, per_q=20) -> SuiteResult:
    """|K(q;n,m)| <= tau(q) sqrt(q) sqrt(gcd(q,n,m)), random arguments."""
    rec = _Recorder("weil-bound")
    rng = random.Random(seed)
    for q in range(1, qmax + 1):
        tq = ntcore.tau(q)
        for _ in range(per_q):
            n = rng.randrange(-3 * q, 3 * q + 1)
            m = rng.randrange(-3 * q, 3 * q + 1)
            bound = tq * math.sqrt(q) * math.sqrt(ntcore.gcd_many([q, n, m]))
            val = abs(expsums.kloosterman_direct(q, n, m))
            rec.check(
                val <= bound + 1e-7,
                lambda q=q, n=n, m=m, v=val, b=bound: f"|K({q};{n},{m})|={v:.6f} > {b:.6f}",
            )
    return rec.result()


def suite_gauss_square(seed=DEFAULT_SEED, qmax=2001) -> SuiteResult:
    """G(q;1,0)^2 = (-1)**((q-1)/2) * q for odd q, within 1e-6 relative."""
    rec = _Recorder("gauss-square")
    for q in range(1, qmax + 1, 2):
        g = expsums.gauss_direct(q, 1, 0)
        target = complex(q if q % 4 == 1 else -q)
        rec.check(
            abs(g * g - target) <= 1e-6 * q,
            lambda q=q, g=g: f"G({q};1)^2 = {g * g:.8f}, want {q if q % 4 == 1 else -q}",
        )
    return rec.result()


def suite_gauss_reduce(seed=DEFAULT_SEED, qmax=300) -> SuiteResult:
    """gcd-reduction evaluator equals direct summation for all (n, m)."""
    rec = _Recorder("gauss-reduce-vs-direct")
    rng = random.Random(seed)
    # only quotients q/d with d >= 2 are re-read later, so caching the
    # grids up to qmax/2 bounds memory at a few million entries
    tables: dict[int, np.ndarray] = {}
    for q in range(1, qmax + 1):
        direct = expsums.gauss_direct_table(q)
        if 2 * q <= qmax:
            tables[q] = direct
        reduced = np.zeros((q, q), dtype=complex)
        for d in ntcore.divisors(q):
            qd = q // d
            ns = [n for n in range(q) if math.gcd(q, n) == d]
            if not ns:
                continue
            ms = np.arange(0, q, d)
            sub = tables[qd] if qd in tables else expsums.gauss_direct_table(qd)
            for n in ns:
                reduced[n, ms] = d * sub[(n // d) % qd, (ms // d) % qd]
        err = np.abs(direct - reduced) / np.maximum(1.0, np.abs(direct))
        rec.check(float(err.max()) <= 1e-6, lambda q=q, e=err.max(): f"q={q} max err {e:.2e}")
        # tie the batched grid back to the scalar operations
        for _ in range(3):
            n, m = rng.randrange(q), rng.randrange(q)
            rec.check(
                complex_close(direct[n, m], expsums.gauss_direct(q, n, m))
                and complex_close(reduced[n, m], expsums.gauss_reduce(q, n, m)),
                lambda q=q, n=n, m=m: f"batch/scalar mismatch at ({q};{n},{m})",
            )
    return rec.result()


def suite_gauss_closed(seed=DEFAULT_SEED, qmax=301) -> SuiteResult:
    """Closed-form odd-q evaluator equals direct summation for all valid (n, m)."""
    rec = _Recorder("gauss-closed-vs-direct")
    rng = random.Random(seed)
    for q in range(1, qmax + 1, 2):
        direct = expsums.gauss_direct_table(q)
        units = [n for n in range(q) if math.gcd(q, n) == 1] if q > 1 else [0]
        if q == 1:
            rec.check(complex_close(direct[0, 0], 1 + 0j), "q=1")
            continue
        g1 = math.sqrt(q) * (1 if q % 4 == 1 else 1j)
        m = np.arange(q, dtype=np.int64)
        msq = m * m % q
        roots = expsums.phase_table(q)
        for n in units:
            inv4n = pow(4 * n, -1, q)
            closed = roots[(-inv4n * msq) % q] * (ntcore.jacobi(n, q) * g1)
            err = np.abs(direct[n] - closed) / np.maximum(1.0, np.abs(direct[n]))
            rec.check(
                float(err.max()) <= 1e-6,
                lambda q=q, n=n, e=err.max(): f"q={q} n={n} max err {e:.2e}",
            )
        for _ in range(3):
            n = units[rng.randrange(len(units))]
            mm = rng.randrange(q)
            rec.check(
                complex_close(expsums.gauss_closed_odd(q, n, mm), direct[n, mm]),
                lambda q=q, n=n, mm=mm: f"scalar closed mismatch at ({q};{n},{mm})",
            )
    return rec.result()


def suite_kloosterman_real(seed=DEFAULT_SEED, qmax=500) -> SuiteResult:
    """K(q;n,n) is real: pairing x with inv(x) conjugates the terms."""
    rec = _Recorder("kloosterman-diagonal-real")
    rng = random.Random(seed)
    for q in range(1, qmax + 1):
        for n in (0, 1, rng.randrange(q) if q > 1 else 0):
            val = expsums.kloosterman_direct(q, n, n)
            rec.check(
                abs(val.imag) <= 1e-7 * max(1.0, abs(val)),
                lambda q=q, n=n, v=val: f"K({q};{n},{n}) = {v}",
            )
    return rec.result()


# ---------------------------------------------------------------------------
# circle-congruence sums
# ---------------------------------------------------------------------------

def _random_nm(rng, q):
    return rng.randrange(-2 * q, 2 * q + 1), rng.randrange(-2 * q, 2 * q + 1)


def suite_lambda_bound(seed=DEFAULT_SEED, qmax=1500, per_q=20) -> SuiteResult:
    """|lam(q;n,m)| <= 16 tau(q)^2 sqrt(q) sqrt(gcd(q,n,m)) for 8 not | q."""
    rec = _Recorder("lambda-bound")
    rng = random.Random(seed)
    for q in range(1, qmax + 1):
        if q % 8 == 0:
            continue
        tq = ntcore.tau(q)
        for _ in range(per_q):
            n, m = _random_nm(rng, q)
            bound = 16 * tq * tq * math.sqrt(q) * math.sqrt(ntcore.gcd_many([q, n, m]))
            val = abs(lambdasums.lambda_direct(q, n, m))
            rec.check(
                val <= bound + 1e-7,
                lambda q=q, n=n, m=m, v=val, b=bound: f"|lam({q};{n},{m})|={v:.4f} > {b:.4f}",
            )
    return rec.result()


def suite_lambda_growth(seed=DEFAULT_SEED, lo=500, hi=1500) -> SuiteResult:
    """Solution counts grow subquadratically: max lam(q)/q**1.2 < 1."""
    rec = _Recorder("lambda-growth")
    worst = 0.0
    for q in range(lo + 1, hi + 1):
        if q % 8 == 0:
            continue
        ratio = len(lambdasums.solve_circle(q)) / q**1.2
        worst = max(worst, ratio)
        rec.check(ratio < 1.0, lambda q=q, r=ratio: f"lam({q})/q^1.2 = {r:.3f}")
    return rec.result(notes=f"max lam(q)/q^1.2 = {worst:.3f}")


def suite_lambda_fast(seed=DEFAULT_SEED, qmax=601, per_q=10) -> SuiteResult:
    """Kloosterman-decomposition evaluator equals direct summation (odd q)."""
    rec = _Recorder("lambda-fast-vs-direct")
    rng = random.Random(seed)
    for q in range(1, qmax + 1, 2):
        pairs = [(0, 0)] + [_random_nm(rng, q) for _ in range(per_q)]
        for n, m in pairs:
            a = lambdasums.lambda_fast_odd(q, n, m)
            b = lambdasums.lambda_direct(q, n, m)
            rec.check(
                abs(a - b) <= LAMBDA_TOLERANCE * q,
                lambda q=q, n=n, m=m, a=a, b=b: f"fast({q};{n},{m})={a:.6f} direct={b:.6f}",
            )
    return rec.result()


def suite_lambda_any(seed=DEFAULT_SEED, qmax=601, per_q=10) -> SuiteResult:
    """Composite evaluator equals direct summation for every q with 8 not | q."""
    rec = _Recorder("lambda-any-vs-direct")
    rng = random.Random(seed)
    for q in range(1, qmax + 1):
        if q % 8 == 0:
            continue
        pairs = [(0, 0)] + [_random_nm(rng, q) for _ in range(per_q)]
        for n, m in pairs:
            a = lambdasums.lambda_any(q, n, m)
            b = lambdasums.lambda_direct(q, n, m)
            rec.check(
                abs(a - b) <= LAMBDA_TOLERANCE * q,
                lambda q=q, n=n, m=m, a=a, b=b: f"any({q};{n},{m})={a:.6f} direct={b:.6f}",
            )
    return rec.result()


def suite_lambda_triple(seed=DEFAULT_SEED, qmax=601, per_q=10) -> SuiteResult:
    """All applicable evaluators agree pairwise within 1e-5 * q."""
    rec = _Recorder("lambda-triple-agreement")
    rng = random.Random(seed)
    for q in range(1, qmax + 1):
        if q % 8 == 0:
            continue
        pairs = [(0, 0)] + [_random_nm(rng, q) for _ in range(per_q)]
        for n, m in pairs:
            vals = [lambdasums.lambda_direct(q, n, m), lambdasums.lambda_any(q, n, m)]
            if q % 2 == 1:
                vals.append(lambdasums.lambda_fast_odd(q, n, m))
            spread = max(abs(a - b) for a in vals for b in vals)
            rec.check(
                spread <= LAMBDA_TOLERANCE * q,
                lambda q=q, n=n, m=m, s=spread: f"({q};{n},{m}): evaluator spread {s:.2e}",
            )
    return rec.result()


def suite_lambda_multiplicative(seed=DEFAULT_SEED, trials=100, product_max=10_000) -> SuiteResult:
    """Coprime splitting equals direct summation on the product modulus."""
    rec = _Recorder("lambda-multiplicative")
    rng = random.Random(seed)
    done = 0
    while done < trials:
        q1 = rng.randrange(1, 101)
        q2 = rng.randrange(1, product_max // q1 + 1)
        if math.gcd(q1, q2) != 1:
            continue
        q = q1 * q2
        n, m = _random_nm(rng, q)
        a = lambdasums.lambda_multiplicative(q1, q2, n, m)
        b = lambdasums.lambda_direct(q, n, m)
        rec.check(
            abs(a - b) <= LAMBDA_TOLERANCE * q,
            lambda q1=q1, q2=q2, n=n, m=m, a=a, b=b: f"mult({q1},{q2};{n},{m})={a:.6f} direct={b:.6f}",
        )
        done += 1
    return rec.result()


def suite_lambda_symmetry(seed=DEFAULT_SEED, qmax=300, per_q=5) -> SuiteResult:
    """Exact q-periodicity in n and m; conjugation under (n,m) -> (-n,-m)."""
    rec = _Recorder("lambda-symmetry")
    rng = random.Random(seed)
    for q in range(1, qmax + 1):
        if q % 8 == 0:
            continue
        for _ in range(per_q):
            n, m = rng.randrange(q), rng.randrange(q)
            base = lambdasums.lambda_direct(q, n, m)
            rec.check(
                lambdasums.lambda_direct(q, n + q, m) == base
                and lambdasums.lambda_direct(q, n, m + q) == base,
                lambda q=q, n=n, m=m: f"periodicity broke at ({q};{n},{m})",
            )
            rec.check(
                complex_close(lambdasums.lambda_direct(q, -n, -m), base.conjugate()),
                lambda q=q, n=n, m=m: f"conjugation broke at ({q};{n},{m})",
            )
    return rec.result()


def suite_lambda_lift(seed=DEFAULT_SEED, pmax=47) -> SuiteResult:
    """lam(p^2) = p * lam(p) by enumeration for odd p <= 47, and lam(4) = 0."""
    rec = _Recorder("lambda-prime-square")
    rec.check(len(lambdasums.solve_circle(4)) == 0, "lam(4) != 0")
    rec.check(asymptotic.lambda_p_squared(2) == 0, "lambda_p_squared(2) != 0")
    for p in ntcore.primes_upto(pmax).tolist():
        if p == 2:
            continue
        lp = len(lambdasums.solve_circle(p))
        lp2 = len(lambdasums.solve_circle(p * p))
        closed = p * (p - 1) if p % 4 == 1 else p * (p + 1)
        rec.check(lp2 == p * lp, lambda p=p, a=lp2, b=p * lp: f"lam({p}^2)={a} != p*lam(p)={b}")
        rec.check(lp2 == closed, lambda p=p, a=lp2, c=closed: f"lam({p}^2)={a} != closed {c}")
        rec.check(
            asymptotic.lambda_p_squared(p) == lp2,
            lambda p=p: f"lambda_p_squared({p}) != enumeration",
        )
    return rec.result()


def suite_lambda_table(seed=DEFAULT_SEED, qmax=150, samples=8) -> SuiteResult:
    """Batched grids agree with the scalar evaluators entrywise."""
    rec = _Recorder("lambda-table-consistency")
    rng = random.Random(seed)
    for q in list(range(1, 36)) + [rng.randrange(36, qmax + 1) for _ in range(20)]:
        if q % 8 == 0:
            continue
        direct = lambdasums.lambda_direct_table(q)
        fast = lambdasums.lambda_any_table(q)
        err = np.abs(direct - fast).max()
        rec.check(err <= LAMBDA_TOLERANCE * q, lambda q=q, e=err: f"q={q} table err {e:.2e}")
        for _ in range(samples):
            n, m = rng.randrange(q), rng.randrange(q)
            rec.check(
                complex_close(direct[n, m], lambdasums.lambda_direct(q, n, m))
                and abs(fast[n, m] - lambdasums.lambda_any(q, n, m)) <= LAMBDA_TOLERANCE * q,
                lambda q=q, n=n, m=m: f"batch/scalar mismatch at ({q};{n},{m})",
            )
    return rec.result()


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def suite_count_oracle(seed=DEFAULT_SEED, H_values=None, threads=1) -> SuiteResult:
    """Value sieve and congruence identity give the same exact S(H)."""
    rec = _Recorder("count-oracle-equivalence")
    if H_values is None:
        H_values = list(range(1, 51)) + [100, 150, 200]
    hmax = max(H_values)
    sieve = counting.build_sieve(2 * hmax * hmax + 1)
    for H in H_values:
        direct = counting.count_pairs_direct(H, sieve=sieve, threads=threads)
        ident = counting.count_pairs_mobius(H)
        rec.check(
            direct.S == ident.S,
            lambda H=H, a=direct.S, b=ident.S: f"H={H}: sieve={a} identity={b}",
        )
    return rec.result()


def suite_residue_count(seed=DEFAULT_SEED) -> SuiteResult:
    """Residue counters partition [1, H] and stay within 1 of H/q."""
    rec = _Recorder("residue-count")
    rng = random.Random(seed)
    grid = [(H, q) for H in (1, 5, 10, 37, 100, 1000) for q in (1, 2, 3, 7, 10, 64, 97, 360)]
    grid += [(rng.randrange(1, 2000), rng.randrange(1, 500)) for _ in range(100)]
    for H, q in grid:
        counts = [counting.residue_count(H, q, x) for x in range(1, q + 1)]
        rec.check(sum(counts) == H, lambda H=H, q=q: f"residue counts for (H={H}, q={q}) miss H")
        rec.check(
            all(abs(c - H / q) <= 1 for c in counts),
            lambda H=H, q=q: f"(H={H}, q={q}): some count strays beyond H/q +- 1",
        )
    return rec.result()


def suite_congruent_bound(seed=DEFAULT_SEED, qmax=200) -> SuiteResult:
    """0 <= T(H, q) <= lam(q) * (H/q + 1)^2 on a grid."""
    rec = _Recorder("congruent-pair-bound")
    for H in (10, 50, 100):
        for q in range(1, qmax + 1):
            if q % 8 == 0:
                continue
            t = counting.congruent_pair_count(H, q)
            cap = len(lambdasums.solve_circle(q)) * (H / q + 1) ** 2
            rec.check(
                0 <= t <= cap,
                lambda H=H, q=q, t=t, cap=cap: f"T({H},{q})={t} outside [0, {cap:.2f}]",
            )
    return rec.result()


def suite_squarefree_density(seed=DEFAULT_SEED, N=10**6) -> SuiteResult:
    """Squarefree density over [1, N] approaches 6/pi^2."""
    rec = _Recorder("squarefree-density")
    sieve = counting.build_sieve(N)
    density = sieve.count_squarefree(N) / N
    rec.check(abs(density - 0.607927) <= 0.01, f"density {density:.6f}")
    return rec.result(notes=f"density = {density:.6f}")


def suite_truncation_report(seed=DEFAULT_SEED, H_values=(50, 100, 150, 200), epsilon=0.1) -> SuiteResult:
    """Report (never assert) the tail dropped by truncating at z = H^(2/3)."""
    rec = _Recorder("truncation-report")
    lines = []
    for H in H_values:
        z = H ** (2.0 / 3.0)
        exact = counting.count_pairs_mobius(H).S
        trunc = counting.count_pairs_mobius_truncated(H, z)
        dev = abs(exact - trunc)
        c_fit = dev * z / H ** (2 + epsilon)
        lines.append(f"H={H} z={int(z)} |S - S_z|={dev} C={c_fit:.4f}")
        rec.check(True, "")
    return rec.result(notes="; ".join(lines))


# ---------------------------------------------------------------------------
# constant and error term
# ---------------------------------------------------------------------------

def suite_constant_consistency(seed=DEFAULT_SEED, cutoffs=(100, 1000, 10_000)) -> SuiteResult:
    """Doubling the cutoff moves the product by less than the tail bound."""
    rec = _Recorder("constant-consistency")
    tails = []
    for P in cutoffs:
        lo = asymptotic.constant_c(P)
        hi = asymptotic.constant_c(2 * P)
        tails.append(lo.tail_bound)
        rec.check(
            abs(hi.value - lo.value) <= lo.tail_bound,
            lambda P=P, a=lo, b=hi: f"|c({2 * P}) - c({P})| = {abs(b.value - a.value):.3e} > {a.tail_bound:.3e}",
        )
        rec.check(0.0 < lo.value < 1.0, lambda P=P, v=lo.value: f"c({P}) = {v} outside (0,1)")
    rec.check(
        all(b < a for a, b in zip(tails, tails[1:])),
        f"tail bounds not decreasing: {tails}",
    )
    return rec.result(notes=f"c({cutoffs[-1]}) = {asymptotic.constant_c(cutoffs[-1]).value:.9f}")


def suite_dirichlet_form(seed=DEFAULT_SEED, dmax=500, P=10_000) -> SuiteResult:
    """Series and product forms of the constant agree within combined tails."""
    rec = _Recorder("dirichlet-form")
    series = asymptotic.dirichlet_partial_sum(dmax)
    prod = asymptotic.constant_c(P)
    budget = asymptotic.dirichlet_tail_bound(dmax) + prod.tail_bound
    gap = abs(series - prod.value)
    rec.check(gap <= budget, f"|series - product| = {gap:.3e} > {budget:.3e}")
    return rec.result(notes=f"gap {gap:.2e} within {budget:.2e}")


def suite_rho_envelope(seed=DEFAULT_SEED, D_values=(10, 100, 1000), trials=1000) -> SuiteResult:
    """Sawtooth Fourier truncation error under 3 * min(1, 1/(D||t||))."""
    rec = _Recorder("rho-envelope")
    rng = random.Random(seed)
    for D in D_values:
        for _ in range(trials):
            t = rng.uniform(-5.0, 5.0)
            dist = min(t % 1.0, 1.0 - t % 1.0)
            if dist < 1e-3:
                t += 2e-3
                dist = min(t % 1.0, 1.0 - t % 1.0)
            err = abs(asymptotic.rho(t) - asymptotic.rho_fourier(D, t))
            cap = 3.0 * min(1.0, 1.0 / (D * dist))
            rec.check(
                err <= cap,
                lambda D=D, t=t, e=err, c=cap: f"D={D} t={t:.6f}: err {e:.4f} > {c:.4f}",
            )
    return rec.result()


# Harmonic-sum envelope grid: every modulus up to 48 not divisible by 8,
# a spread of larger ones up to 500, and D spanning three orders of
# magnitude.
ENVELOPE_Q_GRID = [q for q in range(1, 49) if q % 8] + [
    q for q in range(55, 501, 7) if q % 8
]
ENVELOPE_D_GRID = (2, 10, 100, 1000)


def suite_harmonic_envelope(seed=DEFAULT_SEED, q_grid=None, D_grid=None) -> SuiteResult:
    """U/(q^0.7 D^0.2) and V/(q^0.7 D^0.2) stay below 20 on the grid."""
    rec = _Recorder("harmonic-envelope")
    q_grid = ENVELOPE_Q_GRID if q_grid is None else q_grid
    D_grid = ENVELOPE_D_GRID if D_grid is None else D_grid
    worst_u = worst_v = 0.0
    for q in q_grid:
        for D in D_grid:
            U, V = asymptotic.harmonic_lambda_sums(q, D)
            scale = q**0.7 * D**0.2
            worst_u = max(worst_u, U / scale)
            worst_v = max(worst_v, V / scale)
            rec.check(
                U / scale <= 20 and V / scale <= 20,
                lambda q=q, D=D, U=U, V=V, s=scale: f"q={q} D={D}: U/s={U / s:.2f} V/s={V / s:.2f}",
            )
    return rec.result(notes=f"max U ratio {worst_u:.2f}, max V ratio {worst_v:.2f}")


SCAN_LADDER = (250, 500, 1000, 2000, 4000)


def suite_scan_envelope(seed=DEFAULT_SEED, ladder=SCAN_LADDER, P=10**5, threads=1) -> SuiteResult:
    """Every |E(H)| under 5 * H^1.5 and the fitted exponent at most 1.6."""
    rec = _Recorder("scan-envelope")
    result = asymptotic.error_scan(ladder, P, threads=threads)
    for row in result.rows:
        cap = 5.0 * row.H**1.5
        rec.check(
            abs(row.E) <= cap,
            lambda r=row, cap=cap: f"H={r.H}: |E|={abs(r.E):.1f} > {cap:.1f}",
        )
    rec.check(result.alpha is not None, "fit skipped: fewer than 4 usable rows")
    if result.alpha is not None:
        rec.check(result.alpha <= 1.6, f"alpha = {result.alpha:.4f} > 1.6")
    alpha = "n/a" if result.alpha is None else f"{result.alpha:.4f}"
    return rec.result(notes=f"alpha = {alpha}, c = {result.c:.9f} (P = {P})")


ALL_SUITES = {
    "mobius-identity": suite_mobius_identity,
    "inverse-involution": suite_inverse_involution,
    "jacobi": suite_jacobi,
    "sqrt-mod-exhaustive": suite_sqrt_mod,
    "tau-growth": suite_tau_growth,
    "weil-bound": suite_weil_bound,
    "gauss-square": suite_gauss_square,
    "gauss-reduce-vs-direct": suite_gauss_reduce,
    "gauss-closed-vs-direct": suite_gauss_closed,
    "kloosterman-diagonal-real": suite_kloosterman_real,
    "lambda-bound": suite_lambda_bound,
    "lambda-growth": suite_lambda_growth,
    "lambda-fast-vs-direct": suite_lambda_fast,
    "lambda-any-vs-direct": suite_lambda_any,
    "lambda-triple-agreement": suite_lambda_triple,
    "lambda-multiplicative": suite_lambda_multiplicative,
    "lambda-symmetry": suite_lambda_symmetry,
    "lambda-prime-square": suite_lambda_lift,
    "lambda-table-consistency": suite_lambda_table,
    "count-oracle-equivalence": suite_count_oracle,
    "residue-count": suite_residue_count,
    "congruent-pair-bound": suite_congruent_bound,
    "squarefree-density": suite_squarefree_density,
    "truncation-report": suite_truncation_report,
    "constant-consistency": suite_constant_consistency,
    "dirichlet-form": suite_dirichlet_form,
    "rho-envelope": suite_rho_envelope,
    "harmonic-envelope": suite_harmonic_envelope,
    "scan-envelope": suite_scan_envelope,
}


def run_suites(names=None, seed=DEFAULT_SEED, threads=1) -> list[SuiteResult]:
    """Run the named suites (all, in registry order, when names is None)."""
    import inspect

    if names is None:
        names = list(ALL_SUITES)
    unknown = [n for n in names if n not in ALL_SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(unknown)}; known: {', '.join(ALL_SUITES)}")
    results = []
    for name in names:
        fn = ALL_SUITES[name]
        kwargs = {"seed": seed}
        if "threads" in inspect.signature(fn).parameters:
            kwargs["threads"] = threads
        results.append(fn(**kwargs))
    return results
