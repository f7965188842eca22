"""Statement-level congruence verification and witness prospecting.

Everything here works at finite precision: a PASS certifies the tested
range only, and theorem-backed claims are expected to pass on every range.
All large scans run in word-sized modular rings from the start.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

import numpy as np
from sympy import isprime

from . import treneer
from .growth import GrowthTables
from .operators import hecke, kronecker
from .partitions import colored_table, partition_table
from .reports import CongruenceClaim, VerificationReport


class BudgetExceededError(MemoryError):
    """A table build would exceed the configured memory budget."""


def ensure_budget(entries: int, memory_budget: int | None):
    if memory_budget is not None and 8 * entries > memory_budget:
        raise BudgetExceededError(
            f"table of {entries} entries (~{8 * entries} bytes) exceeds "
            f"budget {memory_budget}"
        )


def _nonzero_indices(values: np.ndarray, indices: np.ndarray, threads: int = 1):
    """(n, residue) pairs where values[indices] != 0, sorted by n.

    The range-parallel path splits into contiguous chunks and merges in
    chunk order, so the result is identical to the single-threaded scan.
    """
    if threads <= 1 or len(indices) < 1024:
        picked = values[indices]
        bad = np.nonzero(picked)[0]
        return [(int(indices[i]), int(picked[i])) for i in bad]
    chunks = np.array_split(indices, threads)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: _nonzero_indices(values, c, 1), chunks))
    return [pair for part in parts for pair in part]


# -- progression congruences (partition, 2-colored, growth) ----------------


def residues_cong1(ell: int, j: int) -> int:
    """The unique residue n0 mod ell^j with 24*n0 == 1 (mod ell^j)."""
    if gcd(24, ell) != 1:
        raise ValueError("24 must be invertible mod ell")
    mod = ell**j
    return pow(24, -1, mod) % mod


def verify_ramanujan(ell: int, j: int, n_max: int, threads: int = 1) -> VerificationReport:
    """p(n) == 0 mod ell^j (ell=5,11) or ell^(floor(j/2)+1) (ell=7) on
    24n == 1 (mod ell^j)."""
    if ell not in (5, 7, 11):
        raise ValueError("the Ramanujan-Watson congruences cover ell in {5,7,11}")
    modulus = ell ** (j // 2 + 1) if ell == 7 else ell**j
    n0 = residues_cong1(ell, j)
    claim = CongruenceClaim(
        "p", (ell**j, n0), modulus,
        filter_desc=f"24n == 1 (mod {ell}^{j})",
        provenance="Ramanujan-Watson congruence",
    )
    report = VerificationReport(claim, (0, n_max))
    t0 = time.perf_counter()
    if n0 <= n_max:
        table = partition_table(n_max, modulus)
        idx = np.arange(n0, n_max + 1, ell**j, dtype=np.int64)
        values = np.asarray(table.values, dtype=np.int64)
        report.counterexamples = _nonzero_indices(values, idx, threads)
        report.tested = len(idx)
        report.truncation = n_max
    report.elapsed = time.perf_counter() - t0
    return report


def verify_atkin_k2(ell: int, j: int, n_max: int, threads: int = 1) -> VerificationReport:
    """p_2(n) == 0 mod ell^floor(j/2-1) on 24n == 2 (mod ell^j), ell in {5,7}.

    ``n_max`` bounds the progression index: the arguments tested are
    n0 + k*ell^j for 0 <= k <= n_max (raw bounds would be vacuous for
    j >= 4, where the smallest qualifying argument already exceeds them).
    """
    if ell not in (5, 7):
        raise ValueError("the k=2 case is tabulated for ell in {5,7} only")
    exponent = (j - 2) // 2  # floor(j/2 - 1)
    mod_j = ell**j
    n0 = (2 * pow(24, -1, mod_j)) % mod_j
    claim = CongruenceClaim(
        "p_2", (mod_j, n0), ell**max(exponent, 1),
        filter_desc=f"24n == 2 (mod {ell}^{j})",
        provenance="Atkin k=2 congruence",
    )
    report = VerificationReport(claim, (0, n_max))
    if exponent <= 0:
        report.trivial = True
        return report
    t0 = time.perf_counter()
    top = n0 + n_max * mod_j
    modulus = ell**exponent
    table = colored_table(2, top, modulus)
    idx = np.arange(n0, top + 1, mod_j, dtype=np.int64)
    values = np.asarray(table.values, dtype=np.int64)
    report.counterexamples = _nonzero_indices(values, idx, threads)
    report.tested = len(idx)
    report.truncation = top
    report.elapsed = time.perf_counter() - t0
    return report


def verify_cong1(ell: int, j: int, n_max: int, threads: int = 1) -> VerificationReport:
    """gamma_alt(2n) == gamma_sym(n) == 0 mod ell^floor(j/2-1) on
    24n == 1 (mod ell^j), for ell in {5, 7}.

    ``n_max`` bounds the progression index (arguments n0 + k*ell^j,
    0 <= k <= n_max), matching the example progressions' ranges.
    """
    if ell not in (5, 7):
        raise ValueError("the theorem covers ell in {5, 7}")
    exponent = (j - 2) // 2
    mod_j = ell**j
    n0 = residues_cong1(ell, j)
    claim = CongruenceClaim(
        "gamma", (mod_j, n0), ell**max(exponent, 1),
        filter_desc=f"both gamma_sym(n) and gamma_alt(2n), 24n == 1 (mod {ell}^{j})",
        provenance="growth-series congruence theorem",
    )
    report = VerificationReport(claim, (0, n_max))
    if exponent <= 0:
        report.trivial = True
        return report
    t0 = time.perf_counter()
    modulus = ell**exponent
    top = n0 + n_max * mod_j
    tables = GrowthTables(2 * top, modulus)
    for n in range(n0, top + 1, mod_j):
        report.tested += 1
        sym = tables.gamma_sym(n)
        alt = tables.gamma_alt(2 * n)
        if sym or alt:
            report.counterexamples.append((n, alt if alt else sym))
    report.truncation = 2 * top
    report.elapsed = time.perf_counter() - t0
    return report


def verify_gamma_progression(
    a: int, b: int, modulus: int, n_max: int,
    provenance: str = "", memory_budget: int | None = None,
) -> VerificationReport:
    """gamma_alt(a*n + b) == 0 (mod modulus) for 0 <= n <= n_max."""
    top = a * n_max + b
    ensure_budget(2 * (top + 1), memory_budget)
    claim = CongruenceClaim("gamma_alt", (a, b), modulus, provenance=provenance)
    report = VerificationReport(claim, (0, n_max), truncation=top)
    t0 = time.perf_counter()
    tables = GrowthTables(top, modulus)
    for n in range(n_max + 1):
        report.tested += 1
        v = tables.gamma_alt(a * n + b)
        if v:
            report.counterexamples.append((n, v))
    report.elapsed = time.perf_counter() - t0
    return report


EXAMPLE_PROGRESSIONS = (
    # (ell, power, offset, modulus, default n_max)
    (5, 4, 1198, 5, 200),
    (5, 6, 29948, 25, 30),
    (5, 8, 748698, 125, 3),
    (7, 4, 4602, 7, 200),
    (7, 6, 225494, 49, 8),
)

LONG_EXAMPLE_PROGRESSION = (7, 8, 11049202, 343, 0)


def example_progression_block(long: bool = False, memory_budget: int | None = None):
    """The six explicit progressions following the main growth congruence."""
    cases = EXAMPLE_PROGRESSIONS + ((LONG_EXAMPLE_PROGRESSION,) if long else ())
    reports = []
    for ell, power, offset, modulus, n_max in cases:
        reports.append(
            verify_gamma_progression(
                2 * ell**power, offset, modulus, n_max,
                provenance=f"example progression mod {modulus}",
                memory_budget=memory_budget,
            )
        )
    return reports


def verify_examples_11_12(n_max: int, threads: int = 1):
    """p_2(2n) == 0 mod 5 when 2n == 2,3,4 (mod 5) and mod 7 when
    2n == 17,31,38,45 (mod 49), i.e. 2*gamma_alt(2n) == gamma_sym(n).

    The residue classes constrain the argument of p_2; the vanishing is
    an argument-progression congruence, so 2n rather than n must lie in
    the class.  (Filtering n itself fails already at n = 8: p_2(16) is
    5822 == 2 mod 5.)
    """
    cases = ((5, 5, (2, 3, 4)), (7, 49, (17, 31, 38, 45)))
    reports = []
    for modulus, step, residues in cases:
        table = colored_table(2, 2 * n_max, modulus)
        values = np.asarray(table.values, dtype=np.int64)
        for r in residues:
            claim = CongruenceClaim(
                "p_2", (2, 0), modulus,
                filter_desc=f"2n == {r} (mod {step})",
                provenance=f"introductory example mod {modulus}",
            )
            report = VerificationReport(claim, (0, n_max), truncation=2 * n_max)
            t0 = time.perf_counter()
            # even representatives of the class r (mod step): 2n == r
            # needs r even (step odd makes r and r + step opposite parity)
            r_even = r if r % 2 == 0 else r + step
            idx = np.arange(r_even, 2 * n_max + 1, 2 * step, dtype=np.int64)
            report.counterexamples = _nonzero_indices(values, idx, threads)
            report.tested = len(idx)
            report.elapsed = time.perf_counter() - t0
            reports.append(report)
    return reports


# -- witness machinery ------------------------------------------------------


def beta_delta(ell: int, q: int) -> tuple[int, int]:
    """beta in [0, 24) with q*ell^m*beta == 23 (mod 24) and the exact
    delta = (q*ell^m*beta + 1) / 24."""
    if gcd(24, q * ell) != 1:
        raise ValueError("q*ell must be coprime to 24")
    m = treneer.m_ell(ell)
    c = (q * ell**m) % 24
    beta = (23 * pow(c, -1, 24)) % 24
    num = q * ell**m * beta + 1
    assert num % 24 == 0
    return beta, num // 24


@dataclass(frozen=True)
class WitnessCandidate:
    ell: int
    j: int
    q: int
    beta_l: int
    delta_l: int
    evidence: int  # Hecke output coefficients checked

    def __post_init__(self):
        if self.delta_l * 24 != self.q * self.ell ** treneer.m_ell(self.ell) * self.beta_l + 1:
            raise ValueError("inconsistent (beta, delta) pair")


def verify_sym(
    ell: int, j: int, q: int, n_max: int,
    threads: int = 1, memory_budget: int | None = None,
    _table=None,
) -> VerificationReport:
    """p_2(2*q*ell^m*n + 2*delta) == 0 (mod ell^j) over the filtered range.

    Equivalent, through the growth-series identity, to the congruence of
    2*gamma_alt with gamma_sym at the mapped indices.
    """
    beta, delta = beta_delta(ell, q)
    m = treneer.m_ell(ell)
    a = 2 * q * ell**m
    modulus = ell**j
    top = a * n_max + 2 * delta
    ensure_budget(top + 1, memory_budget)
    claim = CongruenceClaim(
        "p_2", (a, 2 * delta), modulus,
        filter_desc=f"gcd(24n+{beta}, {q * ell}) == 1",
        provenance=f"index-mapped growth congruence, Q={q}",
    )
    report = VerificationReport(claim, (0, n_max), truncation=top)
    t0 = time.perf_counter()
    if _table is None:
        _table = colored_table(2, top, modulus)
    values = np.asarray(_table.values, dtype=np.int64)
    kept = [n for n in range(n_max + 1) if gcd(24 * n + beta, q * ell) == 1]
    report.skipped = n_max + 1 - len(kept)
    idx = a * np.asarray(kept, dtype=np.int64) + 2 * delta
    report.counterexamples = _nonzero_indices(values, idx, threads)
    report.tested = len(kept)
    report.elapsed = time.perf_counter() - t0
    return report


def witness_primes(ell: int, j: int, q_bound: int):
    """Primes Q == -1 (mod 144*ell^j) up to q_bound, ascending."""
    step = 144 * ell**j
    return [q for q in range(step - 1, q_bound + 1, step) if isprime(q)]


def witness_search(
    ell: int, j: int, q_bound: int, trunc: int,
    include_rejected: bool = False,
):
    """Truncated-Hecke prefilter over primes Q == -1 (mod 144*ell^j).

    A listed candidate means every available Hecke output coefficient of
    the pipeline cusp form vanished mod ell^j: finite-precision evidence,
    not proof.  Candidates should be re-checked with verify_sym.
    """
    t_g = q_bound * trunc
    ctx = treneer.make_context(ell, j, t_g)
    g = treneer.build_g(ctx)
    top = treneer.g_character_top(ctx)
    candidates, rejected = [], []
    for q in witness_primes(ell, j, q_bound):
        out = hecke(g, q, ctx.kappa, kronecker(top, q))
        ok = out.is_zero()
        if ok:
            beta, delta = beta_delta(ell, q)
            candidates.append(
                WitnessCandidate(ell, j, q, beta, delta, evidence=len(out))
            )
        else:
            rejected.append(q)
    candidates.sort(key=lambda c: c.q)
    if include_rejected:
        return candidates, rejected
    return candidates


# -- prospecting ------------------------------------------------------------


def function_table(name: str, nmax: int, modulus: int) -> np.ndarray:
    """Dense value table for a named coefficient function, reduced mod modulus."""
    if name == "p":
        return np.asarray(partition_table(nmax, modulus).values, dtype=np.int64)
    if name.startswith("p_k:"):
        k = int(name.split(":", 1)[1])
        return np.asarray(colored_table(k, nmax, modulus).values, dtype=np.int64)
    if name == "p_2" or name == "p2":
        return np.asarray(colored_table(2, nmax, modulus).values, dtype=np.int64)
    if name in ("gamma_sym", "gamma_alt"):
        tables = GrowthTables(nmax, modulus)
        fn = tables.gamma_sym if name == "gamma_sym" else tables.gamma_alt
        return np.asarray([fn(n) for n in range(nmax + 1)], dtype=np.int64)
    if name == "a":
        series = treneer.build_f(nmax + 1, _ring_for(modulus))
        return np.asarray([series.coeff(n) % modulus for n in range(nmax + 1)], dtype=np.int64)
    raise ValueError(f"unknown coefficient function {name!r}")


def _ring_for(modulus):
    from .qseries import Zmod

    return Zmod(modulus)


def scan_progressions(function: str, modulus: int, a_bound: int, n_max: int):
    """All (A, B), A <= a_bound, with function(A*n+B) == 0 (mod modulus) for
    every n <= n_max.  Results are conjectural, in scan order (A, then B)."""
    top = a_bound * n_max + a_bound
    values = function_table(function, top, modulus)
    found = []
    for a in range(1, a_bound + 1):
        for b in range(a):
            window = values[b :: a][: n_max + 1]
            if len(window) > n_max and not window.any():
                found.append(
                    CongruenceClaim(
                        function, (a, b), modulus,
                        filter_desc=f"all n <= {n_max}",
                        provenance="conjectural scan",
                    )
                )
    return found
