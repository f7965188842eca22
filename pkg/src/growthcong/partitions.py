"""Partition-type coefficient functions: p(n), k-colored p_k(n), and oracles.

The production algorithm is the pentagonal-number recurrence, run either
with exact Python integers or as a numba kernel over Z/M for the large
modular tables.  Brute-force enumeration oracles are provided for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .qseries import ZZ, CoefficientRing, QSeries, Zmod

ORACLE_LIMIT_P = 60
ORACLE_LIMIT_PK = 40


def pentagonal_terms(limit: int):
    """(offset, sign) pairs of the Euler product, offsets <= limit, ascending."""
    terms = []
    k = 1
    while True:
        g = k * (3 * k - 1) // 2
        if g > limit:
            break
        sign = -1 if k % 2 else 1
        terms.append((g, sign))
        h = g + k
        if h <= limit:
            terms.append((h, sign))
        k += 1
    terms.sort()
    return terms


def euler_series(trunc: int, ring: CoefficientRing = ZZ, step: int = 1) -> QSeries:
    """Prod_{n>=1} (1 - q^(step*n)) truncated at exponent ``trunc``, grain 1."""
    coeffs = [0] * trunc
    coeffs[0] = 1
    for g, sign in pentagonal_terms((trunc - 1) // step):
        coeffs[g * step] = sign
    return QSeries(ring, 1, 0, coeffs, trunc)


@njit
def _divide_by_euler_mod(rhs, modulus):
    """x with (prod (1 - q^n)) * x = rhs over Z/modulus, coefficientwise."""
    n = rhs.shape[0]
    out = np.empty(n, dtype=np.uint64)
    for i in range(n):
        acc = rhs[i] % modulus
        k = 1
        while True:
            g = (k * (3 * k - 1)) // 2
            if g > i:
                break
            t = out[i - g]
            h = g + k
            if h <= i:
                t = (t + out[i - h]) % modulus
            if k & 1:
                acc = (acc + t) % modulus
            else:
                acc = (acc + modulus - t) % modulus
            k += 1
        out[i] = acc
    return out


def _divide_by_euler_exact(rhs):
    n = len(rhs)
    out = [0] * n
    terms = pentagonal_terms(n - 1)
    for i in range(n):
        acc = rhs[i]
        for g, sign in terms:
            if g > i:
                break
            acc -= sign * out[i - g]
        out[i] = acc
    return out


def _divide_by_euler(rhs, modulus):
    if modulus is None:
        return _divide_by_euler_exact(list(rhs))
    arr = np.asarray(rhs, dtype=np.uint64)
    return _divide_by_euler_mod(arr, np.uint64(modulus))


@dataclass
class PartitionTable:
    """Dense table of p(n) or p_k(n) for 0 <= n <= nmax."""

    k: int
    nmax: int
    modulus: int | None
    values: "np.ndarray | list" = field(repr=False)

    def __post_init__(self):
        if len(self.values) != self.nmax + 1:
            raise ValueError("table length must be nmax + 1")

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.nmax:
            raise IndexError(f"n={n} outside table range 0..{self.nmax}")
        return int(self.values[n])

    @property
    def ring(self) -> CoefficientRing:
        return ZZ if self.modulus is None else Zmod(self.modulus)

    @property
    def tag(self) -> str:
        return "p" if self.k == 1 else f"p_k:{self.k}"


def partition_table(nmax: int, modulus: int | None = None) -> PartitionTable:
    """p(0..nmax) via the pentagonal recurrence."""
    rhs = np.zeros(nmax + 1, dtype=np.uint64) if modulus else [0] * (nmax + 1)
    rhs[0] = 1
    return PartitionTable(1, nmax, modulus, _divide_by_euler(rhs, modulus))


def colored_table(k: int, nmax: int, modulus: int | None = None) -> PartitionTable:
    """p_k(0..nmax) by dividing the delta series by the Euler product k times."""
    if k < 1:
        raise ValueError("k must be >= 1")
    vals = np.zeros(nmax + 1, dtype=np.uint64) if modulus else [0] * (nmax + 1)
    vals[0] = 1
    for _ in range(k):
        vals = _divide_by_euler(vals, modulus)
    return PartitionTable(k, nmax, modulus, vals)


def partition_series(trunc: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Sum_{n<trunc} p(n) q^n."""
    if trunc < 1:
        raise ValueError("truncation must be >= 1")
    table = partition_table(trunc - 1, ring.modulus)
    return QSeries(ring, 1, 0, table.values, trunc)


def colored_series(k: int, trunc: int, ring: CoefficientRing = ZZ) -> QSeries:
    """Sum_{n<trunc} p_k(n) q^n."""
    table = colored_table(k, trunc - 1, ring.modulus)
    return QSeries(ring, 1, 0, table.values, trunc)


# -- enumeration oracles --------------------------------------------------

_bf_cache: dict[int, int] = {}


def _count_partitions(n: int, max_part: int) -> int:
    if n == 0:
        return 1
    total = 0
    for first in range(min(n, max_part), 0, -1):
        total += _count_partitions(n - first, first)
    return total


def brute_force_p(n: int) -> int:
    """p(n) by explicit enumeration over the partition tree; n <= 60."""
    if n < 0:
        return 0
    if n > ORACLE_LIMIT_P:
        raise ValueError(f"oracle limited to n <= {ORACLE_LIMIT_P}")
    if n not in _bf_cache:
        _bf_cache[n] = _count_partitions(n, n)
    return _bf_cache[n]


def brute_force_pk(n: int, k: int) -> int:
    """p_k(n) by counting k-tuples of partitions with total size n; n <= 40."""
    if n > ORACLE_LIMIT_PK:
        raise ValueError(f"oracle limited to n <= {ORACLE_LIMIT_PK}")
    if k == 1:
        return brute_force_p(n)
    total = 0
    for i in range(n + 1):
        total += brute_force_p(i) * brute_force_pk(n - i, k - 1)
    return total


# -- asymptotic sanity ----------------------------------------------------


def asymptotic_ratio(n: int) -> float:
    """p(n) * 4n*sqrt(3) / exp(pi*sqrt(2n/3)), evaluated in log space."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p_n = partition_table(n)[n]
    log_ratio = math.log(p_n) + math.log(4 * n * math.sqrt(3)) - math.pi * math.sqrt(2 * n / 3)
    return math.exp(log_ratio)
