"""Elementary arithmetic functions: Kronecker symbol, divisor sums, partitions."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

from .series import QSeries, euler_product

__all__ = [
    "factorize",
    "divisors",
    "kronecker",
    "sigma",
    "omega",
    "partition_p",
    "partitions_upto",
    "spt",
    "spt_upto",
]


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors needs n >= 1")
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return small + [n // d for d in reversed(small) if d * d != n]


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    if n < 1:
        raise ValueError("omega needs n >= 1")
    return len(factorize(n))


def sigma(k: int, n: int, odd_only: bool = False) -> int:
    """Sum of ``d**k`` over divisors ``d`` of ``n`` (odd ``d`` only if asked)."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    return sum(d**k for d in divisors(n) if not odd_only or d % 2)


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a/n)`` for arbitrary integers ``a`` and ``n``."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi(a, n)


_partition_cache = [1]


def partitions_upto(n: int) -> list[int]:
    """``[p(0), ..., p(n)]`` from Euler's pentagonal recurrence."""
    p = _partition_cache
    for m in range(len(p), n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = g1 + k
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p.append(total)
    return p[: n + 1]


def partition_p(n: int) -> int:
    if n < 0:
        return 0
    return partitions_upto(n)[n]


@lru_cache(maxsize=8)
def spt_series(order: int) -> QSeries:
    """Generating function of spt(n) to ``O(q^order)``.

    prod 1/(1-q^n) * sum_{n>=1} q^n prod_{m<n}(1-q^m) / (1-q^n)
    """
    q = QSeries.monomial(1)
    inner = QSeries({}, order=order)
    running = QSeries.constant(1)  # prod_{m<n} (1 - q^m)
    for n in range(1, order):
        one_minus = 1 - q**n
        term = running.shift(n) * one_minus.inverse(order=order)
        inner = inner + term.truncate(order)
        running = (running * one_minus).truncate(order)
    return euler_product(order).inverse() * inner


def spt_upto(n: int) -> list[int]:
    """``[spt(1), ..., spt(n)]``."""
    s = spt_series(n + 1)
    return [int(s.coeff_at(k)) for k in range(1, n + 1)]


def spt(n: int) -> int:
    """Total number of smallest parts over all partitions of ``n``."""
    if n < 1:
        raise ValueError("spt needs n >= 1")
    order = max(n + 1, 16)
    order = 1 << (order - 1).bit_length()  # share cached series between calls
    return int(spt_series(order).coeff_at(n))
