"""q-expansions of the named modular forms, Faber polynomials and Hecke operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .arith import divisors
from .series import QSeries, euler_product

__all__ = [
    "FORM_NAMES",
    "bernoulli",
    "eisenstein",
    "divisor_sum_table",
    "build_form",
    "FaberPolynomial",
    "faber_level1",
    "faber_level2_fricke",
    "faber_eval_at_j_value",
    "MillerBasis",
    "dim_modular",
    "dim_cusp",
    "miller_basis",
    "hecke_matrix",
    "hecke_trace",
]

FORM_NAMES = (
    "E2", "E4", "E6", "E12", "Delta", "j", "eta", "theta0", "theta1",
    "j2", "j2star", "E2level2", "g1",
)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (with B_1 = -1/2)."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    # sum_{k<n+1} binom(n+1, k) B_k = 0
    total = Fraction(0)
    binom = 1
    for k in range(n):
        total += binom * bernoulli(k)
        binom = binom * (n + 1 - k) // (k + 1)
    return -total / (n + 1)


def divisor_sum_table(k: int, order: int, odd_only: bool = False) -> list[int]:
    """``[sigma_k(n) for n < order]`` with index 0 set to 0 (sieve)."""
    table = [0] * order
    step = 2 if odd_only else 1
    for d in range(1, order, step):
        dk = d**k
        for m in range(d, order, d):
            table[m] += dk
    return table


def eisenstein(k: int, order: int) -> QSeries:
    """Normalised Eisenstein series ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein series need even weight >= 2")
    c = -2 * k / bernoulli(k)
    sig = divisor_sum_table(k - 1, order)
    coeffs = {0: 1}
    coeffs.update({n: c * sig[n] for n in range(1, order)})
    return QSeries(coeffs, order=order)


def _theta(order: int, alternating: bool) -> QSeries:
    coeffs = {0: 1}
    n = 1
    while n * n < order:
        coeffs[n * n] = 2 * (-1 if alternating and n % 2 else 1)
        n += 1
    return QSeries(coeffs, order=order)


def _eta_quotient_j2(order: int) -> tuple[QSeries, QSeries]:
    """``(eta(t)/eta(2t))^24`` and ``(eta(2t)/eta(t))^24`` to ``O(q^order)``."""
    p1 = euler_product(order + 2)
    p2 = euler_product(order + 2).rescale(2)
    down = (p1.power(24) * p2.power(-24)).shift(-1).truncate(order)
    up = (p2.power(24) * p1.power(-24)).shift(1).truncate(order)
    return down, up


@lru_cache(maxsize=64)
def _build(name: str, order: int) -> QSeries:
    if name == "E2":
        return eisenstein(2, order)
    if name == "E4":
        return eisenstein(4, order)
    if name == "E6":
        return eisenstein(6, order)
    if name == "E12":
        return eisenstein(12, order)
    if name == "Delta":
        return euler_product(order).power(24).shift(1).truncate(order)
    if name == "j":
        inv_delta = euler_product(order + 1).power(-24).shift(-1)
        return (eisenstein(4, order + 1) ** 3 * inv_delta).truncate(order)
    if name == "eta":
        return euler_product(order).shift(Fraction(1, 24)).truncate(order)
    if name == "theta0":
        return _theta(order, alternating=False)
    if name == "theta1":
        return _theta(order, alternating=True)
    if name == "j2":
        down, _ = _eta_quotient_j2(order)
        return down + 24
    if name == "j2star":
        down, up = _eta_quotient_j2(order)
        return down + 24 + 4096 * up
    if name == "E2level2":
        sig = divisor_sum_table(1, order, odd_only=True)
        return QSeries({0: 1, **{n: 24 * sig[n] for n in range(1, order)}}, order=order)
    if name == "g1":
        # -theta_1(t) E_4(4t) / eta(4t)^6
        quarter = order // 4 + 2
        inv_eta6 = euler_product(quarter).power(-6).rescale(4).shift(-1)
        e4 = eisenstein(4, quarter).rescale(4)
        return (-(_theta(order + 1, True) * e4 * inv_eta6)).truncate(order)
    raise KeyError(f"unknown form {name!r}")


def build_form(name: str, order: int) -> QSeries:
    """q-expansion of a registry form, exact below ``q^order``."""
    if order < 2:
        raise ValueError("order must be at least 2")
    if name not in FORM_NAMES:
        raise KeyError(f"unknown form {name!r}; choose from {', '.join(FORM_NAMES)}")
    return _build(name, int(order))


# -- Faber polynomials -----------------------------------------------------


@dataclass(frozen=True)
class FaberPolynomial:
    """``f_m = sum coeffs[i] * x^i`` with ``x`` a Hauptmodul, and its expansion."""

    m: int
    coeffs: tuple[Fraction, ...]
    series: QSeries

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _greedy_faber(x: QSeries, m: int) -> tuple[tuple[Fraction, ...], QSeries]:
    """Kill the principal part of ``x^m`` down to q^0 using lower powers of ``x``."""
    coeffs = [Fraction(0)] * (m + 1)
    coeffs[m] = Fraction(1)
    powers = [QSeries.constant(1)]
    for _ in range(m):
        powers.append(powers[-1] * x)
    s = powers[m]
    for k in range(m - 1, -1, -1):
        c = s.coeff_at(-k)
        if c:
            s = s - c * powers[k]
            coeffs[k] -= c
    return tuple(coeffs), s


@lru_cache(maxsize=128)
def faber_level1(m: int, order: int = 4) -> FaberPolynomial:
    """``j_m``: the polynomial in j with expansion ``q^-m + O(q)``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return FaberPolynomial(0, (Fraction(1),), QSeries.constant(1))
    j = build_form("j", max(order + m - 1, 2))
    coeffs, s = _greedy_faber(j, m)
    return FaberPolynomial(m, coeffs, s.truncate(order))


@lru_cache(maxsize=128)
def faber_level2_fricke(m: int, order: int = 4) -> FaberPolynomial:
    """``j*_{2,m}``: the polynomial in ``j2star`` with expansion ``q^-m + O(q)``."""
    if m < 1:
        raise ValueError("m must be positive")
    x = build_form("j2star", max(order + m - 1, 2))
    coeffs, s = _greedy_faber(x, m)
    return FaberPolynomial(m, coeffs, s.truncate(order))


def faber_eval_at_j_value(m: int, j0) -> Fraction:
    """Exact value of ``j_m`` at a point where ``j`` takes the rational value ``j0``."""
    return Fraction(faber_level1(m, 1)(Fraction(j0)))


# -- Miller bases and Hecke operators ----------------------------------------


def dim_modular(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    if k == 2:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


def dim_cusp(k: int) -> int:
    return max(dim_modular(k) - 1, 0) if k >= 4 else 0


@dataclass(frozen=True)
class MillerBasis:
    weight: int
    basis: tuple[QSeries, ...]
    cusp: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=64)
def miller_basis(k: int, order: int, cusp: bool = False) -> MillerBasis:
    """Echelon basis of M_k (or S_k) with ``basis[i] = q^i + O(q^dim)``.

    For the cusp space the basis is ``q^i + O(q^(dim+1))`` for ``i = 1..dim``.
    """
    if k % 2 or k < 4:
        raise ValueError("weight must be even and at least 4")
    dim = dim_modular(k)
    order = max(order, dim + 1)
    e4 = build_form("E4", order)
    e6 = build_form("E6", order)
    delta = build_form("Delta", order)
    rows = []
    for c in range(dim):
        w = k - 12 * c
        b = 0 if w % 4 == 0 else 1
        a = (w - 6 * b) // 4
        rows.append((delta**c * e4**a * e6**b).truncate(order))
    # rows[c] = q^c + ..., so back-substitution gives the echelon form
    for i in range(dim - 1, -1, -1):
        for r in range(i):
            c = rows[r].coeff_at(i)
            if c:
                rows[r] = rows[r] - c * rows[i]
    basis = tuple(rows[1:] if cusp else rows)
    return MillerBasis(k, basis, cusp)


def _hecke_image_coeff(f: QSeries, k: int, n: int, m: int) -> Fraction:
    total = Fraction(0)
    for d in divisors(gcd(m, n)):
        total += d ** (k - 1) * f.coeff_at(m * n // (d * d))
    return total


def hecke_matrix(k: int, n: int, order: int | None = None) -> list[list[Fraction]]:
    """Matrix of T_n on the Miller cusp basis of S_k; column j is T_n(basis[j])."""
    if n < 1:
        raise ValueError("n must be positive")
    dim = dim_cusp(k)
    if dim == 0:
        return []
    need = dim * n + 1
    if order is None:
        order = need
    if order < need:
        raise ValueError(f"order {order} too small for T_{n} on S_{k}; need {need}")
    basis = miller_basis(k, order, cusp=True).basis
    return [
        [_hecke_image_coeff(basis[j], k, n, i + 1) for j in range(dim)]
        for i in range(dim)
    ]


def hecke_trace(k: int, n: int) -> Fraction:
    """Trace of T_n on S_k(SL_2(Z))."""
    mat = hecke_matrix(k, n)
    return sum((mat[i][i] for i in range(len(mat))), Fraction(0))
