"""Coefficient-level Jacobi forms of weight 2.

A Jacobi form of index ``m`` is carried as its coefficients ``c(D)`` keyed
by the discriminant ``D = 4mn - r^2`` (index 1 and prime index, where the
coefficient only depends on ``D``).  The heat-operator images ``F_{phi,nu}``
and the level-raising ``G_phi`` are produced as exact q-series, and
``bootstrap`` recovers the positive coefficients from the singular ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

from .arith import kronecker, factorize
from .forms import dim_modular, eisenstein
from .series import QSeries

__all__ = [
    "gegenbauer_a",
    "gegenbauer_p",
    "gegenbauer_p_h",
    "gegenbauer_generating_check",
    "s_term",
    "IncompleteTableError",
    "BootstrapError",
    "JacobiCoeffTable",
    "F_expansion",
    "G_expansion",
    "constant_term_from_singular",
    "step_matrix",
    "bootstrap",
]


# -- Gegenbauer polynomials ----------------------------------------------------


def s_term(j: int, k: int, l: int, r, n):
    """``S_{j,k,l}(r, n)``; zero outside ``0 <= j <= l/2``, ``k >= 2``."""
    if k < 2 or l < 0 or j < 0 or 2 * j > l:
        return 0
    return (-1) ** j * comb(l + k - 2 - j, l - 2 * j) * comb(j + k - 2, k - 2) * n**j * r ** (l - 2 * j)


def gegenbauer_a(k: int, l: int, r, n):
    """``a_{k,l}(r, n)``: coefficient of ``X^l`` in ``(1 - rX + nX^2)^(1-k)``."""
    if l < 0:
        return 0
    return sum(s_term(j, k, l, r, n) for j in range(l // 2 + 1))


@lru_cache(maxsize=None)
def _p_coeffs(k: int, l: int) -> tuple[tuple[int, Fraction], ...]:
    # p_{k,l}(r, n) = sum_j coeff_j n^j (r^2)^(l/2 - j)
    norm = comb(l // 2 + k - 2, k - 2)
    return tuple(
        (j, Fraction((-1) ** j * comb(l + k - 2 - j, l - 2 * j) * comb(j + k - 2, k - 2), norm))
        for j in range(l // 2 + 1)
    )


def gegenbauer_p(k: int, l: int, r2m, n) -> Fraction:
    """``p_{k,l}`` as a polynomial in ``r^2`` (pass ``r2m = r^2/m``) and ``n``."""
    if l % 2:
        raise ValueError("only even degrees l occur")
    if k < 2:
        raise ValueError("weight k must be at least 2")
    r2m, n = Fraction(r2m), Fraction(n)
    half = l // 2
    return sum((c * n**j * r2m ** (half - j) for j, c in _p_coeffs(k, l)), Fraction(0))


def gegenbauer_p_h(k: int, l: int, h: int, r2m, n) -> Fraction:
    """The auxiliary family ``p_{k,l,h}`` (``h = 0`` gives ``p_{k,l}``)."""
    if l % 2:
        raise ValueError("only even degrees l occur")
    r2m, n = Fraction(r2m), Fraction(n)
    half = l // 2
    total = Fraction(0)
    for j in range(half + 1):
        big = l + k - 2 - j + 2 * h
        c = Fraction((-1) ** j * comb(big, l - 2 * j + 2 * h) * comb(j + k - 2, k - 2), comb(half + k - 2, k - 2))
        c *= Fraction(comb(2 * h, h) * comb(half - j + h, h), comb(half + k - 2 + h, h) * comb(big, h))
        total += c * n**j * r2m ** (half - j)
    return total


def gegenbauer_generating_check(k: int, lmax: int, r: int, n: int) -> bool:
    """Compare ``(1 - rX + nX^2)^(1-k)`` with ``binom(l/2+k-2, k-2) p_{k,l}`` for ``l <= lmax``.

    Odd ``l`` are compared against the closed sum for ``a_{k,l}`` directly.
    """
    base = QSeries({0: 1, 1: -r, 2: n}, order=None)
    expansion = base.power(1 - k, order=lmax + 1)
    for l in range(lmax + 1):
        coeff = expansion.coeff_at(l)
        if coeff != gegenbauer_a(k, l, r, n):
            return False
        if l % 2 == 0 and coeff != comb(l // 2 + k - 2, k - 2) * gegenbauer_p(k, l, r * r, n):
            return False
    return True


# -- coefficient tables ----------------------------------------------------------


class IncompleteTableError(LookupError):
    """A coefficient beyond the computed horizon was requested."""

    def __init__(self, d: int, dmax: int):
        super().__init__(f"coefficient at D={d} is beyond the table horizon {dmax}")
        self.d = d
        self.dmax = dmax


class BootstrapError(RuntimeError):
    pass


def _admissible_residues(m: int) -> frozenset[int]:
    return frozenset((-r * r) % (4 * m) for r in range(2 * m))


@dataclass(frozen=True)
class JacobiCoeffTable:
    """Coefficients ``c(D)`` of a weight-``k`` Jacobi form of index ``m``.

    ``positive`` holds every admissible ``0 < D <= dmax``; inadmissible ``D``
    and singular ``D`` outside ``singular`` are zero.
    """

    index: int
    singular: dict
    positive: dict
    dmax: int
    weight: int = 2
    residues: frozenset = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "residues", _admissible_residues(self.index))

    def admissible(self, d: int) -> bool:
        return d % (4 * self.index) in self.residues

    @property
    def d_floor(self) -> int:
        return min(self.singular, default=0)

    def __call__(self, d: int) -> Fraction:
        if d <= 0:
            return Fraction(self.singular.get(d, 0))
        if d > self.dmax:
            raise IncompleteTableError(d, self.dmax)
        if not self.admissible(d):
            return Fraction(0)
        try:
            return self.positive[d]
        except KeyError:
            raise IncompleteTableError(d, self.dmax) from None

    def to_json(self) -> dict:
        def fmt(x):
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"

        return {
            "index": self.index,
            "weight": self.weight,
            "singular": {str(d): fmt(v) for d, v in sorted(self.singular.items())},
            "positive": {str(d): fmt(v) for d, v in sorted(self.positive.items())},
            "dmax": self.dmax,
        }

    @classmethod
    def from_json(cls, data) -> "JacobiCoeffTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            index=data["index"],
            singular={int(d): Fraction(v) for d, v in data["singular"].items()},
            positive={int(d): Fraction(v) for d, v in data["positive"].items()},
            dmax=data["dmax"],
            weight=data.get("weight", 2),
        )


def _default_range(table: JacobiCoeffTable, mult: int) -> tuple[int, int]:
    # n with mult*n - r^2 >= d_floor for some r, up to mult*n <= dmax
    lo = -((-table.d_floor) // mult)
    return lo, table.dmax // mult


def F_expansion(table: JacobiCoeffTable, nu: int, n_range: tuple[int, int] | None = None) -> QSeries:
    """``F_{phi,nu} = sum_n (sum_r p_{k,2nu}(r/sqrt(m), n) c(4mn - r^2)) q^n`` for ``lo <= n <= hi``."""
    m, k = table.index, table.weight
    lo, hi = n_range if n_range is not None else _default_range(table, 4 * m)
    coeffs = {}
    for n in range(lo, hi + 1):
        top = 4 * m * n - table.d_floor
        if top < 0:
            continue
        total = Fraction(0)
        for r in range(isqrt(top) + 1):
            c = table(4 * m * n - r * r)
            if c:
                term = gegenbauer_p(k, 2 * nu, Fraction(r * r, m), n) * c
                total += term if r == 0 else 2 * term
        coeffs[n] = total
    return QSeries(coeffs, order=hi + 1)


def _is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == ((p, 1),)


def G_expansion(table: JacobiCoeffTable, n_range: tuple[int, int] | None = None) -> QSeries:
    """``G_phi = sum_n (sum_r c*(4n - r^2)) q^n`` with ``c*(N) = (1 + (-N/p)) c(N)``."""
    p = table.index
    if p != 1 and not _is_prime(p):
        raise ValueError(f"G_expansion needs a prime index, got {p}")
    if table.weight % 2:
        raise ValueError("G_expansion needs even weight")
    lo, hi = n_range if n_range is not None else _default_range(table, 4)

    def cstar(N: int) -> Fraction:
        if p == 1:
            return table(N)
        return (1 + kronecker(-N, p)) * table(N)

    coeffs = {}
    for n in range(lo, hi + 1):
        top = 4 * n - table.d_floor
        if top < 0:
            continue
        total = Fraction(0)
        for r in range(isqrt(top) + 1):
            c = cstar(4 * n - r * r)
            total += c if r == 0 else 2 * c
        coeffs[n] = total
    return QSeries(coeffs, order=hi + 1)


def constant_term_from_singular(m: int, singular: dict, nu: int, weight: int = 2) -> Fraction:
    """The ``q^0`` coefficient of ``F_{phi,nu}``, which only involves ``c(-r^2)``."""
    total = Fraction(0)
    for d, v in singular.items():
        if d > 0:
            continue
        r2 = -d
        r = isqrt(r2)
        if r * r != r2:
            continue
        term = gegenbauer_p(weight, 2 * nu, Fraction(r2, m), 0) * Fraction(v)
        total += term if r == 0 else 2 * term
    return total


def _step_rs(m: int) -> list[int]:
    # 4mn - r^2 is new at step n exactly when r^2 < 4m
    return [r for r in range(2 * m + 1) if r * r < 4 * m]


def step_matrix(m: int, nus, n: int, weight: int = 2) -> list[list[Fraction]]:
    """Coefficient matrix of the step-``n`` unknowns ``c(4mn - r^2)``, ``r`` ascending."""
    return [
        [gegenbauer_p(weight, 2 * nu, Fraction(r * r, m), n) * (1 if r == 0 else 2) for r in _step_rs(m)]
        for nu in nus
    ]


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination over Q; None if singular."""
    size = len(mat)
    a = [list(row) + [b] for row, b in zip(mat, rhs)]
    for col in range(size):
        piv = next((i for i in range(col, size) if a[i][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(size):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[-1] for row in a]


def bootstrap(m: int, singular: dict, nus, dmax: int, weight: int = 2) -> JacobiCoeffTable:
    """Coefficients of the weight-2 Jacobi form of index ``m`` with the given singular part.

    For each ``nu`` in ``nus``, ``F_{phi,nu}`` lies in ``M_{2+2nu}``, which
    must be ``{0}`` or spanned by ``E_{2+2nu}``; its constant term fixes the
    multiple.  Step ``n`` then solves a square system for the unknowns
    ``c(4mn - r^2)``, ``r^2 < 4m``.
    """
    if weight != 2:
        raise ValueError("bootstrap only supports weight 2")
    nus = list(nus)
    rs = _step_rs(m)
    if len(nus) != len(rs):
        raise ValueError(f"index {m} needs {len(rs)} values of nu for a square system, got {len(nus)}")
    singular = {int(d): Fraction(v) for d, v in singular.items()}
    if any(d > 0 for d in singular):
        raise ValueError("singular data must sit at D <= 0")
    for d in singular:
        if d % (4 * m) not in _admissible_residues(m) and singular[d]:
            raise ValueError(f"singular entry at inadmissible D={d}")

    nsteps = max(dmax // (4 * m) + (1 if dmax % (4 * m) else 0), 1)
    # the table grows to 4m * nsteps; singular-only view serves the n <= 0 checks
    horizon = 4 * m * nsteps
    consts = []
    for nu in nus:
        wt = weight + 2 * nu
        dim = dim_modular(wt)
        if dim > 1:
            raise ValueError(f"M_{wt} has dimension {dim}; bootstrap needs dimension <= 1")
        c = constant_term_from_singular(m, singular, nu, weight)
        if dim == 0 and c != 0:
            raise BootstrapError(f"constant term {c} in M_{wt} = {{0}}; not holomorphic; bootstrap inapplicable")
        consts.append((wt, dim, c))

    # negative n: only singular coefficients enter
    probe = JacobiCoeffTable(m, singular, {}, 0, weight)
    lo = -((-min(singular, default=0)) // (4 * m))
    if lo < 0:
        for nu in nus:
            neg = F_expansion(probe, nu, (lo, -1))
            if neg.coeffs:
                raise BootstrapError("not holomorphic; bootstrap inapplicable")

    eis = {wt: eisenstein(wt, nsteps + 1) for wt, dim, _ in consts if dim == 1}
    positive: dict[int, Fraction] = {}
    residues = _admissible_residues(m)

    def known(d: int) -> Fraction:
        if d <= 0:
            return singular.get(d, Fraction(0))
        return positive.get(d, Fraction(0))

    for n in range(1, nsteps + 1):
        mat = step_matrix(m, nus, n, weight)
        rhs = []
        for nu, (wt, dim, c) in zip(nus, consts):
            target = c * eis[wt].coeff_at(n) if dim == 1 else Fraction(0)
            top = 4 * m * n - min(singular, default=0)
            acc = Fraction(0)
            for r in range(len(rs), isqrt(top) + 1):
                v = known(4 * m * n - r * r)
                if v:
                    acc += 2 * gegenbauer_p(weight, 2 * nu, Fraction(r * r, m), n) * v
            rhs.append(target - acc)
        sol = _solve(mat, rhs)
        if sol is None:
            raise BootstrapError(f"singular step system at n={n} for nu in {nus}")
        for r, v in zip(rs, sol):
            d = 4 * m * n - r * r
            if d % (4 * m) in residues:
                positive[d] = v
            elif v:
                raise BootstrapError(f"nonzero solution {v} at inadmissible D={d}")
    return JacobiCoeffTable(m, singular, positive, horizon, weight)
