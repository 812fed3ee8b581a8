"""Traces of singular moduli by several independent routes.

Exact routes: the closed form for the generating Jacobi form of ``t_1``,
the coefficient bootstrap, the Hecke relation for ``t_2`` and Faber
polynomials at rational singular moduli.  The numeric route sums the
Hauptmodul polynomials over Heegner points.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import mpmath

from .arith import divisors, kronecker, omega, sigma
from .forms import build_form, faber_level1, faber_level2_fricke
from .jacobi import JacobiCoeffTable, bootstrap
from .numeric import eval_form, j2star_value
from .quadforms import (
    QuadForm,
    enumerate_classes,
    enumerate_classes_fricke,
    enumerate_classes_gamma0,
    valid_residues,
)
from .report import IdentityReport

__all__ = [
    "TraceTable",
    "singular_part_level1",
    "singular_part_level_p",
    "t1_closed_form",
    "t1_bootstrap",
    "t2_via_hecke",
    "t_level2_bootstrap",
    "RATIONAL_SINGULAR_MODULI",
    "trace_via_rational_moduli",
    "numeric_trace",
    "numeric_table",
    "reconcile",
]

PROVENANCES = ("closed-form", "bootstrap", "hecke-relation", "faber-rational", "numeric")


@dataclass
class TraceTable:
    """``t_m(d)`` (level 1) or ``t^{(2)}_m(d)`` / ``t^{(2*)}_m(d)`` (level 2) for ``d <= dmax``.

    Missing entries at ``d <= 0`` and inadmissible ``d`` are zero.  Numeric
    tables hold mpf values and keep their error bounds in ``bounds``.
    """

    level: int
    m: int
    entries: dict
    dmax: int
    provenance: str
    starred: bool = False
    bounds: dict = field(default_factory=dict)

    def admissible(self, d: int) -> bool:
        if self.level == 1:
            return d % 4 in (0, 3)
        return d % 8 in (0, 4, 7)

    def __call__(self, d: int):
        if d > self.dmax:
            raise LookupError(f"t({d}) is beyond the table horizon {self.dmax}")
        if d <= 0 or not self.admissible(d):
            return self.entries.get(d, Fraction(0))
        try:
            return self.entries[d]
        except KeyError:
            raise LookupError(f"t({d}) missing from a table with horizon {self.dmax}") from None

    get = __call__

    @property
    def name(self) -> str:
        if self.level == 1:
            return f"t_{self.m}"
        return f"t^(2{'*' if self.starred else ''})_{self.m}"

    def items(self):
        return sorted(self.entries.items())

    def to_json(self) -> dict:
        def fmt(v):
            if isinstance(v, (int, Fraction)):
                v = Fraction(v)
                return f"{v.numerator}/{v.denominator}"
            return mpmath.nstr(v, 30)

        out = {
            "level": self.level,
            "m": self.m,
            "starred": self.starred,
            "dmax": self.dmax,
            "provenance": self.provenance,
            "entries": {str(d): fmt(v) for d, v in self.items()},
        }
        if self.bounds:
            out["bounds"] = {str(d): mpmath.nstr(b, 5) for d, b in sorted(self.bounds.items())}
        return out


def singular_part_level1(m: int) -> dict[int, Fraction]:
    """``t_m(0) = 2 sigma_1(m)`` and ``t_m(-k^2) = -k`` for ``k | m``."""
    out = {0: Fraction(2 * sigma(1, m))}
    for k in divisors(m):
        out[-k * k] = Fraction(-k)
    return out


def singular_part_level_p(principal: dict[int, Fraction], p: int) -> dict[int, Fraction]:
    """Singular values for ``f = sum_n a_n q^n`` on the Fricke group of level ``p``.

    ``principal`` maps ``n >= 1`` to ``a_{-n}``.
    """
    out = {}
    t0 = Fraction(0)
    for n, a in principal.items():
        t0 += (sigma(1, n) + (p * sigma(1, n // p) if n % p == 0 else 0)) * Fraction(a)
    out[0] = 2 * t0
    top = max(principal, default=0)
    for k in range(1, top + 1):
        s = sum((Fraction(a) for n, a in principal.items() if n % k == 0), Fraction(0))
        if s:
            out[-k * k] = -(2 ** omega(gcd(p, k))) * k * s
    return out


def _check_singular(table: dict, expected: dict):
    for d in set(table) | set(expected):
        if d <= 0 and table.get(d, 0) != expected.get(d, 0):
            raise AssertionError(f"singular value t({d}) = {table.get(d, 0)} expected {expected.get(d, 0)}")


def t1_closed_form(dmax: int) -> TraceTable:
    """``t_1(d)`` as the ``q^d`` coefficients of ``g_1(tau, 0)``."""
    if dmax < 3:
        raise ValueError("dmax must be at least 3")
    g = build_form("g1", dmax + 1)
    entries = {d: g.coeff_at(d) for d in range(-1, dmax + 1) if d <= 0 or d % 4 in (0, 3)}
    entries = {d: v for d, v in entries.items() if v or d > 0}
    _check_singular(entries, singular_part_level1(1))
    return TraceTable(1, 1, entries, dmax, "closed-form")


def t1_bootstrap(dmax: int) -> TraceTable:
    table = bootstrap(1, singular_part_level1(1), [0, 1], dmax)
    entries = dict(table.singular)
    entries.update({d: v for d, v in table.positive.items() if d <= dmax})
    return TraceTable(1, 1, entries, dmax, "bootstrap")


def t2_via_hecke(t1: TraceTable, dmax: int) -> TraceTable:
    """``t_2(d) = t_1(4d) + (-d/2) t_1(d) + 2 t_1(d/4)``."""
    if t1.level != 1 or t1.m != 1:
        raise ValueError("t2_via_hecke needs the level-1 table of t_1")
    if t1.dmax < 4 * dmax:
        raise ValueError(f"t_1 horizon {t1.dmax} is short of {4 * dmax}")
    entries = {}
    for d in range(-4, dmax + 1):
        if d > 0 and d % 4 not in (0, 3):
            continue
        v = t1(4 * d) + kronecker(-d, 2) * t1(d) + (2 * t1(d // 4) if d % 4 == 0 else 0)
        if v or d > 0:
            entries[d] = Fraction(v)
    return TraceTable(1, 2, entries, dmax, "hecke-relation")


@lru_cache(maxsize=8)
def _level2_jacobi(m: int, dmax: int) -> JacobiCoeffTable:
    principal = {n: Fraction(1) if n == m else Fraction(0) for n in range(1, m + 1)}
    singular = singular_part_level_p(principal, 2)
    return bootstrap(2, singular, [0, 1, 2], dmax)


def t_level2_bootstrap(m: int, dmax: int) -> tuple[TraceTable, TraceTable]:
    """Unstarred and starred level-2 traces of ``j*_{2,m}`` for ``m`` in ``{1, 2}``."""
    if m not in (1, 2):
        raise ValueError("level-2 bootstrap is available for m in {1, 2}")
    table = _level2_jacobi(m, dmax)
    entries = {d: v for d, v in table.singular.items() if v}
    entries.update({d: v for d, v in table.positive.items() if d <= dmax})
    plain = TraceTable(2, m, entries, dmax, "bootstrap")
    starred = {d: v / 2 ** omega(gcd(2, d)) for d, v in entries.items()}
    return plain, TraceTable(2, m, starred, dmax, "bootstrap", starred=True)


# -- exact evaluation at rational singular moduli --------------------------------

# j at the root of the principal form of discriminant -d, for the thirteen
# discriminants of class number one.
RATIONAL_SINGULAR_MODULI = {
    3: 0,
    4: 1728,
    7: -3375,
    8: 8000,
    11: -32768,
    12: 54000,
    16: 287496,
    19: -884736,
    27: -12288000,
    28: 16581375,
    43: -884736000,
    67: -147197952000,
    163: -262537412640768000,
}


def _rational_j(q: QuadForm) -> int | None:
    g = gcd(q.a, gcd(q.b, q.c))
    prim = QuadForm(q.a // g, q.b // g, q.c // g)
    d = -prim.disc
    if d in RATIONAL_SINGULAR_MODULI and prim.a == 1:
        return RATIONAL_SINGULAR_MODULI[d]
    return None


def trace_via_rational_moduli(m: int, d: int) -> Fraction | None:
    """Exact ``t_m(d)`` when every class of discriminant ``-d`` has rational ``j``; else None."""
    total = Fraction(0)
    poly = faber_level1(m, 1)
    for q, w in enumerate_classes(d):
        j0 = _rational_j(q)
        if j0 is None:
            return None
        total += Fraction(poly(Fraction(j0)), w)
    return total


# -- numeric Heegner sums -----------------------------------------------------------


def _level1_order(m: int, precision: int) -> int:
    # coefficients of j_m grow like e^(4 pi sqrt(m n)); |q| <= e^(-pi sqrt 3) on the domain
    target = precision * math.log(2) + 20
    n = 2
    while 4 * math.pi * math.sqrt(m * n) - math.pi * math.sqrt(3) * n > -target:
        n += 1
    return n + 4


def _points(level: int, starred: bool, d: int, p: int = 2):
    if level == 1:
        return enumerate_classes(d)
    if starred:
        return enumerate_classes_fricke(d, p)
    hs = valid_residues(d, p)
    if not hs:
        return enumerate_classes_gamma0(d, p, 0)
    return enumerate_classes_gamma0(d, p, hs[0])


def numeric_trace(level: int, starred: bool, m: int, d: int, precision_bits: int = 128):
    """Heegner-point sum ``sum 1/|Gamma_Q| f(alpha_Q)`` with ``f = j_m`` or ``j*_{2,m}``.

    Returns ``(value, bound)`` as mpf.  ``precision_bits`` is an absolute
    accuracy target; the working precision adds the bit size of the summands.
    """
    if precision_bits < 64:
        raise ValueError("precision must be at least 64 bits")
    if level not in (1, 2):
        raise ValueError("level must be 1 or 2")
    classes = _points(level, starred, d)
    if not len(classes):
        return mpmath.mpf(0), mpmath.mpf(0)
    # |f(alpha)| is about |q|^-m at the least reduced point, Im(alpha) <= sqrt(d)/2
    mag_bits = int(2 * math.pi * m * math.sqrt(d) / 2 / math.log(2)) + 1
    wp = precision_bits + mag_bits + 32
    tol = mpmath.mpf(2) ** (-precision_bits)
    with mpmath.workprec(wp):
        total = mpmath.mpc(0)
        bound = mpmath.mpf(0)
        if level == 1:
            order = _level1_order(m, precision_bits)
            series = faber_level1(m, order).series
            for q, w in classes:
                alpha = mpmath.mpc(mpmath.mpf(-q.b) / (2 * q.a), mpmath.sqrt(d) / (2 * q.a))
                value, b = eval_form(series, alpha)
                if b > tol:
                    raise ArithmeticError(f"truncation too short at d={d}: tail bound {mpmath.nstr(b, 5)}")
                total += value / w
                bound += b / w
        else:
            poly = faber_level2_fricke(m, 2)
            for q, w in classes:
                alpha = mpmath.mpc(mpmath.mpf(-q.b) / (2 * q.a), mpmath.sqrt(d) / (2 * q.a))
                x = j2star_value(alpha)
                value = poly(x)
                total += value / w
                bound += (abs(x) + 1) ** m * mpmath.mpf(2) ** (-(wp - 24)) / w
        if abs(total.imag) > max(bound, tol) * 2 ** 10:
            raise ArithmeticError(f"imaginary part {mpmath.nstr(total.imag, 5)} does not vanish at d={d}")
        return +total.real, bound + tol


def numeric_table(level: int, m: int, ds, starred: bool = False, precision_bits: int = 128) -> TraceTable:
    entries, bounds = {}, {}
    ds = list(ds)
    for d in ds:
        value, bound = numeric_trace(level, starred, m, d, precision_bits)
        entries[d] = value
        bounds[d] = bound
    return TraceTable(level, m, entries, max(ds, default=0), "numeric", starred, bounds)


def round_numeric(value, bound, guard: float = 1e-6) -> int | None:
    """Nearest integer if ``value`` is within ``guard`` of it and the bound is below ``guard``."""
    with mpmath.workprec(_bits(value) + 128):
        nearest = int(mpmath.nint(value))
        if abs(value - nearest) < guard and bound < guard:
            return nearest
    return None


def _bits(value) -> int:
    return max(int(mpmath.log(abs(value) + 1, 2)), 0) + 1


def reconcile(*tables: TraceTable, ds=None, guard: float = 1e-6, factors=None) -> IdentityReport:
    """Compare overlapping entries of tables describing the same traces.

    ``factors`` optionally maps table index to a function ``d -> scale`` used
    before comparing (e.g. the starred/unstarred conversion).
    """
    start = time.perf_counter()
    if len(tables) < 2:
        raise ValueError("reconcile needs at least two tables")
    names = [f"{t.name}[{t.provenance}]" for t in tables]
    report = IdentityReport("reconcile", {"tables": names}, tolerance=guard)
    base = tables[0]
    common = set(range(-16, base.dmax + 1))
    for t in tables[1:]:
        common &= set(range(-16, t.dmax + 1))
    if ds is not None:
        common &= set(ds)
    for d in sorted(common):
        values = []
        for i, t in enumerate(tables):
            if t.provenance == "numeric" and d not in t.entries:
                continue
            v = t(d)
            if factors and i in factors:
                v = v * factors[i](d)
            values.append((t, v))
        exact = [(t, v) for t, v in values if t.provenance != "numeric"]
        numeric = [(t, v) for t, v in values if t.provenance == "numeric"]
        ref = exact[0][1] if exact else None
        for t, v in exact[1:]:
            report.add((t.level, t.m, d), Fraction(v) - ref)
        for t, v in numeric:
            rounded = round_numeric(v, t.bounds.get(d, 0), guard)
            if ref is None:
                report.add((t.level, t.m, d), 0 if rounded is not None else float("inf"), ok=rounded is not None)
                continue
            with mpmath.workprec(_bits(v) + 128):
                resid = float(v - mpmath.mpf(ref.numerator) / ref.denominator)
            report.add((t.level, t.m, d), resid, ok=rounded is not None and rounded == ref)
    report.runtime = time.perf_counter() - start
    return report
