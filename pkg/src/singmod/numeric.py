"""High-precision evaluation at points of the upper half-plane.

All functions work at the ambient mpmath precision unless a ``prec``
argument is given; callers wanting a fixed accuracy use ``mpmath.workprec``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .quadforms import IDENTITY, Matrix, mat_mul
from .series import QSeries

__all__ = [
    "ReductionResult",
    "reduce_to_fundamental",
    "eval_form",
    "TailBoundError",
    "delta_value",
    "j_value",
    "j2star_value",
    "asymptotic_ratio_j",
    "laplace_check",
    "asymptotic_trace_ratio",
]


@dataclass(frozen=True)
class ReductionResult:
    """``tau = gamma . tau_in`` with ``tau`` in the standard fundamental domain."""

    tau: object  # mpc
    matrix: Matrix
    word: tuple[str, ...]


def reduce_to_fundamental(tau) -> ReductionResult:
    """Move ``tau`` into ``|Re| <= 1/2, |tau| >= 1`` by translations and ``S``."""
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    g = IDENTITY
    word: list[str] = []
    # tolerance keeps boundary points from bouncing between the two edges
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec + 8)
    for _ in range(10_000):
        n = int(mpmath.floor(tau.real + mpmath.mpf(1) / 2))
        if n:
            tau -= n
            g = mat_mul((1, -n, 0, 1), g)
            word.append(f"T^{-n}")
        if abs(tau) < 1 - eps:
            tau = -1 / tau
            g = mat_mul((0, -1, 1, 0), g)
            word.append("S")
        else:
            break
    else:  # pragma: no cover
        raise RuntimeError("reduction did not terminate")
    return ReductionResult(tau, g, tuple(word))


class TailBoundError(ArithmeticError):
    pass


def eval_form(series: QSeries, tau, terms: int | None = None, tol=None):
    """Partial sum of ``series`` at ``tau`` and a heuristic tail bound.

    The bound is twice the absolute value of the last kept nonzero term.
    Raises ``TailBoundError`` if it exceeds ``tol``.
    """
    tau = mpmath.mpc(tau)
    items = sorted(series.coeffs.items())
    if terms is not None:
        items = items[:terms]
    base = mpmath.exp(2j * mpmath.pi * tau / series.scale)
    total = mpmath.mpc(0)
    last = mpmath.mpf(0)
    for e, c in items:
        term = mpmath.mpf(c.numerator) / c.denominator * mpmath.power(base, e)
        total += term
        last = abs(term)
    bound = 2 * last
    if tol is not None and bound > tol:
        raise TailBoundError(f"tail bound {mpmath.nstr(bound, 5)} exceeds tolerance {tol}")
    return total, bound


def _euler_product_value(q):
    """``prod (1 - q^n)`` via the pentagonal number series."""
    total = mpmath.mpc(1)
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec - 4)
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        g1 = k * (3 * k - 1) // 2
        t1 = mpmath.power(q, g1)
        t2 = t1 * mpmath.power(q, k)
        total += sign * (t1 + t2)
        if abs(t1) < eps:
            return total
        k += 1


def delta_value(tau):
    """``Delta(tau)`` via reduction and ``Delta(g tau) = (c tau + d)^12 Delta(tau)``."""
    tau = mpmath.mpc(tau)
    red = reduce_to_fundamental(tau)
    c, d = red.matrix[2], red.matrix[3]
    q = mpmath.exp(2j * mpmath.pi * red.tau)
    value = q * _euler_product_value(q) ** 24
    return value / (c * tau + d) ** 12


def j_value(tau):
    """``j(tau) = E_4^3 / Delta`` at the reduced point, by closed forms."""
    red = reduce_to_fundamental(tau)
    q = mpmath.exp(2j * mpmath.pi * red.tau)
    e4 = 1 + 240 * mpmath.nsum(lambda n: n**3 * q**n / (1 - q**n), [1, mpmath.inf])
    return e4**3 / (q * _euler_product_value(q) ** 24)


def j2star_value(tau):
    """``Delta(tau)/Delta(2tau) + 24 + 4096 Delta(2tau)/Delta(tau)``."""
    tau = mpmath.mpc(tau)
    ratio = delta_value(tau) / delta_value(2 * tau)
    return ratio + 24 + 4096 / ratio


# -- asymptotics ----------------------------------------------------------------


def asymptotic_ratio_j(n: int, coeff=None) -> float:
    """``Coeff_{q^n}(j) sqrt(2) n^(3/4) e^(-4 pi sqrt(n))``."""
    if coeff is None:
        from .forms import build_form

        coeff = build_form("j", n + 1).coeff_at(n)
    coeff = Fraction(coeff)
    with mpmath.workprec(256):
        c = mpmath.mpf(coeff.numerator) / coeff.denominator
        r = c * mpmath.sqrt(2) * mpmath.mpf(n) ** mpmath.mpf(0.75) * mpmath.exp(-4 * mpmath.pi * mpmath.sqrt(n))
        return float(r)


def laplace_check(lam) -> tuple[float, float]:
    """Quadrature of ``int_{-1}^{1} e^(lam f(t)) dt`` with ``f(t) = 4 pi sqrt(1 - t^2)`` vs Laplace's formula.

    Both are returned divided by ``e^(lam f(0))``, so the pair stays in
    floating-point range.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive")
    with mpmath.workprec(128):
        lam = mpmath.mpf(lam)
        four_pi = 4 * mpmath.pi

        # t = sin(theta) removes the endpoint square roots
        def integrand(theta):
            return mpmath.exp(lam * four_pi * (mpmath.cos(theta) - 1)) * mpmath.cos(theta)

        width = 1 / mpmath.sqrt(lam)
        pts = [-mpmath.pi / 2, -8 * width, 0, 8 * width, mpmath.pi / 2]
        pts = sorted(set(p for p in pts if abs(p) <= mpmath.pi / 2))
        quad, err = mpmath.quad(integrand, pts, error=True)
        if err > mpmath.mpf(10) ** -20 * abs(quad):
            raise ArithmeticError(f"quadrature did not converge (error estimate {err})")
        # |f''(0)| = 4 pi
        closed = mpmath.sqrt(2 * mpmath.pi / (lam * four_pi))
        return float(quad), float(closed)


def asymptotic_trace_ratio(d: int, value) -> float:
    """``t_2(d) e^(-2 pi sqrt(d))`` for an exact trace value."""
    value = Fraction(value)
    with mpmath.workprec(256):
        v = mpmath.mpf(value.numerator) / value.denominator
        return float(v * mpmath.exp(-2 * mpmath.pi * mpmath.sqrt(d)))
