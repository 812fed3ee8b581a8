"""Truncated power series in q^(1/D) with exact rational coefficients.

A :class:`QSeries` stores a sparse map ``e -> c`` meaning ``c * q^(e/D)``.
Coefficients at exponents ``>= order`` are unknown; ``order is None`` marks
an exact (finite) series.  Truncation is tracked pessimistically, so no
operation ever reports a coefficient it cannot vouch for.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int

__all__ = [
    "QSeries",
    "series_mul",
    "series_inv",
    "q_derivative",
    "rescale",
    "coeff_at",
    "euler_product",
]

# Dense products switch to Kronecker substitution above this many terms.
_DENSE_CUTOFF = 24


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class QSeries:
    """Immutable truncated series ``sum c_e q^(e/scale) + O(q^(order/scale))``."""

    __slots__ = ("scale", "coeffs", "order", "floor")

    def __init__(
        self,
        coeffs: Mapping[int, object] | None = None,
        order: int | None = None,
        scale: int = 1,
        floor: int | None = None,
    ):
        if scale <= 0:
            raise ValueError("scale must be positive")
        clean = {}
        for e, c in (coeffs or {}).items():
            e = int(e)
            if order is not None and e >= order:
                continue
            c = _frac(c)
            if c:
                clean[e] = c
        if clean:
            low = min(clean)
            if floor is not None and low < floor:
                raise ValueError("coefficient below declared floor")
            floor = low
        elif order is not None:
            floor = order
        else:
            floor = 0 if floor is None else floor
        # canonical scale: divide out the common factor of every exponent
        g = scale
        for e in clean:
            g = gcd(g, e)
        g = gcd(g, floor)
        if order is not None:
            g = gcd(g, order)
        if g > 1:
            clean = {e // g: c for e, c in clean.items()}
            scale //= g
            floor //= g
            order = None if order is None else order // g
        self.scale = scale
        self.coeffs = dict(sorted(clean.items()))
        self.order = order
        self.floor = floor

    # -- construction ------------------------------------------------------

    @classmethod
    def from_list(cls, values: Iterable, start: int = 0, order: int | None = None, scale: int = 1) -> "QSeries":
        """Coefficients ``values[i]`` at exponent ``start + i`` (in units 1/scale).

        When ``order`` is omitted the series is known exactly up to the end
        of ``values`` and unknown afterwards.
        """
        values = list(values)
        if order is None:
            order = start + len(values)
        return cls({start + i: v for i, v in enumerate(values)}, order=order, scale=scale)

    @classmethod
    def monomial(cls, exponent, coeff=1) -> "QSeries":
        """Exact series ``coeff * q^exponent`` for rational ``exponent``."""
        exponent = _frac(exponent)
        return cls({exponent.numerator: coeff}, order=None, scale=exponent.denominator)

    @classmethod
    def constant(cls, c) -> "QSeries":
        return cls({0: c}, order=None)

    @classmethod
    def zero(cls, order: int | None = None) -> "QSeries":
        return cls({}, order=order)

    # -- basic properties --------------------------------------------------

    @property
    def prec(self) -> Fraction | None:
        """Truncation point as a q-exponent (``None`` when exact)."""
        return None if self.order is None else Fraction(self.order, self.scale)

    @property
    def valuation(self) -> Fraction | None:
        """Exponent of the lowest nonzero term, ``None`` for a (known) zero."""
        if not self.coeffs:
            return None
        return Fraction(self.floor, self.scale)

    def is_exact(self) -> bool:
        return self.order is None

    def is_zero(self) -> bool:
        """True when every tracked coefficient vanishes."""
        return not self.coeffs

    def terms(self):
        """Iterate ``(exponent, coefficient)`` pairs with rational exponents."""
        for e, c in self.coeffs.items():
            yield Fraction(e, self.scale), c

    def with_scale(self, scale: int) -> tuple[dict[int, Fraction], int | None, int]:
        """Coefficient map, order and floor expressed over ``scale`` (a multiple of self.scale)."""
        if scale % self.scale:
            raise ValueError(f"scale {scale} is not a multiple of {self.scale}")
        f = scale // self.scale
        if f == 1:
            return self.coeffs, self.order, self.floor
        order = None if self.order is None else self.order * f
        return {e * f: c for e, c in self.coeffs.items()}, order, self.floor * f

    def coeff_at(self, e) -> Fraction:
        """Exact coefficient of ``q^e``; raises beyond the truncation point."""
        e = _frac(e)
        num = e * self.scale
        if self.order is not None and num >= self.order:
            raise ValueError(f"coefficient of q^{e} is beyond truncation (order {self.prec})")
        if num.denominator != 1:
            return Fraction(0)
        return self.coeffs.get(num.numerator, Fraction(0))

    __getitem__ = coeff_at

    def coefficients(self, start: int, stop: int) -> list[Fraction]:
        """Coefficients of ``q^n`` for integers ``start <= n < stop``."""
        return [self.coeff_at(n) for n in range(start, stop)]

    def truncate(self, prec) -> "QSeries":
        """Drop everything at q-exponents ``>= prec``."""
        prec = _frac(prec)
        scale = lcm(self.scale, prec.denominator)
        coeffs, order, _ = self.with_scale(scale)
        new_order = int(prec * scale)
        order = new_order if order is None else min(order, new_order)
        return QSeries(coeffs, order=order, scale=scale)

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            try:
                other = QSeries.constant(_frac(other))
            except TypeError:
                return NotImplemented
        return (
            self.scale == other.scale
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.scale, self.order, tuple(self.coeffs.items())))

    def agrees_with(self, other: "QSeries") -> bool:
        """Equality of all coefficients both series know."""
        diff = self - other
        return diff.is_zero()

    def __repr__(self):
        parts = []
        shown = list(self.coeffs.items())[:8]
        for e, c in shown:
            x = Fraction(e, self.scale)
            if x == 0:
                mono = ""
            elif x == 1:
                mono = "q"
            else:
                mono = f"q^{x}" if x.denominator == 1 else f"q^({x})"
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if len(self.coeffs) > len(shown):
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        if self.order is not None:
            body += f" + O(q^{self.prec})"
        return body.replace("+ -", "- ")

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "QSeries":
        if isinstance(x, QSeries):
            return x
        return QSeries.constant(_frac(x))

    def _aligned(self, other: "QSeries"):
        scale = lcm(self.scale, other.scale)
        return scale, self.with_scale(scale), other.with_scale(scale)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        scale, (ac, ao, _), (bc, bo, _) = self._aligned(other)
        order = _min_order(ao, bo)
        out = dict(ac)
        for e, c in bc.items():
            out[e] = out.get(e, 0) + c
        return QSeries(out, order=order, scale=scale)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.coeffs.items()}, order=self.order, scale=self.scale)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scalar_mul(self, c) -> "QSeries":
        c = _frac(c)
        return QSeries({e: c * v for e, v in self.coeffs.items()}, order=self.order, scale=self.scale)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, other)
        try:
            return self.scalar_mul(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return series_mul(self, series_inv(other))
        return self.scalar_mul(1 / _frac(other))

    def __pow__(self, n):
        if not isinstance(n, int):
            return self.power(n)
        if n < 0:
            return self.power(n)
        result = QSeries.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k) -> "QSeries":
        """Multiply by ``q^k`` for rational ``k``."""
        return self * QSeries.monomial(k)

    # -- analytic-style operations -----------------------------------------

    def derivative(self) -> "QSeries":
        """``q d/dq``: the coefficient of ``q^x`` picks up a factor ``x``."""
        return QSeries(
            {e: c * Fraction(e, self.scale) for e, c in self.coeffs.items()},
            order=self.order,
            scale=self.scale,
        )

    def rescale(self, t) -> "QSeries":
        """Substitute ``q -> q^t`` for a positive rational ``t``."""
        t = _frac(t)
        if t <= 0:
            raise ValueError("rescale factor must be positive")
        scale = self.scale * t.denominator
        coeffs = {e * t.numerator: c for e, c in self.coeffs.items()}
        order = None if self.order is None else self.order * t.numerator
        return QSeries(coeffs, order=order, scale=scale)

    def inverse(self, order=None) -> "QSeries":
        """Multiplicative inverse; ``order`` (a q-exponent) caps the precision."""
        return series_inv(self, order)

    def power(self, alpha, order=None) -> "QSeries":
        """``self ** alpha`` for rational ``alpha``.

        Uses the J.C.P. Miller recurrence on the normalised series
        ``1 + u_1 q + ...``; cost is proportional to (output length) times
        (number of nonzero terms of the input), which makes eta products cheap.
        Non-integral powers require leading coefficient 1.
        """
        alpha = _frac(alpha)
        if not self.coeffs:
            raise ValueError("non-invertible series")
        lead_e = self.floor
        lead_c = self.coeffs[lead_e]
        if alpha.denominator != 1 and lead_c != 1:
            raise ValueError("fractional power needs leading coefficient 1")
        # output exponent lead_e*alpha must be integral in the output scale
        scale = self.scale * alpha.denominator
        f = alpha.denominator
        rel = None if self.order is None else (self.order - lead_e) * f
        if order is not None:
            cap = _frac(order) * scale - lead_e * f * alpha
            if cap.denominator != 1:
                scale_fix = cap.denominator
                scale *= scale_fix
                f *= scale_fix
                cap *= scale_fix
                rel = None if rel is None else rel * scale_fix
            cap = int(cap)
            rel = cap if rel is None else min(rel, cap)
        if rel is None:
            raise ValueError("an order is required to invert or raise an exact series")
        if rel <= 0:
            return QSeries({}, order=int(lead_e * f * alpha) + max(rel, 0), scale=scale)
        u = {}
        for e, c in self.coeffs.items():
            k = (e - lead_e) * f
            if 0 < k < rel:
                u[k] = c / lead_c
        w = _miller_power(u, alpha, rel)
        start = lead_e * f * alpha
        assert start.denominator == 1
        start = int(start)
        lead = lead_c ** alpha if alpha.denominator == 1 else Fraction(1)
        coeffs = {start + n: lead * c for n, c in enumerate(w) if c}
        return QSeries(coeffs, order=start + rel, scale=scale)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "scale": self.scale,
            "floor": self.floor,
            "order": self.order,
            "coeffs": [[e, f"{c.numerator}/{c.denominator}"] for e, c in self.coeffs.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        coeffs = {int(e): Fraction(c) for e, c in data["coeffs"]}
        return cls(coeffs, order=data["order"], scale=int(data["scale"]), floor=data.get("floor"))


def _miller_power(u: Mapping[int, Fraction], alpha: Fraction, n_terms: int) -> list:
    """Coefficients w_0..w_{n_terms-1} of (1 + sum u_k q^k)^alpha."""
    w = [0] * n_terms
    w[0] = 1
    items = sorted(u.items())
    integral = alpha.denominator == 1 and all(c.denominator == 1 for c in u.values())
    if integral:
        a1 = int(alpha) + 1
        items = [(k, int(c)) for k, c in items]
        for n in range(1, n_terms):
            s = 0
            for k, c in items:
                if k > n:
                    break
                wk = w[n - k]
                if wk:
                    s += (a1 * k - n) * c * wk
            q, r = divmod(s, n)
            assert r == 0
            w[n] = q
        return [Fraction(x) for x in w]
    a1 = alpha + 1
    w[0] = Fraction(1)
    for n in range(1, n_terms):
        s = Fraction(0)
        for k, c in items:
            if k > n:
                break
            wk = w[n - k]
            if wk:
                s += (a1 * k - n) * c * wk
        w[n] = s / n
    return w


def _int_vector(coeffs: Mapping[int, Fraction], lo: int, hi: int) -> tuple[list[int], int]:
    den = 1
    for c in coeffs.values():
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    vec = [0] * (hi - lo)
    for e, c in coeffs.items():
        if lo <= e < hi:
            vec[e - lo] = c.numerator * (den // c.denominator)
    return vec, den


def _pack(vec: list[int], nbytes: int) -> int:
    pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in vec)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in vec)
    return _bigint(int.from_bytes(pos, "little")) - _bigint(int.from_bytes(neg, "little"))


def _kronecker_mul(a: list[int], b: list[int]) -> list[int]:
    """Exact integer convolution via a single big-integer product."""
    n = len(a) + len(b) - 1
    bound = max(abs(x) for x in a).bit_length() + max(abs(x) for x in b).bit_length()
    bits = bound + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = int(_pack(a, nbytes) * _pack(b, nbytes))
    # shift every slot to a non-negative digit, then read digits back off
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    raw = (prod + offset).to_bytes(nbytes * n, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(n)
    ]


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Exact product with order ``min(a.order + b.floor, b.order + a.floor)``."""
    scale, (ac, ao, af), (bc, bo, bf) = a._aligned(b)
    order = _min_order(None if ao is None else ao + bf, None if bo is None else bo + af)
    if not ac or not bc:
        return QSeries({}, order=order, scale=scale)
    # inputs beyond these cut-offs cannot affect any tracked coefficient
    a_hi = None if order is None else order - bf
    b_hi = None if order is None else order - af
    at = {e: c for e, c in ac.items() if a_hi is None or e < a_hi}
    bt = {e: c for e, c in bc.items() if b_hi is None or e < b_hi}
    if not at or not bt:
        return QSeries({}, order=order, scale=scale)
    a_lo, a_top = min(at), max(at) + 1
    b_lo, b_top = min(bt), max(bt) + 1
    dense = (
        len(at) > _DENSE_CUTOFF
        and len(bt) > _DENSE_CUTOFF
        and 4 * len(at) > a_top - a_lo
        and 4 * len(bt) > b_top - b_lo
    )
    out: dict[int, object] = {}
    if dense:
        va, da = _int_vector(at, a_lo, a_top)
        vb, db = _int_vector(bt, b_lo, b_top)
        prod = _kronecker_mul(va, vb)
        den = da * db
        base = a_lo + b_lo
        for i, v in enumerate(prod):
            if v:
                out[base + i] = Fraction(v, den)
    else:
        # sparse: scale to integers so the inner loop avoids Fraction overhead
        va, da = _int_vector(at, a_lo, a_top)
        vb, db = _int_vector(bt, b_lo, b_top)
        sa = [(i + a_lo, x) for i, x in enumerate(va) if x]
        sb = [(i + b_lo, x) for i, x in enumerate(vb) if x]
        acc: dict[int, int] = {}
        for ea, xa in sa:
            lim = None if order is None else order - ea
            for eb, xb in sb:
                if lim is not None and eb >= lim:
                    break
                e = ea + eb
                acc[e] = acc.get(e, 0) + xa * xb
        den = da * db
        out = {e: Fraction(v, den) for e, v in acc.items() if v}
    return QSeries(out, order=order, scale=scale)


def series_inv(a: QSeries, order=None) -> QSeries:
    """Inverse with ``b.floor = -a.floor``; ``order`` is a q-exponent cap."""
    if not a.coeffs:
        raise ValueError("non-invertible series")
    return a.power(-1, order=order)


def q_derivative(a: QSeries) -> QSeries:
    return a.derivative()


def rescale(a: QSeries, t) -> QSeries:
    return a.rescale(t)


def coeff_at(a: QSeries, e) -> Fraction:
    return a.coeff_at(e)


def euler_product(order: int) -> QSeries:
    """``prod_{n>=1} (1 - q^n)`` to ``O(q^order)`` by the pentagonal number theorem."""
    coeffs = {0: 1}
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 >= order:
            break
        sign = -1 if k % 2 else 1
        coeffs[g1] = sign
        g2 = k * (3 * k + 1) // 2
        if g2 < order:
            coeffs[g2] = sign
        k += 1
    return QSeries(coeffs, order=order)
