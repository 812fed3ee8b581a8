"""Positive definite binary quadratic forms and their classes.

Level-1 classes come from Gauss reduction.  Classes for Gamma_0(p) are read
off the SL_2(Z) classes: if ``R`` is reduced with stabiliser ``G_R``, the
Gamma_0(p)-classes inside the SL_2(Z)-class of ``R`` correspond to the
``G_R``-orbits on the ``p + 1`` cosets ``SL_2(Z)/Gamma_0(p)`` (points of
P^1(F_p)), and the Gamma_0(p)-stabiliser of ``R o gamma`` is the
stabiliser of its coset in ``G_R``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .arith import omega

__all__ = [
    "Matrix",
    "QuadForm",
    "HeegnerPoint",
    "ClassList",
    "reduce",
    "reduce_with_matrix",
    "enumerate_classes",
    "hurwitz_H",
    "fricke_act",
    "valid_residues",
    "enumerate_classes_gamma0",
    "enumerate_classes_fricke",
    "gamma0_class_key",
    "root",
]

Matrix = tuple[int, int, int, int]  # (A, B, C, D) for [[A, B], [C, D]]

IDENTITY: Matrix = (1, 0, 0, 1)
S_MATRIX: Matrix = (0, -1, 1, 0)
U_MATRIX: Matrix = (0, -1, 1, 1)  # order 3 in PSL_2(Z), fixes [a, a, a]


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_inv(x: Matrix) -> Matrix:
    a, b, c, d = x
    return (d, -b, -c, a)


@dataclass(frozen=True, order=True)
class QuadForm:
    """``a x^2 + b x y + c y^2``."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, g: Matrix) -> "QuadForm":
        """``(Q o g)(x, y) = Q(Ax + By, Cx + Dy)``."""
        A, B, C, D = g
        a, b, c = self.a, self.b, self.c
        return QuadForm(
            a * A * A + b * A * C + c * C * C,
            2 * a * A * B + b * (A * D + B * C) + 2 * c * C * D,
            a * B * B + b * B * D + c * D * D,
        )

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c]

    def __str__(self):
        return f"[{self.a},{self.b},{self.c}]"


def reduce_with_matrix(q: QuadForm) -> tuple[QuadForm, Matrix]:
    """Reduced form ``R`` and ``g`` in SL_2(Z) with ``q o g = R``."""
    if not q.is_positive_definite():
        raise ValueError(f"{q} is not positive definite")
    g = IDENTITY
    while True:
        a, b = q.a, q.b
        # bring b into (-a, a]
        k = (a - b) // (2 * a)
        if k:
            t = (1, k, 0, 1)
            q = q.act(t)
            g = mat_mul(g, t)
        if q.a > q.c:
            q = q.act(S_MATRIX)
            g = mat_mul(g, S_MATRIX)
            continue
        break
    if q.a == q.c and q.b < 0:
        q = q.act(S_MATRIX)
        g = mat_mul(g, S_MATRIX)
    return q, g


def reduce(q: QuadForm) -> QuadForm:
    return reduce_with_matrix(q)[0]


def _stabilizer_order(q: QuadForm) -> int:
    """Order of the PSL_2(Z)-stabiliser of a reduced form."""
    if q.a == q.b == q.c:
        return 3
    if q.b == 0 and q.a == q.c:
        return 2
    return 1


def _stabilizer_generator(q: QuadForm) -> Matrix | None:
    if q.a == q.b == q.c:
        return U_MATRIX
    if q.b == 0 and q.a == q.c:
        return S_MATRIX
    return None


@dataclass(frozen=True)
class HeegnerPoint:
    """The root ``(-b + i sqrt(d)) / (2a)`` of ``Q(tau, 1) = 0`` in the upper half-plane."""

    form: QuadForm

    @property
    def d(self) -> int:
        return -self.form.disc

    @property
    def real(self) -> Fraction:
        return Fraction(-self.form.b, 2 * self.form.a)

    @property
    def imag_squared(self) -> Fraction:
        return Fraction(self.d, 4 * self.form.a**2)

    def numeric(self, prec: int = 128):
        import mpmath

        with mpmath.workprec(prec):
            return mpmath.mpc(
                mpmath.mpf(-self.form.b) / (2 * self.form.a),
                mpmath.sqrt(self.d) / (2 * self.form.a),
            )

    def __str__(self):
        return f"({-self.form.b} + i*sqrt({self.d}))/{2 * self.form.a}"


def root(q: QuadForm) -> HeegnerPoint:
    if not q.is_positive_definite():
        raise ValueError(f"{q} is not positive definite")
    return HeegnerPoint(q)


@dataclass(frozen=True)
class ClassList:
    """Class representatives of discriminant ``-d`` with stabiliser orders.

    ``level`` is ``"level1"``, ``"gamma0"`` or ``"fricke"``; ``weights`` are
    the ``1/|stabiliser|`` factors used in traces.
    """

    d: int
    level: str
    reps: tuple[QuadForm, ...]
    stabs: tuple[int, ...]
    p: int | None = None
    h: int | None = None
    weights: tuple[Fraction, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(1, s) for s in self.stabs))

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(zip(self.reps, self.stabs))

    def weighted_count(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "level": self.level,
            "reps": [r.as_list() for r in self.reps],
            "stab": list(self.stabs),
        }
        if self.p is not None:
            out["p"] = self.p
        if self.h is not None:
            out["h"] = self.h
        return out


def _check_disc(d: int):
    if d <= 0 or d % 4 not in (0, 3):
        raise ValueError(f"-{d} is not a negative discriminant")


def enumerate_classes(d: int) -> ClassList:
    """All reduced forms of discriminant ``-d`` (primitive or not)."""
    _check_disc(d)
    reps = []
    a = 1
    while 3 * a * a <= d:
        for b in range(-a + 1, a + 1):
            num = b * b + d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            reps.append(QuadForm(a, b, c))
        a += 1
    return ClassList(d, "level1", tuple(reps), tuple(_stabilizer_order(r) for r in reps))


def hurwitz_H(d: int) -> Fraction:
    """Kronecker-Hurwitz class number; ``H(0) = -1/12`` and 0 off the discriminants."""
    if d == 0:
        return Fraction(-1, 12)
    if d < 0 or d % 4 in (1, 2):
        return Fraction(0)
    return enumerate_classes(d).weighted_count()


def fricke_act(q: QuadForm, p: int) -> QuadForm:
    """``[a, b, c] o W_p = [p c, -b, a / p]``."""
    if q.a % p:
        raise ValueError(f"{p} does not divide a in {q}")
    return QuadForm(p * q.c, -q.b, q.a // p)


def valid_residues(d: int, p: int) -> list[int]:
    """Residues ``h mod 2p`` with ``h^2 = -d (mod 4p)``."""
    return [h for h in range(2 * p) if (h * h + d) % (4 * p) == 0]


def _coset_label(col: tuple[int, int], p: int) -> int:
    """Point of P^1(F_p) of a primitive column: ``A/C mod p``, or ``p`` for infinity."""
    A, C = col[0] % p, col[1] % p
    if C == 0:
        return p
    return A * pow(C, -1, p) % p


def _coset_rep(label: int, p: int) -> Matrix:
    if label == p:
        return IDENTITY
    # first column (label, 1)
    return (label, -1, 1, 0)


def _label_orbit(label: int, gen: Matrix | None, p: int) -> frozenset[int]:
    if gen is None:
        return frozenset([label])
    orbit = {label}
    g = _coset_rep(label, p)
    col = (g[0], g[2])
    for _ in range(3):
        col = (gen[0] * col[0] + gen[1] * col[1], gen[2] * col[0] + gen[3] * col[1])
        orbit.add(_coset_label(col, p))
    return frozenset(orbit)


def gamma0_class_key(q: QuadForm, p: int) -> tuple[QuadForm, int]:
    """Canonical key of the Gamma_0(p)-class of ``q`` (with ``p | a``)."""
    r, g = reduce_with_matrix(q)
    ginv = mat_inv(g)  # q = r o ginv
    label = _coset_label((ginv[0], ginv[2]), p)
    return r, min(_label_orbit(label, _stabilizer_generator(r), p))


def enumerate_classes_gamma0(d: int, p: int, h: int) -> ClassList:
    """Representatives of ``Q_{d,p,h} / Gamma_0(p)`` and their stabiliser orders."""
    _check_disc(d)
    if (h * h + d) % (4 * p):
        return ClassList(d, "gamma0", (), (), p=p, h=h % (2 * p))
    reps, stabs = [], []
    for r, w in enumerate_classes(d):
        gen = _stabilizer_generator(r)
        seen: set[int] = set()
        for label in range(p + 1):
            if label in seen:
                continue
            orbit = _label_orbit(label, gen, p)
            seen |= orbit
            q = r.act(_coset_rep(min(orbit), p))
            if q.a % p or (q.b - h) % (2 * p):
                continue
            reps.append(q)
            stabs.append(w // len(orbit))
    return ClassList(d, "gamma0", tuple(reps), tuple(stabs), p=p, h=h % (2 * p))


def enumerate_classes_fricke(d: int, p: int) -> ClassList:
    """Representatives of ``Q_{d,p} / Gamma_0^*(p)`` with stabiliser orders in Gamma_0^*(p)/{+-1}."""
    _check_disc(d)
    hs = valid_residues(d, p)
    if not hs:
        return ClassList(d, "fricke", (), (), p=p)
    h = hs[0]
    base = enumerate_classes_gamma0(d, p, h)
    if d % p:
        # W_p swaps h and -h; each Gamma_0^*(p)-class meets Q_{d,p,h} in one class
        return ClassList(d, "fricke", base.reps, base.stabs, p=p, h=h)
    keys = [gamma0_class_key(q, p) for q in base.reps]
    index = {k: i for i, k in enumerate(keys)}
    reps, stabs, used = [], [], set()
    for i, q in enumerate(base.reps):
        if i in used:
            continue
        j = index[gamma0_class_key(fricke_act(q, p), p)]
        used |= {i, j}
        reps.append(q)
        stabs.append(2 * base.stabs[i] if j == i else base.stabs[i])
    return ClassList(d, "fricke", tuple(reps), tuple(stabs), p=p, h=h)


def lemma_factor(d: int, p: int) -> int:
    """``2^omega(gcd(p, d))``: ratio of the Gamma_0(p) trace to the Fricke trace."""
    return 2 ** omega(gcd(p, d))
