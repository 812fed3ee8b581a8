from fractions import Fraction

import mpmath
import pytest

from singmod.arith import sigma
from singmod.numeric import j_value
from singmod.quadforms import QuadForm, enumerate_classes, root
from singmod.traces import (
    RATIONAL_SINGULAR_MODULI,
    TraceTable,
    numeric_table,
    numeric_trace,
    reconcile,
    round_numeric,
    singular_part_level1,
    singular_part_level_p,
    t1_bootstrap,
    t1_closed_form,
    t2_via_hecke,
    t_level2_bootstrap,
    trace_via_rational_moduli,
)


def test_rational_moduli_registry():
    for d, j0 in RATIONAL_SINGULAR_MODULI.items():
        assert len(enumerate_classes(d)) == 1 or d in (12, 16, 27, 28)
        b = d % 2
        tau = root(QuadForm(1, b, (b * b + d) // 4)).numeric(256)
        with mpmath.workprec(256):
            assert abs(j_value(tau) - j0) < mpmath.mpf(10) ** -40


def test_singular_parts():
    assert singular_part_level1(1) == {0: 2, -1: -1}
    assert singular_part_level1(2) == {0: 6, -1: -1, -4: -2}
    assert singular_part_level1(6) == {0: 2 * sigma(1, 6), -1: -1, -4: -2, -9: -3, -36: -6}
    assert singular_part_level_p({1: 1}, 2) == {0: 2, -1: -1}
    assert singular_part_level_p({1: 0, 2: 1}, 2) == {0: 10, -1: -1, -4: -4}


def test_small_traces_via_faber():
    # class number one: t_m(d) is a polynomial value at a known rational j
    t1 = t1_closed_form(200)
    t2 = t2_via_hecke(t1_closed_form(800), 200)
    for d in (3, 4, 7, 8, 11, 19, 43, 67, 163):
        assert t1(d) == trace_via_rational_moduli(1, d)
        assert t2(d) == trace_via_rational_moduli(2, d)
    assert (t1(3), t1(4), t1(7), t1(8)) == (-248, 492, -4119, 7256)
    assert (t2(3), t2(4)) == (53256, 287244)
    assert trace_via_rational_moduli(1, 15) is None


def test_closed_form_and_bootstrap_agree():
    a, b = t1_closed_form(600), t1_bootstrap(600)
    assert reconcile(a, b).passed


def test_table_lookup():
    t = t1_closed_form(40)
    assert t(5) == 0 and t(-1) == -1 and t(-4) == 0
    with pytest.raises(LookupError):
        t(44)
    assert t.to_json()["entries"]["3"] == "-248/1"
    with pytest.raises(ValueError):
        t2_via_hecke(t, 40)


def test_level2_rows():
    plain, starred = t_level2_bootstrap(2, 8)
    assert [plain(d) for d in (-4, -1, 0, 4, 7, 8)] == [-4, -1, 10, 1036, -8215, 14360]
    assert [starred(d) for d in (-4, -1, 0, 4, 7, 8)] == [-2, -1, 5, 518, -8215, 7180]
    p1, _ = t_level2_bootstrap(1, 12)
    assert [p1(d) for d in (4, 7, 8, 12)] == [-52, -23, 152, -496]
    with pytest.raises(ValueError):
        t_level2_bootstrap(3, 8)


def test_numeric_level1_rounding():
    exact1 = t1_closed_form(200)
    exact2 = t2_via_hecke(t1_closed_form(800), 200)
    ds = [d for d in range(3, 201) if d % 4 in (0, 3)]
    assert reconcile(exact1, numeric_table(1, 1, ds)).passed
    assert reconcile(exact2, numeric_table(1, 2, ds)).passed


def test_numeric_level2_rounding():
    ds = [d for d in range(3, 121) if d % 8 in (0, 4, 7)]
    for m in (1, 2):
        plain, starred = t_level2_bootstrap(m, 120)
        assert reconcile(plain, numeric_table(2, m, ds)).passed
        assert reconcile(starred, numeric_table(2, m, ds, starred=True)).passed


def test_numeric_beyond_exact_tables():
    # t_3 at a class-number-one discriminant against the exact Faber route
    for d in (43, 67):
        value, bound = numeric_trace(1, False, 3, d, 160)
        assert round_numeric(value, bound) == trace_via_rational_moduli(3, d)


def test_round_numeric_guard():
    assert round_numeric(mpmath.mpf(7) + mpmath.mpf(10) ** -9, mpmath.mpf(10) ** -20) == 7
    assert round_numeric(mpmath.mpf("7.1"), mpmath.mpf(10) ** -20) is None
    assert round_numeric(mpmath.mpf(7), mpmath.mpf(1)) is None


def test_reconcile_reports_mismatch():
    a = TraceTable(1, 1, {3: Fraction(-248), 4: Fraction(492)}, 4, "closed-form")
    b = TraceTable(1, 1, {3: Fraction(-248), 4: Fraction(493)}, 4, "bootstrap")
    report = reconcile(a, b)
    assert not report.passed
    assert len(report.failures) == 1
    with pytest.raises(ValueError):
        reconcile(a)


def test_numeric_errors():
    with pytest.raises(ValueError):
        numeric_trace(3, False, 1, 3)
    with pytest.raises(ValueError):
        numeric_trace(1, False, 1, 3, precision_bits=32)
