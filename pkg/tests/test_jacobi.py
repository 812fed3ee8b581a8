from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singmod.forms import build_form, eisenstein
from singmod.jacobi import (
    BootstrapError,
    IncompleteTableError,
    JacobiCoeffTable,
    F_expansion,
    G_expansion,
    bootstrap,
    constant_term_from_singular,
    gegenbauer_a,
    gegenbauer_generating_check,
    gegenbauer_p,
    gegenbauer_p_h,
    s_term,
    step_matrix,
)
from singmod.traces import singular_part_level1, singular_part_level_p, t1_closed_form

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def det(mat):
    mat = [list(r) for r in mat]
    size, out = len(mat), Fraction(1)
    for c in range(size):
        piv = next((i for i in range(c, size) if mat[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            out = -out
        out *= mat[c][c]
        for i in range(c + 1, size):
            f = mat[i][c] / mat[c][c]
            mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return out


def g1_table(dmax=400):
    t1 = t1_closed_form(dmax)
    positive = {d: v for d, v in t1.entries.items() if d > 0}
    return JacobiCoeffTable(1, singular_part_level1(1), positive, dmax)


# -- Gegenbauer ----------------------------------------------------------------------


def test_gegenbauer_examples():
    for k in range(2, 8):
        assert gegenbauer_p(k, 0, 5, 3) == 1
        assert gegenbauer_p(k, 2, Fraction(7, 2), 3) == Fraction(k, 2) * Fraction(7, 2) - 3
        r2, n = Fraction(5, 3), Fraction(2)
        assert gegenbauer_p(k, 4, r2, n) == Fraction((k + 1) * (k + 2), 12) * r2**2 - (k + 1) * n * r2 + n**2
    r2, n = Fraction(3), Fraction(-2)
    assert gegenbauer_p(2, 10, r2, n) == (
        r2**5 - 9 * n * r2**4 + 28 * n**2 * r2**3 - 35 * n**3 * r2**2 + 15 * n**4 * r2 - n**5
    )
    assert gegenbauer_a(3, 2, 1, 1) == 3 - 2


def test_gegenbauer_errors():
    with pytest.raises(ValueError):
        gegenbauer_p(2, 3, 1, 1)
    with pytest.raises(ValueError):
        gegenbauer_p(1, 2, 1, 1)


def test_generating_function():
    for k in range(2, 7):
        for r in range(-3, 4):
            for n in range(-3, 4):
                assert gegenbauer_generating_check(k, 12, r, n)
    # k = 2, r = 1, n = 0: geometric series
    assert all(gegenbauer_a(2, l, 1, 0) == 1 for l in range(12))


@pytest.mark.parametrize("k", range(3, 7))
def test_s_recurrence(k):
    for l in range(1, 13):
        for r in range(-3, 4):
            for n in range(-3, 4):
                for j in range(0, l // 2 + 2):
                    lhs = s_term(j, k, l, r, n) - r * s_term(j, k, l - 1, r, n) + n * s_term(j - 1, k, l - 2, r, n)
                    assert lhs == s_term(j, k - 1, l, r, n)
                lhs = gegenbauer_a(k, l, r, n) - r * gegenbauer_a(k, l - 1, r, n) + n * gegenbauer_a(k, l - 2, r, n)
                assert lhs == gegenbauer_a(k - 1, l, r, n)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 6), st.integers(0, 5), st.integers(0, 3), small, small)
def test_p_h_recurrence(k, nu, h, x, n):
    lhs = gegenbauer_p_h(k, 2 * nu + 2, h, x, n)
    rhs = -n * gegenbauer_p_h(k, 2 * nu, h, x, n) + x / 4 * (
        1 + Fraction(4 * nu + 2 * k - 1, 2 * h + 1)
    ) * gegenbauer_p_h(k, 2 * nu, h + 1, x, n)
    assert lhs == rhs


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.integers(0, 6), small, small)
def test_p_h_zero_is_p(k, nu, x, n):
    assert gegenbauer_p_h(k, 2 * nu, 0, x, n) == gegenbauer_p(k, 2 * nu, x, n)


# -- expansions -------------------------------------------------------------------------


def test_F_expansions_of_g1():
    table = g1_table(800)
    f0 = F_expansion(table, 0, (0, 200))
    assert all(c == 0 for c in f0.coeffs.values())
    f1 = F_expansion(table, 1, (0, 200))
    assert f1.agrees_with(-2 * eisenstein(4, 201))
    f5 = F_expansion(table, 5, (0, 2))
    assert f5.coefficients(0, 3) == [-2, 48, -394272]


def test_F_expansion_g2_matches_kaneko():
    # index-1 table of t_2 (principal part q^-2 gives singular {0: 6, -1: -1, -4: -2})
    from singmod.traces import t1_closed_form, t2_via_hecke

    t2 = t2_via_hecke(t1_closed_form(4 * 200), 200)
    positive = {d: v for d, v in t2.entries.items() if d > 0}
    table = JacobiCoeffTable(1, singular_part_level1(2), positive, 200)
    f0 = F_expansion(table, 0, (-1, 50))
    j = build_form("j", 51)
    assert f0.coeff_at(-1) == -2 and f0.coeff_at(0) == 0
    assert all(f0.coeff_at(n) == 2 * n * j.coeff_at(n) for n in range(1, 51))


def test_incomplete_table():
    table = g1_table(40)
    with pytest.raises(IncompleteTableError, match="D=44"):
        F_expansion(table, 0, (0, 11))
    assert table(5) == 0  # inadmissible
    assert table(-2) == 0


def test_G_expansion_level2():
    # c*(N) carries the starred halving, so G is fed the unstarred table
    plain = bootstrap(2, singular_part_level_p({1: 0, 2: 1}, 2), [0, 1, 2], 420)
    g = G_expansion(plain, (-1, 100))
    j2 = build_form("j2", 102)
    e2 = build_form("E2level2", 102)
    target = (4 * j2.derivative() - 2 * e2).truncate(101)
    assert g.coefficients(-1, 2) == [-4, -2, 1056]
    assert g.agrees_with(target)


def test_G_degenerates_to_F0_at_index_one():
    table = g1_table(200)
    assert G_expansion(table, (0, 50)) == F_expansion(table, 0, (0, 50))


def test_G_expansion_needs_prime():
    table = JacobiCoeffTable(4, {0: 1}, {}, 0)
    with pytest.raises(ValueError):
        G_expansion(table, (0, 0))


# -- bootstrap ----------------------------------------------------------------------------


def test_constant_terms():
    assert constant_term_from_singular(1, singular_part_level1(1), 1) == -2
    assert constant_term_from_singular(1, singular_part_level1(1), 0) == 0
    assert constant_term_from_singular(2, {0: 10, -1: -1, -4: -4}, 0) == 0


def test_bootstrap_examples():
    t = bootstrap(1, {0: 2, -1: -1}, [0, 1], 12)
    assert (t(3), t(4)) == (-248, 492)
    t = bootstrap(2, {0: 2, -1: -1}, [0, 1, 2], 12)
    assert [t(4), t(7), t(8), t(12)] == [-52, -23, 152, -496]
    t = bootstrap(2, {0: 10, -1: -1, -4: -4}, [0, 1, 2], 8)
    assert [t(4), t(7), t(8)] == [1036, -8215, 14360]


def test_bootstrap_matches_closed_form():
    boot = bootstrap(1, singular_part_level1(1), [0, 1], 2000)
    closed = t1_closed_form(2000)
    for d in range(1, 2001):
        assert boot(d) == closed(d)


def test_bootstrap_errors():
    with pytest.raises(ValueError, match="square"):
        bootstrap(1, {0: 2, -1: -1}, [0], 20)
    with pytest.raises(ValueError, match="dimension"):
        bootstrap(1, {0: 2, -1: -1}, [0, 5], 20)
    # M_2 = {0} but the constant term is nonzero
    with pytest.raises(BootstrapError, match="not holomorphic"):
        bootstrap(1, {0: 1, -1: -1}, [0, 1], 20)
    # a pole at q^-1 (the t_2 data) is outside the scope of the solver
    with pytest.raises(BootstrapError, match="not holomorphic"):
        bootstrap(1, singular_part_level1(2), [0, 1], 20)


def test_step_determinants():
    for n in range(1, 200):
        assert abs(det(step_matrix(1, [0, 1], n))) == 2
    for n in range(1, 501):
        assert det(step_matrix(2, [0, 1, 2], n)) != 0


def test_table_json_round_trip():
    t = bootstrap(2, {0: 2, -1: -1}, [0, 1, 2], 40)
    data = t.to_json()
    assert data["positive"]["4"] == "-52/1"
    back = JacobiCoeffTable.from_json(data)
    assert back == t
    import json

    assert JacobiCoeffTable.from_json(json.dumps(data)) == t
