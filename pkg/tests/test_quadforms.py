from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singmod.quadforms import (
    QuadForm,
    enumerate_classes,
    enumerate_classes_fricke,
    enumerate_classes_gamma0,
    fricke_act,
    gamma0_class_key,
    hurwitz_H,
    lemma_factor,
    reduce_with_matrix,
    root,
    valid_residues,
)

DISCS = [d for d in range(3, 120) if d % 4 in (0, 3)]


def brute_reduced(d):
    out = []
    for a in range(1, d + 1):
        for b in range(-a, a + 1):
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            q = QuadForm(a, b, c)
            if q.is_reduced():
                out.append(q)
    return sorted(out)


def test_hurwitz_values():
    expected = {3: Fraction(1, 3), 4: Fraction(1, 2), 7: 1, 8: 1, 11: 1, 12: Fraction(4, 3),
                15: 2, 16: Fraction(3, 2), 19: 1, 20: 2, 23: 3, 24: 2, 27: Fraction(4, 3), 28: 2}
    for d, h in expected.items():
        assert hurwitz_H(d) == h
    assert hurwitz_H(0) == Fraction(-1, 12)
    assert hurwitz_H(1) == 0 and hurwitz_H(-4) == 0


@pytest.mark.parametrize("d", DISCS)
def test_reduced_forms_match_brute_force(d):
    assert sorted(enumerate_classes(d).reps) == brute_reduced(d)


def test_bad_discriminant():
    with pytest.raises(ValueError):
        enumerate_classes(5)
    with pytest.raises(ValueError):
        reduce_with_matrix(QuadForm(1, 0, -1))


@given(st.integers(1, 30), st.integers(-30, 30), st.integers(1, 30),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_reduction_transports(a, b, c, col):
    q = QuadForm(a, b, c)
    if q.disc >= 0:
        return
    r, g = reduce_with_matrix(q)
    assert q.act(g) == r
    assert r.is_reduced()
    assert r.disc == q.disc
    # invariance under an arbitrary SL_2 move
    x, y = col
    from math import gcd

    if gcd(x, y) != 1:
        return
    # complete (x, y) to a matrix of determinant one
    for bb, dd in product(range(-6, 7), repeat=2):
        if x * dd - bb * y == 1:
            m = (x, bb, y, dd)
            assert reduce_with_matrix(q.act(m))[0] == r
            break


def test_heegner_point():
    z = root(QuadForm(1, 1, 1))
    assert z.real == Fraction(-1, 2) and z.imag_squared == Fraction(3, 4)
    assert str(z) == "(-1 + i*sqrt(3))/2"


# -- Gamma_0(2) oracle ---------------------------------------------------------

GENS = [(1, 1, 0, 1), (1, -1, 0, 1), (1, 0, 2, 1), (1, 0, -2, 1)]


def box_forms(d, p, bound, h=None):
    out = []
    for a in range(p, bound + 1, p):
        for b in range(-bound, bound + 1):
            if h is not None and (b - h) % (2 * p):
                continue
            if (b * b + d) % (4 * a):
                continue
            c = (b * b + d) // (4 * a)
            if c <= bound:
                out.append(QuadForm(a, b, c))
    return out


def union_find_classes(d, p, bound, h=None, fricke=False):
    forms = box_forms(d, p, bound, h)
    index = {f: i for i, f in enumerate(forms)}
    parent = list(range(len(forms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    for f, i in index.items():
        nbrs = [f.act(g) for g in GENS]
        if fricke:
            nbrs.append(fricke_act(f, p))
        for g in nbrs:
            if g in index:
                union(i, index[g])
    # only components touching small forms are guaranteed complete
    core = bound // 3
    return {find(index[f]) for f in forms if max(f.a, abs(f.b), f.c) <= core}


def brute_stabilizer(q, p, bound=12):
    count = 0
    for A, B, C in product(range(-bound, bound + 1), repeat=3):
        if C % p or A == 0:
            continue
        if (1 + B * C) % A:
            continue
        D = (1 + B * C) // A
        if q.act((A, B, C, D)) == q:
            count += 1
    return count // 2  # modulo +-1


@pytest.mark.parametrize("d", [3, 4, 7, 8, 12, 15, 16, 20, 23, 24, 28, 31, 32, 36, 39, 40])
def test_gamma0_2_counts(d):
    for h in valid_residues(d, 2):
        classes = enumerate_classes_gamma0(d, 2, h)
        oracle = union_find_classes(d, 2, 90, h=h)
        assert len(classes) == len(oracle)
        keys = {gamma0_class_key(q, 2) for q in classes.reps}
        assert len(keys) == len(classes)


@pytest.mark.parametrize("d", [3, 4, 7, 8, 12, 16, 20, 24])
def test_gamma0_2_stabilizers(d):
    for h in valid_residues(d, 2):
        for q, w in enumerate_classes_gamma0(d, 2, h):
            assert brute_stabilizer(q, 2) == w


@pytest.mark.parametrize("d", [3, 4, 7, 8, 12, 15, 16, 20, 23, 24, 28, 32, 36, 40])
def test_fricke_2_counts(d):
    classes = enumerate_classes_fricke(d, 2)
    oracle = union_find_classes(d, 2, 90, fricke=True)
    assert len(classes) == len(oracle)


def test_fricke_lemma_factor():
    # Gamma_0(p)-weighted count over one residue = 2^omega(gcd(p, d)) * Fricke weighted count
    for d in [3, 4, 7, 8, 12, 15, 16, 20, 23, 24, 28, 32, 36, 40]:
        hs = valid_residues(d, 2)
        if not hs:
            continue
        g0 = enumerate_classes_gamma0(d, 2, hs[0]).weighted_count()
        fr = enumerate_classes_fricke(d, 2).weighted_count()
        assert g0 == lemma_factor(d, 2) * fr


def test_gamma0_level2_values():
    assert sum(len(enumerate_classes_gamma0(7, 2, h)) for h in valid_residues(7, 2)) == 2
    assert valid_residues(4, 2) == [2]
    # [1,0,1] vanishes mod 2 only at (1:1), a coset fixed by its stabiliser
    assert enumerate_classes_gamma0(4, 2, 2).stabs == (2,)
    assert len(enumerate_classes_gamma0(4, 2, 0)) == 0
    cl = enumerate_classes_fricke(16, 2)
    assert cl.to_json()["level"] == "fricke"


def test_class_sums_over_cosets():
    # each SL_2 class R contributes one point of P^1(F_p) per root of R mod p
    for p in (2, 3, 5, 7):
        for d in DISCS[:25]:
            total = sum(
                (enumerate_classes_gamma0(d, p, h).weighted_count() for h in valid_residues(d, p)),
                Fraction(0),
            )
            expected = Fraction(0)
            for r, w in enumerate_classes(d):
                pts = [(x, 1) for x in range(p)] + [(1, 0)]
                expected += Fraction(sum(1 for x, y in pts if r(x, y) % p == 0), w)
            assert total == expected
