import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betafam.modforms import delta, eisenstein, divisor_sums
from betafam.qseries import (
    QQ,
    ZZ,
    NonUnitError,
    NotIntegralError,
    QSeries,
    ResidueRing,
    RingMismatchError,
    inv_unit,
    order_of_vanishing,
    parse,
    reduce,
    render,
    v_operator,
)

R5 = ResidueRing(5)
R25 = ResidueRing(5, 2)


def series(coeffs, ring=ZZ):
    return QSeries(coeffs, ring)


def test_telescoping():
    a = series([1, 1, 0, 0])
    b = series([1, -1, 0, 0])
    assert a * b == series([1, 0, -1, 0])


def test_e4_squared_is_e8():
    # dim M_8 = 1, so E4^2 = E8 = 1 + 480 sum sigma_7(n) q^n
    N = 12
    sig7 = divisor_sums(7, N)
    e8 = series([1] + [480 * s for s in sig7[1:]])
    assert eisenstein(4, N) * eisenstein(4, N) == e8


def test_delta_squared_mod_5():
    d2 = delta(8, R5) * delta(8, R5)
    assert d2.tolist() == [0, 0, 1, 2, 0, 0, 0, 1]


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        series([1, 2], R5) + series([1, 2], R25)


def test_precision_is_minimum():
    a = series([1, 2, 3, 4])
    b = series([1, 1])
    assert (a + b).prec == 2
    assert (a * b).prec == 2


def test_inverse_examples():
    assert inv_unit(series([1, 0, 0])) == series([1, 0, 0])
    assert inv_unit(series([1, -1, 0, 0, 0])) == series([1, 1, 1, 1, 1])
    e4 = QSeries(eisenstein(4, 6).coeffs, QQ)
    inv = inv_unit(e4)
    assert inv.tolist()[:3] == [1, -240, 55440]
    assert inv * e4 == QSeries.one(6, QQ)


def test_non_unit_constant_term():
    with pytest.raises(NonUnitError):
        inv_unit(series([5, 1], R25))
    with pytest.raises(NonUnitError):
        inv_unit(series([2, 1]))


def test_v_operator_examples():
    assert v_operator(QSeries.monomial(1, 5), 2) == QSeries.monomial(2, 5)
    assert order_of_vanishing(v_operator(delta(10), 2)) == 2


def test_order_of_vanishing():
    assert order_of_vanishing(delta(5)) == 1
    assert order_of_vanishing(delta(6, R5) * delta(6, R5)) == 2
    assert order_of_vanishing(series([0, 5, 0], R25)) == 1
    assert order_of_vanishing(series([0, 5, 0], R5)) == math.inf


def test_reduce_examples():
    assert reduce(eisenstein(4, 30), R5) == QSeries.one(30, R5)
    assert reduce(delta(4), R5).tolist() == [0, 1, 1, 2]
    with pytest.raises(NotIntegralError):
        QSeries([Fraction(1, 5)], R25)


def test_render_paper_layout():
    assert render(delta(4, R5)) == "q + q^2 + 2*q^3 + O(q^4) mod 5"
    assert render(eisenstein(6, 3)) == "1 - 504*q - 16632*q^2 + O(q^3)"
    assert render(QSeries([0, Fraction(1, 5), Fraction(-238, 5)], QQ)) == "(1/5)*q - (238/5)*q^2 + O(q^3)"
    assert render(QSeries.zero(3, R25)) == "O(q^3) mod 25"


# -- properties ------------------------------------------------------------------

rings = st.sampled_from([ZZ, QQ, R5, R25, ResidueRing(7, 3)])
small = st.integers(-50, 50)


@st.composite
def triples(draw):
    ring = draw(rings)
    n = draw(st.integers(1, 12))
    mk = lambda: QSeries(draw(st.lists(small, min_size=n, max_size=n)), ring)  # noqa: E731
    return mk(), mk(), mk()


@given(triples())
@settings(max_examples=80, deadline=None)
def test_ring_axioms(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert (a - b) + b == a


@given(rings, st.lists(small, min_size=1, max_size=15))
@settings(max_examples=80, deadline=None)
def test_inverse_property(ring, coeffs):
    coeffs[0] = 1
    a = QSeries(coeffs, ring)
    assert a * inv_unit(a) == QSeries.one(len(coeffs), ring)


@given(triples(), st.sampled_from([2, 3, 5]))
@settings(max_examples=60, deadline=None)
def test_v_operator_is_ring_hom(abc, ell):
    a, b, _ = abc
    assert v_operator(a * b, ell) == v_operator(a, ell) * v_operator(b, ell)
    assert v_operator(a + b, ell) == v_operator(a, ell) + v_operator(b, ell)


@given(st.lists(st.integers(-10, 10), min_size=11, max_size=11), st.lists(st.integers(-10, 10), min_size=11, max_size=11))
@settings(max_examples=50, deadline=None)
def test_v_operator_on_polynomials(f, g):
    # direct expansion: (fg)(q^2) has coefficient sum f_i g_j at q^{2(i+j)}
    N = 44
    F = QSeries(f + [0] * (N - 11))
    G = QSeries(g + [0] * (N - 11))
    lhs = v_operator(F * G, 2)
    direct = [0] * N
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            if 2 * (i + j) < N:
                direct[2 * (i + j)] += x * y
    assert lhs.tolist() == direct


@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=20), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_reduce_composes(coeffs, k):
    a = QSeries(coeffs)
    assert reduce(reduce(a, ResidueRing(5, k)), R5) == reduce(a, R5)


@given(triples(), st.integers(1, 12))
@settings(max_examples=60, deadline=None)
def test_truncation_coherence(abc, m):
    a, b, _ = abc
    m = min(m, a.prec)
    assert (a * b).truncate(m) == a.truncate(m) * b.truncate(m)
    a0 = a.truncate(m)
    if a0[0] != 0 and (not isinstance(a.ring, ResidueRing) or a.ring.is_unit(a0[0])) and (a.ring != ZZ or a0[0] in (1, -1)):
        assert inv_unit(a).truncate(m) == inv_unit(a0)


@given(st.sampled_from([R5, R25, ResidueRing(7, 2)]), st.lists(st.integers(0, 10**4), min_size=1, max_size=30))
@settings(max_examples=80, deadline=None)
def test_render_parse_round_trip(ring, coeffs):
    a = QSeries(coeffs, ring)
    assert parse(render(a)) == a


@given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=10))
@settings(max_examples=50, deadline=None)
def test_render_parse_round_trip_rational(coeffs):
    a = QSeries(coeffs, QQ)
    assert parse(render(a), QQ) == a
