import itertools

import pytest

from frobstrat.algebra import get_field
from frobstrat.curve import (CurveModel, chart_membership, delta_genus2, delta_genus2_raw,
                             parse_curve_spec)
from frobstrat.errors import CurveSpecError, NotSmooth

from conftest import random_curve


def test_validation_errors():
    F = get_field(3)
    with pytest.raises(NotSmooth):
        CurveModel(F, 2, [0, 1, 1, 1, 1])          # a1 = 0
    with pytest.raises(NotSmooth):
        CurveModel(F, 2, [1, 1, 1, 1, 0])          # degree drops
    with pytest.raises(NotSmooth):
        CurveModel.from_ints(3, 2, (1, 1, 0, 1, 1))
    with pytest.raises(CurveSpecError):
        CurveModel(F, 3, [1] * 7)
    with pytest.raises(CurveSpecError):
        CurveModel(F, 2, [1, 1, 1])


def test_parse_curve_spec():
    X = parse_curve_spec('{"p":3,"m":1,"g":2,"f":[-1,-1,-1,-1,-1]}')
    assert X.coeffs == (2, 2, 2, 2, 2) and X.g == 2
    assert X.to_spec() == {"p": 3, "m": 1, "g": 2, "f": [-1, -1, -1, -1, -1]}
    with pytest.raises(CurveSpecError, match="line 1 column"):
        parse_curve_spec('{"p":3,"g":2,"f":[1,2')
    with pytest.raises(CurveSpecError):
        parse_curve_spec('{"p":3,"g":2}')
    with pytest.raises(CurveSpecError):
        parse_curve_spec('{"p":3,"g":2,"f":[1,"a",1,1,1]}')


def test_smooth_iff_delta_nonzero():
    F = get_field(3)
    for co in itertools.product(range(3), repeat=5):
        try:
            CurveModel(F, 2, co)
            smooth = True
        except NotSmooth:
            smooth = False
        assert smooth == (co[0] != 0 and co[4] != 0 and delta_genus2_raw(F, co) != 0)


def test_valuations(X):
    assert X.ord_O(X.x_pow(1)) == 2 and X.ord_O(X.y_x_pow(0)) == 1
    assert X.ord_inf(X.x_pow(1)) == -2 and X.ord_inf(X.y_x_pow(0)) == -5
    e = X.y_x_pow(-2) + X.y_x_pow(-1)
    assert not X.in_U0(e) and not X.in_U1(e)
    assert chart_membership(X.x_pow(-1), "U1") and not chart_membership(X.x_pow(-1), "U0")
    w = X.y_x_pow(-3)
    assert X.in_U1(w) and X.ord_inf(w) == 1


def test_chart_frobenius_matches_power(rng):
    for _ in range(10):
        Y = random_curve(rng, 3, 2, m=2)
        u = Y.y_x_pow(-2, rng.randrange(9)) + Y.x_pow(1, rng.randrange(9)) + Y.y_x_pow(3, 1)
        assert u.frobenius() == u ** 3


def test_residue_closed_form(rng):
    # for c = B y, c dx/y = B dx and the residue at O is 2 [x^-1] B in odd characteristic
    for p, g in ((3, 2), (5, 2), (3, 1), (7, 1)):
        Y = random_curve(rng, p, g)
        for k in range(-4, 2):
            c = Y.y_x_pow(k, 1)
            expect = (2 if k == -1 else 0) % p
            assert Y.residue_at_O(c) == expect
            # the sum of residues vanishes: only O and infinity are poles
            assert Y.ctx.add(Y.residue_at_O(c), Y.residue_at_inf(c)) == 0


def test_regular_forms_have_no_residue(X):
    for i in range(X.g):
        assert X.residue_at_O(X.x_pow(i)) == 0
        assert X.form_regular_U0(X.x_pow(i)) and X.form_regular_U1(X.x_pow(i))
    assert not X.form_regular_U1(X.x_pow(X.g))


def test_serre_pairing_matrix(X):
    assert X.serre_pairing_matrix() == [[0, 2], [2, 0]]


def test_delta_example(X):
    assert delta_genus2(X) != 0


def test_base_change_keeps_coefficients(X):
    Y = X.base_change(get_field(3, 2))
    assert Y.ctx.m == 2 and Y.coeffs == X.coeffs
