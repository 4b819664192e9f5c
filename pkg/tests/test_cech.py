import pytest

from frobstrat.cech import (BundleCocycle, bundle_pairing, class_rep, frobenius_on_h1_O,
                            h1_normal_form, is_coboundary, mat_frobenius, mat_mul)
from frobstrat.errors import ConsistencyError, GaugeMissing
from frobstrat.tower import solve_gauge

from conftest import random_curve


def test_normal_form_and_coboundaries(X):
    e = class_rep(X, (1, 1))
    assert h1_normal_form(e) == (1, 1)
    ok, (h0, h1) = is_coboundary(e * e)
    assert ok and h0 + h1 == e * e and X.in_U0(h0) and X.in_U1(h1)
    assert is_coboundary(e)[0] is False


def test_frobenius_formula(X):
    # [[a4, a1], [a5, a2]] (a^3, b^3) with all a_i = -1
    assert frobenius_on_h1_O((1, 1), X) == (1, 1)
    assert frobenius_on_h1_O((0, 1), X) == (2, 2)
    assert frobenius_on_h1_O((1, 0), X) == (2, 2)


@pytest.mark.parametrize("p,g", [(3, 1), (3, 2), (5, 2), (7, 1)])
def test_trivial_bundle_dimensions(p, g, rng):
    Y = random_curve(rng, p, g)
    B = BundleCocycle.trivial(Y)
    assert B.h0.dim == 1
    assert B.h1.dim == g
    assert B.h0_omega.dim == g
    assert B.euler_characteristic() == 1 - g


def test_tower_bundle_dimensions(tower6):
    for lv in tower6:
        B = lv.bundle
        assert B.h1.dim == lv.n + 1
        assert B.h0_omega.dim == lv.n + 1
        assert B.h0.dim == 1
        # Serre duality between H^1(E) and H^0(Omega (x) E^dual)
        assert B.dual().h0_omega.dim == B.h1.dim


def test_gauge_identity_exact(tower6):
    for lv in tower6:
        g0, g1 = lv.bundle.gauge
        A = lv.bundle.A
        lhs, rhs = mat_mul(g0, mat_frobenius(A)), mat_mul(A, g1)
        assert all(a == b for r, s in zip(lhs, rhs) for a, b in zip(r, s))


def test_bad_gauge_rejected(X):
    e = class_rep(X, (1, 1))
    A = [[X.one(), e], [X.zero(), X.one()]]
    I = [[X.one(), X.zero()], [X.zero(), X.one()]]
    with pytest.raises(ConsistencyError):
        BundleCocycle(X, A, (I, I))
    with pytest.raises(GaugeMissing):
        BundleCocycle(X, A).require_gauge()
    g0, g1 = solve_gauge(A, X)
    BundleCocycle(X, A, (g0, g1))


def test_coboundary_witness(tower6):
    B = tower6[2].bundle
    H = B.h1
    X = B.X
    for b in H.basis:
        assert H.coboundary_witness(b) is None
    h1 = [X.y_x_pow(-4, 1), X.x_pow(-2, 2), X.zero()]
    h0 = [X.x_pow(3, 1), X.y_x_pow(1, 1), X.one()]
    Ah1 = [sum((a * h for a, h in zip(row, h1)), X.zero()) for row in B.A]
    vec = [u - v for u, v in zip(h0, Ah1)]
    assert H.is_zero(vec)
    w0, w1 = H.coboundary_witness(vec)
    back = [u - sum((a * h for a, h in zip(row, w1)), X.zero()) for u, row in zip(w0, B.A)]
    assert back == vec


def test_pairing_perfect_on_trivial_bundle(X):
    B = BundleCocycle.trivial(X)
    M = [[bundle_pairing(c, s) for s in B.h0_omega.basis] for c in B.h1.basis]
    from frobstrat.algebra import linalg as la
    assert la.rank(M, X.ctx) == X.g


def test_coords_roundtrip(tower6):
    H = tower6[3].bundle.h1
    import numpy as np
    for k in range(H.dim):
        e = np.zeros(H.dim, dtype=np.int64)
        e[k] = 2
        assert H.coords(H.combination(e)).tolist() == e.tolist()
