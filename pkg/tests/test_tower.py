import pytest

from frobstrat.cech import class_rep
from frobstrat.curve import CurveModel
from frobstrat.errors import ClassNotFixed, ConfigurationError, NoFixedClass
from frobstrat.tower import (build_tower, exact_sequence_check, extend, solve_fixed_cocycle,
                             solve_gauge, ss_dims, ss_transfer_rank)


def test_fixed_cocycle_examples(X):
    coords, F = solve_fixed_cocycle(X)
    assert coords == (1, 1) and F.m == 1
    Y = CurveModel.from_ints(3, 2, (1, -1, 1, -1, 1))
    assert solve_fixed_cocycle(Y)[0] == (1, 2)
    with pytest.raises(NoFixedClass):
        solve_fixed_cocycle(CurveModel.from_ints(3, 1, (1, 0, 1)))


def test_tower_shape(X, tower6):
    e = class_rep(X, (1, 1))
    A2 = tower6[1].A
    assert A2[0][1] == e
    A3 = tower6[2].A
    assert A3[0][1] == e and A3[1][2] == e and A3[0][2].is_zero()
    # upper unitriangular Toeplitz with zero corners beyond the superdiagonal
    for lv in tower6:
        n = lv.n
        for i in range(n):
            for j in range(n):
                u = lv.A[i][j]
                if i == j:
                    assert u == X.one()
                elif j == i + 1:
                    assert u == e
                else:
                    assert u.is_zero()


def test_extend_rejects_non_fixed(tower6, X):
    with pytest.raises(ClassNotFixed):
        extend(tower6[0], [class_rep(X, (0, 1))])


def test_gauge_of_identity(X):
    I = [[X.one(), X.zero()], [X.zero(), X.one()]]
    g0, g1 = solve_gauge(I, X)
    assert all(a == b for r, s in zip(g0, I) for a, b in zip(r, s))


def test_ss_dims_and_transfers(tower6):
    assert ss_dims(tower6) == [1] * 6
    assert [ss_transfer_rank(a, b) for a, b in zip(tower6, tower6[1:])] == [0] * 5


def test_exact_sequences(tower6):
    for a in range(1, 5):
        for b in range(1, 6 - a + 1):
            res = exact_sequence_check(tower6, a, b)
            assert res["ok"], (a, b, res)


def test_depth_cap(X):
    with pytest.raises(ConfigurationError):
        build_tower(X, 9)


def test_tower_over_extension_field():
    Y = CurveModel.from_ints(3, 2, (1, 1, 1, 1, 1))
    L = build_tower(Y, 3)
    assert L[-1].X.ctx.m == 2
    assert ss_dims(L) == [1, 1, 1]
