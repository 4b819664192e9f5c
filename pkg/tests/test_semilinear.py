import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobstrat.algebra import get_field
from frobstrat.algebra import linalg as la
from frobstrat.errors import ConfigurationError, FixedSpaceNotSaturated
from frobstrat.semilinear import (ProSystem, SemilinearOp, count_fixed, count_fixed_brute,
                                  fitting, fixed_space, op_iterate, prosystem_limits, ss_rank)


def _op(data, fields=((3, 1), (3, 2), (5, 1)), nmax=3, twists=(1, -1)):
    p, m = data.draw(st.sampled_from(fields))
    F = get_field(p, m)
    n = data.draw(st.integers(1, nmax))
    M = [[data.draw(st.integers(0, F.q - 1)) for _ in range(n)] for _ in range(n)]
    return SemilinearOp(F, M, data.draw(st.sampled_from(twists)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_iterate_matches_application(data):
    T = _op(data)
    F = T.ctx
    v = np.array([data.draw(st.integers(0, F.q - 1)) for _ in range(T.n)], dtype=np.int64)
    for k in range(1, 4):
        P = op_iterate(T, k)
        direct = la.matvec(P, la.apply_frob(v.reshape(1, -1), F, k * T.twist).ravel(), F)
        assert np.array_equal(direct, T.apply_n(v, k))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_fitting_direct_sum(data):
    T = _op(data)
    fit = fitting(T)
    F = T.ctx
    assert fit.ss_rank + fit.nil_dim == T.n
    if fit.ss_rank and fit.nil_dim:
        assert la.rank(np.vstack([fit.ss_basis, fit.nil_basis]), F) == T.n
    for v in fit.nil_basis:
        assert not T.apply_n(v, fit.nil_index).any()
    assert fit.ss_rank == ss_rank(T)


def test_fixed_space_examples():
    F = get_field(3)
    T = SemilinearOp(F, [[1]], 1)
    assert count_fixed(T) == 3
    T = SemilinearOp(F, [[0, 1], [0, 0]], 1)
    assert count_fixed(T) == 1
    # v -> 2 v^3 needs F_9 for its fixed points
    T = SemilinearOp(F, [[2]], 1)
    fs = fixed_space(T)
    assert fs.degree == 2 and fs.dim == 1
    for v in fs.basis:
        assert np.array_equal(T.base_change(fs.field).apply(np.array(v)), np.array(v))


def test_fixed_space_requires_p_linear():
    with pytest.raises(ConfigurationError):
        fixed_space(SemilinearOp(get_field(3), [[1]], -1))


def test_fixed_space_not_saturated_reports_best():
    # a Singer-type cycle over F_3 in dimension 3 needs degree 13 or 26
    F = get_field(3)
    T = SemilinearOp(F, [[0, 0, 1], [1, 0, 0], [0, 1, 1]], 1)
    try:
        fixed_space(T, max_ext=4)
    except FixedSpaceNotSaturated as exc:
        assert exc.best_degree is not None and exc.best_dim < 3
    else:
        pytest.fail("expected FixedSpaceNotSaturated")


def test_count_matches_brute_in_saturating_field(rng):
    checked = 0
    for _ in range(40):
        F = get_field(3)
        n = rng.randint(1, 2)
        T = SemilinearOp(F, [[rng.randrange(3) for _ in range(n)] for _ in range(n)], 1)
        try:
            fs = fixed_space(T, 8)
        except FixedSpaceNotSaturated:
            continue
        if fs.field.q ** n > 3 ** 8:
            continue
        assert count_fixed_brute(T.base_change(fs.field)) == 3 ** ss_rank(T)
        checked += 1
    assert checked >= 20


def test_prosystem_limits():
    F = get_field(3)
    T = SemilinearOp(F, [[1, 1], [0, 0]], 1)
    assert prosystem_limits(ProSystem(op=T)) == (1, 0)
    S = ProSystem(maps=[np.array([[0, 1], [0, 0]])], ctx=F)
    assert prosystem_limits(S) == (0, 0)
