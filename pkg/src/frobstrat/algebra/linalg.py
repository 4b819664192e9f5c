"""Dense linear algebra over F_q on int64 numpy arrays.

Row reduction is delegated to :mod:`frobstrat._kernels`; everything else
is thin bookkeeping around it.
"""

import numpy as np

from .. import _kernels
from .._kernels.fallback import _vadd, _vmul


def as_matrix(rows, ncols=None):
    if isinstance(rows, np.ndarray):
        return np.ascontiguousarray(rows, dtype=np.int64)
    rows = list(rows)
    if not rows:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    return np.ascontiguousarray(np.array(rows, dtype=np.int64).reshape(len(rows), -1))


def rref(M, ctx):
    """Return (R, pivots) with R the reduced row echelon form of M."""
    R = np.array(as_matrix(M), dtype=np.int64, order="C", copy=True)
    if R.size == 0:
        return R, []
    if ctx.m == 1:
        piv = _kernels.rref_prime(R, ctx.p)
    else:
        piv = _kernels.rref_zech(R, ctx.exp_arr, ctx.log_arr, ctx.zech_arr, ctx.q)
    return R, list(piv)


def rank(M, ctx):
    return len(rref(M, ctx)[1])


def nullspace(M, ctx, ncols=None):
    """Basis (rows, in reduced echelon form) of {v : M v = 0}."""
    M = as_matrix(M, ncols)
    n = M.shape[1] if M.size or ncols is None else ncols
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(M, ctx)
    free = [j for j in range(n) if j not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, fj in enumerate(free):
        basis[k, fj] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = ctx.neg(int(R[i, fj]))
    if len(basis):
        basis, _ = rref(basis, ctx)
    return basis


def row_basis(M, ctx):
    R, piv = rref(M, ctx)
    return R[: len(piv)], piv


def add(a, b, ctx):
    if ctx.m == 1:
        return (a + b) % ctx.p
    return _vadd(a, b, ctx.exp_arr, ctx.log_arr, ctx.zech_arr, ctx.q - 1)


def scal(c, a, ctx):
    if ctx.m == 1:
        return a * c % ctx.p
    return _vmul(np.full(a.shape, c, dtype=np.int64), a, ctx.exp_arr, ctx.log_arr)


def mul_elementwise(a, b, ctx):
    if ctx.m == 1:
        return a * b % ctx.p
    return _vmul(a, b, ctx.exp_arr, ctx.log_arr)


def matmul(A, B, ctx):
    A, B = as_matrix(A), as_matrix(B)
    if ctx.m == 1:
        return (A @ B) % ctx.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = add(out, mul_elementwise(A[:, k:k + 1], B[k:k + 1, :], ctx), ctx)
    return out


def matvec(A, v, ctx):
    return matmul(A, as_matrix(v).reshape(-1, 1), ctx).ravel()


def solve(M, b, ctx):
    """One solution x of M x = b (free variables zero), or None."""
    M = as_matrix(M)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([M, b])
    R, piv = rref(aug, ctx)
    n = M.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n]
    return x


def inverse(M, ctx):
    M = as_matrix(M)
    n = M.shape[0]
    R, piv = rref(np.hstack([M, np.eye(n, dtype=np.int64)]), ctx)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def identity(n):
    return np.eye(n, dtype=np.int64)


def apply_frob(M, ctx, e):
    """Entrywise c -> c^(p^e)."""
    if ctx.m == 1:
        return as_matrix(M).copy()
    M = as_matrix(M)
    k = pow(ctx.p, e % ctx.m, ctx.q - 1)
    out = ctx.exp_arr[(ctx.log_arr[M] * k) % (ctx.q - 1)]
    return np.where(M == 0, 0, out)


def is_zero(M):
    return not np.any(M)
