"""p^{+1} and p^{-1}-semilinear operators on F_q^n.

An operator T is a matrix M with a twist e in {+1, -1}; it acts by
T(v) = M . v^(sigma^e), where sigma is the p-power map applied entrywise.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import embedding
from .algebra import linalg as la
from .algebra.field import MAX_ORDER, get_field
from .errors import ConfigurationError, FixedSpaceNotSaturated

LINEARIZATION_CAP = 64


class SemilinearOp:
    def __init__(self, ctx, M, twist=1):
        if twist not in (1, -1):
            raise ConfigurationError("twist must be +1 or -1")
        self.ctx = ctx
        self.M = la.as_matrix(M)
        if self.M.size == 0:
            self.M = self.M.reshape(0, 0)
        self.n = self.M.shape[0]
        self.twist = twist

    def __repr__(self):
        return f"SemilinearOp(n={self.n}, twist={self.twist:+d}, M={self.M.tolist()})"

    def apply(self, v):
        v = la.as_matrix(v).ravel()
        return la.matvec(self.M, la.apply_frob(v.reshape(1, -1), self.ctx, self.twist).ravel(), self.ctx)

    def apply_n(self, v, k):
        for _ in range(k):
            v = self.apply(v)
        return v

    def base_change(self, big):
        table = np.array(embedding(self.ctx, big), dtype=np.int64)
        return SemilinearOp(big, table[self.M] if self.n else self.M, self.twist)


def op_iterate(T, n):
    """Matrix P_n with T^n(v) = P_n . v^(sigma^(n e))."""
    ctx = T.ctx
    P = la.identity(T.n)
    for i in range(n):
        P = la.matmul(P, la.apply_frob(T.M, ctx, i * T.twist), ctx)
    return P


@dataclass
class FittingData:
    ss_rank: int
    nil_index: int
    ss_basis: np.ndarray
    nil_basis: np.ndarray
    dim: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def nil_dim(self):
        return len(self.nil_basis)


def fitting(T):
    ctx, n = T.ctx, T.n
    if n == 0:
        empty = np.zeros((0, 0), dtype=np.int64)
        return FittingData(0, 0, empty, empty, 0)
    P = op_iterate(T, n)
    ss_basis, _ = la.row_basis(P.T, ctx)
    ker = la.nullspace(P, ctx, n)
    nil_basis = la.apply_frob(ker, ctx, -n * T.twist) if len(ker) else ker
    if len(nil_basis):
        nil_basis, _ = la.rref(nil_basis, ctx)
    nil_index = 0
    if len(nil_basis):
        j = 1
        while True:
            Pj = op_iterate(T, j)
            img = la.matmul(Pj, la.apply_frob(nil_basis, ctx, j * T.twist).T, ctx)
            if la.is_zero(img):
                break
            j += 1
        nil_index = j
    return FittingData(len(ss_basis), nil_index, ss_basis, nil_basis, n)


def ss_rank(T):
    if T.n == 0:
        return 0
    return la.rank(op_iterate(T, T.n), T.ctx)


def _linearize(T, big):
    """F_p-matrix of v -> T(v) - v on big^n, coordinates component-major,
    digit-minor.  Column k is the image of the k-th F_p basis vector."""
    n, m = T.n, big.m
    p = big.p
    table = np.array(embedding(T.ctx, big), dtype=np.int64)
    M = table[T.M]
    units = [big.from_digits([1 if i == d else 0 for i in range(m)]) for d in range(m)]
    cols = []
    for i in range(n):
        for d in range(m):
            v = np.zeros(n, dtype=np.int64)
            v[i] = units[d]
            w = la.matvec(M, la.apply_frob(v.reshape(1, -1), big, 1).ravel(), big)
            w = la.add(w, la.scal(big.neg(1), v, big), big)
            col = []
            for c in w:
                col.extend(big.digits(int(c)))
            cols.append(col)
    return np.array(cols, dtype=np.int64).T % p, units


def fixed_space(T, max_ext=8):
    """F_p-basis of {v : T(v) = v} over the first extension where its
    dimension reaches the stable rank.  Returns (basis vectors, field)."""
    if T.twist != 1:
        raise ConfigurationError("fixed_space needs a p-linear (twist +1) operator")
    ctx = T.ctx
    target = ss_rank(T)
    best = (-1, None)
    for j in range(1, max_ext + 1):
        if ctx.p ** (ctx.m * j) > MAX_ORDER:
            break
        big = ctx.extension(j)
        if big.m * T.n > LINEARIZATION_CAP:
            raise ConfigurationError(
                f"linearized dimension {big.m * T.n} exceeds the cap {LINEARIZATION_CAP}")
        L, units = _linearize(T, big)
        fp = get_field(ctx.p, 1)
        ker = la.nullspace(L, fp, L.shape[1])
        dim = len(ker)
        if dim > best[0]:
            best = (dim, big.m)
        if dim == target:
            basis = []
            for row in ker:
                v = []
                for i in range(T.n):
                    acc = 0
                    for d in range(big.m):
                        c = int(row[i * big.m + d])
                        if c:
                            acc = big.add(acc, big.mul(c, units[d]))
                    v.append(acc)
                basis.append(v)
            return FixedSpace(basis, big, target)
        if dim > target:
            raise AssertionError("fixed space larger than the stable rank")
    raise FixedSpaceNotSaturated(
        f"fixed space reached dimension {best[0]} < {target} up to degree {best[1]}",
        best_dim=best[0], best_degree=best[1])


@dataclass
class FixedSpace:
    basis: list
    field: object
    dim: int

    @property
    def representative(self):
        return self.basis[0] if self.basis else None

    @property
    def degree(self):
        return self.field.m

    def __len__(self):
        return len(self.basis)


def count_fixed(T, max_ext=8):
    fs = fixed_space(T, max_ext)
    return T.ctx.p ** fs.dim


def count_fixed_brute(T):
    """Enumerate all of F_q^n; only for tiny spaces."""
    ctx, n = T.ctx, T.n
    total = 0
    for code in range(ctx.q ** n):
        v = np.array([(code // ctx.q ** i) % ctx.q for i in range(n)], dtype=np.int64)
        if np.array_equal(T.apply(v), v):
            total += 1
    return total


# ---- pro-systems -----------------------------------------------------------

@dataclass
class ProSystem:
    """Either a constant tower V <- V <- ... with transfer ``op``, or an
    explicit list of linear maps ``maps[i]: V_{i+1} -> V_i`` whose last map
    repeats forever."""
    op: SemilinearOp = None
    maps: list = None
    ctx: object = None


def _fp_linearize(ctx, matrix_fn, n_in):
    """F_p-matrix of an additive map given as a function on F_q^n_in."""
    m = ctx.m
    units = [ctx.from_digits([1 if i == d else 0 for i in range(m)]) for d in range(m)]
    cols = []
    for i in range(n_in):
        for d in range(m):
            v = np.zeros(n_in, dtype=np.int64)
            v[i] = units[d]
            w = matrix_fn(v)
            col = []
            for c in w:
                col.extend(ctx.digits(int(c)))
            cols.append(col)
    return np.array(cols, dtype=np.int64).T % ctx.p if cols else np.zeros((0, 0), dtype=np.int64)


def lim1_vanishes(step, ctx, dim, depth=3):
    """Surjectivity of d(v_0..v_K) = (v_i - step(v_{i+1}))_{i<K} over F_p."""
    if dim == 0:
        return True

    def d(vec):
        blocks = [vec[i * dim:(i + 1) * dim] for i in range(depth + 1)]
        out = []
        for i in range(depth):
            out.append(la.add(blocks[i], la.scal(ctx.neg(1), step(blocks[i + 1]), ctx), ctx))
        return np.concatenate(out)

    L = _fp_linearize(ctx, d, dim * (depth + 1))
    return la.rank(L, get_field(ctx.p, 1)) == ctx.m * dim * depth


def prosystem_limits(S):
    """(dim of the inverse limit, dim of lim^1) for a levelwise finite tower."""
    if S.op is not None:
        T = S.op
        lim = ss_rank(T)
        ok = lim1_vanishes(T.apply, T.ctx, T.n)
        if not ok:
            raise AssertionError("difference map not surjective on a finite tower")
        return lim, 0
    ctx = S.ctx
    last = la.as_matrix(S.maps[-1])
    if last.shape[0] != last.shape[1]:
        raise ConfigurationError("the repeating transfer must be an endomorphism")
    n = last.shape[0]
    P = la.identity(n)
    for _ in range(n):
        P = la.matmul(P, last, ctx)
    lim = la.rank(P, ctx) if n else 0
    step = (lambda v: la.matvec(last, v, ctx))
    if not lim1_vanishes(step, ctx, n):
        raise AssertionError("difference map not surjective on a finite tower")
    return lim, 0
