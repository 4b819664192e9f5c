"""The tower E_1 = O, E_2, E_3, ... of Frobenius-invariant unipotent bundles.

Each E_(n+1) is the extension of O by E_n along a Frobenius-fixed class
c in H^1(E_n), with transition matrix [[A_n, c], [0, 1]].  The fixed
class is normalized so that its lower entries repeat the previous column,
which keeps every A_n upper-triangular Toeplitz, and its top entry is
replaced by a normal form in H^1(O).
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import embedding
from .algebra import linalg as la
from .cech import (BundleCocycle, class_rep, frobenius_h1_O_op, h1_normal_form,
                   identity_matrix, mat_vec)
from .errors import ClassNotFixed, ConfigurationError, GaugeUnsolvable, NoFixedClass
from .semilinear import fitting, fixed_space

MAX_DEPTH = 8


@dataclass
class TowerLevel:
    n: int
    bundle: BundleCocycle
    extension_class: list = None
    ss_dim: int = None
    info: dict = field(default_factory=dict)

    @property
    def X(self):
        return self.bundle.X

    @property
    def A(self):
        return self.bundle.A


def solve_fixed_cocycle(X, max_ext=8):
    """Fixed point (a, b, ...) of Frobenius on H^1(O) in normal-form
    coordinates, with the field it lives in."""
    op = frobenius_h1_O_op(X)
    if fitting(op).ss_rank == 0:
        raise NoFixedClass("Frobenius on H^1(O) is nilpotent (p-rank 0)")
    fs = fixed_space(op, max_ext)
    return tuple(fs.representative), fs.field


def _map_matrix(P, curve, table):
    return [[u.map_field(curve, table) for u in row] for row in P]


def base_change_bundle(bundle, curve):
    if curve.ctx is bundle.X.ctx:
        return bundle
    table = embedding(bundle.X.ctx, curve.ctx)
    A = _map_matrix(bundle.A, curve, table)
    gauge = None
    if bundle.gauge is not None:
        gauge = tuple(_map_matrix(G, curve, table) for G in bundle.gauge)
    return BundleCocycle(curve, A, gauge)


def solve_gauge(A, X=None):
    """Unipotent (g0, g1) with g0 A^(p) = A g1 for an upper unitriangular A,
    solved column by column from coboundary witnesses."""
    A = [list(r) for r in A]
    n = len(A)
    X = X or A[0][0].curve
    if n == 1:
        if A[0][0] != X.one():
            raise GaugeUnsolvable("rank-one cocycle is not trivial")
        I = identity_matrix(X, 1)
        return I, I
    lead = BundleCocycle(X, [r[:n - 1] for r in A[:n - 1]])
    g0, g1 = solve_gauge(lead.A, X)
    lead.set_gauge(g0, g1)
    c = [A[i][n - 1] for i in range(n - 1)]
    G0, G1 = _extend_gauge(lead, c)
    return G0, G1


def _extend_gauge(lead, c):
    """Gauge of [[A, c], [0, 1]] from the gauge of A: needs
    g0 c^p - c = w0 - A w1, then G0 = [[g0, -w0], [0, 1]], G1 = [[g1, -w1], [0, 1]]."""
    X = lead.X
    g0, g1 = lead.gauge
    n = lead.n
    defect = [a - b for a, b in zip(lead.h1.frobenius_image(c), c)]
    wit = lead.h1.coboundary_witness(defect)
    if wit is None:
        raise GaugeUnsolvable("g0 c^p - c is not a coboundary")
    w0, w1 = wit
    G0 = [list(g0[i]) + [-w0[i]] for i in range(n)] + [[X.zero()] * n + [X.one()]]
    G1 = [list(g1[i]) + [-w1[i]] for i in range(n)] + [[X.zero()] * n + [X.one()]]
    return G0, G1


def extend(level, c):
    """Level n+1 from a Frobenius-fixed cocycle c in H^1(E_n)."""
    lead = level.bundle
    X = lead.X
    n = lead.n
    if len(c) != n:
        raise ConfigurationError("class has the wrong rank")
    fixed = [a - b for a, b in zip(lead.h1.frobenius_image(c), c)]
    if not lead.h1.is_zero(fixed):
        raise ClassNotFixed("the class is not fixed by Frobenius")
    A = [list(lead.A[i]) + [c[i]] for i in range(n)] + [[X.zero()] * n + [X.one()]]
    G0, G1 = _extend_gauge(lead, c)
    bundle = BundleCocycle(X, A, (G0, G1))
    return TowerLevel(n + 1, bundle, list(c))


def fixed_class_in_h1(level, max_ext=8):
    """A Frobenius-fixed class of H^1(E_n) and the dimension of the
    semisimple part.  Returns (coords, field, ss_dim)."""
    H = level.bundle.h1
    op = H.frobenius_op()
    ss = fitting(op).ss_rank
    if ss == 0:
        raise NoFixedClass("Frobenius on H^1(E_n) is nilpotent")
    fs = fixed_space(op, max_ext)
    level.ss_dim = ss
    return fs.representative, fs.field, ss


def normalize_class(level, c, prev_col):
    """Rescale c and add a coboundary so that c[1:] equals ``prev_col``
    (the last column of A_n above the diagonal) and c[0] is in normal form."""
    bundle = level.bundle
    X = bundle.X
    ctx = X.ctx
    n = bundle.n
    if n == 1:
        return [class_rep(X, h1_normal_form(c[0], X))]
    quot = BundleCocycle(X, [r[1:] for r in bundle.A[1:]])
    Hq = quot.h1
    lower = c[1:]
    t_c = Hq.coords(lower)
    t_p = Hq.coords(prev_col)
    k = next((i for i in range(len(t_p)) if t_p[i]), None)
    if k is None or not t_c[k]:
        raise ConfigurationError("fixed class does not project onto the previous class")
    lam = ctx.div(int(t_p[k]), int(t_c[k]))
    c = [u.scale(lam) for u in c]
    if not np.array_equal(la.scal(lam, t_c, ctx), t_p):
        raise ConfigurationError("fixed class projects onto a different class")
    d = [a - b for a, b in zip(c[1:], prev_col)]
    wit = Hq.coboundary_witness(d)
    if wit is None:
        raise ConfigurationError("projection differs by a nonzero class")
    h0q, h1q = wit
    # subtract the coboundary (0, h0q) - A (0, h1q)
    h1 = [X.zero()] + h1q
    Ah1 = mat_vec(bundle.A, h1)
    h0 = [X.zero()] + h0q
    c = [u - (a - b) for u, a, b in zip(c, h0, Ah1)]
    if any(a != b for a, b in zip(c[1:], prev_col)):
        raise ConfigurationError("normalization did not reproduce the previous column")
    c[0] = class_rep(X, h1_normal_form(c[0], X))
    return c


def build_tower(X, depth, max_ext=8):
    """Levels 1..depth.  The curve may be base-changed when a fixed class
    needs a larger field; the returned levels all live over the final field."""
    if depth < 1:
        raise ConfigurationError("tower depth must be at least 1")
    if depth > MAX_DEPTH:
        raise ConfigurationError(f"tower depth {depth} exceeds the cap {MAX_DEPTH}")
    levels = [TowerLevel(1, BundleCocycle.trivial(X))]
    while len(levels) < depth:
        top = levels[-1]
        coords, big, ss = fixed_class_in_h1(top, max_ext)
        if big is not top.X.ctx:
            curve = top.X.base_change(big)
            levels = [_rebase(lv, curve) for lv in levels]
            top = levels[-1]
        H = top.bundle.h1
        c = H.combination(coords)
        prev = [top.A[i][top.n - 1] for i in range(top.n - 1)]
        c = normalize_class(top, c, prev)
        top.ss_dim = ss
        levels.append(extend(top, c))
    return levels


def _rebase(level, curve):
    bundle = base_change_bundle(level.bundle, curve)
    table = embedding(level.X.ctx, curve.ctx)
    cls = None
    if level.extension_class is not None:
        cls = [u.map_field(curve, table) for u in level.extension_class]
    return TowerLevel(level.n, bundle, cls, level.ss_dim, dict(level.info))


def ss_dims(levels):
    out = []
    for lv in levels:
        op = lv.bundle.h1.frobenius_op()
        lv.ss_dim = fitting(op).ss_rank
        out.append(lv.ss_dim)
    return out


def inclusion_matrix(small, big):
    """H^1(E_a) -> H^1(E_b) induced by the first a coordinates (a <= b)."""
    Hs, Hb = small.bundle.h1, big.bundle.h1
    X = big.X
    pad = [X.zero()] * (big.n - small.n)
    cols = [Hb.coords(list(v) + pad) for v in Hs.basis]
    return np.array(cols, dtype=np.int64).T.reshape(Hb.dim, Hs.dim)


def projection_matrix(big, quot):
    """H^1(E_b) -> H^1(E_m) induced by the last m coordinates."""
    Hb, Hq = big.bundle.h1, quot.bundle.h1
    m = quot.n
    cols = [Hq.coords(list(v[-m:])) for v in Hb.basis]
    return np.array(cols, dtype=np.int64).T.reshape(Hq.dim, Hb.dim)


def ss_transfer_rank(small, big):
    """Rank of H^1(E_n)_ss -> H^1(E_(n+1)) induced by inclusion."""
    ctx = big.X.ctx
    fit = fitting(small.bundle.h1.frobenius_op())
    if not fit.ss_rank:
        return 0
    M = inclusion_matrix(small, big)
    img = la.matmul(M, fit.ss_basis.T, ctx)
    return la.rank(img.T, ctx)


def exact_sequence_check(levels, a, b):
    """Checks H^1(E_a) -> H^1(E_(a+b)) -> H^1(E_b) -> 0 is exact."""
    sub, mid, quot = levels[a - 1], levels[a + b - 1], levels[b - 1]
    ctx = mid.X.ctx
    # the blocks of A_(a+b) must be A_a and A_b
    if any(mid.A[i][j] != sub.A[i][j] for i in range(a) for j in range(a)):
        return {"ok": False, "reason": "upper-left block differs"}
    if any(mid.A[a + i][a + j] != quot.A[i][j] for i in range(b) for j in range(b)):
        return {"ok": False, "reason": "lower-right block differs"}
    inc = inclusion_matrix(sub, mid)
    pro = projection_matrix(mid, quot)
    comp = la.matmul(pro, inc, ctx) if inc.size and pro.size else np.zeros((pro.shape[0], inc.shape[1]))
    r_inc = la.rank(inc, ctx) if inc.size else 0
    r_pro = la.rank(pro, ctx) if pro.size else 0
    ok = (not np.any(comp)) and r_pro == quot.bundle.h1.dim and r_inc == mid.bundle.h1.dim - r_pro
    return {"ok": bool(ok), "rank_in": r_inc, "rank_out": r_pro,
            "dims": (sub.bundle.h1.dim, mid.bundle.h1.dim, quot.bundle.h1.dim)}
