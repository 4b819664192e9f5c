"""Cech cohomology for the cover {U0, U1}.

Scalar classes in H^1(X, O) are read off in the basis [y x^-j], j = g..1.
Bundles are given by a transition matrix A over O(U01): a section is a
pair (s0, s1) with s0 = A s1, a 1-cocycle is any c in O(U01)^n and the
coboundaries are h0 - A h1.

All spaces are computed by exact linear algebra over finite monomial
windows.  The windows are bounded by valuations at O and at infinity, so
H^0 computations are exact; for H^1 the truncated quotient dimension only
grows with the window and is capped by the Riemann-Roch value, which
makes the stopping rule a certificate rather than a heuristic.
"""

from functools import cached_property

import numpy as np

from .algebra import linalg as la
from .errors import (ConfigurationError, ConsistencyError, GaugeMissing,
                     GluingViolated, WindowNotStabilized)
from .semilinear import SemilinearOp


# ---- H^1(X, O) -------------------------------------------------------------

def h1_normal_form(u, X=None):
    """Coordinates (beta_g, ..., beta_1) of [u] on the classes [y x^-j]."""
    X = X or u.curve
    return tuple(u.B.coeff(-j) for j in range(X.g, 0, -1))


def class_rep(X, coords):
    """The representative sum beta_j y x^-j of a normal form."""
    u = X.zero()
    for j, c in zip(range(X.g, 0, -1), coords):
        if c:
            u = u + X.y_x_pow(-j, c)
    return u


def is_coboundary(u, X=None):
    """(True, (h0, h1)) with u = h0 + h1 when [u] = 0, else (False, None).

    h0 collects the terms regular on U0, h1 the rest."""
    X = X or u.curve
    if any(h1_normal_form(u, X)):
        return False, None
    h0 = u.regular_part()
    h1 = u - h0
    if not (X.in_U0(h0) and X.in_U1(h1)):
        raise ConsistencyError("coboundary split left the charts")
    return True, (h0, h1)


def frobenius_on_h1_O(coords, X):
    """Class of u^p for u representing ``coords``."""
    return h1_normal_form(class_rep(X, coords).frobenius(), X)


def frobenius_h1_O_op(X):
    """The p-linear operator of Frobenius on H^1(X, O) in normal-form coordinates."""
    g = X.g
    cols = []
    for k in range(g):
        e = [0] * g
        e[k] = 1
        cols.append(frobenius_on_h1_O(e, X))
    return SemilinearOp(X.ctx, np.array(cols, dtype=np.int64).T, 1)


def serre_pairing_matrix(X):
    return X.serre_pairing_matrix()


# ---- matrices over O(U01) ---------------------------------------------------

def mat_mul(P, Q):
    n, k, m = len(P), len(Q), len(Q[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                if P[i][t] and Q[t][j]:
                    term = P[i][t] * Q[t][j]
                    acc = term if acc is None else acc + term
            row.append(acc if acc is not None else P[i][0].curve.zero())
        out.append(row)
    return out


def mat_vec(P, v):
    X = v[0].curve
    out = []
    for row in P:
        acc = X.zero()
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def mat_eq(P, Q):
    return all(a == b for r, s in zip(P, Q) for a, b in zip(r, s))


def mat_frobenius(P, times=1):
    return [[u.frobenius(times) for u in row] for row in P]


def mat_transpose(P):
    return [list(r) for r in zip(*P)]


def identity_matrix(X, n):
    return [[X.one() if i == j else X.zero() for j in range(n)] for i in range(n)]


def _unit_inverse(u):
    """Inverse of a unit c x^k of O(U01), or None."""
    X = u.curve
    if u.B or len(u.A.terms) != 1:
        return None
    (k, c), = u.A.terms.items()
    return X.x_pow(-k, X.ctx.inv(c))


def _is_upper(P):
    return all(not P[i][j] for i in range(len(P)) for j in range(i))


def mat_inverse(P):
    """Inverse over O(U01) of a triangular matrix with unit diagonal, or of
    a small matrix with unit determinant."""
    n = len(P)
    X = P[0][0].curve
    if _is_upper(P) or _is_upper(mat_transpose(P)):
        lower = not _is_upper(P)
        U = mat_transpose(P) if lower else P
        d = [_unit_inverse(U[i][i]) for i in range(n)]
        if any(x is None for x in d):
            raise ConfigurationError("transition matrix has a non-unit diagonal entry")
        inv = [[X.zero() for _ in range(n)] for _ in range(n)]
        for j in range(n):
            inv[j][j] = d[j]
            for i in range(j - 1, -1, -1):
                acc = X.zero()
                for k in range(i + 1, j + 1):
                    if U[i][k] and inv[k][j]:
                        acc = acc + U[i][k] * inv[k][j]
                inv[i][j] = -(d[i] * acc) if acc else acc
        return mat_transpose(inv) if lower else inv
    if n > 3:
        raise ConfigurationError("only triangular transition matrices are supported beyond rank 3")
    det = mat_det(P)
    dinv = _unit_inverse(det)
    if dinv is None:
        raise ConfigurationError("transition matrix is not invertible over O(U01)")
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[P[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            m = mat_det(minor) if minor else X.one()
            adj[j][i] = m if (i + j) % 2 == 0 else -m
    return [[dinv * a for a in row] for row in adj]


def mat_det(P):
    n = len(P)
    if n == 1:
        return P[0][0]
    if _is_upper(P) or _is_upper(mat_transpose(P)):
        d = P[0][0]
        for i in range(1, n):
            d = d * P[i][i]
        return d
    total = None
    for j in range(n):
        minor = [[P[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = P[0][j] * mat_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


# ---- bundles ----------------------------------------------------------------

class BundleCocycle:
    """Vector bundle with transition matrix A (s0 = A s1) and an optional
    gauge (g0, g1) with g0 A^(p) = A g1, i.e. a chartwise isomorphism F*E -> E."""

    def __init__(self, X, A, gauge=None):
        self.X = X
        self.A = [list(r) for r in A]
        self.n = len(self.A)
        if any(len(r) != self.n for r in self.A):
            raise ConfigurationError("transition matrix must be square")
        self.A_inv = mat_inverse(self.A)
        if not mat_eq(mat_mul(self.A, self.A_inv), identity_matrix(X, self.n)):
            raise ConsistencyError("computed inverse of the transition matrix is wrong")
        self.gauge = None
        if gauge is not None:
            self.set_gauge(*gauge)

    @classmethod
    def trivial(cls, X, n=1):
        I = identity_matrix(X, n)
        return cls(X, I, gauge=(I, I))

    def set_gauge(self, g0, g1):
        X = self.X
        for row in g0:
            for u in row:
                if not X.in_U0(u):
                    raise ConsistencyError("gauge g0 is not regular on U0")
        for row in g1:
            for u in row:
                if not X.in_U1(u):
                    raise ConsistencyError("gauge g1 is not regular on U1")
        lhs = mat_mul(g0, mat_frobenius(self.A))
        rhs = mat_mul(self.A, g1)
        if not mat_eq(lhs, rhs):
            raise ConsistencyError("gauge identity g0 A^(p) = A g1 fails")
        for G in (g0, g1):
            d = mat_det(G)
            if d.B or list(d.A.terms) != [0]:
                raise ConsistencyError("gauge matrix is not invertible on its chart")
        self.gauge = ([list(r) for r in g0], [list(r) for r in g1])

    def require_gauge(self):
        if self.gauge is None:
            raise GaugeMissing("this operation needs a Frobenius gauge")
        return self.gauge

    @cached_property
    def g0_inv(self):
        return mat_inverse(self.require_gauge()[0])

    @cached_property
    def degree(self):
        d = mat_det(self.A)
        if d.B or len(d.A.terms) != 1:
            raise ConfigurationError("determinant is not a unit")
        return -self.X.ord_inf(d)

    def dual(self):
        """E^dual with cocycle A^-T and gauge g0^-T, g1^-T."""
        A = mat_transpose(self.A_inv)
        gauge = None
        if self.gauge is not None:
            g0, g1 = self.gauge
            gauge = (mat_transpose(mat_inverse(g0)), mat_transpose(mat_inverse(g1)))
        return BundleCocycle(self.X, A, gauge)

    def euler_characteristic(self):
        return self.degree + self.n * (1 - self.X.g)

    def minord_inf_columns(self, M=None):
        """Per row j: min over k of ord_inf(M[j][k]) (nonzero entries)."""
        M = M or self.A
        out = []
        for row in M:
            vals = [self.X.ord_inf(u) for u in row if u]
            out.append(min(vals))
        return out

    @cached_property
    def h0(self):
        return SectionSpace(self, forms=False)

    @cached_property
    def h0_omega(self):
        return SectionSpace(self, forms=True)

    @cached_property
    def h1(self):
        return H1Bundle(self)


# ---- global sections ---------------------------------------------------------

def _vec_terms(vec):
    for j, u in enumerate(vec):
        for part, e, c in u.terms():
            yield (j, part, e), c


class SectionSpace:
    """H^0(E) or H^0(Omega (x) E).  A section is stored by its U0 vector s0
    (for forms, the coefficient vector h of h . dx/y)."""

    def __init__(self, bundle, forms=False):
        self.bundle = bundle
        self.forms = forms
        X = bundle.X
        self.X, self.ctx, self.n = X, X.ctx, bundle.n
        shift = 2 * (X.g - 1) if forms else 0
        bounds = [b - shift for b in bundle.minord_inf_columns()]
        self.cols = [(j, part, e) for j, b in enumerate(bounds)
                     for part, e in X.U0_monomials(b)]
        self.index = {c: i for i, c in enumerate(self.cols)}
        self._solve()

    def _u1_image(self, vec):
        """The U1 test vector: A^-1 s0, times x^(1-g) for forms."""
        w = mat_vec(self.bundle.A_inv, vec)
        if self.forms:
            w = [u.shift(1 - self.X.g) for u in w]
        return w

    def _bad_terms(self, vec):
        X = self.X
        bad = {}
        for j, u in enumerate(self._u1_image(vec)):
            for part, e, c in u.terms():
                if (part == 0 and e > 0) or (part == 1 and e > X.b1_bound):
                    bad[(j, part, e)] = c
        return bad

    def _unit(self, col):
        X = self.X
        j, part, e = col
        vec = [X.zero() for _ in range(self.n)]
        vec[j] = X.monomial(part, e)
        return vec

    def _solve(self):
        rows_idx = {}
        entries = []
        for k, col in enumerate(self.cols):
            for key, c in self._bad_terms(self._unit(col)).items():
                r = rows_idx.setdefault(key, len(rows_idx))
                entries.append((r, k, c))
        M = np.zeros((len(rows_idx), len(self.cols)), dtype=np.int64)
        for r, k, c in entries:
            M[r, k] = c
        if len(rows_idx):
            basis = la.nullspace(M, self.ctx, len(self.cols))
        else:
            basis = np.eye(len(self.cols), dtype=np.int64)
            if len(basis):
                basis, _ = la.rref(basis, self.ctx)
        self.basis_rows = basis
        self.pivots = [int(np.nonzero(r)[0][0]) for r in basis]
        self.dim = len(basis)

    def vector(self, row):
        X = self.X
        vec = [X.zero() for _ in range(self.n)]
        for k, c in enumerate(row):
            if c:
                j, part, e = self.cols[k]
                vec[j] = vec[j] + X.monomial(part, e, int(c))
        return vec

    @cached_property
    def basis(self):
        return [self.vector(r) for r in self.basis_rows]

    def to_row(self, vec):
        row = np.zeros(len(self.cols), dtype=np.int64)
        for key, c in _vec_terms(vec):
            k = self.index.get(key)
            if k is None:
                raise GluingViolated(f"section term {key} lies outside the valuation window")
            row[k] = c
        return row

    def coords(self, vec):
        """Coordinates of a section in the basis; GluingViolated if vec is
        not a global section."""
        row = self.to_row(vec)
        t = row[self.pivots] if self.dim else np.zeros(0, dtype=np.int64)
        recon = la.matmul(t.reshape(1, -1), self.basis_rows, self.ctx).ravel() if self.dim \
            else np.zeros(len(self.cols), dtype=np.int64)
        if not np.array_equal(recon, row):
            raise GluingViolated("vector does not satisfy the transition relation")
        return t

    def contains(self, vec):
        try:
            self.coords(vec)
            return True
        except GluingViolated:
            return False

    def combination(self, coeffs):
        row = la.matmul(np.asarray(coeffs, dtype=np.int64).reshape(1, -1),
                        self.basis_rows, self.ctx).ravel()
        return self.vector(row)

    def frobenius_op(self):
        """s -> g0 s^p on H^0(E), as a p-linear operator."""
        if self.forms:
            raise ConfigurationError("Frobenius acts on H^0(E), not on forms")
        g0 = self.bundle.require_gauge()[0]
        cols = [self.coords(mat_vec(g0, [u.frobenius() for u in s])) for s in self.basis]
        M = np.array(cols, dtype=np.int64).T if cols else np.zeros((0, 0), dtype=np.int64)
        return SemilinearOp(self.ctx, M, 1)


# ---- H^1 of a bundle -------------------------------------------------------

class _Level:
    """Linear data at truncation depth D: principal parts with exponents in
    [-D, -1] modulo the principal parts of A h1 that land there."""

    def __init__(self, H, D):
        self.D = D
        b = H.bundle
        X, ctx, n = b.X, b.X.ctx, b.n
        self.cols = [(j, e, part) for j in range(n) for e in range(-D, 0) for part in (0, 1)]
        self.index = {c: i for i, c in enumerate(self.cols)}
        self.window = []
        for k in range(n):
            vals = [X.ord_O(u) for u in (b.A_inv[k][j] for j in range(n)) if u]
            bound = -2 * D + min(vals)
            self.window.extend((k, part, e) for part, e in H.u1_monomials_ordO(bound))
        head = np.zeros((len(self.window), len(self.cols)), dtype=np.int64)
        tails = {}
        tail_entries = []
        for w, (k, part, e) in enumerate(self.window):
            for (j, part2, e2), c in H.image_terms(k, part, e):
                if e2 >= 0:
                    continue
                i = self.index.get((j, e2, part2))
                if i is not None:
                    head[w, i] = c
                else:
                    t = tails.setdefault((j, e2, part2), len(tails))
                    tail_entries.append((w, t, c))
        tail = np.zeros((len(self.window), len(tails)), dtype=np.int64)
        for w, t, c in tail_entries:
            tail[w, t] = c
        self.head, self.tail, self.tails = head, tail, tails
        if len(tails) and len(self.window):
            lam = la.nullspace(tail.T, ctx, len(self.window))
            S = la.matmul(lam, head, ctx) if len(lam) else np.zeros((0, len(self.cols)), dtype=np.int64)
        else:
            S = head
        if len(S):
            R, piv = la.rref(S, ctx)
            R = R[:len(piv)]
        else:
            R, piv = np.zeros((0, len(self.cols)), dtype=np.int64), []
        self.R, self.piv = R, piv
        self.dim = len(self.cols) - len(piv)
        self.ctx = ctx

    def reduce(self, row):
        if not len(self.piv):
            return row
        coeff = row[self.piv].reshape(1, -1)
        return la.add(row, la.scal(self.ctx.neg(1), la.matmul(coeff, self.R, self.ctx).ravel(), self.ctx), self.ctx)


class H1Bundle:
    """H^1(X, E) as principal parts modulo {(A h1)_-}."""

    MAX_STEPS = 16

    def __init__(self, bundle):
        self.bundle = bundle
        X = bundle.X
        self.X, self.ctx, self.n = X, X.ctx, bundle.n
        self._image_cache = {}
        self._levels = {}
        self.h0 = bundle.h0.dim
        self.target = self.h0 - bundle.euler_characteristic()
        emax = 0
        for M in (bundle.A, bundle.A_inv):
            for row in M:
                for u in row:
                    for _, e, _ in u.terms():
                        emax = max(emax, abs(e))
        step = X.g + 1
        D = step + emax
        for _ in range(self.MAX_STEPS):
            lvl = self.level(D)
            if lvl.dim > self.target:
                raise ConsistencyError(
                    f"truncated H^1 has dimension {lvl.dim} above the Riemann-Roch value {self.target}")
            if lvl.dim == self.target:
                confirm = self.level(D + step)
                if confirm.dim != self.target:
                    raise WindowNotStabilized(
                        f"dimension moved from {lvl.dim} to {confirm.dim} after enlarging the window")
                break
            D += step
        else:
            raise WindowNotStabilized(
                f"H^1 window reached depth {D} with dimension {lvl.dim} < {self.target}")
        self.D = D
        self.dim = lvl.dim
        self.basis_cols = [c for i, c in enumerate(lvl.cols) if i not in set(lvl.piv)]
        self.basis = [self._col_vector(c) for c in self.basis_cols]

    # building blocks -----------------------------------------------------------

    def u1_monomials_ordO(self, bound):
        """Monomials (part, exp) of O(U1) with ord_O >= bound."""
        g = self.X.g
        out = []
        i = 0
        while -2 * i >= bound:
            out.append((0, -i))
            i += 1
        i = g + 1
        while -2 * i + 1 >= bound:
            out.append((1, -i))
            i += 1
        return out

    def image_terms(self, k, part, e):
        key = (k, part, e)
        hit = self._image_cache.get(key)
        if hit is None:
            X = self.X
            mono = X.monomial(part, e)
            hit = []
            for j in range(self.n):
                a = self.bundle.A[j][k]
                if a:
                    for part2, e2, c in (a * mono).terms():
                        hit.append(((j, part2, e2), c))
            self._image_cache[key] = hit
        return hit

    def level(self, D):
        lvl = self._levels.get(D)
        if lvl is None:
            lvl = self._levels[D] = _Level(self, D)
        return lvl

    def _col_vector(self, col):
        X = self.X
        j, e, part = col
        vec = [X.zero() for _ in range(self.n)]
        vec[j] = X.monomial(part, e)
        return vec

    @staticmethod
    def depth(vec):
        d = 0
        for u in vec:
            for _, e, _ in u.terms():
                d = max(d, -e)
        return d

    def _row(self, lvl, vec):
        row = np.zeros(len(lvl.cols), dtype=np.int64)
        for j, u in enumerate(vec):
            for part, e, c in u.terms():
                if e < 0:
                    row[lvl.index[(j, e, part)]] = c
        return row

    # public ----------------------------------------------------------------------

    def coords(self, vec):
        """Coordinates of the class of a cocycle in ``self.basis``."""
        D = max(self.D, self.depth(vec))
        lvl = self.level(D)
        r = lvl.reduce(self._row(lvl, vec))
        if not self.dim:
            if np.any(r):
                raise ConsistencyError("nonzero class in a zero H^1")
            return np.zeros(0, dtype=np.int64)
        key = ("basis", D)
        B = self._levels.get(key)
        if B is None:
            B = np.array([lvl.reduce(self._row(lvl, b)) for b in self.basis], dtype=np.int64)
            self._levels[key] = B
        t = la.solve(B.T, r, self.ctx)
        if t is None:
            raise ConsistencyError("class not in the span of the computed basis")
        return t

    def is_zero(self, vec):
        return not np.any(self.coords(vec))

    def combination(self, coeffs):
        X = self.X
        vec = [X.zero() for _ in range(self.n)]
        for c, b in zip(coeffs, self.basis):
            if c:
                vec = [u + v.scale(int(c)) for u, v in zip(vec, b)]
        return vec

    def coboundary_witness(self, vec):
        """(h0, h1) with vec = h0 - A h1, or None if the class is nonzero."""
        if not self.is_zero(vec):
            return None
        X, ctx = self.X, self.ctx
        D = max(self.D, self.depth(vec))
        lvl = self.level(D)
        # full principal-part coordinates: head then tails
        ncol = len(lvl.cols) + len(lvl.tails)
        V = np.zeros((len(lvl.window), ncol), dtype=np.int64)
        V[:, :len(lvl.cols)] = lvl.head
        V[:, len(lvl.cols):] = lvl.tail
        rhs = np.zeros(ncol, dtype=np.int64)
        rhs[:len(lvl.cols)] = self._row(lvl, vec)
        rhs = la.scal(ctx.neg(1), rhs, ctx)
        lam = la.solve(V.T, rhs, ctx)
        if lam is None:
            raise ConsistencyError("zero class without a coboundary witness in the window")
        h1 = [X.zero() for _ in range(self.n)]
        for c, (k, part, e) in zip(lam, lvl.window):
            if c:
                h1[k] = h1[k] + X.monomial(part, e, int(c))
        Ah1 = mat_vec(self.bundle.A, h1)
        h0 = [u + v for u, v in zip(vec, Ah1)]
        if not all(X.in_U0(u) for u in h0) or not all(X.in_U1(u) for u in h1):
            raise ConsistencyError("coboundary witness failed its chart check")
        return h0, h1

    def frobenius_image(self, vec):
        g0 = self.bundle.require_gauge()[0]
        return mat_vec(g0, [u.frobenius() for u in vec])

    def frobenius_op(self):
        """[c] -> [g0 c^p] as a p-linear operator on the coordinates."""
        cols = [self.coords(self.frobenius_image(b)) for b in self.basis]
        M = np.array(cols, dtype=np.int64).T if cols else np.zeros((0, 0), dtype=np.int64)
        return SemilinearOp(self.ctx, M, 1)


def h1_bundle_basis(bundle, X=None):
    return bundle.h1


def bundle_pairing(c, s):
    """Residue pairing <c, s> = res_O(c^T s) between H^1(E) and H^0(Omega (x) E^dual)."""
    X = c[0].curve
    total = X.zero()
    for a, b in zip(c, s):
        if a and b:
            total = total + a * b
    return X.residue_at_O(total)
