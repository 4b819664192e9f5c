"""The Cartier operator on forms c . dx/y, the Hasse-Witt matrix, and the
twisted Cartier map C_sigma on global sections of Omega (x) E."""

from dataclasses import dataclass

import numpy as np

from .algebra import LaurentPoly
from .algebra import linalg as la
from .cech import mat_frobenius, mat_vec
from .errors import ConsistencyError, GluingViolated
from .semilinear import SemilinearOp, fitting, op_iterate


def cartier_monomial(B):
    """C(B(x) dx) as a polynomial times dx: c x^(pj+p-1) -> c^(1/p) x^j."""
    ctx = B.ctx
    p = ctx.p
    out = {}
    for e, c in B.terms.items():
        if (e + 1) % p == 0:
            out[(e + 1) // p - 1] = ctx.frob(c, -1)
    return LaurentPoly._raw(ctx, out)


def cartier_chart(c, X=None):
    """C applied to the form c . dx/y, returned again as a coefficient of dx/y.

    With c = A + B y the form is A dx/y + B dx; the first piece becomes
    (1/y) C(A f^((p-1)/2) dx) and the second C(B dx)."""
    X = X or c.curve
    A = cartier_monomial(c.A * X.f_half) if c.A else c.A
    B = cartier_monomial(c.B) if c.B else c.B
    return X.fn(A, B)


@dataclass
class HasseWittData:
    matrix: np.ndarray
    p_rank: int
    ordinary: bool
    op: SemilinearOp

    @property
    def supersingular(self):
        return self.p_rank == 0


def hasse_witt(X):
    """Matrix of C on the basis x^i dx/y (i = 0..g-1); column i is C(x^i dx/y)."""
    g = X.g
    cols = []
    for i in range(g):
        img = cartier_chart(X.x_pow(i), X)
        if img.B or any(not 0 <= e < g for e in img.A.terms):
            raise ConsistencyError("Cartier image of a regular form is not regular")
        cols.append([img.A.coeff(k) for k in range(g)])
    M = np.array(cols, dtype=np.int64).T
    op = SemilinearOp(X.ctx, M, -1)
    r = fitting(op).ss_rank
    return HasseWittData(M, r, r == g, op)


def omega_twist_sections(bundle, X=None):
    return bundle.h0_omega


def cartier_vec(vec):
    return [cartier_chart(u) for u in vec]


def c_sigma(bundle, h):
    """C_sigma(h) = C(g0^-1 h) componentwise (no membership check)."""
    g0_inv = bundle.g0_inv
    return cartier_vec(mat_vec(g0_inv, h))


def twisted_cartier_matrix(bundle):
    """C_sigma on H^0(Omega (x) E) as a p^-1-linear operator.

    Each image is checked against the transition relation for A; a failure
    raises GluingViolated."""
    bundle.require_gauge()
    S = bundle.h0_omega
    cols = []
    for h in S.basis:
        pulled = mat_vec(bundle.g0_inv, h)
        _check_pullback_section(bundle, pulled)
        cols.append(S.coords(cartier_vec(pulled)))
    M = np.array(cols, dtype=np.int64).T if cols else np.zeros((0, 0), dtype=np.int64)
    return SemilinearOp(bundle.X.ctx, M, -1)


def _check_pullback_section(bundle, s, times=1):
    """s must be a section of Omega (x) F^times* E: regular on U0 and
    x^(1-g) (A^(p^times))^-1 s regular on U1."""
    X = bundle.X
    if not all(X.in_U0(u) for u in s):
        raise GluingViolated("pulled-back section is not regular on U0")
    Ainv_p = mat_frobenius(bundle.A_inv, times)
    w = mat_vec(Ainv_p, s)
    if not all(X.in_U1(u.shift(1 - X.g)) for u in w):
        raise GluingViolated("pulled-back section does not glue over U1")


@dataclass
class AtLeast:
    bound: int

    def __int__(self):
        return self.bound

    def __repr__(self):
        return f">={self.bound}"


def chain_power(bundle, h, n):
    """C^n(S_n h) with S_n = (g0^-1)^(p^(n-1)) ... (g0^-1)^(p) g0^-1: the
    composite of n Cartier maps across the Frobenius pullbacks."""
    g0_inv = bundle.g0_inv
    s = h
    for i in range(n):
        s = mat_vec(mat_frobenius(g0_inv, i) if i else g0_inv, s)
    _check_pullback_section(bundle, s, n)
    for _ in range(n):
        s = cartier_vec(s)
    return s


def nilpotency_order(bundle, n_max=None, chain_check=True, chain_max=3):
    """Least n with C_sigma^n = 0 on the nilpotent Fitting part of
    H^0(Omega (x) E).  Returns an int, or AtLeast(n_max) when the order
    exceeds n_max."""
    op = twisted_cartier_matrix(bundle)
    fit = fitting(op)
    order = fit.nil_index
    if chain_check:
        verify_chain(bundle, op, min(order + 1, chain_max))
    if n_max is not None and order > n_max:
        return AtLeast(n_max)
    return order


def verify_chain(bundle, op, n_top):
    """Compare C_sigma^n from matrix products against the composite of
    Cartier maps across the pullbacks, on every basis vector."""
    S = bundle.h0_omega
    ctx = bundle.X.ctx
    for n in range(1, n_top + 1):
        P = op_iterate(op, n)
        for k, h in enumerate(S.basis):
            e = np.zeros(S.dim, dtype=np.int64)
            e[k] = 1
            expect = la.matvec(P, la.apply_frob(e.reshape(1, -1), ctx, -n).ravel(), ctx)
            got = S.coords(chain_power(bundle, h, n))
            if not np.array_equal(got, expect):
                raise ConsistencyError(f"chain composite disagrees with C_sigma^{n}")
    return True


def nilpotency_under_rescaling(bundle):
    """Nilpotency order for every F_p^x multiple of the gauge."""
    from .cech import BundleCocycle
    X = bundle.X
    g0, g1 = bundle.require_gauge()
    out = {}
    for lam in range(1, X.ctx.p):
        G0 = [[u.scale(lam) for u in r] for r in g0]
        G1 = [[u.scale(lam) for u in r] for r in g1]
        B = BundleCocycle(X, bundle.A, (G0, G1))
        out[lam] = nilpotency_order(B, chain_check=False)
    return out


__all__ = ["AtLeast", "HasseWittData", "cartier_chart", "cartier_monomial",
           "c_sigma", "hasse_witt", "nilpotency_order", "omega_twist_sections",
           "twisted_cartier_matrix"]
