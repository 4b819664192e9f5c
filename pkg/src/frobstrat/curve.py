"""Two-chart model of y^2 = f(x) with f(0) = 0, deg f = 2g + 1.

U0 is the affine chart (x, y) and contains the Weierstrass point O = (0, 0);
U1 is the chart at infinity with v = 1/x, w = y v^(g+1).  Functions on the
overlap are written ``A(x) + B(x) y`` with Laurent A, B.  Because
ord_O(x) = 2, ord_O(y) = 1, ord_inf(x) = -2 and ord_inf(y) = -(2g+1), the
monomials x^i and x^i y never share a valuation, which makes every
regularity question a question about exponent supports.
"""

import json
from functools import lru_cache

from .algebra import LaurentPoly, embedding, get_field
from .algebra.upoly import is_squarefree
from .errors import CurveSpecError, NotSmooth, PrecisionExhausted
from .series import LSeries, solve_local_coordinate, substitute_even


class CurveModel:
    """Validated curve y^2 = a_{2g+1} x^{2g+1} + ... + a_1 x over ``ctx``."""

    def __init__(self, ctx, g, coeffs):
        if g not in (1, 2):
            raise CurveSpecError(f"genus must be 1 or 2, got {g}")
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 2 * g + 1:
            raise CurveSpecError(f"genus {g} needs {2 * g + 1} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < ctx.q for c in coeffs):
            raise CurveSpecError("coefficients must be field elements")
        self.ctx, self.g, self.coeffs = ctx, g, coeffs
        if coeffs[0] == 0:
            raise NotSmooth("a_1 = 0: f has a double root at x = 0")
        if coeffs[-1] == 0:
            raise NotSmooth(f"leading coefficient a_{2 * g + 1} vanishes")
        if not is_squarefree(ctx, [0] + list(coeffs)):
            raise NotSmooth("f has a repeated root")
        self.f = LaurentPoly(ctx, {i + 1: c for i, c in enumerate(coeffs)})
        self.f_half = self.f ** ((ctx.p - 1) // 2)
        self.b1_bound = -(g + 1)

    @classmethod
    def from_ints(cls, p, g, ints, m=1):
        ctx = get_field(p, m)
        return cls(ctx, g, [ctx.from_int(c) for c in ints])

    def a(self, i):
        return self.coeffs[i - 1]

    def __repr__(self):
        return f"CurveModel({self.ctx}, g={self.g}, f={list(self.coeffs)})"

    def __eq__(self, other):
        return (isinstance(other, CurveModel) and self.ctx is other.ctx
                and self.g == other.g and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.m, self.g, self.coeffs))

    def key(self):
        return (self.ctx.p, self.ctx.m, self.g, self.coeffs)

    # -- curve spec format -----------------------------------------------

    def to_spec(self):
        ctx = self.ctx
        signed = [c if ctx.m > 1 or c <= ctx.p // 2 else c - ctx.p for c in self.coeffs]
        return {"p": ctx.p, "m": ctx.m, "g": self.g, "f": signed}

    def base_change(self, big):
        if big is self.ctx:
            return self
        table = embedding(self.ctx, big)
        return CurveModel(big, self.g, [table[c] for c in self.coeffs])

    # -- functions ---------------------------------------------------------

    def fn(self, A=None, B=None):
        z = LaurentPoly.zero(self.ctx)
        return ChartFunction(self, A if A is not None else z, B if B is not None else z)

    def const(self, c):
        return self.fn(LaurentPoly.monomial(self.ctx, c, 0))

    def one(self):
        return self.const(1)

    def zero(self):
        return self.fn()

    def x_pow(self, k, c=1):
        return self.fn(LaurentPoly.monomial(self.ctx, c, k))

    def y_x_pow(self, k, c=1):
        return self.fn(None, LaurentPoly.monomial(self.ctx, c, k))

    def monomial(self, part, exp, c=1):
        return self.x_pow(exp, c) if part == 0 else self.y_x_pow(exp, c)

    # valuations and regularity -------------------------------------------

    def ord_O(self, u):
        vals = []
        if u.A:
            vals.append(2 * u.A.min_exp())
        if u.B:
            vals.append(2 * u.B.min_exp() + 1)
        return min(vals) if vals else None

    def ord_inf(self, u):
        g = self.g
        vals = []
        if u.A:
            vals.append(-2 * u.A.max_exp())
        if u.B:
            vals.append(-2 * u.B.max_exp() - (2 * g + 1))
        return min(vals) if vals else None

    def in_U0(self, u):
        return all(e >= 0 for e in u.A.terms) and all(e >= 0 for e in u.B.terms)

    def in_U1(self, u):
        return all(e <= 0 for e in u.A.terms) and all(e <= self.b1_bound for e in u.B.terms)

    def form_regular_U0(self, c):
        return self.in_U0(c)

    def form_regular_U1(self, c):
        """c * dx/y is regular on U1; dx/y = -v^(g-1) dv/w there."""
        return self.in_U1(c * self.x_pow(1 - self.g))

    def U0_monomials(self, min_ord_inf):
        """Basis monomials (part, exp) of O(U0) with ord_inf >= min_ord_inf."""
        out = []
        i = 0
        while -2 * i >= min_ord_inf:
            out.append((0, i))
            i += 1
        i = 0
        while -2 * i - (2 * self.g + 1) >= min_ord_inf:
            out.append((1, i))
            i += 1
        return out

    def U1_monomials(self, max_ord_inf):
        """Basis monomials (part, exp) of O(U1) with ord_inf < max_ord_inf."""
        out = []
        i = 0
        while 2 * i < max_ord_inf:
            out.append((0, -i))
            i += 1
        i = self.g + 1
        while 2 * i - (2 * self.g + 1) < max_ord_inf:
            out.append((1, -i))
            i += 1
        return out

    # residues ---------------------------------------------------------------

    def _pole_budget(self, c):
        o = self.ord_O(c)
        return max(0, -o) if o is not None else 0

    def residue_at_O(self, c, precision=None):
        """Residue of c * dx/y at O, expanding in the uniformizer t = y."""
        return self._residue(c, precision, at_infinity=False)

    def residue_at_inf(self, c, precision=None):
        """Residue of c * dx/y at infinity, expanding in the uniformizer w."""
        return self._residue(c, precision, at_infinity=True)

    def _residue(self, c, precision, at_infinity):
        if c.is_zero():
            return 0
        if at_infinity:
            o = self.ord_inf(c)
            budget = max(0, -o + 2 * self.g) if o is not None else 0
        else:
            budget = self._pole_budget(c)
        n = precision if precision is not None else 4 * budget + 10
        for _ in range(4):
            try:
                return self._residue_at(c, n, at_infinity)
            except PrecisionExhausted:
                n *= 2
        raise PrecisionExhausted(f"residue needs more than {n // 2} terms")

    def _residue_at(self, c, n, at_infinity):
        ctx = self.ctx
        if not at_infinity:
            X = _local_coordinate(ctx, self.coeffs, n)
            x = substitute_even(X, ctx)
            t = LSeries.exact(ctx, [1], 1)
            y = t
            omega = x.derivative() * t.inverse()
        else:
            V = _local_coordinate(ctx, tuple(reversed(self.coeffs)), n)
            v = substitute_even(V, ctx)
            w = LSeries.exact(ctx, [1], 1)
            x = v.inverse()
            y = w * (v ** (-(self.g + 1)))
            # dx/y = -v^(g-1) dv / w
            omega = -(v ** (self.g - 1) * v.derivative() * w.inverse())
        total = _eval_laurent(c.A, x) + _eval_laurent(c.B, x) * y
        form = total * omega
        if form.prec <= -1:
            raise PrecisionExhausted("t^-1 coefficient not determined")
        return form.coeff(-1)

    # pairing --------------------------------------------------------------

    def serre_pairing_matrix(self):
        """Rows: classes [y x^-j] for j = g..1; columns: forms x^i dx/y, i = 0..g-1."""
        g = self.g
        return [[self.residue_at_O(self.y_x_pow(-j) * self.x_pow(i)) for i in range(g)]
                for j in range(g, 0, -1)]


@lru_cache(maxsize=256)
def _local_coordinate(ctx, coeffs, n):
    return solve_local_coordinate(ctx, list(coeffs), n)


def _eval_laurent(P, x):
    ctx = x.ctx
    if not P:
        return LSeries.exact(ctx, [])
    result = None
    xi = x.inverse() if P.min_exp() < 0 else None
    for e, c in P.items():
        term = (x ** e if e >= 0 else xi ** (-e)).scale(c)
        result = term if result is None else result + term
    return result


class ChartFunction:
    """Element A(x) + B(x) y of O(U01), kept reduced by y^2 = f(x)."""

    __slots__ = ("curve", "A", "B")

    def __init__(self, curve, A, B):
        self.curve, self.A, self.B = curve, A, B

    def is_zero(self):
        return not self.A and not self.B

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, ChartFunction):
            return self.A == other.A and self.B == other.B
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.A, self.B))

    def __repr__(self):
        return f"({self.A!r}) + ({self.B!r})*y"

    def __add__(self, other):
        return ChartFunction(self.curve, self.A + other.A, self.B + other.B)

    def __sub__(self, other):
        return ChartFunction(self.curve, self.A - other.A, self.B - other.B)

    def __neg__(self):
        return ChartFunction(self.curve, -self.A, -self.B)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        X = self.curve
        A = self.A * other.A
        if self.B and other.B:
            A = A + self.B * other.B * X.f
        B = self.A * other.B + self.B * other.A
        return ChartFunction(X, A, B)

    def scale(self, c):
        return ChartFunction(self.curve, self.A.scale(c), self.B.scale(c))

    def shift(self, k):
        return ChartFunction(self.curve, self.A.shift(k), self.B.shift(k))

    def __pow__(self, n):
        result = self.curve.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, times=1):
        """u -> u^(p^times) in the ring (y^p = y f^((p-1)/2))."""
        u = self
        for _ in range(times):
            X = u.curve
            A = u.A.ring_frobenius()
            B = u.B.ring_frobenius()
            u = ChartFunction(X, A, B * X.f_half if B else B)
        return u

    def principal_part(self):
        """Terms with negative exponent; u minus its O(U0) part."""
        return ChartFunction(self.curve, self.A.truncate(hi=-1), self.B.truncate(hi=-1))

    def regular_part(self):
        return ChartFunction(self.curve, self.A.truncate(lo=0), self.B.truncate(lo=0))

    def map_field(self, curve, table):
        return ChartFunction(curve, self.A.map_coeffs(table, curve.ctx),
                             self.B.map_coeffs(table, curve.ctx))

    def terms(self):
        """Iterate (part, exp, coeff) with part 0 = A, 1 = B."""
        for e, c in self.A.items():
            yield 0, e, c
        for e, c in self.B.items():
            yield 1, e, c


# ---- module-level operations ---------------------------------------------

def curve_validate(ctx, g, coeffs):
    return CurveModel(ctx, g, coeffs)


def fn_mul(u, v, X=None):
    return u * v


def chart_membership(u, chart):
    X = u.curve
    if chart in ("U0", 0):
        return X.in_U0(u)
    if chart in ("U1", 1):
        return X.in_U1(u)
    raise ValueError(chart)


def residue_at_O(c, X):
    return X.residue_at_O(c)


def delta_genus2(X):
    """Discriminant of f(x)/x for genus 2, as printed for characteristic 3."""
    ctx = X.ctx
    a1, a2, a3, a4, a5 = X.coeffs
    mul, add, sub = ctx.mul, ctx.add, ctx.sub

    def prod(*xs):
        r = 1
        for v in xs:
            r = mul(r, v)
        return r

    pos = [prod(a5, a5, a5, a1, a1, a1), prod(a5, a5, a3, a3, a1, a1),
           prod(a5, a4, a3, a3, a2, a1), prod(a5, a3, a3, a3, a3, a1),
           prod(a4, a4, a3, a3, a2, a2)]
    neg = [prod(a5, a3, a3, a3, a2, a2), prod(a4, a4, a4, a2, a2, a2),
           prod(a4, a4, a3, a3, a3, a1)]
    s = 0
    for v in pos:
        s = add(s, v)
    for v in neg:
        s = sub(s, v)
    return s


def delta_genus2_raw(ctx, coeffs):
    """Same discriminant, for coefficient tuples that may not define a curve."""

    class _Shim:
        pass

    shim = _Shim()
    shim.ctx, shim.coeffs = ctx, tuple(coeffs)
    return delta_genus2(shim)


def parse_curve_spec(text_or_obj):
    """Parse the JSON curve spec ``{"p", "m", "g", "f"}``."""
    if isinstance(text_or_obj, str):
        try:
            obj = json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise CurveSpecError(f"invalid curve JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    else:
        obj = text_or_obj
    if not isinstance(obj, dict):
        raise CurveSpecError("curve spec must be a JSON object")
    missing = [k for k in ("p", "g", "f") if k not in obj]
    if missing:
        raise CurveSpecError(f"curve spec missing keys: {missing}")
    p, m, g, f = obj["p"], obj.get("m", 1), obj["g"], obj["f"]
    for name, v in (("p", p), ("m", m), ("g", g)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise CurveSpecError(f"'{name}' must be an integer")
    if not isinstance(f, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in f):
        raise CurveSpecError("'f' must be a list of integers")
    ctx = get_field(p, m)
    return CurveModel(ctx, g, [ctx.from_int(c) for c in f])
