"""Sparse Laurent polynomials in one variable over a finite field."""


class LaurentPoly:
    """Immutable map ``exponent -> nonzero coefficient``.

    Coefficients are field elements as ints of ``ctx``.  Never mutate
    ``terms`` after construction; results are always fresh objects.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, ctx, coeff, exp=0):
        return cls._raw(ctx, {exp: coeff} if coeff else {})

    @classmethod
    def zero(cls, ctx):
        return cls._raw(ctx, {})

    @classmethod
    def one(cls, ctx):
        return cls._raw(ctx, {0: 1})

    @classmethod
    def from_coeffs(cls, ctx, coeffs, start=0):
        """Dense list of ints (reduced into the prime field) from ``x^start``."""
        return cls(ctx, {start + i: ctx.from_int(c) for i, c in enumerate(coeffs)})

    # -- inspection --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, e):
        return self.terms.get(e, 0)

    def min_exp(self):
        return min(self.terms) if self.terms else None

    def max_exp(self):
        return max(self.terms) if self.terms else None

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ctx is other.ctx and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{e}" for e, c in self.items())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        ctx = self.ctx
        out = dict(self.terms)
        add = ctx.add
        for e, c in other.terms.items():
            v = add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(ctx, out)

    def __neg__(self):
        neg = self.ctx.neg
        return LaurentPoly._raw(self.ctx, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        ctx = self.ctx
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly._raw(ctx, {})
        if ctx.m == 1:
            p = ctx.p
            acc = {}
            get = acc.get
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    k = e1 + e2
                    acc[k] = get(k, 0) + c1 * c2
            return LaurentPoly._raw(ctx, {e: v % p for e, v in acc.items() if v % p})
        mul, add = ctx.mul, ctx.add
        acc = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                k = e1 + e2
                acc[k] = add(acc.get(k, 0), mul(c1, c2))
        return LaurentPoly._raw(ctx, {e: v for e, v in acc.items() if v})

    __rmul__ = __mul__

    def scale(self, c):
        if not c:
            return LaurentPoly._raw(self.ctx, {})
        mul = self.ctx.mul
        return LaurentPoly._raw(self.ctx, {e: mul(c, v) for e, v in self.terms.items()})

    def shift(self, k):
        """Multiply by x^k."""
        return LaurentPoly._raw(self.ctx, {e + k: c for e, c in self.terms.items()})

    def frobenius_twist(self, e):
        """Apply c -> c^(p^e) to every coefficient; exponents unchanged."""
        frob = self.ctx.frob
        return LaurentPoly._raw(self.ctx, {k: frob(c, e) for k, c in self.terms.items()})

    def ring_frobenius(self):
        """The p-th power in the ring: sum c^p x^(p*i)."""
        ctx = self.ctx
        p = ctx.p
        frob = ctx.frob
        return LaurentPoly._raw(ctx, {p * k: frob(c, 1) for k, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = LaurentPoly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def truncate(self, lo=None, hi=None):
        """Keep exponents in [lo, hi] (None = unbounded)."""
        return LaurentPoly._raw(self.ctx, {
            e: c for e, c in self.terms.items()
            if (lo is None or e >= lo) and (hi is None or e <= hi)})

    def map_coeffs(self, table, ctx):
        """Transport coefficients along a field embedding lookup table."""
        return LaurentPoly._raw(ctx, {e: table[c] for e, c in self.terms.items()})


def laurent_mul(q1, q2):
    return q1 * q2


def frobenius_twist(q, e):
    return q.frobenius_twist(e)
