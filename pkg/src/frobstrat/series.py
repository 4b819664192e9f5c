"""Truncated Laurent series in one local parameter, with absolute precision.

A series knows its coefficients for exponents ``val <= e < prec``; anything
at or above ``prec`` is unknown.  Used only for residues.
"""

INF = 10 ** 9


class LSeries:
    __slots__ = ("ctx", "val", "coeffs", "prec")

    def __init__(self, ctx, val, coeffs, prec):
        self.ctx = ctx
        self.val = val
        self.prec = prec
        n = max(0, prec - val) if prec < INF else len(coeffs)
        self.coeffs = list(coeffs[:n]) + [0] * max(0, n - len(coeffs))

    @classmethod
    def exact(cls, ctx, coeffs, val=0):
        return cls(ctx, val, list(coeffs), INF)

    def coeff(self, e):
        if e >= self.prec:
            raise IndexError(f"coefficient t^{e} beyond precision {self.prec}")
        i = e - self.val
        if i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def normalized(self):
        c = self.coeffs
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        return LSeries(self.ctx, self.val + k, c[k:], self.prec)

    def __add__(self, other):
        ctx = self.ctx
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val)
        hi = prec if prec < INF else max(self.val + len(self.coeffs),
                                          other.val + len(other.coeffs))
        out = []
        for e in range(val, hi):
            out.append(ctx.add(self._get(e), other._get(e)))
        return LSeries(ctx, val, out, prec)

    def _get(self, e):
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __neg__(self):
        return LSeries(self.ctx, self.val, [self.ctx.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LSeries(self.ctx, self.val, [self.ctx.mul(c, a) for a in self.coeffs], self.prec)

    def shift(self, k):
        return LSeries(self.ctx, self.val + k, self.coeffs,
                       self.prec + k if self.prec < INF else INF)

    def __mul__(self, other):
        ctx = self.ctx
        a, b = self.normalized(), other.normalized()
        val = a.val + b.val
        prec = min(a.prec + b.val if a.prec < INF else INF,
                   b.prec + a.val if b.prec < INF else INF)
        n = (prec - val) if prec < INF else len(a.coeffs) + len(b.coeffs)
        out = [0] * max(n, 0)
        mul, add = ctx.mul, ctx.add
        for i, ai in enumerate(a.coeffs):
            if ai == 0 or i >= n:
                continue
            for j, bj in enumerate(b.coeffs):
                if i + j >= n:
                    break
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
        return LSeries(ctx, val, out, prec)

    def inverse(self):
        ctx = self.ctx
        a = self.normalized()
        if not a.coeffs or a.coeffs[0] == 0:
            raise ZeroDivisionError("series not invertible within precision")
        n = len(a.coeffs) if a.prec < INF else len(a.coeffs) + 32
        inv0 = ctx.inv(a.coeffs[0])
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            s = 0
            for j in range(1, min(k, len(a.coeffs) - 1) + 1):
                s = ctx.add(s, ctx.mul(a.coeffs[j], out[k - j]))
            out[k] = ctx.neg(ctx.mul(s, inv0))
        prec = -a.val + n if a.prec < INF else -a.val + n
        return LSeries(ctx, -a.val, out, prec)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = LSeries.exact(self.ctx, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self):
        ctx = self.ctx
        out = [ctx.mul(ctx.from_int(self.val + i), c) for i, c in enumerate(self.coeffs)]
        return LSeries(ctx, self.val - 1, out, self.prec - 1 if self.prec < INF else INF)


def solve_local_coordinate(ctx, coeffs, n):
    """Power series X(s) = sum_{k>=1} X_k s^k with sum_i coeffs[i-1] X^i = s,
    known modulo s^(n+1).  ``coeffs[0]`` must be nonzero."""
    c1inv = ctx.inv(coeffs[0])
    X = LSeries(ctx, 0, [0, c1inv], n + 1)
    for _ in range(n):
        acc = LSeries(ctx, 0, [], n + 1)
        power = X * X
        for c in coeffs[1:]:
            if c:
                acc = acc + power.scale(c)
            power = power * X
        s = LSeries(ctx, 0, [0, 1], n + 1)
        X = (s - acc).scale(c1inv)
        X = LSeries(ctx, 0, X.coeffs, n + 1)
    return X


def substitute_even(X, ctx):
    """Given X(s), return x(t) = X(t^2) as a series in t."""
    out = []
    for c in X.coeffs:
        out.extend([c, 0])
    return LSeries(ctx, X.val * 2, out, 2 * X.prec)
