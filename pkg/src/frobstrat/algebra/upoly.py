"""Dense univariate polynomials over a FieldContext (lists, constant first)."""


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def derivative(ctx, a):
    return trim([ctx.mul(ctx.from_int(i), c) for i, c in enumerate(a)][1:])


def polymod(ctx, a, b):
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = ctx.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = ctx.mul(a[-1], inv)
        s = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[s + i] = ctx.sub(a[s + i], ctx.mul(c, bi))
        a = trim(a)
    return a


def gcd(ctx, a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, polymod(ctx, a, b)
    if a:
        inv = ctx.inv(a[-1])
        a = [ctx.mul(c, inv) for c in a]
    return a


def is_squarefree(ctx, a):
    a = trim(a)
    if len(a) <= 1:
        return True
    return len(gcd(ctx, a, derivative(ctx, a))) == 1
