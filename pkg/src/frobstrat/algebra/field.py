"""Finite fields F_{p^m} of odd characteristic.

Elements are plain ints in ``range(q)``: the base-p digits of an element
are its coefficients on the power basis ``1, t, ..., t^(m-1)`` of
``F_p[t]/(modulus)``, constant digit first.  Arithmetic goes through
exp/log/Zech tables, so every operation is O(1).
"""

from functools import lru_cache

import numpy as np

from ..errors import BadCharacteristic, ConfigurationError

MAX_P = 13
MAX_ORDER = 1 << 22
_FULL_TABLE_LIMIT = 729


def _is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


# ---- dense polynomials over F_p (lists, constant term first) ------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv % p
        s = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[s + i] = (a[s + i] - c * fi) % p
    return a


def _pmulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, f, p)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_fp(f, p):
    """Rabin's test for a monic polynomial over F_p (constant term first)."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _trim(_pmod(_sub(_ppowmod(x, p ** m, f, p), x, p), f, p)):
        return False
    for r in _prime_factors(m):
        h = _sub(_ppowmod(x, p ** (m // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(u - v) % p for u, v in zip(a, b)])


def lowest_irreducible(p, m):
    """Lowest monic irreducible of degree m, ordered by the integer whose
    base-p digits are the lower coefficients."""
    if m == 1:
        return (0, 1)
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        if low[0] == 0:
            continue
        f = low + [1]
        if is_irreducible_fp(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


# ---- the field context ---------------------------------------------------

class FieldContext:
    """Arithmetic in F_{p^m}.  Obtain instances through :func:`get_field`;
    contexts are cached, so identity comparison is field equality."""

    def __init__(self, p, m):
        if p == 2 or p % 2 == 0:
            raise BadCharacteristic(f"characteristic must be odd, got {p}")
        if not _is_prime(p):
            raise ConfigurationError(f"{p} is not prime")
        if p > MAX_P:
            raise ConfigurationError(f"p={p} exceeds the cap p <= {MAX_P}")
        if m < 1:
            raise ConfigurationError("extension degree must be >= 1")
        q = p ** m
        if q > MAX_ORDER:
            raise ConfigurationError(f"field of order {p}^{m} exceeds the table cap")
        self.p, self.m, self.q = p, m, q
        self.modulus = lowest_irreducible(p, m)
        self._pow_p = [p ** i for i in range(m)]
        self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __reduce__(self):
        return (get_field, (self.p, self.m))

    # construction -----------------------------------------------------------

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        n = q - 1
        if m == 1:
            gen = next(g for g in range(1, p)
                       if all(pow(g, n // r, p) != 1 for r in _prime_factors(n)))
            exp = [1] * n
            for i in range(1, n):
                exp[i] = exp[i - 1] * gen % p
            exp_np = np.array(exp, dtype=np.int64)
        else:
            exp_np = self._generator_orbit()
            exp = exp_np.tolist()
        log_np = np.full(q, -1, dtype=np.int64)
        log_np[exp_np] = np.arange(n, dtype=np.int64)
        d0 = exp_np % p
        w = exp_np - d0 + (d0 + 1) % p
        zech_np = np.where(w == 0, -1, log_np[w])
        self.exp, self.log, self.zech = exp, log_np.tolist(), zech_np.tolist()
        self.half = n // 2
        self.exp_arr = np.concatenate([exp_np, exp_np])
        self.log_arr = log_np
        self.zech_arr = zech_np
        if m == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: a * b % p
            self.neg = lambda a: -a % p
            self.add_table = self.mul_table = None
        else:
            self.add = self._zadd
            self.mul = self._zmul
            self.sub = lambda a, b: self._zadd(a, self.neg(b))
            self.neg = self._zneg
            self.add_table = self.mul_table = None
            if q <= _FULL_TABLE_LIMIT:
                self._build_full_tables()

    def _is_primitive(self, digits):
        n = self.q - 1
        f = list(self.modulus)
        return all(_trim(_ppowmod(digits, n // r, f, self.p)) != [1]
                   for r in _prime_factors(n))

    def _generator_orbit(self):
        """Powers of the lowest-encoded primitive element (t when t is
        primitive), as a numpy array of codes."""
        p, m, q = self.p, self.m, self.q
        codes = np.arange(q, dtype=np.int64)
        pw = np.array(self._pow_p, dtype=np.int64)
        digits = (codes[:, None] // pw[None, :]) % p
        f = np.array(self.modulus[:m], dtype=np.int64)
        # multiplication by t as a permutation of codes
        top = digits[:, -1]
        shifted = np.concatenate([np.zeros((q, 1), dtype=np.int64), digits[:, :-1]], axis=1)
        mul_t = ((shifted - top[:, None] * f[None, :]) % p) @ pw
        candidates = [p] + list(range(2, q))
        for g in candidates:
            gd = [(g // p ** i) % p for i in range(m)]
            if self._is_primitive(_trim(list(gd))):
                break
        else:
            raise AssertionError("no primitive element")
        if g == p:
            perm = mul_t
        else:
            acc = np.zeros((q, m), dtype=np.int64)
            cur = codes
            for k in range(m):
                if gd[k]:
                    acc += gd[k] * ((cur[:, None] // pw[None, :]) % p)
                cur = mul_t[cur]
            perm = (acc % p) @ pw
        perm = perm.tolist()
        out = [1] * (q - 1)
        c = 1
        for i in range(1, q - 1):
            c = perm[c]
            out[i] = c
        return np.array(out, dtype=np.int64)

    def _build_full_tables(self):
        q = self.q
        mul = [[0] * q for _ in range(q)]
        add = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                s = self._zadd(a, b)
                t = self._zmul(a, b)
                add[a][b] = add[b][a] = s
                mul[a][b] = mul[b][a] = t
        self.add_table, self.mul_table = add, mul
        self.add = lambda a, b: add[a][b]
        self.mul = lambda a, b: mul[a][b]
        neg = [self._zneg(a) for a in range(q)]
        self.neg = neg.__getitem__
        self.sub = lambda a, b: add[a][neg[b]]

    # zech arithmetic ------------------------------------------------------

    def _zmul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def _zadd(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        n = self.q - 1
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % n]
        if z < 0:
            return 0
        return self.exp[(la + z) % n]

    def _zneg(self, a):
        if a == 0:
            return 0
        return self.exp[(self.log[a] + self.half) % (self.q - 1)]

    # public scalar API ----------------------------------------------------

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frob(self, a, e=1):
        """a^(p^e); negative e takes iterated p-th roots."""
        if a == 0:
            return 0
        k = self.p ** (e % self.m)
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def pth_root(self, a):
        return self.frob(a, -1)

    def from_int(self, n):
        """Image of an integer in the prime field."""
        return n % self.p

    def from_digits(self, digits):
        digits = list(digits)
        if len(digits) > self.m:
            raise ValueError("too many digits")
        return sum((d % self.p) * self._pow_p[i] for i, d in enumerate(digits))

    def digits(self, a):
        p = self.p
        return [(a // pi) % p for pi in self._pow_p]

    def elements(self):
        return range(self.q)

    def is_prime_field(self):
        return self.m == 1

    def extension(self, j):
        return get_field(self.p, self.m * j)

    def __iter__(self):
        return iter(range(self.q))


@lru_cache(maxsize=None)
def get_field(p, m=1):
    return FieldContext(p, m)


@lru_cache(maxsize=None)
def embedding(small, big):
    """Deterministic field embedding as a lookup list ``small -> big``.

    The generator t of ``small`` is sent to the lowest-encoded root of its
    modulus inside ``big``.
    """
    if small.p != big.p or big.m % small.m:
        raise ConfigurationError(f"{small} does not embed into {big}")
    if small is big:
        return tuple(range(small.q))
    if small.m == 1:
        return tuple(range(small.q))
    step = (big.q - 1) // (small.q - 1)
    sub = [0] + [big.exp[k * step] for k in range(small.q - 1)]
    f = small.modulus
    roots = []
    for r in sub:
        acc = 0
        for c in reversed(f):
            acc = big.add(big.mul(acc, r), c % big.p)
        if acc == 0:
            roots.append(r)
    root = min(roots)
    powers = [1]
    for _ in range(1, small.m):
        powers.append(big.mul(powers[-1], root))
    table = []
    for a in range(small.q):
        acc = 0
        for d, pw in zip(small.digits(a), powers):
            if d:
                acc = big.add(acc, big.mul(d, pw))
        table.append(acc)
    return tuple(table)
