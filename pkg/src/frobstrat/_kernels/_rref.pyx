# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p and over F_{p^m} via Zech logarithms."""


cdef inline long long _zadd(long long a, long long b, const long long[::1] exp,
                            const long long[::1] log, const long long[::1] zech,
                            long long n) nogil:
    cdef long long la, d, z
    if a == 0:
        return b
    if b == 0:
        return a
    la = log[a]
    d = log[b] - la
    if d < 0:
        d += n
    z = zech[d]
    if z < 0:
        return 0
    return exp[la + z]


cdef inline long long _zmul(long long a, long long b, const long long[::1] exp,
                            const long long[::1] log) nogil:
    if a == 0 or b == 0:
        return 0
    return exp[log[a] + log[b]]


def rref_prime(long long[:, ::1] M, long long p):
    """Reduced row echelon form in place; returns the pivot columns."""
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, t
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        inv = 1
        t = M[r, c]
        f = p - 2
        while f:
            if f & 1:
                inv = inv * t % p
            t = t * t % p
            f >>= 1
        for j in range(c, cols):
            M[r, j] = M[r, j] * inv % p
        for i in range(rows):
            if i != r and M[i, c] != 0:
                f = p - M[i, c]
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = (M[i, j] + f * M[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rref_zech(long long[:, ::1] M, const long long[::1] exp, const long long[::1] log,
              const long long[::1] zech, long long q):
    """Same contract as rref_prime for F_q given exp (doubled), log and Zech tables."""
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long n = q - 1, half = (q - 1) // 2, inv, f, t
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        inv = exp[n - log[M[r, c]]]
        for j in range(c, cols):
            M[r, j] = _zmul(M[r, j], inv, exp, log)
        for i in range(rows):
            if i != r and M[i, c] != 0:
                f = exp[log[M[i, c]] + half]
                for j in range(c, cols):
                    if M[r, j] != 0:
                        M[i, j] = _zadd(M[i, j], _zmul(f, M[r, j], exp, log),
                                        exp, log, zech, n)
        pivots.append(c)
        r += 1
    return pivots
