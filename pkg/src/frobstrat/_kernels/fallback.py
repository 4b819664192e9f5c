"""Vectorised numpy row reduction; same contract as the compiled kernel."""

import numpy as np


def rref_prime(M, p):
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = M[r] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            M[idx] = (M[idx] - np.outer(col[idx], M[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def _vmul(a, b, exp, log):
    out = exp[np.where((a == 0) | (b == 0), 0, log[a] + log[b])]
    return np.where((a == 0) | (b == 0), 0, out)


def _vadd(a, b, exp, log, zech, n):
    la = log[a]
    d = (log[b] - la) % n
    z = zech[d]
    s = np.where(z < 0, 0, exp[np.where(z < 0, 0, la + z)])
    return np.where(a == 0, b, np.where(b == 0, a, s))


def rref_zech(M, exp, log, zech, q):
    rows, cols = M.shape
    n = q - 1
    half = n // 2
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = exp[n - log[M[r, c]]]
        M[r] = _vmul(M[r], np.full(cols, inv), exp, log)
        col = M[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            f = exp[log[col[idx]] + half]
            prod = _vmul(f[:, None], M[r][None, :], exp, log)
            M[idx] = _vadd(M[idx], prod, exp, log, zech, n)
        pivots.append(c)
        r += 1
    return pivots
