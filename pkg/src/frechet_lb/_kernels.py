"""Compiled inner loops for the Fréchet algorithms.

Every kernel works on squared distances so integer inputs stay exact.
"""

import math

import numpy as np
from numba import njit


@njit(cache=True)
def _sqdist(a, b):
    s = a[0] - a[0]
    for k in range(a.shape[0]):
        d = a[k] - b[k]
        s += d * d
    return s


@njit(cache=True)
def dp_table(A, B):
    """Coupling-distance table: ``T[i, j]`` is the squared discrete Fréchet
    distance between the prefixes ``A[:i+1]`` and ``B[:j+1]``."""
    n = A.shape[0]
    m = B.shape[0]
    T = np.empty((n, m), dtype=A.dtype)
    T[0, 0] = _sqdist(A[0], B[0])
    for j in range(1, m):
        T[0, j] = max(T[0, j - 1], _sqdist(A[0], B[j]))
    for i in range(1, n):
        T[i, 0] = max(T[i - 1, 0], _sqdist(A[i], B[0]))
        for j in range(1, m):
            best = min(T[i - 1, j - 1], T[i - 1, j], T[i, j - 1])
            T[i, j] = max(best, _sqdist(A[i], B[j]))
    return T


@njit(cache=True)
def backtrack(T):
    """Optimal traversal from a filled table; ties prefer the diagonal, then
    advancing ``A``, then advancing ``B``."""
    i = T.shape[0] - 1
    j = T.shape[1] - 1
    out = np.empty((i + j + 1, 2), dtype=np.int64)
    k = 0
    out[k, 0] = i
    out[k, 1] = j
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            d, a, b = T[i - 1, j - 1], T[i - 1, j], T[i, j - 1]
            best = min(d, min(a, b))
            if d == best:
                i -= 1
                j -= 1
            elif a == best:
                i -= 1
            else:
                j -= 1
        k += 1
        out[k, 0] = i
        out[k, 1] = j
    return out[k::-1]


@njit(cache=True)
def dp_decide(A, B, bound):
    """True iff some discrete traversal has all squared distances <= bound.

    Row-by-row reachability; O(m) memory.
    """
    n = A.shape[0]
    m = B.shape[0]
    prev = np.zeros(m, dtype=np.bool_)
    cur = np.zeros(m, dtype=np.bool_)
    ok = _sqdist(A[0], B[0]) <= bound
    prev[0] = ok
    for j in range(1, m):
        prev[j] = prev[j - 1] and _sqdist(A[0], B[j]) <= bound
    for i in range(1, n):
        any_true = False
        cur[0] = prev[0] and _sqdist(A[i], B[0]) <= bound
        any_true = cur[0]
        for j in range(1, m):
            if (prev[j - 1] or prev[j] or cur[j - 1]) and _sqdist(A[i], B[j]) <= bound:
                cur[j] = True
                any_true = True
            else:
                cur[j] = False
        if not any_true:
            return False
        for j in range(m):
            prev[j] = cur[j]
    return prev[m - 1]


@njit(cache=True)
def _free_interval(p, a, b, r2):
    """Sub-interval of [0, 1] where segment a->b is within sqrt(r2) of p.

    Empty intervals come back with lo > hi.
    """
    A = 0.0
    Bc = 0.0
    C = 0.0
    for k in range(p.shape[0]):
        d = b[k] - a[k]
        f = a[k] - p[k]
        A += d * d
        Bc += 2.0 * f * d
        C += f * f
    C -= r2
    if A == 0.0:
        if C <= 0.0:
            return 0.0, 1.0
        return 1.0, 0.0
    disc = Bc * Bc - 4.0 * A * C
    if disc < 0.0:
        return 1.0, 0.0
    s = math.sqrt(disc)
    t1 = (-Bc - s) / (2.0 * A)
    t2 = (-Bc + s) / (2.0 * A)
    lo = max(t1, 0.0)
    hi = min(t2, 1.0)
    if lo > hi:
        return 1.0, 0.0
    return lo, hi


@njit(cache=True)
def free_space_decide(P, Q, r):
    """Alt-Godau reachability on the free-space diagram at radius ``r``.

    Requires ``len(P) >= 2`` and ``len(Q) >= 2``.
    """
    n = P.shape[0]
    m = Q.shape[0]
    r2 = r * r
    if _sqdist(P[0], Q[0]) > r2 or _sqdist(P[n - 1], Q[m - 1]) > r2:
        return False
    # reachable part of the vertical edge x = i over Q-segment j
    left_lo = np.empty(m - 1)
    left_hi = np.empty(m - 1)
    chain = True
    for j in range(m - 1):
        lo, hi = _free_interval(P[0], Q[j], Q[j + 1], r2)
        if chain and lo <= hi and lo == 0.0:
            left_lo[j] = lo
            left_hi[j] = hi
            chain = hi >= 1.0
        else:
            left_lo[j] = 1.0
            left_hi[j] = 0.0
            chain = False
    bottom_chain = True
    for i in range(n - 1):
        # bottom edge of cell (i, 0): Q[0] against P-segment i
        lo, hi = _free_interval(Q[0], P[i], P[i + 1], r2)
        if bottom_chain and lo <= hi and lo == 0.0:
            b_lo = lo
            b_hi = hi
            bottom_chain = hi >= 1.0
        else:
            b_lo = 1.0
            b_hi = 0.0
            bottom_chain = False
        for j in range(m - 1):
            l_lo = left_lo[j]
            l_hi = left_hi[j]
            l_ok = l_lo <= l_hi
            b_ok = b_lo <= b_hi
            rf_lo, rf_hi = _free_interval(P[i + 1], Q[j], Q[j + 1], r2)
            tf_lo, tf_hi = _free_interval(Q[j + 1], P[i], P[i + 1], r2)
            # right edge
            if rf_lo > rf_hi or not (l_ok or b_ok):
                nr_lo, nr_hi = 1.0, 0.0
            elif b_ok:
                nr_lo, nr_hi = rf_lo, rf_hi
            else:
                nr_lo = max(rf_lo, l_lo)
                nr_hi = rf_hi
                if nr_lo > nr_hi:
                    nr_lo, nr_hi = 1.0, 0.0
            # top edge
            if tf_lo > tf_hi or not (l_ok or b_ok):
                nt_lo, nt_hi = 1.0, 0.0
            elif l_ok:
                nt_lo, nt_hi = tf_lo, tf_hi
            else:
                nt_lo = max(tf_lo, b_lo)
                nt_hi = tf_hi
                if nt_lo > nt_hi:
                    nt_lo, nt_hi = 1.0, 0.0
            left_lo[j] = nr_lo
            left_hi[j] = nr_hi
            b_lo = nt_lo
            b_hi = nt_hi
        if i == n - 2:
            if b_lo <= b_hi and b_hi >= 1.0:
                return True
    return left_lo[m - 2] <= left_hi[m - 2] and left_hi[m - 2] >= 1.0
