# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free elimination; mirrors ``_bareiss_py`` exactly.

Entries stay Python integers (arbitrary precision); the gain comes from
typed loop indices and list access without interpreter dispatch.
"""


def det_int(list rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    cdef list m, rk, ri
    cdef object prev, pivot, f
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = <list>m[k]
        pivot = rk[k]
        for i in range(k + 1, n):
            ri = <list>m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve_int(list rows, list rhs):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef list m, rk, ri, x
    cdef object prev, pivot, f, d, acc
    if n == 0:
        return [], 1
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    break
            else:
                return None
        rk = <list>m[k]
        pivot = rk[k]
        for i in range(k + 1, n):
            ri = <list>m[i]
            f = ri[k]
            for j in range(k + 1, n + 1):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    d = m[n - 1][n - 1]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        ri = <list>m[i]
        acc = d * ri[n]
        for j in range(i + 1, n):
            acc -= ri[j] * x[j]
        x[i] = acc // ri[i]
    return x, d
