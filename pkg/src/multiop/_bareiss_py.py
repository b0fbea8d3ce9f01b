"""Pure-Python fraction-free (Bareiss) elimination on integer matrices.

Reference implementation and import-time fallback for ``_bareiss_ext``.  Both
modules expose the same two functions with identical results.
"""


def det_int(rows):
    """Determinant of a square integer matrix given as a list of rows."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
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
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve_int(rows, rhs):
    """Solve ``A x = rhs`` over the integers, fraction free.

    Returns ``(scaled, d)`` with ``x = scaled / d`` and ``d`` equal to the
    determinant up to sign, or ``None`` when ``A`` is singular.
    """
    n = len(rows)
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
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n + 1):
                ri[j] = (ri[j] * pivot - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    d = m[n - 1][n - 1]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        ri = m[i]
        acc = d * ri[n]
        for j in range(i + 1, n):
            acc -= ri[j] * x[j]
        x[i] = acc // ri[i]
    return x, d
