"""Small exact linear algebra over any field-like coefficient type.

Works for Fraction, Cyclo, and QRat entries alike: elements need
+ - * / and a zero test.  Everything is plain Gaussian elimination;
matrices are lists of lists and never large here.
"""

from __future__ import annotations


def is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [
        [sum_prod(a[i], [b[t][j] for t in range(k)]) for j in range(m)]
        for i in range(n)
    ]


def sum_prod(xs, ys):
    acc = None
    for x, y in zip(xs, ys):
        if is_zero(x) or is_zero(y):
            continue
        term = x * y
        acc = term if acc is None else acc + term
    if acc is None:
        return xs[0] * ys[0] if xs else 0  # canonical zero of the right type
    return acc


def mat_vec(a, v):
    return [sum_prod(row, v) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_inv(a, zero, one):
    """Inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [list(row) + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(m[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = one / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def det(a, zero, one):
    n = len(a)
    m = [list(row) for row in a]
    out = one
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(m[r][col])), None)
        if piv is None:
            return zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = zero - out if isinstance(out, int) else -out
        out = out * m[col][col]
        inv = one / m[col][col]
        for r in range(col + 1, n):
            if not is_zero(m[r][col]):
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return out


def kernel(a, zero, one):
    """Basis of the right kernel of a (rows x cols), as column vectors."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(row) for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = zero - m[i][fc] if isinstance(zero, int) else -m[i][fc]
        basis.append(v)
    return basis


def solve(a, b, zero, one):
    """Solve a x = b for a single right-hand side; raises if singular."""
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(m[r][col])), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = one / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not is_zero(m[r][col]):
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]
