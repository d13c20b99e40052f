"""Dense exact linear algebra over a :class:`~comodcat.field.Field`.

Matrices are lists of rows of field scalars.
"""


def rref(field, rows, ncols=None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    norm = field.norm
    m = [[norm(x) for x in r] for r in rows]
    ncols = ncols if ncols is not None else (len(m[0]) if m else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.inv(m[r][c])
        m[r] = [norm(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(field, rows, ncols=None):
    return len(rref(field, rows, ncols)[1])


def nullspace(field, rows, ncols):
    """Basis of ``{v : rows · v = 0}`` as a list of vectors of length ``ncols``."""
    red, pivots = rref(field, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(red, pivots):
            v[p] = field.norm(-row[f])
        out.append(v)
    return out


def transpose(rows, ncols):
    return [[r[j] for r in rows] for j in range(ncols)]


def solve(field, rows, ncols, rhs):
    """Some ``v`` with ``rows · v = rhs``, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(field, aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [field.zero] * ncols
    for row, p in zip(red, pivots):
        v[p] = row[ncols]
    return v


def inverse(field, rows):
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(field, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [r[n:] for r in red]


def matmul(field, a, b):
    ncols = len(b[0]) if b else 0
    return [[field.norm(sum(x * b[k][j] for k, x in enumerate(r) if x)) for j in range(ncols)] for r in a]
