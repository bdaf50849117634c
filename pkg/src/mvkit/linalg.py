"""Exact linear algebra over the rationals on small dense matrices.

Matrices carry their shape explicitly because zero-dimensional spaces show
up constantly (kernels, cokernels, graded pieces of modules).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Mat:
    nrows: int
    ncols: int
    rows: tuple  # nrows tuples of length ncols, Fraction entries

    def __getitem__(self, rc):
        return self.rows[rc[0]][rc[1]]

    def tolists(self):
        return [list(r) for r in self.rows]


def from_rows(rows, ncols=None):
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    if rows:
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
    elif ncols is None:
        raise ValueError("empty matrix needs an explicit column count")
    return Mat(len(rows), ncols, tuple(rows))


def zeros(m, n):
    row = (Fraction(0),) * n
    return Mat(m, n, (row,) * m)


def identity(n):
    return Mat(n, n, tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
                           for i in range(n)))


def transpose(a):
    return Mat(a.ncols, a.nrows, tuple(zip(*a.rows)) if a.nrows and a.ncols
               else ((),) * a.ncols if a.ncols else ())


def mul(a, b):
    if a.ncols != b.nrows:
        raise ValueError("shape mismatch %sx%s * %sx%s" %
                         (a.nrows, a.ncols, b.nrows, b.ncols))
    bt = list(zip(*b.rows)) if b.nrows else [()] * b.ncols
    out = []
    for r in a.rows:
        out.append(tuple(sum(x * y for x, y in zip(r, col)) for col in bt))
    return Mat(a.nrows, b.ncols, tuple(out))


def add(a, b):
    _same_shape(a, b)
    return Mat(a.nrows, a.ncols,
               tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows)))


def sub(a, b):
    _same_shape(a, b)
    return Mat(a.nrows, a.ncols,
               tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows)))


def scale(c, a):
    c = Fraction(c)
    return Mat(a.nrows, a.ncols, tuple(tuple(c * x for x in r) for r in a.rows))


def _same_shape(a, b):
    if (a.nrows, a.ncols) != (b.nrows, b.ncols):
        raise ValueError("shape mismatch")


def is_zero(a):
    return all(x == 0 for r in a.rows for x in r)


def hstack(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("hstack of nothing")
    m = mats[0].nrows
    if any(a.nrows != m for a in mats):
        raise ValueError("row mismatch in hstack")
    rows = tuple(tuple(x for a in mats for x in a.rows[i]) for i in range(m))
    return Mat(m, sum(a.ncols for a in mats), rows)


def vstack(mats):
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    n = mats[0].ncols
    if any(a.ncols != n for a in mats):
        raise ValueError("column mismatch in vstack")
    return Mat(sum(a.nrows for a in mats), n, tuple(r for a in mats for r in a.rows))


def take_rows(a, i0, i1):
    return Mat(i1 - i0, a.ncols, a.rows[i0:i1])


def take_cols(a, j0, j1):
    return Mat(a.nrows, j1 - j0, tuple(r[j0:j1] for r in a.rows))


def _echelon(a):
    """Row echelon form; returns (rows as lists, pivot column list)."""
    rows = [list(r) for r in a.rows]
    pivots = []
    r = 0
    for c in range(a.ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(a):
    if a.nrows == 0 or a.ncols == 0:
        return 0
    return len(_echelon(a)[1])


def nullspace(a):
    """Matrix whose columns are a basis of ker(a); shape ncols x k."""
    if a.ncols == 0:
        return zeros(0, 0)
    if a.nrows == 0:
        return identity(a.ncols)
    rows, pivots = _echelon(a)
    free = [c for c in range(a.ncols) if c not in pivots]
    cols = []
    for fc in free:
        v = [Fraction(0)] * a.ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        cols.append(v)
    return Mat(a.ncols, len(cols), tuple(zip(*cols)) if cols else ((),) * a.ncols)


def colspace(a):
    """(basis matrix of the column space, pivot column indices)."""
    if a.nrows == 0 or a.ncols == 0:
        return zeros(a.nrows, 0), ()
    _, pivots = _echelon(a)
    cols = [tuple(a.rows[i][c] for i in range(a.nrows)) for c in pivots]
    return Mat(a.nrows, len(pivots), tuple(zip(*cols)) if cols else ((),) * a.nrows), tuple(pivots)


def solve(a, b):
    """One solution X of a @ X = b, or None if inconsistent."""
    if a.nrows != b.nrows:
        raise ValueError("shape mismatch in solve")
    if a.ncols == 0:
        return zeros(0, b.ncols) if is_zero(b) else None
    aug = hstack([a, b])
    rows, pivots = _echelon(aug)
    if any(p >= a.ncols for p in pivots):
        return None
    out = [[Fraction(0)] * b.ncols for _ in range(a.ncols)]
    for r, pc in enumerate(pivots):
        for j in range(b.ncols):
            out[pc][j] = rows[r][a.ncols + j]
    return Mat(a.ncols, b.ncols, tuple(tuple(r) for r in out))


def complete_basis(b):
    """Standard basis columns extending the independent columns of b to a
    basis of the ambient space; returns (F, r) with F = [b | extension]."""
    n = b.nrows
    chosen = []
    cur = b
    cur_rank = rank(b)
    if cur_rank != b.ncols:
        raise ValueError("columns not independent")
    for j in range(n):
        if cur.ncols == n:
            break
        e = zeros(n, 1)
        e = Mat(n, 1, tuple((Fraction(1),) if i == j else (Fraction(0),) for i in range(n)))
        cand = hstack([cur, e])
        if rank(cand) > cur.ncols:
            cur = cand
            chosen.append(j)
    if cur.ncols != n:
        raise ValueError("could not complete basis")
    return cur, b.ncols


def inverse(a):
    if a.nrows != a.ncols:
        raise ValueError("not square")
    x = solve(a, identity(a.nrows))
    if x is None or rank(a) != a.nrows:
        raise ValueError("singular matrix")
    return x


def in_colspan(basis, vecs):
    """True if every column of vecs lies in the span of basis's columns."""
    return solve(basis, vecs) is not None


def mat_pow_ranks(x, upto):
    """Ranks of x, x^2, ..., x^upto (x square)."""
    out = []
    p = x
    for _ in range(upto):
        out.append(rank(p))
        p = mul(p, x)
    return out
