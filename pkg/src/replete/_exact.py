"""Small exact linear-algebra kernels over Fraction and int.

Matrices are lists of rows.  Sizes here never exceed a few dozen rows, so
plain Gaussian elimination is fine.
"""

from fractions import Fraction
from math import gcd


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def det(rows):
    a = frac_matrix(rows)
    n = len(a)
    sign = 1
    result = Fraction(1)
    for j in range(n):
        piv = next((i for i in range(j, n) if a[i][j] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != j:
            a[j], a[piv] = a[piv], a[j]
            sign = -sign
        p = a[j][j]
        result *= p
        for i in range(j + 1, n):
            if a[i][j]:
                m = a[i][j] / p
                a[i] = [x - m * y for x, y in zip(a[i], a[j])]
    return sign * result


def inverse(rows):
    n = len(rows)
    a = [r + [Fraction(int(i == k)) for k in range(n)] for i, r in enumerate(frac_matrix(rows))]
    for j in range(n):
        piv = next((i for i in range(j, n) if a[i][j] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[j], a[piv] = a[piv], a[j]
        p = a[j][j]
        a[j] = [x / p for x in a[j]]
        for i in range(n):
            if i != j and a[i][j]:
                m = a[i][j]
                a[i] = [x - m * y for x, y in zip(a[i], a[j])]
    return [row[n:] for row in a]


def vec_mat(v, m):
    """Row vector times matrix."""
    ncols = len(m[0])
    return [sum((v[i] * m[i][k] for i in range(len(v))), Fraction(0)) for k in range(ncols)]


def mat_mul(a, b):
    return [vec_mat(row, b) for row in a]


def transpose(m):
    return [list(col) for col in zip(*m)]


def common_denominator(rows):
    d = 1
    for row in rows:
        for x in row:
            q = Fraction(x).denominator
            d = d * q // gcd(d, q)
    return d


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(rows, ncols):
    """Row-style Hermite normal form of a full-rank integer lattice.

    Returns an upper-triangular ``ncols x ncols`` tuple of tuples with
    positive diagonal and ``0 <= H[i][j] < H[j][j]`` above the diagonal.
    Raises ``ValueError`` when the rows do not span a rank-``ncols`` lattice.
    """
    work = [[int(x) for x in r] for r in rows if any(r)]
    out = []
    for j in range(ncols):
        piv = None
        rest = []
        for row in work:
            if row[j] == 0:
                rest.append(row)
                continue
            if piv is None:
                piv = row
                continue
            a, b = piv[j], row[j]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            new_piv = [x * p + y * q for p, q in zip(piv, row)]
            residue = [bg * p - ag * q for p, q in zip(piv, row)]
            piv = new_piv
            if any(residue):
                rest.append(residue)
        if piv is None:
            raise ValueError("rows do not span a full-rank lattice")
        if piv[j] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        work = rest
    for j in range(ncols):
        d = out[j][j]
        for i in range(j):
            q = out[i][j] // d
            if q:
                out[i] = [x - q * p for x, p in zip(out[i], out[j])]
    return tuple(tuple(r) for r in out)
