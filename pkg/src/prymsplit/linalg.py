"""Exact linear algebra: the 3x3 coefficient matrix and dense determinants.

Determinants over the rationals clear denominators and run fraction-free
Bareiss elimination on integers; finite-field determinants use plain Gaussian
elimination.  Both are exact, which every caller here depends on.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import SingularMatrixError


class Matrix3:
    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("need 3x3 entries")
        self.field = field
        self.rows = rows

    @classmethod
    def identity(cls, field):
        o, z = field.one, field.zero
        return cls(field, ((o, z, z), (z, o, z), (z, z, o)))

    @classmethod
    def from_ints(cls, field, rows):
        return cls(field, [[field.from_int(v) for v in r] for r in rows])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix3)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def det(self):
        F = self.field
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        t1 = F.mul(a, F.sub(F.mul(e, i), F.mul(f, h)))
        t2 = F.mul(b, F.sub(F.mul(d, i), F.mul(f, g)))
        t3 = F.mul(c, F.sub(F.mul(d, h), F.mul(e, g)))
        return F.add(F.sub(t1, t2), t3)

    def adjugate(self):
        F = self.field
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        m = F.mul
        s = F.sub
        return Matrix3(
            F,
            (
                (s(m(e, i), m(f, h)), s(m(c, h), m(b, i)), s(m(b, f), m(c, e))),
                (s(m(f, g), m(d, i)), s(m(a, i), m(c, g)), s(m(c, d), m(a, f))),
                (s(m(d, h), m(e, g)), s(m(b, g), m(a, h)), s(m(a, e), m(b, d))),
            ),
        )

    def inverse(self):
        """Adjugate-over-determinant; asserts the round trip A * A^-1 = I."""
        F = self.field
        d = self.det()
        if d == F.zero:
            raise SingularMatrixError("matrix is singular", det=d)
        inv_d = F.inv(d)
        adj = self.adjugate()
        inv = Matrix3(
            F, [[F.mul(inv_d, adj.rows[i][j]) for j in range(3)] for i in range(3)]
        )
        assert self.mat_mul(inv) == Matrix3.identity(F)
        return inv

    def mat_mul(self, other):
        F = self.field
        return Matrix3(
            F,
            [
                [
                    F.add(
                        F.add(
                            F.mul(self.rows[i][0], other.rows[0][j]),
                            F.mul(self.rows[i][1], other.rows[1][j]),
                        ),
                        F.mul(self.rows[i][2], other.rows[2][j]),
                    )
                    for j in range(3)
                ]
                for i in range(3)
            ],
        )

    def vec_mul(self, v):
        """Matrix times column vector."""
        F = self.field
        return tuple(
            F.add(
                F.add(F.mul(r[0], v[0]), F.mul(r[1], v[1])),
                F.mul(r[2], v[2]),
            )
            for r in self.rows
        )

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(3))

    def __repr__(self):
        return f"Matrix3({self.rows})"


def invert3(matrix: Matrix3) -> Matrix3:
    return matrix.inverse()


def det_bareiss_int(rows) -> int:
    """Fraction-free determinant of an integer matrix (Bareiss)."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if m[c][c] == 0:
            for r in range(c + 1, n):
                if m[r][c] != 0:
                    m[c], m[r] = m[r], m[c]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[c][c]
        for r in range(c + 1, n):
            mr = m[r]
            mc = m[c]
            mrc = mr[c]
            for j in range(c + 1, n):
                mr[j] = (mr[j] * pivot - mrc * mc[j]) // prev
            mr[c] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det_rational(rows) -> Fraction:
    """Determinant of a matrix of Fractions via row-wise denominator clearing."""
    denom = 1
    int_rows = []
    for r in rows:
        d = lcm(*(f.denominator for f in r)) if r else 1
        denom *= d
        int_rows.append([int(f * d) for f in r])
    return Fraction(det_bareiss_int(int_rows), denom)


def det_field_gauss(rows, field):
    """Determinant over a finite field by Gaussian elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    sub, mul, div = field.sub, field.mul, field.div
    zero = field.zero
    det = field.one
    for c in range(n):
        piv_row = None
        for r in range(c, n):
            if m[r][c] != zero:
                piv_row = r
                break
        if piv_row is None:
            return zero
        if piv_row != c:
            m[c], m[piv_row] = m[piv_row], m[c]
            det = field.neg(det)
        pivot = m[c][c]
        det = mul(det, pivot)
        for r in range(c + 1, n):
            lead = m[r][c]
            if lead == zero:
                continue
            f = div(lead, pivot)
            mr = m[r]
            mc = m[c]
            for j in range(c, n):
                mr[j] = sub(mr[j], mul(f, mc[j]))
    return det


def det_in_field(rows, field):
    """Exact determinant dispatching on the coefficient field."""
    if not rows:
        return field.one
    if field.kind == "rationals":
        return det_rational(rows)
    return det_field_gauss(rows, field)


def rank_in_field(rows, field) -> int:
    """Exact rank by Gaussian elimination (any number of rows/columns)."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    sub, mul, div = field.sub, field.mul, field.div
    zero = field.zero
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c] != zero:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot_row = m[rank]
        pivot = pivot_row[c]
        for r in range(rank + 1, len(m)):
            lead = m[r][c]
            if lead == zero:
                continue
            f = div(lead, pivot)
            mr = m[r]
            for j in range(c, ncols):
                mr[j] = sub(mr[j], mul(f, pivot_row[j]))
        rank += 1
        if rank == len(m):
            break
    return rank
