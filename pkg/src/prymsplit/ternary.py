"""Homogeneous forms in three variables and quadratic forms as Gram matrices.

TernaryForm keeps a sparse exponent->coefficient map with zero entries
dropped; arithmetic is exact over the owning field.  TernaryQuadratic stores
the symmetric Gram matrix M with Q(v) = v^T M v, so off-diagonal entries are
half the mixed coefficients (characteristic 2 is excluded everywhere).
"""

from __future__ import annotations

from .errors import DegenerateInputError


class TernaryForm:
    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree: int, coeffs):
        zero = field.zero
        cleaned = {}
        for mono, c in dict(coeffs).items():
            i, j, k = mono
            if i + j + k != degree or i < 0 or j < 0 or k < 0:
                raise ValueError(f"monomial {mono} not of degree {degree}")
            if c != zero:
                cleaned[(i, j, k)] = c
        self.field = field
        self.degree = degree
        self.coeffs = cleaned

    @classmethod
    def from_ints(cls, field, degree, coeffs):
        return cls(
            field, degree, {m: field.from_int(v) for m, v in dict(coeffs).items()}
        )

    @classmethod
    def zero_form(cls, field, degree):
        return cls(field, degree, {})

    @classmethod
    def variable(cls, field, axis: int):
        mono = [0, 0, 0]
        mono[axis] = 1
        return cls(field, 1, {tuple(mono): field.one})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, mono):
        return self.coeffs.get(tuple(mono), self.field.zero)

    def __eq__(self, other):
        return (
            isinstance(other, TernaryForm)
            and self.field == other.field
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = F.add(out.get(m, F.zero), c)
        return TernaryForm(F, self.degree, out)

    def __sub__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = F.sub(out.get(m, F.zero), c)
        return TernaryForm(F, self.degree, out)

    def _check(self, other):
        if self.degree != other.degree:
            raise ValueError("form degrees differ")

    def __neg__(self):
        F = self.field
        return TernaryForm(F, self.degree, {m: F.neg(c) for m, c in self.coeffs.items()})

    def __mul__(self, other):
        F = self.field
        out = {}
        for (i1, j1, k1), a in self.coeffs.items():
            for (i2, j2, k2), b in other.coeffs.items():
                m = (i1 + i2, j1 + j2, k1 + k2)
                prod = F.mul(a, b)
                if m in out:
                    out[m] = F.add(out[m], prod)
                else:
                    out[m] = prod
        return TernaryForm(F, self.degree + other.degree, out)

    def scale(self, c):
        F = self.field
        return TernaryForm(F, self.degree, {m: F.mul(c, v) for m, v in self.coeffs.items()})

    def partial(self, axis: int) -> TernaryForm:
        F = self.field
        out = {}
        for mono, c in self.coeffs.items():
            e = mono[axis]
            if e == 0:
                continue
            m = list(mono)
            m[axis] = e - 1
            out[tuple(m)] = F.mul(F.from_int(e), c)
        return TernaryForm(F, self.degree - 1, out)

    def eval(self, x, y, z):
        F = self.field
        d = self.degree
        px = _powers(F, x, d)
        py = _powers(F, y, d)
        pz = _powers(F, z, d)
        acc = F.zero
        for (i, j, k), c in self.coeffs.items():
            acc = F.add(acc, F.mul(c, F.mul(px[i], F.mul(py[j], pz[k]))))
        return acc

    def compose_linear(self, rows) -> TernaryForm:
        """Substitute x_i <- sum_j rows[i][j] x_j (the form pulled back by T)."""
        F = self.field
        lin = [
            TernaryForm(
                F, 1, {(1, 0, 0): r[0], (0, 1, 0): r[1], (0, 0, 1): r[2]}
            )
            for r in rows
        ]
        # cache powers of the three substituted lines up to the degree
        pows = []
        for L in lin:
            cur = [TernaryForm(F, 0, {(0, 0, 0): F.one})]
            for _ in range(self.degree):
                cur.append(cur[-1] * L)
            pows.append(cur)
        acc = TernaryForm.zero_form(F, self.degree)
        for (i, j, k), c in self.coeffs.items():
            term = pows[0][i] * pows[1][j] * pows[2][k]
            acc = acc + term.scale(c)
        return acc

    def __repr__(self):
        items = sorted(self.coeffs.items(), reverse=True)
        return "TernaryForm(" + ", ".join(f"{m}: {c}" for m, c in items) + ")"


def _powers(field, v, n):
    out = [field.one]
    for _ in range(n):
        out.append(field.mul(out[-1], v))
    return out


class TernaryQuadratic:
    """Quadratic form in x1, x2, x3 held as its symmetric Gram matrix."""

    __slots__ = ("field", "gram")

    def __init__(self, field, gram):
        g = tuple(tuple(r) for r in gram)
        if len(g) != 3 or any(len(r) != 3 for r in g):
            raise ValueError("Gram matrix must be 3x3")
        for i in range(3):
            for j in range(i + 1, 3):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.field = field
        self.gram = g

    @classmethod
    def from_coefficients(cls, field, c200, c020, c002, c110, c101, c011):
        """Build from monomial coefficients (x1^2, x2^2, x3^2, x1x2, x1x3, x2x3)."""
        half = field.inv(field.from_int(2))
        h110 = field.mul(half, c110)
        h101 = field.mul(half, c101)
        h011 = field.mul(half, c011)
        return cls(
            field,
            ((c200, h110, h101), (h110, c020, h011), (h101, h011, c002)),
        )

    @classmethod
    def zero_form(cls, field):
        z = field.zero
        return cls(field, ((z, z, z), (z, z, z), (z, z, z)))

    def coefficients(self):
        """Monomial coefficients (x1^2, x2^2, x3^2, x1x2, x1x3, x2x3)."""
        F = self.field
        g = self.gram
        two = F.from_int(2)
        return (
            g[0][0],
            g[1][1],
            g[2][2],
            F.mul(two, g[0][1]),
            F.mul(two, g[0][2]),
            F.mul(two, g[1][2]),
        )

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(e == zero for r in self.gram for e in r)

    def __eq__(self, other):
        return (
            isinstance(other, TernaryQuadratic)
            and self.field == other.field
            and self.gram == other.gram
        )

    def __add__(self, other):
        F = self.field
        return TernaryQuadratic(
            F,
            [
                [F.add(self.gram[i][j], other.gram[i][j]) for j in range(3)]
                for i in range(3)
            ],
        )

    def __sub__(self, other):
        F = self.field
        return TernaryQuadratic(
            F,
            [
                [F.sub(self.gram[i][j], other.gram[i][j]) for j in range(3)]
                for i in range(3)
            ],
        )

    def scale(self, c):
        F = self.field
        return TernaryQuadratic(
            F, [[F.mul(c, self.gram[i][j]) for j in range(3)] for i in range(3)]
        )

    def eval(self, x, y, z):
        c200, c020, c002, c110, c101, c011 = self.coefficients()
        F = self.field
        acc = F.mul(c200, F.mul(x, x))
        acc = F.add(acc, F.mul(c020, F.mul(y, y)))
        acc = F.add(acc, F.mul(c002, F.mul(z, z)))
        acc = F.add(acc, F.mul(c110, F.mul(x, y)))
        acc = F.add(acc, F.mul(c101, F.mul(x, z)))
        acc = F.add(acc, F.mul(c011, F.mul(y, z)))
        return acc

    def to_form(self) -> TernaryForm:
        c200, c020, c002, c110, c101, c011 = self.coefficients()
        return TernaryForm(
            self.field,
            2,
            {
                (2, 0, 0): c200,
                (0, 2, 0): c020,
                (0, 0, 2): c002,
                (1, 1, 0): c110,
                (1, 0, 1): c101,
                (0, 1, 1): c011,
            },
        )

    def __repr__(self):
        return f"TernaryQuadratic({self.gram})"


def cover_quartic(q1: TernaryQuadratic, q2: TernaryQuadratic, q3: TernaryQuadratic) -> TernaryForm:
    """The plane quartic q2^2 - q1*q3 cut out by a quadric triple."""
    if q1.is_zero() and q2.is_zero() and q3.is_zero():
        raise DegenerateInputError("all three quadratic forms are zero")
    f2 = q2.to_form()
    return f2 * f2 - q1.to_form() * q3.to_form()
