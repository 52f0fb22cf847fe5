"""Dense univariate polynomials and homogeneous binary forms over a field object.

UniPoly stores coefficients constant-first with no trailing zeros; the zero
polynomial has degree NEG_INF so that deg(pq) = deg(p) + deg(q) holds
formally.  BinaryForm stores a degree-n form as c_0..c_n meaning
sum c_i x^(n-i) z^i (leading x-coefficient first); leading zeros are kept,
they encode roots at infinity.
"""

from __future__ import annotations

from .errors import DegenerateInputError

NEG_INF = float("-inf")


class UniPoly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        zero = field.zero
        cs = list(coeffs)
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(n) for n in ints])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def leading(self):
        if not self.coeffs:
            raise DegenerateInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            F, [F.add(self.coeff(i), other.coeff(i)) for i in range(n)]
        )

    def __sub__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            F, [F.sub(self.coeff(i), other.coeff(i)) for i in range(n)]
        )

    def __neg__(self):
        F = self.field
        return UniPoly(F, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(F)
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == F.zero:
                continue
            for j, bj in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return UniPoly(F, out)

    def scale(self, c):
        F = self.field
        return UniPoly(F, [F.mul(c, a) for a in self.coeffs])

    def shift(self, n: int):
        """Multiply by x^n."""
        if not self.coeffs:
            return self
        return UniPoly(self.field, (self.field.zero,) * n + self.coeffs)

    def add_constant(self, c):
        F = self.field
        if not self.coeffs:
            return UniPoly(F, (c,))
        cs = list(self.coeffs)
        cs[0] = F.add(cs[0], c)
        return UniPoly(F, cs)

    def eval(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self):
        F = self.field
        return UniPoly(
            F,
            [F.mul(F.from_int(i), self.coeffs[i]) for i in range(1, len(self.coeffs))],
        )

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.field.inv(self.coeffs[-1])
        return self.scale(inv)

    def divmod(self, other):
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        lead_inv = F.inv(other.coeffs[-1])
        if len(rem) <= d:
            return UniPoly.zero(F), UniPoly(F, rem)
        quo = [F.zero] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c == F.zero:
                continue
            f = F.mul(c, lead_inv)
            quo[i - d] = f
            for j in range(d + 1):
                rem[i - d + j] = F.sub(rem[i - d + j], F.mul(f, other.coeffs[j]))
        return UniPoly(F, quo), UniPoly(F, rem)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.field.zero:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{i}")
        return "UniPoly(" + " + ".join(terms) + ")"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a else a


class BinaryForm:
    """Homogeneous form of fixed degree n in (x, z); length is always n + 1."""

    __slots__ = ("field", "n", "coeffs")

    def __init__(self, field, n: int, coeffs):
        cs = tuple(coeffs)
        if len(cs) != n + 1:
            raise ValueError(f"degree-{n} form needs {n + 1} coefficients")
        self.field = field
        self.n = n
        self.coeffs = cs

    @classmethod
    def from_ints(cls, field, n, ints):
        return cls(field, n, [field.from_int(v) for v in ints])

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(c == zero for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.n, self.coeffs))

    def __add__(self, other):
        self._check(other)
        F = self.field
        return BinaryForm(
            F, self.n, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        F = self.field
        return BinaryForm(
            F, self.n, [F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("form degrees differ")

    def __mul__(self, other):
        F = self.field
        out = [F.zero] * (self.n + other.n + 1)
        for i, a in enumerate(self.coeffs):
            if a == F.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return BinaryForm(F, self.n + other.n, out)

    def scale(self, c):
        F = self.field
        return BinaryForm(F, self.n, [F.mul(c, a) for a in self.coeffs])

    def eval(self, x, z):
        F = self.field
        acc = F.zero
        zpow = F.one
        xpow = [F.one]
        for _ in range(self.n):
            xpow.append(F.mul(xpow[-1], x))
        for i, c in enumerate(self.coeffs):  # c_i x^(n-i) z^i
            if c != F.zero:
                acc = F.add(acc, F.mul(c, F.mul(xpow[self.n - i], zpow)))
            zpow = F.mul(zpow, z)
        return acc

    def dx(self):
        """Partial derivative in x, a form of degree n - 1."""
        F = self.field
        return BinaryForm(
            F,
            self.n - 1,
            [F.mul(F.from_int(self.n - i), self.coeffs[i]) for i in range(self.n)],
        )

    def dz(self):
        F = self.field
        return BinaryForm(
            F,
            self.n - 1,
            [F.mul(F.from_int(i), self.coeffs[i]) for i in range(1, self.n + 1)],
        )

    def dehomogenize(self) -> UniPoly:
        """Set z = 1; constant-first coefficients are this form's reversed."""
        return UniPoly(self.field, tuple(reversed(self.coeffs)))

    @classmethod
    def homogenize(cls, poly: UniPoly, n: int):
        F = poly.field
        if poly.coeffs and len(poly.coeffs) - 1 > n:
            raise ValueError("polynomial degree exceeds form degree")
        cs = list(poly.coeffs) + [F.zero] * (n + 1 - len(poly.coeffs))
        return cls(F, n, tuple(reversed(cs)))

    def is_squarefree(self) -> bool:
        """No repeated projective root: gcd(F(x,1), F'(x,1)) constant and at
        most a simple root at infinity.  Valid in every odd characteristic,
        including when the characteristic divides the degree."""
        if self.is_zero():
            raise DegenerateInputError("squarefreeness of the zero form")
        zero = self.field.zero
        if self.coeffs[0] == zero and self.coeffs[1] == zero:
            return False
        f = self.dehomogenize()
        g = poly_gcd(f, f.derivative())
        return g.degree <= 0

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.field.zero:
                continue
            xs = f"x^{self.n - i}" if self.n - i > 1 else ("x" if self.n - i == 1 else "")
            zs = f"z^{i}" if i > 1 else ("z" if i == 1 else "")
            terms.append(f"{c}{('*' + xs) if xs else ''}{('*' + zs) if zs else ''}")
        return "BinaryForm(" + (" + ".join(terms) or "0") + ")"
