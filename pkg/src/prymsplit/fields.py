"""Exact coefficient fields: the rationals, prime fields, and small extensions.

Elements are plain Python values, not wrapper objects: Fraction for the
rationals, and ints in [0, q) for finite fields.  An extension-field element
packs its coefficient vector over F_p in base p (value = sum c_i * p**i), so
the embedding F_p -> F_{p^k} is the identity on representatives.  All
operations go through the owning field object; none of this ever touches
floating point.

Extension fields precompute exp/log tables for a fixed generator plus a Zech
logarithm table, making every field operation O(1) table lookups.  That is
what keeps the exhaustive point-counting kernels fast enough in pure Python.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InvalidFieldError, UnsupportedFieldError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The rationals; elements are reduced Fractions with positive denominator."""

    kind = "rationals"
    p = None
    k = 1
    q = None
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def pow(self, a, e):
        if e < 0:
            return self.inv(a) ** (-e)
        return a**e

    def random_element(self, rng, span=10):
        return Fraction(rng.randint(-span, span))

    def describe(self) -> dict:
        return {"kind": self.kind}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class _FiniteField:
    """Shared behaviour for prime and extension fields.

    Subclasses provide p, k, q, modulus and the four ring operations; the
    quadratic-character and square-root tables are built lazily from mul and
    cached on the field object (fields themselves are cached, see
    build_extension).
    """

    kind = "finite"
    zero = 0
    one = 1

    def __init__(self):
        self._sqrt_table = None
        self._chi_table = None

    @property
    def char(self):
        return self.p

    def elements(self):
        return range(self.q)

    def random_element(self, rng):
        return rng.randrange(self.q)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.q)

    def _build_square_tables(self):
        sqrt = [-1] * self.q
        mul = self.mul
        for t in range(self.q):
            s = mul(t, t)
            if sqrt[s] < 0:
                sqrt[s] = t
        chi = [1 if sqrt[v] >= 0 else -1 for v in range(self.q)]
        chi[0] = 0
        self._sqrt_table = sqrt
        self._chi_table = chi

    @property
    def sqrt_table(self):
        if self._sqrt_table is None:
            self._build_square_tables()
        return self._sqrt_table

    @property
    def chi_table(self):
        if self._chi_table is None:
            self._build_square_tables()
        return self._chi_table

    def chi(self, a) -> int:
        """Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise."""
        return self.chi_table[a]

    def sqrt(self, a):
        """A square root of a, or None if a is a nonsquare."""
        r = self.sqrt_table[a]
        return None if r < 0 else r

    def euler_character(self, a) -> int:
        """chi computed as a^((q-1)/2), the definition the tables must match."""
        if a == 0:
            return 0
        v = self.pow(a, (self.q - 1) // 2)
        return 1 if v == self.one else -1


class PrimeField(_FiniteField):
    """F_p for an odd prime p; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p == 2:
            raise InvalidFieldError("characteristic 2 is excluded")
        if not is_prime(p):
            raise InvalidFieldError(f"{p} is not prime")
        super().__init__()
        self.p = p
        self.k = 1
        self.q = p
        self.modulus = None

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def coeffs(self, a):
        return (a,)

    def describe(self) -> dict:
        return {"kind": "prime-field", "p": self.p, "k": 1}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _packed_digits(v: int, p: int, k: int) -> list:
    out = []
    for _ in range(k):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _pack(digits, p: int) -> int:
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


def _poly_mul_mod(a, b, modulus, p):
    """Schoolbook product of digit vectors reduced by a monic modulus mod p."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(k):
                prod[d - k + j] = (prod[d - k + j] - c * modulus[j]) % p
    return prod[:k] + [0] * (k - len(prod))


def _poly_gcd_mod(a, b, p):
    a, b = list(a), list(b)
    while any(b):
        while a and a[-1] == 0:
            a.pop()
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        if len(a) < len(b):
            a, b = b, a
            continue
        lead = b[-1]
        inv = pow(lead, p - 2, p)
        while len(a) >= len(b) and any(a):
            if a[-1] == 0:
                a.pop()
                continue
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for i in range(len(b)):
                a[off + i] = (a[off + i] - f * b[i]) % p
            a.pop()
        a, b = b, a
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(coeffs, p: int) -> bool:
    """Monic polynomial over F_p irreducible?  gcd with x^(p^i) - x, i <= k/2.

    A reducible degree-k polynomial has an irreducible factor of degree
    d <= k/2, which divides x^(p^d) - x; so a trivial gcd for every i up to
    k/2 certifies irreducibility.
    """
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] != 1:
        return False
    if k == 1:
        return True
    xp = [0, 1]
    for _ in range(1, k // 2 + 1):
        # x^(p^i) = (x^(p^(i-1)))^p, one p-th power per step
        xp = _poly_pow_mod(xp, p, coeffs, p)
        diff = list(xp)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        if any(_poly_gcd_mod(diff, coeffs, p)[1:]):
            return False
    return True


def _poly_pow_mod(base, e, modulus, p):
    k = len(modulus) - 1
    result = [1] + [0] * (k - 1)
    acc = list(base) + [0] * max(0, k - len(base))
    acc = acc[:k] if len(acc) > k else acc + [0] * (k - len(acc))
    while e:
        if e & 1:
            result = _poly_mul_mod(result, acc, modulus, p)
        acc = _poly_mul_mod(acc, acc, modulus, p)
        e >>= 1
    return result


def _factor_small(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class ExtensionField(_FiniteField):
    """F_{p^k}, k >= 2, with log/Zech tables over a fixed generator.

    Table construction enumerates the cyclic group once with digit-vector
    arithmetic and then never touches digits again: mul/inv ride the log
    table, add/sub ride the Zech table.  Sized for q up to a few times 10^4.
    """

    def __init__(self, p: int, k: int, modulus=None, seed: int = 0):
        if p == 2:
            raise InvalidFieldError("characteristic 2 is excluded")
        if not is_prime(p):
            raise InvalidFieldError(f"{p} is not prime")
        if k < 2:
            raise InvalidFieldError("extension degree must be >= 2")
        super().__init__()
        self.p = p
        self.k = k
        self.q = p**k
        self.seed = seed
        if modulus is None:
            modulus = _find_irreducible(p, k)
        else:
            modulus = list(modulus)
            if len(modulus) != k + 1 or modulus[-1] % p != 1:
                raise InvalidFieldError("modulus must be monic of degree k")
            modulus = [c % p for c in modulus]
            if not is_irreducible(modulus, p):
                raise InvalidFieldError("modulus is reducible")
        self.modulus = tuple(modulus)
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        mod = list(self.modulus)
        g = self._find_generator(mod)
        exp = [0] * (q - 1)
        log = [-1] * q
        cur = [1] + [0] * (k - 1)
        for i in range(q - 1):
            v = _pack(cur, p)
            exp[i] = v
            log[v] = i
            cur = _poly_mul_mod(cur, g, mod, p)
        if _pack(cur, p) != 1:
            raise InvalidFieldError("generator order mismatch (bad modulus?)")
        # Zech logarithms: zech[d] = log(1 + g^d), -1 when 1 + g^d = 0.
        # Adding one only touches the low digit of the packed value.
        zech = [-1] * (q - 1)
        pm1 = p - 1
        for d in range(q - 1):
            v = exp[d]
            s = v + 1 if v % p != pm1 else v - pm1
            zech[d] = log[s]  # log[0] is -1, the wanted sentinel
        self._exp = exp
        self._log = log
        self._zech = zech
        self._qm1 = q - 1
        self._half = (q - 1) // 2

    def _find_generator(self, mod):
        p, k, q = self.p, self.k, self.q
        factors = _factor_small(q - 1)
        cofactors = [(q - 1) // f for f in factors]
        for v in range(p, q):  # prime-field elements never generate, skip them
            cand = _packed_digits(v, p, k)
            for c in cofactors:
                w = _poly_pow_mod(cand, c, mod, p)
                if w[0] == 1 and not any(w[1:]):
                    break
            else:
                return cand
        raise InvalidFieldError("no generator found (modulus reducible?)")

    def from_int(self, n):
        return n % self.p

    def coeffs(self, a):
        return tuple(_packed_digits(a, self.p, self.k))

    def from_coeffs(self, cs):
        if len(cs) > self.k:
            raise ValueError("too many coefficients")
        return _pack([c % self.p for c in cs] + [0] * (self.k - len(cs)), self.p)

    def add(self, a, b):
        if a == 0:
            return b
        if b == 0:
            return a
        log = self._log
        la = log[a]
        z = self._zech[(log[b] - la) % self._qm1]
        if z < 0:
            return 0
        return self._exp[(la + z) % self._qm1]

    def neg(self, a):
        if a == 0:
            return 0
        return self._exp[(self._log[a] + self._half) % self._qm1]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self._qm1]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % self._qm1]

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self._qm1]

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        return self._exp[(self._log[a] * e) % self._qm1]

    def describe(self) -> dict:
        return {
            "kind": "extension-field",
            "p": self.p,
            "k": self.k,
            "modulus": list(self.modulus),
        }

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ext", self.p, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


def _find_irreducible(p: int, k: int):
    """First irreducible monic x^k + c_{k-1}x^{k-1} + ... + c_0 in the fixed
    scan order: the c-vector counts upward in base p, low coefficient fastest
    (so x^k + c is tried before any x^k + bx + c)."""
    for n in range(p**k):
        cand = _packed_digits(n, p, k) + [1]
        if is_irreducible(cand, p):
            return cand
    raise InvalidFieldError(f"no irreducible modulus of degree {k} over F_{p}")


@lru_cache(maxsize=None)
def build_extension(p: int, k: int = 1, seed: int = 0):
    """Field descriptor for F_{p^k}, p an odd prime.

    Deterministic for a given (p, k, seed): the modulus search order is fixed,
    so repeated runs build identical fields.  Descriptors are cached; tables
    are built once per process.
    """
    if k < 1:
        raise InvalidFieldError("extension degree must be >= 1")
    if k == 1:
        return PrimeField(p)
    return ExtensionField(p, k, seed=seed)


def quadratic_character(field, a) -> int:
    """0 if a = 0, +1 if a is a nonzero square, -1 otherwise.

    Table-backed; agrees with the defining power a^((q-1)/2), see
    euler_character."""
    if not isinstance(field, _FiniteField):
        raise UnsupportedFieldError("quadratic character needs a finite field")
    return field.chi(a)


def embedding(small, big):
    """Embedding table F_{p^k} -> F_{p^K} (k | K), as a list indexed by packed value.

    Maps the small field's generator-basis coefficients through a root of the
    small modulus found in the big field; the root choice (smallest packed
    value) is deterministic.
    """
    if not isinstance(small, _FiniteField) or not isinstance(big, _FiniteField):
        raise UnsupportedFieldError("embedding needs finite fields")
    if small.p != big.p:
        raise UnsupportedFieldError("characteristic mismatch")
    if big.k % small.k != 0:
        raise UnsupportedFieldError(f"F_{small.q} does not embed in F_{big.q}")
    if small.k == 1:
        return list(range(small.p))
    root = None
    mod = small.modulus
    for e in range(big.q):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, e), c % big.p)
        if acc == 0:
            root = e
            break
    if root is None:
        raise UnsupportedFieldError("no root of the subfield modulus found")
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], root))
    table = []
    for a in range(small.q):
        digits = _packed_digits(a, small.p, small.k)
        acc = 0
        for d, w in zip(digits, powers):
            acc = big.add(acc, big.mul(d % big.p, w))
        table.append(acc)
    return table
