"""Exact point counts for every curve model used by the verification layer.

Three counters, all exhaustive and exact:

* plane quartics in P^2: the affine chart z = 1 row by row (a quartic in y per
  x), then the line z = 0, then (1:0:0).  Rows are resolved by the quadratic
  character when the quartic is even in y, by the degree of
  gcd(y^q - y, row) for large fields, or by brute iteration; the three paths
  count the same set and are cross-checked in the test suite.
* hyperelliptic-type models y^2 = F(x) in P(1, g+1, 1): character sums over
  the x-line plus the points above x = infinity read off the degree-(2g+2)
  homogenization.
* the double cover q1 = u^2, q2 = uv, q3 = v^2 of the plane quartic
  q2^2 = q1 q3: fiber sizes over base points are 1 + chi(q1) (or of q3 when
  q1 vanishes), and 1 exactly where all three quadrics vanish, so the
  genus-5 curve is never enumerated in P^4.

The outer enumeration axis is partitioned into chunks reduced by summation;
chunk boundaries never change results.  PRYM_THREADS > 1 runs chunks on a
thread pool.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import (
    DegenerateInputError,
    ModelError,
    ResourceLimitError,
    UnsupportedFieldError,
)
from .fields import embedding
from .poly import BinaryForm, UniPoly
from .ternary import TernaryForm, TernaryQuadratic

DEFAULT_AXIS_CAP = 30_000
DEFAULT_EVAL_CAP = 250_000_000


@dataclass(frozen=True)
class CountRecord:
    model: str
    q: int  # base field size
    m: int  # extension degree counted over
    n: int  # number of points
    seconds: float = dc_field(compare=False, default=0.0)

    @property
    def field_size(self) -> int:
        return self.q**self.m

    def weil_ok(self, genus: int) -> bool:
        qm = self.field_size
        return (self.n - qm - 1) ** 2 <= 4 * genus * genus * qm


@dataclass(frozen=True)
class CurveInstance:
    """A tagged curve model over a concrete base field, ready for counting."""

    model: str  # plane-quartic | weighted-hyperelliptic | bruin-cover
    data: tuple
    base_field: object

    @classmethod
    def plane_quartic(cls, form):
        return cls("plane-quartic", (form,), form.field)

    @classmethod
    def weighted(cls, poly, genus: int):
        return cls("weighted-hyperelliptic", (poly, genus), poly.field)

    @classmethod
    def bruin(cls, q1, q2, q3):
        return cls("bruin-cover", (q1, q2, q3), q1.field)

    def count_over(self, field, **options):
        """Count over an extension; the characteristic must match the base."""
        if self.base_field.kind == "finite" and field.char != self.base_field.char:
            raise UnsupportedFieldError(
                "counting field characteristic differs from the curve's base"
            )
        if self.model == "plane-quartic":
            return count_plane_quartic(self.data[0], field, **options)
        if self.model == "weighted-hyperelliptic":
            poly, genus = self.data
            return count_weighted(poly, genus, field, **options)
        if self.model == "bruin-cover":
            return count_bruin_cover(*self.data, field, **options)
        raise ModelError(f"unknown model tag {self.model!r}")


def _require_odd_finite(field):
    if field.kind != "finite":
        raise UnsupportedFieldError("point counting needs a finite field")
    if field.p == 2:
        raise UnsupportedFieldError("even characteristic is excluded")


def _extension_degree(base_q: int, q: int) -> int:
    m, t = 0, 1
    while t < q:
        t *= base_q
        m += 1
    if t != q:
        raise ValueError(f"{q} is not a power of the base size {base_q}")
    return m


def _coerce_scalars(values, data_field, count_field):
    """Map coefficients living in data_field into count_field."""
    if data_field == count_field:
        return list(values)
    if data_field.kind != "finite":
        raise UnsupportedFieldError("cannot count a curve with rational coefficients")
    if data_field.p != count_field.p:
        raise UnsupportedFieldError("characteristic mismatch between curve and field")
    if data_field.k == 1:
        return list(values)  # packed prime-field values embed as themselves
    table = embedding(data_field, count_field)
    return [table[v] for v in values]


def _chunk_ranges(q: int):
    threads = 1
    raw = os.environ.get("PRYM_THREADS", "")
    if raw.isdigit():
        threads = max(1, int(raw))
    nchunks = threads if threads > 1 else 1
    size = (q + nchunks - 1) // nchunks
    return threads, [(lo, min(lo + size, q)) for lo in range(0, q, size)]


def _run_chunks(q: int, worker):
    threads, ranges = _chunk_ranges(q)
    if threads == 1:
        return sum(worker(lo, hi) for lo, hi in ranges)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(lambda r: worker(*r), ranges))


def _count_scan_zeros(coeffs, field) -> int:
    """Zeros in the field of a low-degree polynomial, by direct scan."""
    add, mul = field.add, field.mul
    zero = field.zero
    if all(c == zero for c in coeffs):
        return field.q
    n = 0
    for x in range(field.q):
        acc = zero
        for c in reversed(coeffs):
            acc = add(mul(acc, x), c)
        if acc == zero:
            n += 1
    return n


def count_projective_roots(form: BinaryForm, field=None) -> int:
    """Distinct projective roots of a binary form over a finite field."""
    F = field or form.field
    if form.is_zero():
        raise DegenerateInputError("zero form has no root divisor")
    coeffs = _coerce_scalars(form.coeffs, form.field, F)
    affine = list(reversed(coeffs))  # F(x, 1), constant first
    dedup = _distinct_roots_gcd(affine, F)
    at_infinity = 1 if coeffs[0] == F.zero else 0
    return dedup + at_infinity


# --- per-row root counting over y ----------------------------------------

def _poly_trim(c, zero):
    while c and c[-1] == zero:
        c.pop()
    return c


def _distinct_roots_gcd(coeffs, field) -> int:
    """Number of distinct roots in the field: deg gcd(x^q - x, f)."""
    zero, one = field.zero, field.one
    f = _poly_trim(list(coeffs), zero)
    if not f:
        return field.q
    if len(f) == 1:
        return 0
    if len(f) == 2:
        return 1
    inv_lead = field.inv(f[-1])
    f = [field.mul(inv_lead, c) for c in f]
    mul, add, sub = field.mul, field.add, field.sub
    d = len(f) - 1

    def mulmod(a, b):
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai != zero:
                for j, bj in enumerate(b):
                    out[i + j] = add(out[i + j], mul(ai, bj))
        for i in range(len(out) - 1, d - 1, -1):
            c = out[i]
            if c != zero:
                out[i] = zero
                for j in range(d):
                    out[i - d + j] = sub(out[i - d + j], mul(c, f[j]))
        return _poly_trim(out[:d], zero) or [zero]

    # x^q mod f
    e = field.q
    result = [one]
    base = [zero, one]
    while e:
        if e & 1:
            result = mulmod(result, base)
        e >>= 1
        if e:
            base = mulmod(base, base)
    # g = x^q - x mod f
    g = list(result) + [zero] * max(0, 2 - len(result))
    g[1] = sub(g[1], one)
    g = _poly_trim(g, zero)
    a, b = f, g
    while b:
        # a mod b
        inv = field.inv(b[-1])
        r = list(a)
        while len(r) >= len(b):
            c = r[-1]
            if c != zero:
                fq = mul(c, inv)
                off = len(r) - len(b)
                for i in range(len(b)):
                    r[off + i] = sub(r[off + i], mul(fq, b[i]))
            r.pop()
            _poly_trim(r, zero)
            if not r:
                break
        a, b = b, r
    return len(a) - 1


def _roots_of_quartic_exhaustive(vals, field) -> int:
    zero = field.zero
    if all(v == zero for v in vals):
        return field.q
    add, mul = field.add, field.mul
    n = 0
    v4, v3, v2, v1, v0 = vals[4], vals[3], vals[2], vals[1], vals[0]
    for y in range(field.q):
        acc = add(mul(add(mul(add(mul(add(mul(v4, y), v3), y), v2), y), v1), y), v0)
        if acc == zero:
            n += 1
    return n


def _even_row_points(a4, b2, c0, field) -> int:
    """Points (y, ...) on a4 y^4 + b2 y^2 + c0 = 0 via the quadratic in w = y^2."""
    zero = field.zero
    chi = field.chi_table
    sqrt = field.sqrt_table
    add, mul, sub, neg = field.add, field.mul, field.sub, field.neg
    if a4 == zero:
        if b2 == zero:
            return field.q if c0 == zero else 0
        w = field.div(neg(c0), b2)
        return 1 + chi[w]
    disc = sub(mul(b2, b2), mul(field.from_int(4), mul(a4, c0)))
    cd = chi[disc]
    if cd < 0:
        return 0
    inv2a = mul(field.inv(field.from_int(2)), field.inv(a4))
    if cd == 0:
        w = mul(neg(b2), inv2a)
        return 1 + chi[w]
    r = sqrt[disc]
    w1 = mul(add(neg(b2), r), inv2a)
    w2 = mul(sub(neg(b2), r), inv2a)
    return 2 + chi[w1] + chi[w2]


def count_plane_quartic(form: TernaryForm, field, *, base_q: int | None = None,
                        algorithm: str = "auto",
                        axis_cap: int = DEFAULT_AXIS_CAP,
                        eval_cap: int = DEFAULT_EVAL_CAP) -> CountRecord:
    """Exact number of projective points of a quartic plane curve.

    Charts: {z = 1} as q rows over x, then {z = 0, y = 1}, then (1:0:0).
    """
    _require_odd_finite(field)
    if form.degree != 4:
        raise ModelError("plane-quartic counting needs a degree-4 form")
    if form.is_zero():
        raise DegenerateInputError("zero quartic")
    q = field.q
    if q > axis_cap or q * q > eval_cap:
        raise ResourceLimitError(
            f"field size {q} exceeds the plane-count cap (axis {axis_cap}, evals {eval_cap})"
        )
    start = time.perf_counter()
    zero = field.zero
    items = list(form.coeffs.items())
    coerced = _coerce_scalars([c for _, c in items], form.field, field)
    monomials = {m: v for (m, _), v in zip(items, coerced)}
    # chart z = 1: coefficient polynomials in x for each power of y
    rows = [[zero] * 5 for _ in range(5)]
    for (i, j, k), c in monomials.items():
        rows[j][i] = c
    even = not any(c != zero for c in rows[1]) and not any(c != zero for c in rows[3])
    if algorithm == "auto":
        algorithm = "even" if even else ("exhaustive" if q <= 512 else "rowgcd")
    elif algorithm == "even" and not even:
        raise ModelError("curve is not even in y")

    add, mul = field.add, field.mul

    def eval_row(cs, x):
        acc = zero
        for c in reversed(cs):
            acc = add(mul(acc, x), c)
        return acc

    if algorithm == "even":
        chi = field.chi_table
        sqrt = field.sqrt_table
        sub, neg = field.sub, field.neg
        four = field.from_int(4)
        a4 = rows[4][0]
        inv2a = (
            field.mul(field.inv(field.from_int(2)), field.inv(a4))
            if a4 != zero
            else None
        )
        r2, r0 = rows[2], rows[0]

        def worker(lo, hi):
            total = 0
            for x in range(lo, hi):
                b2 = eval_row(r2, x)
                c0 = eval_row(r0, x)
                if a4 == zero:
                    total += _even_row_points(a4, b2, c0, field)
                    continue
                disc = sub(mul(b2, b2), mul(four, mul(a4, c0)))
                cd = chi[disc]
                if cd < 0:
                    continue
                nb = neg(b2)
                if cd == 0:
                    total += 1 + chi[mul(nb, inv2a)]
                else:
                    r = sqrt[disc]
                    total += (
                        2
                        + chi[mul(add(nb, r), inv2a)]
                        + chi[mul(sub(nb, r), inv2a)]
                    )
            return total

    elif algorithm == "exhaustive":

        def worker(lo, hi):
            total = 0
            for x in range(lo, hi):
                vals = [eval_row(rows[j], x) for j in range(5)]
                total += _roots_of_quartic_exhaustive(vals, field)
            return total

    elif algorithm == "rowgcd":

        def worker(lo, hi):
            total = 0
            for x in range(lo, hi):
                vals = [eval_row(rows[j], x) for j in range(5)]
                total += _distinct_roots_gcd(vals, field)
            return total

    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")

    n = _run_chunks(q, worker)
    # line z = 0 with y = 1: polynomial in x
    line = [zero] * 5
    for (i, j, k), c in monomials.items():
        if k == 0:
            line[i] = add(line[i], c)
    n += _count_scan_zeros(line, field)
    # the point (1:0:0)
    if monomials.get((4, 0, 0), zero) == zero:
        n += 1
    base = base_q or field.p
    rec = CountRecord("plane-quartic", base, _extension_degree(base, q), n,
                      time.perf_counter() - start)
    return rec


def count_weighted(poly: UniPoly, genus: int, field, *, base_q: int | None = None,
                   axis_cap: int = DEFAULT_AXIS_CAP) -> CountRecord:
    """Points of y^2 = F(x) completed in P(1, g+1, 1).

    Homogenize F to degree 2g+2: the affine chart contributes
    sum_x (1 + chi(F(x))) and x = infinity contributes 1 + chi(top
    coefficient), the top coefficient being zero whenever deg F < 2g + 2.
    """
    _require_odd_finite(field)
    if poly.degree != float("-inf") and poly.degree > 2 * genus + 2:
        raise ModelError(f"degree {poly.degree} exceeds 2g+2 = {2 * genus + 2}")
    q = field.q
    if q > axis_cap:
        raise ResourceLimitError(f"field size {q} exceeds the axis cap {axis_cap}")
    start = time.perf_counter()
    zero = field.zero
    coeffs = _coerce_scalars(poly.coeffs, poly.field, field)
    chi = field.chi_table
    add, mul = field.add, field.mul

    def worker(lo, hi):
        total = 0
        for x in range(lo, hi):
            acc = zero
            for c in reversed(coeffs):
                acc = add(mul(acc, x), c)
            total += 1 + chi[acc]
        return total

    n = _run_chunks(q, worker)
    top = coeffs[2 * genus + 2] if len(coeffs) > 2 * genus + 2 else zero
    n += 1 + chi[top]
    base = base_q or field.p
    return CountRecord("weighted-hyperelliptic", base, _extension_degree(base, q), n,
                       time.perf_counter() - start)


def count_bruin_cover(q1: TernaryQuadratic, q2: TernaryQuadratic,
                      q3: TernaryQuadratic, field, *, base_q: int | None = None,
                      axis_cap: int = DEFAULT_AXIS_CAP,
                      eval_cap: int = DEFAULT_EVAL_CAP):
    """(base count, cover count) for q2^2 = q1 q3 and its double cover.

    Fiber over a base point: 2 points when the first nonvanishing of (q1, q3)
    is a nonzero square, 0 when it is a nonsquare, 1 when q1 = q2 = q3 = 0.
    Cost is one pass over P^2; the cover itself is never enumerated in P^4.
    """
    _require_odd_finite(field)
    if q1.is_zero() and q2.is_zero() and q3.is_zero():
        raise DegenerateInputError("all three quadratic forms are zero")
    q = field.q
    if q > axis_cap or q * q > eval_cap:
        raise ResourceLimitError(
            f"field size {q} exceeds the cover-count cap (axis {axis_cap}, evals {eval_cap})"
        )
    start = time.perf_counter()
    zero = field.zero
    add, mul, sub = field.add, field.mul, field.sub
    chi = field.chi_table
    packs = []
    for quad in (q1, q2, q3):
        cs = _coerce_scalars(quad.coefficients(), quad.field, field)
        packs.append(cs)  # (x^2, y^2, z^2, xy, xz, yz)

    def fiber(v1, v2, v3):
        if v1 != zero:
            return 1 + chi[v1]
        if v3 != zero:
            return 1 + chi[v3]
        return 1

    def worker(lo, hi):
        nz = 0
        ny = 0
        for x in range(lo, hi):
            x2 = mul(x, x)
            consts = []
            lins = []
            quads = []
            for (a, b, c, d, e, f) in packs:
                consts.append(add(add(mul(a, x2), mul(e, x)), c))
                lins.append(add(mul(d, x), f))
                quads.append(b)
            c1, c2m, c3 = consts
            l1, l2, l3 = lins
            b1, b2m, b3 = quads
            for y in range(q):
                v1 = add(mul(add(mul(b1, y), l1), y), c1)
                v2 = add(mul(add(mul(b2m, y), l2), y), c2m)
                v3 = add(mul(add(mul(b3, y), l3), y), c3)
                if sub(mul(v2, v2), mul(v1, v3)) == zero:
                    nz += 1
                    ny += fiber(v1, v2, v3)
        return nz, ny

    threads, ranges = _chunk_ranges(q)
    if threads == 1:
        partials = [worker(lo, hi) for lo, hi in ranges]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda r: worker(*r), ranges))
    nz = sum(p[0] for p in partials)
    ny = sum(p[1] for p in partials)
    # line z = 0, y = 1: q_i(x, 1, 0) = a x^2 + d x + b
    for x in range(q):
        vals = []
        for (a, b, c, d, e, f) in packs:
            vals.append(add(add(mul(a, mul(x, x)), mul(d, x)), b))
        v1, v2, v3 = vals
        if sub(mul(v2, v2), mul(v1, v3)) == zero:
            nz += 1
            ny += fiber(v1, v2, v3)
    # the point (1:0:0): q_i = a_i
    v1, v2, v3 = packs[0][0], packs[1][0], packs[2][0]
    if sub(mul(v2, v2), mul(v1, v3)) == zero:
        nz += 1
        ny += fiber(v1, v2, v3)
    seconds = time.perf_counter() - start
    base = base_q or field.p
    m = _extension_degree(base, q)
    return (
        CountRecord("plane-quartic", base, m, nz, seconds),
        CountRecord("bruin-cover", base, m, ny, seconds),
    )
