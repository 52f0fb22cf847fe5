"""Resultants and discriminants: Sylvester for one variable, Macaulay for three.

Conventions fixed here and relied on everywhere else:

* resultant(p, q) is the determinant of the Sylvester matrix with the p-rows
  above the q-rows and coefficients leading-first, sized deg p + deg q.  With
  that layout Res(x - 1, x - 2) = -1.
* discriminant_binary(F) for a degree-n binary form is the resultant of the
  two partial derivatives taken at formal degree n - 1 (leading zeros kept).
  It differs from the classical discriminant of the dehomogenization by the
  constant (-1)^(n(n-1)/2) * n^(n-2).
* The Macaulay resultant of three ternary cubics is normalized so that
  Res(x1^3, x2^3, x3^3) = 1; the quotient det(M)/det(M') at critical degree 7
  realizes that normalization exactly.
* disc_ternary_quartic divides the Macaulay resultant of the partials by
  4^7 = 2^14 (the degree-4 normalizer), giving the discriminant whose value
  on x1^4 - x2^4 + x3^4 is exactly -2^40.
"""

from __future__ import annotations

import random

from .errors import (
    DegenerateInputError,
    ResultantIndeterminateError,
    UndefinedResultantError,
)
from .linalg import det_in_field, rank_in_field
from .poly import BinaryForm, UniPoly
from .ternary import TernaryForm

QUARTIC_DISC_NORMALIZER = 4**7


def _sylvester_rows(p_desc, q_desc, field):
    """Sylvester matrix rows from leading-first coefficient vectors."""
    m = len(p_desc) - 1
    n = len(q_desc) - 1
    size = m + n
    zero = field.zero
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p_desc) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q_desc) + [zero] * (size - n - 1 - i))
    return rows


def resultant(p: UniPoly, q: UniPoly):
    """Sylvester resultant at the actual degrees of p and q."""
    F = p.field
    if p.is_zero() and q.is_zero():
        raise UndefinedResultantError("resultant of two zero polynomials")
    if p.is_zero() or q.is_zero():
        return F.zero
    p_desc = list(reversed(p.coeffs))
    q_desc = list(reversed(q.coeffs))
    if len(p_desc) == 1 and len(q_desc) == 1:
        return F.one
    if len(p_desc) == 1:
        return F.pow(p_desc[0], len(q_desc) - 1)
    if len(q_desc) == 1:
        return F.pow(q_desc[0], len(p_desc) - 1)
    return det_in_field(_sylvester_rows(p_desc, q_desc, F), F)


def resultant_forms(p: BinaryForm, q: BinaryForm):
    """Homogeneous resultant at formal degrees; leading zeros participate."""
    F = p.field
    if p.is_zero() and q.is_zero():
        raise UndefinedResultantError("resultant of two zero forms")
    if p.n == 0 and q.n == 0:
        return F.one
    if p.n == 0:
        return F.pow(p.coeffs[0], q.n)
    if q.n == 0:
        return F.pow(q.coeffs[0], p.n)
    return det_in_field(_sylvester_rows(p.coeffs, q.coeffs, F), F)


def discriminant_binary(F: BinaryForm):
    """Resultant of the two partials of a degree >= 2 binary form."""
    if F.n < 2:
        raise DegenerateInputError("discriminant needs degree >= 2")
    return resultant_forms(F.dx(), F.dz())


def binary_disc_scale(n: int) -> int:
    """discriminant_binary(F) = binary_disc_scale(n) * Disc(F(x,1)) for a
    degree-n form whose leading coefficient is nonzero, where Disc is the
    classical univariate discriminant (-1)^(n(n-1)/2) Res(f, f')/lc(f)."""
    return (-1) ** (n * (n - 1) // 2) * n ** (n - 2)


# --- Macaulay resultant of three ternary cubics -------------------------

_CRITICAL_DEGREE = 7  # 3*(3-1) + 1

_MONOMIALS_7 = tuple(
    sorted(
        (
            (i, j, 7 - i - j)
            for i in range(8)
            for j in range(8 - i)
        ),
        reverse=True,
    )
)


def _slot(mono):
    """Which input form covers this degree-7 monomial (first x_i with exp >= 3)."""
    if mono[0] >= 3:
        return 0
    if mono[1] >= 3:
        return 1
    return 2  # mono[2] >= 3 is forced since the first two are <= 2


def _is_reduced(mono):
    return sum(1 for e in mono if e >= 3) == 1


def _macaulay_quotient(cubics, field):
    """det(M)/det(M') for the fixed partition, or None when the minor vanishes."""
    index = {m: i for i, m in enumerate(_MONOMIALS_7)}
    zero = field.zero
    rows = []
    for mono in _MONOMIALS_7:
        s = _slot(mono)
        f = cubics[s]
        mult = list(mono)
        mult[s] -= 3
        row = [zero] * len(_MONOMIALS_7)
        for fm, c in f.coeffs.items():
            target = (mult[0] + fm[0], mult[1] + fm[1], mult[2] + fm[2])
            row[index[target]] = field.add(row[index[target]], c)
        rows.append(row)
    minor_idx = [i for i, m in enumerate(_MONOMIALS_7) if not _is_reduced(m)]
    minor_rows = [[rows[i][j] for j in minor_idx] for i in minor_idx]
    det_minor = det_in_field(minor_rows, field)
    if det_minor == field.zero:
        return None
    det_full = det_in_field(rows, field)
    return field.div(det_full, det_minor)


_QUARTIC_MONOMIALS = tuple(
    (i, j, 4 - i - j) for i in range(5) for j in range(5 - i)
)


def _shares_projective_zero(cubics, field) -> bool:
    """Common zero over the algebraic closure, decided by an exact rank.

    The three cubics have no common projective zero exactly when their
    degree-7 multiples span all 36 degree-7 monomials; rank is unchanged by
    field extension, so computing it over the ground field is conclusive.
    """
    index = {m: i for i, m in enumerate(_MONOMIALS_7)}
    zero = field.zero
    rows = []
    for f in cubics:
        for mult in _QUARTIC_MONOMIALS:
            row = [zero] * len(_MONOMIALS_7)
            for fm, c in f.coeffs.items():
                tgt = (mult[0] + fm[0], mult[1] + fm[1], mult[2] + fm[2])
                row[index[tgt]] = field.add(row[index[tgt]], c)
            rows.append(row)
    return rank_in_field(rows, field) < len(_MONOMIALS_7)


def _random_gl3(field, rng):
    from .linalg import Matrix3

    for _ in range(64):
        if field.kind == "rationals":
            rows = [[field.from_int(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        else:
            rows = [[field.random_element(rng) for _ in range(3)] for _ in range(3)]
        m = Matrix3(field, rows)
        if m.det() != field.zero:
            return m
    raise ResultantIndeterminateError("could not sample an invertible change of variables")


def macaulay_resultant_cubics(f1: TernaryForm, f2: TernaryForm, f3: TernaryForm,
                              seed: int = 0, max_retries: int = 24):
    """Macaulay resultant of three ternary cubics at critical degree 7.

    A pre-check on the span of the degree-7 multiples settles the resultant-
    is-zero case exactly.  Otherwise the quotient det(M)/det(M') is the
    resultant; when the designated minor degenerates, retries run under a
    random invertible substitution T, undoing Res(f o T) = det(T)^27 Res(f).
    Over small prime fields the retries may move to an extension field, where
    invertible substitutions are plentiful; the value still lies in the base
    field and is mapped back.
    """
    for f in (f1, f2, f3):
        if f.degree != 3:
            raise DegenerateInputError("inputs must be ternary cubics")
    field = f1.field
    if _shares_projective_zero((f1, f2, f3), field):
        return field.zero
    value = _macaulay_quotient((f1, f2, f3), field)
    if value is not None:
        return value
    rng = random.Random((seed & 0xFFFFFFFF) * 0x9E3779B1 + 0xAC)
    cubics = (f1, f2, f3)
    for attempt in range(max_retries):
        work_field = field
        if field.kind == "finite" and field.q < 32 and attempt >= max_retries // 3:
            work_field = _lifted_field(field, 2 if attempt < 2 * max_retries // 3 else 3)
            cubics = tuple(
                TernaryForm(work_field, 3, dict(f.coeffs)) for f in (f1, f2, f3)
            )
        t = _random_gl3(work_field, rng)
        moved = tuple(f.compose_linear(t.rows) for f in cubics)
        value = _macaulay_quotient(moved, work_field)
        if value is not None:
            value = work_field.div(value, work_field.pow(t.det(), 27))
            if work_field is not field and value >= field.p:
                raise ResultantIndeterminateError(
                    "lifted Macaulay value escaped the base field"
                )
            return value
    raise ResultantIndeterminateError(
        "Macaulay minor vanished for every tried coordinate change"
    )


def _lifted_field(field, factor: int):
    from .fields import build_extension

    if field.k != 1:
        raise ResultantIndeterminateError(
            "Macaulay retries exhausted over an extension field"
        )
    return build_extension(field.p, factor)


def disc_ternary_quartic(F: TernaryForm, seed: int = 0):
    """Discriminant of a ternary quartic; zero iff the plane curve is singular.

    Computed as the Macaulay resultant of the three partials divided by the
    normalizer 4^7, so the value matches the classical degree-27 discriminant
    (x1^4 - x2^4 + x3^4 |-> -2^40) exactly over every coefficient field here.
    """
    if F.degree != 4:
        raise DegenerateInputError("input must be a ternary quartic")
    field = F.field
    res = macaulay_resultant_cubics(F.partial(0), F.partial(1), F.partial(2), seed=seed)
    return field.div(res, field.from_int(QUARTIC_DISC_NORMALIZER))
