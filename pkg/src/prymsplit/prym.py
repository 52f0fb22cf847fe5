"""The constructions on a bielliptic plane quartic y^4 - h y^2 + f g = 0.

Everything here is driven by the 3x3 coefficient matrix A whose rows are the
coefficient triples of f, h, g.  Its inverse, read column-wise as three
quadratics a, b, c (with doubled middle coefficients), produces:

* the genus-2 curve  y^2 = b (b^2 - a c)  in P(1,3,1),
* the genus-1 curve  Y^2 = h^2 - 4 f g    in P(1,2,1),
* the singular plane model cut out by the quadric triple
  (q1, q2, q3)^T = A^-1 (x1 x2, x2^2 + x1 x3, x2 x3)^T, and
* a pencil of quadric triples joining it to the fixed smooth triple
  (x2^2 + x3^2, x1^2, x2^2 - x3^2).

The Gram-matrix pencil determinant ties the pieces together:
4 * (-det(G1 + 2x G2 + x^2 G3)) equals b (b^2 - a c) identically.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import DegenerateInputError, RejectedInputError, UnsupportedFieldError
from .linalg import Matrix3
from .poly import BinaryForm, UniPoly
from .resultants import disc_ternary_quartic
from .ternary import TernaryForm, TernaryQuadratic, cover_quartic

log = logging.getLogger(__name__)

CROSS_CHECK_MIN_PRIME = 13  # quartic-discriminant cross-check runs over QQ or p > 13


@dataclass(frozen=True)
class BiellipticQuartic:
    """Smooth-candidate plane quartic y^4 - h(x,z) y^2 + f(x,z) g(x,z)."""

    field: object
    f: BinaryForm
    g: BinaryForm
    h: BinaryForm

    def __post_init__(self):
        if self.field.char == 2:
            raise UnsupportedFieldError("characteristic 2 is excluded")
        for name in ("f", "g", "h"):
            form = getattr(self, name)
            if form.n != 2:
                raise DegenerateInputError(f"{name} must be a degree-2 form")
        if self.f.is_zero() or self.g.is_zero():
            raise DegenerateInputError("f and g must be nonzero")

    @classmethod
    def from_ints(cls, field, f, g, h):
        """Coefficient triples ordered (x^2, xz, z^2)."""
        return cls(
            field,
            BinaryForm.from_ints(field, 2, f),
            BinaryForm.from_ints(field, 2, g),
            BinaryForm.from_ints(field, 2, h),
        )

    def coefficient_matrix(self) -> Matrix3:
        """Rows are the coefficient triples of f, h, g in that order."""
        return Matrix3(self.field, (self.f.coeffs, self.h.coeffs, self.g.coeffs))

    def fg(self) -> BinaryForm:
        return self.f * self.g

    def branch_quartic(self) -> BinaryForm:
        """s = h^2 - 4 f g, the quartic under the genus-1 model Y^2 = s."""
        F = self.field
        four = F.from_int(4)
        return (self.h * self.h) - (self.f * self.g).scale(four)

    def plane_quartic(self) -> TernaryForm:
        """The defining ternary quartic, variables ordered (x, y, z)."""
        F = self.field
        coeffs = {(0, 4, 0): F.one}
        for i, c in enumerate(self.h.coeffs):  # -h(x,z) y^2
            coeffs[(2 - i, 2, i)] = F.neg(c)
        r = self.fg()
        for i, c in enumerate(r.coeffs):
            mono = (4 - i, 0, i)
            coeffs[mono] = F.add(coeffs.get(mono, F.zero), c)
        return TernaryForm(F, 4, coeffs)


@dataclass(frozen=True)
class ValidationReport:
    det: object
    det_nonzero: bool
    fg_squarefree: bool
    branch_squarefree: bool
    disc_cross_check: bool | None  # None when the cross-check was not run

    @property
    def passed(self) -> bool:
        return self.det_nonzero and self.fg_squarefree and self.branch_squarefree

    @property
    def failures(self) -> list:
        out = []
        if not self.det_nonzero:
            out.append("coefficient matrix is singular")
        if not self.fg_squarefree:
            out.append("f*g has a repeated root")
        if not self.branch_squarefree:
            out.append("h^2 - 4*f*g has a repeated root")
        if self.disc_cross_check is False:
            out.append("quartic discriminant disagrees with the squarefree checks")
        return out


def validate(curve: BiellipticQuartic, seed: int = 0) -> ValidationReport:
    """The smoothness + invertibility gate for the construction.

    Checks det A != 0, f*g squarefree and h^2 - 4fg squarefree; a singular
    point with y = 0 forces a repeated root of f*g, one with y != 0 forces a
    repeated root of h^2 - 4fg, so the two squarefree checks are equivalent
    to smoothness.  Over the rationals or a prime field with p > 13 this is
    cross-checked against the ternary-quartic discriminant.
    """
    F = curve.field
    det = curve.coefficient_matrix().det()
    fg_sf = curve.fg().is_squarefree()
    s = curve.branch_quartic()
    s_sf = False if s.is_zero() else s.is_squarefree()
    cross = None
    if F.kind == "rationals" or (F.kind == "finite" and F.p > CROSS_CHECK_MIN_PRIME):
        disc = disc_ternary_quartic(curve.plane_quartic(), seed=seed)
        cross = (disc != F.zero) == (fg_sf and s_sf)
    return ValidationReport(det, det != F.zero, fg_sf, s_sf, cross)


@dataclass(frozen=True)
class GenusOneModel:
    """Y^2 = s(x, z) in P(1,2,1), with Y = 2y - h relating it to the quotient
    model y^2 - h y + f g = 0 (characteristic is never 2 here)."""

    quartic: BinaryForm

    @property
    def field(self):
        return self.quartic.field


def genus_one_model(curve: BiellipticQuartic) -> GenusOneModel:
    return GenusOneModel(curve.branch_quartic())


@dataclass(frozen=True)
class SplitResult:
    """The full output of the genus-1 x genus-2 decomposition."""

    curve: BiellipticQuartic
    matrix: Matrix3
    inverse: Matrix3
    det: object
    a: UniPoly
    b: UniPoly
    c: UniPoly
    sextic: UniPoly  # b(b^2 - ac); the genus-2 curve is y^2 = sextic in P(1,3,1)
    genus_one: GenusOneModel

    def __post_init__(self):
        recomputed = self.b * (self.b * self.b - self.a * self.c)
        assert recomputed == self.sextic


def _inverse_column_quadratic(inverse: Matrix3, j: int) -> UniPoly:
    """Column j of A^-1 as the quadratic v1 + 2 v2 x + v3 x^2."""
    F = inverse.field
    v1, v2, v3 = inverse.column(j)
    return UniPoly(F, (v1, F.add(v2, v2), v3))


def split(curve: BiellipticQuartic, skip_validation: bool = False,
          seed: int = 0) -> SplitResult:
    """Decompose: y^2 = b(b^2 - ac) is the genus-2 factor, Y^2 = h^2 - 4fg the
    genus-1 factor.  Rejects invalid curves unless skip_validation is set
    (formula-only mode for degenerate inputs)."""
    if not skip_validation:
        report = validate(curve, seed=seed)
        if not report.passed:
            raise RejectedInputError(
                "curve fails validation: " + "; ".join(report.failures),
                failures=report.failures,
            )
    matrix = curve.coefficient_matrix()
    inverse = matrix.inverse()
    a = _inverse_column_quadratic(inverse, 0)
    b = _inverse_column_quadratic(inverse, 1)
    c = _inverse_column_quadratic(inverse, 2)
    sextic = b * (b * b - a * c)
    if not skip_validation and sextic.degree not in (5, 6):
        raise DegenerateInputError(
            f"validated curve produced a degree-{sextic.degree} genus-2 polynomial"
        )
    if sextic.degree == 5:
        log.info("genus-2 polynomial dropped to degree 5 (b quadratic term vanished)")
    return SplitResult(
        curve=curve,
        matrix=matrix,
        inverse=inverse,
        det=matrix.det(),
        a=a,
        b=b,
        c=c,
        sextic=sextic,
        genus_one=genus_one_model(curve),
    )


@dataclass(frozen=True)
class SingularModel:
    """Quadric triple with q2^2 = q1 q3 cutting the singular plane model."""

    q1: TernaryQuadratic
    q2: TernaryQuadratic
    q3: TernaryQuadratic

    @property
    def field(self):
        return self.q1.field

    def triple(self):
        return (self.q1, self.q2, self.q3)


def singular_model(curve: BiellipticQuartic) -> SingularModel:
    """(q1, q2, q3)^T = A^-1 (x1 x2, x2^2 + x1 x3, x2 x3)^T.

    Row i of A^-1 gives q_i = a_i x1 x2 + b_i (x2^2 + x1 x3) + c_i x2 x3."""
    F = curve.field
    inverse = curve.coefficient_matrix().inverse()
    quads = []
    for i in range(3):
        ai, bi, ci = inverse.rows[i]
        quads.append(
            TernaryQuadratic.from_coefficients(
                F, F.zero, bi, F.zero, ai, bi, ci
            )
        )
    return SingularModel(*quads)


def pencil_sextic(q1: TernaryQuadratic, q2: TernaryQuadratic,
                  q3: TernaryQuadratic) -> UniPoly:
    """-det(G1 + 2x G2 + x^2 G3) with Gram matrices, a polynomial of degree <= 6."""
    F = q1.field
    two = F.from_int(2)

    def entry(i, j):
        return UniPoly(
            F,
            (
                q1.gram[i][j],
                F.mul(two, q2.gram[i][j]),
                q3.gram[i][j],
            ),
        )

    m = [[entry(i, j) for j in range(3)] for i in range(3)]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return -det


# the smooth endpoint of the deformation pencil: quartic x1^4 - x2^4 + x3^4
def _pencil_targets(F):
    zero, one = F.zero, F.one
    t1 = TernaryQuadratic.from_coefficients(F, zero, one, one, zero, zero, zero)
    t2 = TernaryQuadratic.from_coefficients(F, one, zero, zero, zero, zero, zero)
    t3 = TernaryQuadratic.from_coefficients(F, zero, one, F.neg(one), zero, zero, zero)
    return t1, t2, t3


@dataclass(frozen=True)
class BruinCover:
    """A quadric triple, its plane quartic base q2^2 = q1 q3, the double cover
    q1 = u^2, q2 = uv, q3 = v^2 over it, and the pencil hyperelliptic model."""

    q1: TernaryQuadratic
    q2: TernaryQuadratic
    q3: TernaryQuadratic
    base_quartic: TernaryForm
    sextic: UniPoly
    quartic_disc: object
    sextic_squarefree: bool

    @property
    def field(self):
        return self.q1.field

    @property
    def base_smooth(self) -> bool:
        return self.quartic_disc != self.field.zero

    @property
    def verifiable(self) -> bool:
        return self.base_smooth and self.sextic_squarefree

    def triple(self):
        return (self.q1, self.q2, self.q3)


def bruin_cover(q1: TernaryQuadratic, q2: TernaryQuadratic,
                q3: TernaryQuadratic, seed: int = 0) -> BruinCover:
    """Assemble the cover data and report (never assume) smoothness."""
    F = q1.field
    base = cover_quartic(q1, q2, q3)
    sextic = pencil_sextic(q1, q2, q3)
    disc = disc_ternary_quartic(base, seed=seed)
    if sextic.is_zero():
        sf = False
    else:
        sf = BinaryForm.homogenize(sextic, 6).is_squarefree() and sextic.degree >= 5
    return BruinCover(q1, q2, q3, base, sextic, disc, sf)


def deform(curve: BiellipticQuartic, eps, seed: int = 0) -> BruinCover:
    """Fiber of the deformation pencil at a concrete parameter value.

    Directions are (target_i - q_i) for the fixed smooth targets, so eps = 0
    reproduces the singular model exactly and eps = 1 lands on the triple
    whose quartic is x1^4 - x2^4 + x3^4, smooth in every odd characteristic.
    """
    model = singular_model(curve)
    targets = _pencil_targets(curve.field)
    fibers = []
    for q, t in zip(model.triple(), targets):
        fibers.append(q + (t - q).scale(eps))
    return bruin_cover(*fibers, seed=seed)


def random_curve(field, rng) -> BiellipticQuartic:
    """Uniform coefficient triples; may fail validation."""
    while True:
        f = [field.random_element(rng) for _ in range(3)]
        g = [field.random_element(rng) for _ in range(3)]
        h = [field.random_element(rng) for _ in range(3)]
        try:
            return BiellipticQuartic(
                field,
                BinaryForm(field, 2, f),
                BinaryForm(field, 2, g),
                BinaryForm(field, 2, h),
            )
        except DegenerateInputError:
            continue


def random_validated_curve(field, rng, max_tries: int = 2000,
                           seed: int = 0) -> BiellipticQuartic:
    """Rejection-sample until validation passes."""
    for _ in range(max_tries):
        curve = random_curve(field, rng)
        if validate(curve, seed=seed).passed:
            return curve
    raise RejectedInputError(f"no validated curve found in {max_tries} tries over {field}")
