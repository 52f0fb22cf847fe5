import random

import pytest

from prymsplit import (
    DegenerateInputError,
    QQ,
    ResourceLimitError,
    TernaryForm,
    TernaryQuadratic,
    UniPoly,
    UnsupportedFieldError,
    build_extension,
    count_bruin_cover,
    count_plane_quartic,
    count_projective_roots,
    count_weighted,
    random_validated_curve,
    singular_model,
)
from prymsplit.counting import CountRecord
from helpers import (
    brute_cover_points,
    brute_plane_points,
    brute_weighted_points,
    random_quadratic,
    random_ternary_form,
)

F3 = build_extension(3)
F5 = build_extension(5)
F7 = build_extension(7)
F9 = build_extension(3, 2)


def fermat(field):
    return TernaryForm.from_ints(field, 4, {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1})


class TestPlaneQuartic:
    def test_fermat_f5_empty(self):
        # fourth powers mod 5 lie in {0, 1}; no nonzero triple sums to 0
        assert count_plane_quartic(fermat(F5), F5).n == 0

    def test_fermat_f7_brute_force(self):
        rec = count_plane_quartic(fermat(F7), F7)
        assert rec.n == brute_plane_points(fermat(F7), F7)

    def test_even_characteristic_rejected(self):
        with pytest.raises(UnsupportedFieldError):
            count_plane_quartic(fermat(F5), QQ)

    def test_resource_cap(self):
        with pytest.raises(ResourceLimitError):
            count_plane_quartic(fermat(F7), F7, axis_cap=5)

    @pytest.mark.parametrize("trial", range(12))
    def test_algorithms_agree_with_brute_force(self, trial):
        rng = random.Random(trial)
        field = rng.choice([F3, F5, F7, F9])
        form = random_ternary_form(field, rng, 4)
        if form.is_zero():
            return
        expected = brute_plane_points(form, field)
        for algorithm in ("exhaustive", "rowgcd"):
            assert count_plane_quartic(form, field, algorithm=algorithm).n == expected

    @pytest.mark.parametrize("trial", range(12))
    def test_even_kernel_agrees(self, trial):
        rng = random.Random(100 + trial)
        field = rng.choice([F5, F7, F9])
        coeffs = {}
        for j in (0, 2, 4):
            for i in range(5 - j):
                coeffs[(i, j, 4 - i - j)] = field.random_element(rng)
        form = TernaryForm(field, 4, coeffs)
        if form.is_zero():
            return
        n_even = count_plane_quartic(form, field, algorithm="even").n
        assert n_even == count_plane_quartic(form, field, algorithm="exhaustive").n

    def test_chart_consistency_under_permutation(self):
        rng = random.Random(9)
        for _ in range(8):
            form = random_ternary_form(F7, rng, 4)
            if form.is_zero():
                continue
            rotated = TernaryForm(F7, 4, {(j, k, i): c for (i, j, k), c in form.coeffs.items()})
            swapped = TernaryForm(F7, 4, {(k, j, i): c for (i, j, k), c in form.coeffs.items()})
            n = count_plane_quartic(form, F7).n
            assert count_plane_quartic(rotated, F7).n == n
            assert count_plane_quartic(swapped, F7).n == n

    def test_extension_count_of_prime_field_curve(self):
        rng = random.Random(10)
        curve = random_validated_curve(F5, rng)
        form = curve.plane_quartic()
        f25 = build_extension(5, 2)
        rec = count_plane_quartic(form, f25, base_q=5)
        assert rec.q == 5 and rec.m == 2
        assert rec.n == brute_plane_points(
            TernaryForm(f25, 4, dict(form.coeffs)), f25
        )

    def test_determinism(self):
        rec1 = count_plane_quartic(fermat(F7), F7)
        rec2 = count_plane_quartic(fermat(F7), F7)
        assert rec1 == rec2  # seconds excluded from equality


class TestWeighted:
    def test_genus1_cubic_f5(self):
        # y^2 = x^3 + x over F_5: affine (0,0), (2,0), (3,0) plus infinity
        rec = count_weighted(UniPoly.from_ints(F5, [0, 1, 0, 1]), 1, F5)
        assert rec.n == 4

    def test_constant_formula_only(self):
        rec = count_weighted(UniPoly.from_ints(F5, [1]), 1, F5)
        # every x gives 1 + chi(1) = 2; top coefficient 0 adds one point
        assert rec.n == 2 * 5 + 1

    def test_genus2_weil_bound(self):
        rng = random.Random(11)
        for _ in range(10):
            curve = random_validated_curve(F7, rng)
            from prymsplit import split

            sextic = split(curve, skip_validation=True).sextic
            rec = count_weighted(sextic, 2, F7)
            assert rec.weil_ok(2)

    @pytest.mark.parametrize("genus", [1, 2])
    def test_matches_weighted_projective_enumeration(self, genus):
        rng = random.Random(12 + genus)
        for _ in range(8):
            field = rng.choice([F5, F7])
            coeffs = [field.random_element(rng) for _ in range(2 * genus + 3)]
            poly = UniPoly(field, coeffs)
            if poly.is_zero():
                continue
            assert count_weighted(poly, genus, field).n == brute_weighted_points(
                poly, genus, field
            )

    def test_degree_cap(self):
        from prymsplit.errors import ModelError

        with pytest.raises(ModelError):
            count_weighted(UniPoly.from_ints(F5, [0, 1, 0, 0, 0, 1]), 1, F5)

    def test_genus1_weil_bound_on_validated_branch_quartics(self):
        rng = random.Random(13)
        for field in (F5, F7):
            for _ in range(10):
                curve = random_validated_curve(field, rng)
                s = curve.branch_quartic().dehomogenize()
                rec = count_weighted(s, 1, field)
                assert rec.weil_ok(1)


class TestBruinCover:
    def test_all_zero_rejected(self):
        z = TernaryQuadratic.zero_form(F5)
        with pytest.raises(DegenerateInputError):
            count_bruin_cover(z, z, z, F5)

    @pytest.mark.parametrize("field", [F3, F5, F9], ids=["F3", "F5", "F9"])
    def test_fiber_table_against_p4_enumeration(self, field):
        rng = random.Random(field.q)
        for _ in range(5):
            quads = [random_quadratic(field, rng) for _ in range(3)]
            if all(q.is_zero() for q in quads):
                continue
            rec_z, rec_y = count_bruin_cover(*quads, field)
            assert rec_y.n == brute_cover_points(*quads, field)

    def test_base_count_matches_plane_quartic(self):
        from prymsplit import cover_quartic

        rng = random.Random(14)
        for _ in range(6):
            quads = [random_quadratic(F5, rng) for _ in range(3)]
            quartic = cover_quartic(*quads)
            if quartic.is_zero():
                continue
            rec_z, _ = count_bruin_cover(*quads, F5)
            assert rec_z.n == count_plane_quartic(quartic, F5).n

    def test_singular_model_bookkeeping(self):
        # cover points = plane-model points minus rational roots of f*g plus
        # the two nodes
        rng = random.Random(15)
        for field in (F5, F7):
            for _ in range(8):
                curve = random_validated_curve(field, rng)
                model = singular_model(curve)
                _, rec_y = count_bruin_cover(*model.triple(), field)
                n_plane = count_plane_quartic(curve.plane_quartic(), field).n
                roots = count_projective_roots(curve.fg(), field)
                assert rec_y.n == n_plane - roots + 2

    def test_fiber_size_one_exactly_at_nodes(self):
        # for the singular model the quadric triple vanishes exactly at the
        # two nodes (0:0:1) and (1:0:0)
        rng = random.Random(16)
        curve = random_validated_curve(F7, rng)
        model = singular_model(curve)
        common = []
        pts = [(x, y, 1) for x in range(7) for y in range(7)]
        pts += [(x, 1, 0) for x in range(7)] + [(1, 0, 0)]
        for pt in pts:
            if all(q.eval(*pt) == 0 for q in model.triple()):
                common.append(pt)
        assert sorted(common) == [(0, 0, 1), (1, 0, 0)]

    def test_smooth_fiber_has_no_size_one_fibers(self):
        from prymsplit import deform

        rng = random.Random(17)
        while True:
            curve = random_validated_curve(F5, rng)
            cover = deform(curve, F5.random_nonzero(rng))
            if cover.verifiable:
                break
        pts = [(x, y, 1) for x in range(5) for y in range(5)]
        pts += [(x, 1, 0) for x in range(5)] + [(1, 0, 0)]
        for pt in pts:
            values = [q.eval(*pt) for q in cover.triple()]
            on_z = F5.sub(F5.mul(values[1], values[1]), F5.mul(values[0], values[2])) == 0
            if on_z:
                assert any(v != 0 for v in values)

    def test_genus5_weil_bound_on_smooth_fiber(self):
        from prymsplit import deform

        rng = random.Random(18)
        while True:
            curve = random_validated_curve(F5, rng)
            cover = deform(curve, F5.random_nonzero(rng))
            if cover.verifiable:
                break
        _, rec_y = count_bruin_cover(*cover.triple(), F5)
        assert rec_y.weil_ok(5)


class TestChunking:
    def test_thread_count_does_not_change_results(self, monkeypatch):
        form = fermat(F7)
        base = count_plane_quartic(form, F7).n
        monkeypatch.setenv("PRYM_THREADS", "4")
        assert count_plane_quartic(form, F7).n == base
        rng = random.Random(19)
        quads = [random_quadratic(F5, rng) for _ in range(3)]
        monkeypatch.delenv("PRYM_THREADS")
        rz1, ry1 = count_bruin_cover(*quads, F5)
        monkeypatch.setenv("PRYM_THREADS", "3")
        rz2, ry2 = count_bruin_cover(*quads, F5)
        assert (rz1.n, ry1.n) == (rz2.n, ry2.n)


def test_count_record_weil_is_exact_integer_arithmetic():
    rec = CountRecord("plane-quartic", 7, 1, 8, 0.0)
    assert rec.weil_ok(3)
    rec_bad = CountRecord("plane-quartic", 7, 1, 100, 0.0)
    assert not rec_bad.weil_ok(3)


class TestCurveInstance:
    def test_dispatch_matches_direct_calls(self):
        from prymsplit import CurveInstance

        rng = random.Random(20)
        curve = random_validated_curve(F5, rng)
        inst = CurveInstance.plane_quartic(curve.plane_quartic())
        assert inst.count_over(F5) == count_plane_quartic(curve.plane_quartic(), F5)
        s = curve.branch_quartic().dehomogenize()
        inst_w = CurveInstance.weighted(s, 1)
        assert inst_w.count_over(F5).n == count_weighted(s, 1, F5).n
        model = singular_model(curve)
        inst_b = CurveInstance.bruin(*model.triple())
        direct = count_bruin_cover(*model.triple(), F5)
        assert [r.n for r in inst_b.count_over(F5)] == [r.n for r in direct]

    def test_characteristic_mismatch_rejected(self):
        from prymsplit import CurveInstance

        rng = random.Random(21)
        curve = random_validated_curve(F5, rng)
        inst = CurveInstance.plane_quartic(curve.plane_quartic())
        with pytest.raises(UnsupportedFieldError):
            inst.count_over(F7)
