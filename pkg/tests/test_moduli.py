import random
from fractions import Fraction

import pytest

from critcycles.errors import (
    ExcludedParameterError,
    PreconditionError,
    SymmetryLocusError,
)
from critcycles.moduli import (
    CurveEquation,
    classify_psi_portrait,
    cn_parametrize,
    coordinates,
    curve_equation,
    family_map,
    intersect_symmetry,
    period2_parameter,
    period4_standard_orbit,
    phi_rs,
    psi_alpha,
    symmetry_polynomial,
    symmetry_value,
    verify_critical_cycle,
)
from critcycles.dynamics import u_invariant
from critcycles.numbers import INF, QuadElement

def rational_value(x):
    """Underlying Fraction of a rational-valued scalar, quad or plain."""
    if isinstance(x, QuadElement):
        assert x.v == 0
        return x.u
    return Fraction(x)


F1 = "r - 2"
F2 = "2*r + s"
F3 = "2*r^3 + 5*r^2*s - r^2 + 4*r*s^2 - 2*r*s + 12*r + s^3 + 28"
F4 = (
    "2*r^5 + 4*r^4*s^2 - 3*r^4*s + 27*r^4 + 12*r^3*s^3 - 4*r^3*s^2"
    " + 30*r^3*s + 104*r^3 + 13*r^2*s^4 - 5*r^2*s^3 + 68*r^2*s^2"
    " + 4*r^2*s + 296*r^2 + 6*r*s^5 - 2*r*s^4 + 28*r*s^3 + 128*r*s^2"
    " - 152*r*s + 640*r + s^6 + 60*s^3 - 48*s^2 + 96*s + 304"
)


class TestCurveEquations:
    def test_small_equations_exact(self):
        assert str(curve_equation(1).polynomial) == F1
        assert str(curve_equation(2).polynomial) == F2
        assert str(curve_equation(3).polynomial) == F3

    def test_period4_equation_exact(self):
        assert str(curve_equation(4).polynomial) == F4

    def test_period4_agrees_with_invariant_at_fresh_points(self):
        F = curve_equation(4).polynomial
        rng = random.Random(99)
        done = 0
        while done < 5:
            r0 = Fraction(rng.randint(-60, 60), rng.randint(1, 11))
            s0 = Fraction(rng.randint(-60, 60), rng.randint(1, 11))
            if symmetry_value(r0, s0) == 0:
                continue
            try:
                expected = u_invariant(phi_rs(r0, s0), 4)
            except PreconditionError:
                continue
            assert F.eval({"r": r0, "s": s0}) == expected
            done += 1

    def test_out_of_range_period(self):
        with pytest.raises(PreconditionError):
            curve_equation(5)

    def test_disk_cache_round_trip(self, tmp_path):
        import critcycles.moduli as moduli

        eq = curve_equation(2, cache_dir=tmp_path)
        assert (tmp_path / "curve_f2.json").exists()
        moduli._CURVES.pop(2)
        again = curve_equation(2, cache_dir=tmp_path)
        assert again.polynomial == eq.polynomial

    def test_env_cache_honored(self, tmp_path, monkeypatch):
        import critcycles.moduli as moduli

        monkeypatch.setenv("CRITCYCLES_CACHE", str(tmp_path))
        moduli._CURVES.pop(3, None)
        curve_equation(3)
        assert (tmp_path / "curve_f3.json").exists()

    def test_json_round_trip(self):
        eq = curve_equation(3)
        data = eq.to_json()
        assert data["n"] == 3
        back = CurveEquation.from_json(data)
        assert back.polynomial == eq.polynomial
        assert back.n == 3

    def test_period4_matches_frozen_golden(self):
        import json
        from pathlib import Path

        golden = Path(__file__).parent / "golden" / "period4_curve.json"
        frozen = CurveEquation.from_json(json.loads(golden.read_text()))
        assert curve_equation(4).polynomial == frozen.polynomial


class TestNormalForm:
    def test_symbolic_invariant_specializes(self):
        # product of 2-cycle multipliers at (1, 1), a pinned sanity value
        assert u_invariant(phi_rs(Fraction(1), Fraction(1)), 2) == 3

    def test_symmetry_locus_rejected(self):
        with pytest.raises(SymmetryLocusError):
            phi_rs(Fraction(-6), Fraction(12))

    def test_mixed_arguments_rejected(self):
        with pytest.raises(ValueError):
            phi_rs(Fraction(1), None)

    def test_symmetry_value_matches_polynomial(self):
        S = symmetry_polynomial()
        rng = random.Random(4)
        for _ in range(10):
            r0 = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
            s0 = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
            assert S.eval({"r": r0, "s": s0}) == symmetry_value(r0, s0)

    def test_coordinates_of_normal_form(self):
        # the normal form at (r, s) must have coordinates (r, s)
        rng = random.Random(11)
        for _ in range(8):
            r0 = Fraction(rng.randint(-12, 12), rng.randint(1, 5))
            s0 = Fraction(rng.randint(-12, 12), rng.randint(1, 5))
            if symmetry_value(r0, s0) == 0:
                continue
            co = coordinates(phi_rs(r0, s0))
            assert co.as_pair() == (r0, s0)


class TestParametrizations:
    def test_values_on_curves(self):
        rng = random.Random(23)
        for n in (2, 3, 4):
            F = curve_equation(n).polynomial
            done = 0
            while done < 50:
                v = Fraction(rng.randint(-99, 99), rng.randint(1, 13))
                try:
                    r0, s0 = cn_parametrize(n, v)
                except ExcludedParameterError:
                    continue
                assert F.eval({"r": r0, "s": s0}) == 0
                done += 1

    def test_pinned_values(self):
        assert cn_parametrize(2, 7) == (7, -14)
        assert cn_parametrize(3, 1) == (-6, 8)
        assert cn_parametrize(4, 2) == (Fraction(-133, 18), Fraction(38, 3))

    def test_exclusions(self):
        for n, v in [(3, 0), (4, 0), (4, 1), (4, -1)]:
            with pytest.raises(ExcludedParameterError):
                cn_parametrize(n, v)
        with pytest.raises(PreconditionError):
            cn_parametrize(5, 2)


class TestFamilies:
    def test_period4_pinned_map(self):
        assert str(family_map("period4", 2)) == "(-2*x - 4)/(3*x^2 - 2*x - 4)"

    def test_excluded_parameters(self):
        for tag, c in [
            ("period2-trivial", 0),
            ("period2-symmetric", 0),
            ("period2-symmetric", 4),
            ("period3", 0),
            ("period4", 1),
        ]:
            with pytest.raises(ExcludedParameterError):
                family_map(tag, c)
        with pytest.raises(ValueError):
            family_map("period5", 2)

    def test_generic_members_specialize(self):
        from critcycles.dynamics import specialize_map

        for tag in ("period2-trivial", "period2-symmetric", "period3",
                     "period4"):
            generic = family_map(tag)
            special = specialize_map(generic, Fraction(5))
            assert special == family_map(tag, 5)

    def test_coordinates_of_trivial_family(self):
        rng = random.Random(31)
        for _ in range(20):
            c = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
            if c == 0:
                continue
            co = coordinates(family_map("period2-trivial", c))
            assert co.as_pair() == (c - 6, 12 - 2 * c)
            assert symmetry_value(*co.as_pair()) == c * c

    def test_coordinates_of_symmetric_family(self):
        for c in (Fraction(7), Fraction(-3, 2), Fraction(9, 2)):
            co = coordinates(family_map("period2-symmetric", c))
            assert co.as_pair() == (-6, 12)

    def test_families_live_on_their_curves(self):
        rng = random.Random(37)
        pairs = [("period2-trivial", 2), ("period3", 3), ("period4", 4)]
        for tag, n in pairs:
            F = curve_equation(n).polynomial
            done = 0
            while done < 6:
                c = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
                try:
                    m = family_map(tag, c)
                except ExcludedParameterError:
                    continue
                co = coordinates(m)
                assert F.eval({"r": co.sigma1, "s": co.sigma2}) == 0
                done += 1

    def test_period4_orbit_structure(self):
        rng = random.Random(41)
        done = 0
        while done < 20:
            c = Fraction(rng.randint(-40, 40), rng.randint(1, 8))
            try:
                orb = period4_standard_orbit(c)
            except ExcludedParameterError:
                continue
            m = family_map("period4", c)
            a, b, cc, d = orb.cycle
            assert (a, b, cc) == (0, 1, c)
            assert m.eval_value(a) == b
            assert m.eval_value(b) == cc
            assert m.eval_value(cc) == d
            assert m.eval_value(d) == a
            for target, pre in orb.extra_preimages.items():
                assert m.eval_value(pre) == target
            done += 1

    def test_period4_generic_orbit(self):
        orb = period4_standard_orbit()
        m = family_map("period4")
        for i in range(4):
            assert m.eval_value(orb.cycle[i]) == orb.cycle[(i + 1) % 4]


class TestCycleVerification:
    def test_trivial_family_fixed_companion(self):
        rep = verify_critical_cycle("period2-trivial", 8)
        assert rep.cycle == [0, INF]
        assert rep.companion == 2
        assert rep.companion_status == "fixed"

    def test_trivial_family_generic(self):
        rep = verify_critical_cycle("period2-trivial", 3)
        assert rep.period == 2
        assert rep.companion_status not in (None, "fixed")

    def test_symmetric_family_rational_critical_points(self):
        rep = verify_critical_cycle("period2-symmetric", Fraction(9, 2))
        assert set(rep.critical_points) == {Fraction(2, 3), Fraction(1, 3)}
        assert rep.companion is None

    def test_symmetric_family_quadratic_critical_points(self):
        rep = verify_critical_cycle("period2-symmetric", 7)
        assert all(isinstance(p, QuadElement) for p in rep.cycle)
        assert rational_value(rep.cycle[0] + rep.cycle[1]) == 1

    def test_period3_companion_in_cycle(self):
        for c in (1, -1):
            rep = verify_critical_cycle("period3", c)
            assert rep.cycle == [0, INF, 1]
            assert rep.companion_status == "on the critical cycle"

    def test_period3_generic(self):
        rep = verify_critical_cycle("period3", 2)
        assert rep.cycle == [0, INF, 1]
        assert rep.companion == Fraction(4, 3)

    def test_period4_members(self):
        for c in (2, Fraction(5, 2), Fraction(-11, 3), Fraction(1, 6)):
            rep = verify_critical_cycle("period4", c)
            assert rep.period == 4
            assert rep.cycle[:3] == [0, 1, Fraction(c)]
            assert rep.companion_status != "periodic with period 4"


class TestIntersections:
    def test_period2_single_rational_point(self):
        rep = intersect_symmetry(2)
        assert rep.point_count == 1
        assert rep.rational_points == [(Fraction(-6), Fraction(12))]
        assert str(rep.eliminant_r) == "r + 6"
        assert str(rep.eliminant_s) == "s - 12"
        assert not rep.inconclusive

    def test_period3_quartic(self):
        rep = intersect_symmetry(3)
        assert rep.point_count == 4
        assert rep.residue_degrees == [4, 4, 4, 4]
        assert rep.rational_points == []
        assert str(rep.eliminant_s) == "s^4 - 16*s^3 + 112*s^2 - 320*s + 512"
        [branch] = rep.branches
        assert branch.certificate is not None
        assert branch.certificate.is_irreducible
        assert not rep.inconclusive

    def test_period4_split(self):
        rep = intersect_symmetry(4)
        assert rep.point_count == 8
        assert rep.residue_degrees == [2, 2, 6, 6, 6, 6, 6, 6]
        assert rep.rational_points == []
        assert not rep.inconclusive
        by_degree = {b.modulus.degree: b for b in rep.branches}
        assert str(by_degree[2].modulus) == "3*s^2 - 12*s + 16"
        assert by_degree[2].quad_disc == -3
        assert str(by_degree[6].modulus) == (
            "s^6 - 26*s^5 + 259*s^4 - 1248*s^3 + 3328*s^2 - 5312*s + 4352"
        )
        assert by_degree[6].certificate.is_irreducible

    def test_solved_points_satisfy_both_equations(self):
        # redundant with the internal check, but pins the contract
        rep = intersect_symmetry(4)
        F = curve_equation(4).polynomial
        S = symmetry_polynomial()
        from critcycles.polys import QQ, QuotientField, UniPoly

        for br in rep.branches:
            K = QuotientField(br.modulus.monic())
            sbar = K.coerce(UniPoly(QQ, [0, 1], br.modulus.var))
            rbar = K.coerce(br.r_over_residue)
            assert not F.eval({"r": rbar, "s": sbar})
            assert not S.eval({"r": rbar, "s": sbar})


class TestCriticalFieldArithmetic:
    def test_alpha_values(self):
        assert psi_alpha(Fraction(9, 2)) == (Fraction(2, 3), Fraction(1, 3))
        assert psi_alpha(Fraction(81, 8)) == (Fraction(8, 9), Fraction(1, 9))
        a, b = psi_alpha(2)
        assert a == QuadElement(-1, Fraction(1, 2), Fraction(1, 2))
        assert rational_value(a + b) == 1
        a400, _ = psi_alpha(Fraction(400, 343))
        assert a400.d == -3

    def test_alpha_is_critical(self):
        rng = random.Random(53)
        for _ in range(10):
            c = Fraction(rng.randint(-30, 30), rng.randint(1, 6))
            if c in (0, 4):
                continue
            a, b = psi_alpha(c)
            # the critical points are the roots of c*x^2 - c*x + 1
            assert rational_value(a + b) == 1
            assert rational_value(a * b) == Fraction(1) / c

    def test_realization_from_q(self):
        rp = period2_parameter("from-q", 2)
        assert rp.c == Fraction(81, 8)
        assert rp.converse_holds
        with pytest.raises(ExcludedParameterError):
            period2_parameter("from-q", 1)

    def test_realization_from_p(self):
        assert period2_parameter("from-p", 1).c == 2
        rp = period2_parameter("from-p", Fraction(7, 9))
        assert rp.c == Fraction(400, 343)
        assert rp.converse_holds
        with pytest.raises(ExcludedParameterError):
            period2_parameter("from-p", Fraction(1, 2))
        with pytest.raises(ValueError):
            period2_parameter("from-r", 2)

    def test_realized_parameters_admit_cube_roots(self):
        rng = random.Random(61)
        for _ in range(10):
            q = Fraction(rng.randint(2, 60), rng.randint(1, 11))
            if q in (0, 1, -1):
                continue
            rp = period2_parameter("from-q", q)
            if rp.c in (0, 4):
                continue
            assert classify_psi_portrait(rp.c).cube_root is not None

    def test_classification_labels(self):
        for c, label, vertices, cycles in [
            (Fraction(9, 2), "P1", 2, (2,)),
            (Fraction(81, 8), "P2", 4, (1, 2)),
            (Fraction(2), "P3", 6, (1, 2)),
            (Fraction(400, 343), "P4", 8, (1, 1, 1, 2)),
        ]:
            cl = classify_psi_portrait(c)
            assert cl.label == label
            assert cl.vertices == vertices
            assert cl.cycle_lengths == cycles
            assert len(cl.preperiodic_points) == vertices

    def test_classification_field_data(self):
        assert classify_psi_portrait(Fraction(81, 8)).cube_root == 2
        cl = classify_psi_portrait(2)
        assert cl.field_disc == -1
        assert cl.cube_root in (
            QuadElement(-1, 0, -1),
            QuadElement(-1, 0, 1),
        )
        assert classify_psi_portrait(Fraction(400, 343)).field_disc == -3
