import json
import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from origami7.errors import DegenerateA, NoRealE, NormalFormUnreachable, ZeroRootError
from origami7.exactmath import Poly1, isolate_real_roots
from origami7.intersect import septic_specialized
from origami7.solver import (
    ConstructionPlan,
    SepticNormalForm,
    Step,
    TransformChain,
    lambda_search,
    lambda_transform,
    normalize_septic,
    pe_polynomial,
    septisect,
    seventh_root,
    solve_generic,
    solve_septic,
    verify_plan,
)
from origami7.solver.formulas import (
    c1_value,
    c2_value,
    fold_septic_coefficients,
    flat_septic_coefficients,
    root7_curve,
    root7_f_of_w,
    root7_T_of_w,
    root7_t_of_w,
    septisection_s1,
    septisection_s3,
    septisection_sextic,
    t_from_s,
)
from origami7.solver.normal_form import normal_form_routes, pe_at_zero_closed_form, sigma_equations
from origami7.solver.pipelines import rationals_by_height, root7_scaling

from conftest import rand_rat


def roots_mp(p: Poly1):
    with mpmath.workdps(50):
        return mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)],
                                maxsteps=200, extraprec=200)


def matched(a, b, tol):
    a = sorted(a, key=lambda z: (float(mpmath.re(z)), float(mpmath.im(z))))
    return all(min(abs(x - y) for y in b) < tol for x in a) and len(a) == len(b)


class TestFormulas:
    def test_substitution_gives_c1_c2(self, rng):
        for _ in range(10):
            s = [rand_rat(rng) for _ in range(4)]
            e, f = rand_rat(rng, nonzero=True), rand_rat(rng)
            if f in (-2,):
                continue
            got = septic_specialized(*t_from_s(*s, e, f), e, f).poly.coeffs
            assert list(got) == fold_septic_coefficients(*s, e, f)

    def test_f0_specialization(self, rng):
        for _ in range(10):
            s = [rand_rat(rng) for _ in range(4)]
            e = rand_rat(rng, nonzero=True)
            assert fold_septic_coefficients(*s, e, Fraction(0)) == flat_septic_coefficients(*s, e)

    def test_printed_w2_variant_differs(self, rng):
        s = [rand_rat(rng, nonzero=True) for _ in range(4)]
        e = rand_rat(rng, nonzero=True)
        right = flat_septic_coefficients(*s, e)[2]
        variant = (e**3 - 4 * e**2 * s[0] + 8 * e * s[1] + 8 * e * s[3]) / 16
        assert variant - right == e * s[3] / 4

    def test_sextic_at_minus_one(self):
        assert septisection_sextic(Fraction(-1)) == Poly1([-210827008, 0, -640010560, 0, -38416, 0, 1], "e")
        assert septisection_sextic(Fraction(-1)).eval(0) < 0

    def test_septisection_s_formulas_match_target(self):
        # with s2 = s4 = 0 and e a sextic root, the pulled-back f=0 septic is 2cos-septic up to scaling
        A = Fraction(-1)
        with mpmath.workdps(50):
            Am = mpmath.mpf(-1)
            for r in isolate_real_roots(septisection_sextic(A)):
                e = r.to_mpf(60)
                s1, s3 = septisection_s1(Am, e), septisection_s3(Am, e)
                F = flat_septic_coefficients(s1, 0, s3, 0, e)
                # Z^7 F(s1/Z)/F0 should be Z^7 + a5 Z + a5 with the scaled target's a5
                pulled = [F[7 - j] * s1 ** (7 - j) / F[0] for j in range(8)]
                assert abs(pulled[0] - pulled[1]) < 1e-30 * abs(pulled[0])
                assert abs(pulled[6]) < 1e-30

    def test_root7_w_equals_one(self):
        assert root7_T_of_w(Fraction(1)) == Fraction(1, 2)
        assert root7_t_of_w(Fraction(1)) == Fraction(1, 2**15)

    def test_root7_parameterization_on_curve(self, rng):
        for _ in range(10):
            w = Fraction(rng.randint(1, 40), rng.randint(1, 9))
            assert root7_curve(root7_f_of_w(w), root7_t_of_w(w)) == 0

    def test_c_values_are_rational_functions(self):
        # sympy re-derivation of C1 from the substitution, symbolic in all inputs
        s1, s2, s3, s4, e, f = sp.symbols("s1 s2 s3 s4 e f")
        assert sp.simplify(c1_value(s1, s2, s3, s4, e, f).subs(f, 0)
                           - (e**3 - 4 * e**2 * s1 + 8 * e * s2 + 4 * e * s4) / 16) == 0
        assert sp.simplify(c2_value(s1, s2, s3, s4, e, f).subs(f, 0) - (-e**3 / 16 + e * s4 / 4)) == 0


class TestNormalForm:
    def test_already_normal(self):
        nf = SepticNormalForm(1, 2, 3, 4, 5)
        got, chain = normalize_septic(nf.poly())
        assert got == nf and chain.is_identity()

    def test_routes_map_roots(self, rng):
        for _ in range(8):
            p = Poly1([rand_rat(rng, nonzero=True)] + [rand_rat(rng) for _ in range(6)] + [1])
            if not p.is_squarefree():
                continue
            try:
                routes = normal_form_routes(p)
            except NormalFormUnreachable:
                continue
            src = roots_mp(p)
            for _, nf, chain in routes:
                dst = roots_mp(nf.poly())
                with mpmath.workdps(50):
                    assert matched([chain.forward(r) for r in src], dst, 1e-25)
                assert chain.apply_poly(p) == nf.poly(p.var)

    def test_binomial_routed_elsewhere(self):
        with pytest.raises(NormalFormUnreachable) as exc:
            normalize_septic(Poly1.from_high([1, 0, 0, 0, 0, 0, 0, -2]))
        assert exc.value.details["route"] == "root7"

    def test_zero_root(self):
        with pytest.raises(ZeroRootError):
            normalize_septic(Poly1.from_high([1, 1, 1, 1, 1, 1, 1, 0]))

    def test_wrong_degree(self):
        with pytest.raises(ValueError):
            normalize_septic(Poly1.from_high([1, 0, 1]))

    def test_json(self):
        nf = SepticNormalForm(Fraction(1, 2), -1, 0, 3, 7)
        assert SepticNormalForm.from_json(json.loads(json.dumps(nf.to_json()))) == nf


class TestPe:
    def test_all_ones(self):
        nf = SepticNormalForm(1, 1, 1, 1, 1)
        assert pe_polynomial(nf).coeff(0) == 1024 == pe_at_zero_closed_form(1, 1, 1, 1, 1)

    def test_constant_term(self, rng):
        for _ in range(50):
            a = [rand_rat(rng) for _ in range(4)] + [rand_rat(rng, nonzero=True)]
            assert pe_polynomial(SepticNormalForm(*a)).coeff(0) == pe_at_zero_closed_form(*a)

    def test_even_and_monic(self):
        p = pe_polynomial(SepticNormalForm(2, -1, 5, 3, 7))
        assert p.degree == 8 and p.lc == 1 and all(c == 0 for c in p.coeffs[1::2])

    def test_sigma_resultant(self, rng):
        e, sg = sp.symbols("e sigma")
        for _ in range(3):
            a = [rand_rat(rng) for _ in range(4)] + [rand_rat(rng, nonzero=True)]
            nf = SepticNormalForm(*a)
            g1, g2 = sigma_equations(nf, sp.Symbol("e"))
            G1 = sum(sp.nsimplify(c) * sg**k for k, c in enumerate(g1))
            G2 = sum(sp.nsimplify(c) * sg**k for k, c in enumerate(g2))
            res = sp.Poly(sp.resultant(G1, G2, sg), e)
            pe = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(pe_polynomial(nf).coeffs)], e)
            quo, rem = sp.div(res, pe)
            assert rem.is_zero and quo.is_monomial


class TestChain:
    def test_step_roundtrip(self):
        with mpmath.workdps(40):
            z = mpmath.mpf("0.731")
            for st in (Step("shift", Fraction(2, 3)), Step("scale", Fraction(-5, 2)), Step("invert")):
                assert abs(st.backward(st.forward(z))[0] - z) < 1e-35
            lam = Step("lambda", Fraction(3))
            assert any(abs(c - z) < 1e-35 for c in lam.backward(lam.forward(z)))

    def test_bad_steps(self):
        with pytest.raises(ValueError):
            Step("rotate")
        with pytest.raises(ValueError):
            Step("scale", Fraction(0))

    def test_json(self):
        ch = TransformChain.of(Step("lambda", Fraction(-1, 2)), Step("shift", Fraction(3)), Step("invert"))
        assert TransformChain.from_json(json.loads(json.dumps(ch.to_json()))) == ch

    def test_lambda_transform_roots(self):
        p = Poly1.from_high([1, 2, -1, 0, 3, 1, -2, 5])
        lam = Fraction(3, 2)
        q = lambda_transform(p, lam)
        assert q.degree == 7
        with mpmath.workdps(50):
            assert matched([w + mpmath.mpf(3) / 2 / w for w in roots_mp(p)], roots_mp(q), 1e-25)

    def test_rationals_by_height(self):
        vals = list(rationals_by_height(4))
        assert 0 not in vals and len(vals) == len(set(vals))
        assert vals[:4] == [1, -1, Fraction(1, 2), Fraction(-1, 2)]


def forward_septic(rng):
    s = tuple(rand_rat(rng, nonzero=True) for _ in range(4))
    e = rand_rat(rng, nonzero=True)
    return Poly1(flat_septic_coefficients(*s, e), "x")


class TestGeneric:
    def test_forward_roundtrip(self):
        rng = random.Random(11)
        for _ in range(3):
            target = forward_septic(rng)
            nf, chain = normalize_septic(target)
            plan = solve_generic(nf, 1e-8, target=target, chain=chain, seed=0)
            rep = verify_plan(plan)
            assert rep.ok and rep.max_error <= 1e-8
            assert len(rep.realized) == len(isolate_real_roots(target))
            assert all(r.al6ab8 < 1e-9 for r in rep.realized)

    def test_plan_json_roundtrip(self):
        target = forward_septic(random.Random(3))
        nf, chain = normalize_septic(target)
        plan = solve_generic(nf, target=target, chain=chain)
        again = ConstructionPlan.from_json(json.loads(json.dumps(plan.to_json())))
        assert again.fold_config == plan.fold_config
        assert verify_plan(again).ok

    def test_corrupted_plan_fails(self):
        from origami7.solver.pipelines import fold_tail
        from origami7.solver.plan import q_approx

        target = forward_septic(random.Random(4))
        nf, chain = normalize_septic(target)
        plan = solve_generic(nf, target=target, chain=chain)
        s = tuple(plan.quantities[k].to_mpf() for k in ("s1", "s2", "s3", "s4"))
        with mpmath.workdps(60):
            cfg, _ = fold_tail(s, plan.quantities["e"].to_mpf() + mpmath.mpf("1e-3"), 0)
        plan.fold_config = cfg
        rep = verify_plan(plan)
        assert not rep.ok and rep.min_error > 1e-6

    def test_no_real_e(self):
        nf = SepticNormalForm(4, -1, 0, 5, 2)
        with pytest.raises(NoRealE):
            solve_generic(nf)
        plan = solve_septic(nf.poly("x"))
        assert verify_plan(plan).ok and plan.q("lambda") != 0

    def test_lambda_search_short_circuit(self):
        target = forward_septic(random.Random(5))
        lam, nf, chain = lambda_search(target)
        assert lam == 0 and "lambda" not in [s.kind for s in chain.steps]

    def test_no_roots_report(self):
        plan = ConstructionPlan("test", Poly1([1, 0, 1]), TransformChain(), {}, None, [], direct_roots=[])
        rep = verify_plan(plan)
        assert not rep.ok and rep.realized == [] and any("zero realized" in n for n in rep.notes)


class TestSeptisection:
    def test_two_pi_thirds(self):
        sp_, plan = septisect(2 * math.pi / 3)
        assert abs(sp_.branch0 - 2 * mpmath.cos(2 * mpmath.pi / 21)) < 1e-9
        assert sp_.branch0_solution.residual < 1e-9
        assert sp_.s2 == sp_.s4 == 0 and sp_.fallback is None
        assert verify_plan(plan).ok

    def test_all_angles(self):
        sp_, _ = septisect(1.0)
        assert sp_.all_angles[0] == pytest.approx(1 / 7)
        assert len(sp_.all_angles) == 7

    def test_right_angle_fallback(self):
        sp_, plan = septisect(math.pi / 2)
        assert sp_.fallback and plan.fold_config is None
        assert abs(sp_.branch0 - 2 * mpmath.cos(mpmath.pi / 14)) < 1e-9
        assert verify_plan(plan).ok
        with pytest.raises(DegenerateA):
            septisect(math.pi / 2, fallback=False)

    def test_phi_range(self):
        for bad in (0.0, -1.0, 7.0):
            with pytest.raises(ValueError):
                septisect(bad)


class TestSeventhRoot:
    def test_two(self):
        plan = seventh_root(2)
        rep = verify_plan(plan)
        assert rep.ok
        r = rep.realized[0].root
        assert abs(r**7 + 2) <= 1e-8
        assert plan.q("w") > 0
        assert abs(float(plan.q("f")) - float(plan.q("f_closed"))) < 1e-30

    def test_scaling(self):
        assert root7_scaling(Fraction(1)) == 0
        assert root7_scaling(Fraction(2)) == 1
        assert (Fraction(10) / 2 ** (7 * root7_scaling(Fraction(10)))) ** 2 < Fraction(8, 3)

    def test_nonpositive(self):
        with pytest.raises(ValueError):
            seventh_root(0)
        with pytest.raises(ValueError):
            seventh_root(-2)
