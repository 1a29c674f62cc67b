"""First-order operators: construction, adjoints, identity suites."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkcalc.scalars import FourierPoly, InvalidWeight, Jet, Scalar
from hkcalc.exterior import (
    AlgebraOp, Form, IndexSet, basis_monomials, pointwise_inner, wedge,
)
from hkcalc.calculus import (
    DiffOp, HODGE_ROWS, TWISTED_ROWS, adjointness_defect_certificate,
    bracket_apply, conjugate_by_weight, dolbeault, form_derivative,
    formal_adjoint, mode_forms, random_jet_form, suite_lambda,
    verify_hodge_identities, verify_twisted_table,
)

from support import fourier_polys

F = Fraction
ONE = Scalar(1)
IU = Scalar(0, 1)


def random_fourier_form(n, rng, max_terms=3, max_freq=1):
    coeffs = {}
    n4 = 4 * n
    for _ in range(rng.randrange(1, max_terms + 1)):
        A = rng.randrange(1 << (2 * n))
        B = rng.randrange(1 << (2 * n))
        nu = tuple(rng.randrange(-max_freq, max_freq + 1) for _ in range(n4))
        c = Scalar(F(rng.randrange(-3, 4)), F(rng.randrange(-3, 4)))
        poly = FourierPoly.mode(nu, c)
        coeffs[(A, B)] = poly if (A, B) not in coeffs \
            else coeffs[(A, B)] + poly
    return Form(n, coeffs)


class TestDolbeault:
    def test_partial_of_z1(self):
        z1 = Jet.variable(2, 2, 1)
        xi = Form.scalar(1, z1)
        out = dolbeault("partial", 1).apply(xi)
        assert out == Form.theta(1, 1).scalar_mul(
            Jet.constant(2, 1, 1))

    def test_twisted_partial_of_z1(self):
        z1 = Jet.variable(2, 2, 1)
        xi = Form.scalar(1, z1)
        out = dolbeault("partial_J", 1).apply(xi)
        assert out == Form.theta_bar(1, 2).scalar_mul(Jet.constant(2, 1, 1))

    def test_sum_decompositions(self):
        n = 1
        rng = random.Random(5)
        for _ in range(10):
            xi = random_fourier_form(n, rng)
            d = dolbeault("d", n).apply(xi)
            assert d == dolbeault("partial", n).apply(xi) + \
                dolbeault("dbar", n).apply(xi)
            dj = dolbeault("d_J", n).apply(xi)
            assert dj == dolbeault("partial_J", n).apply(xi) + \
                dolbeault("dbar_J", n).apply(xi)

    def test_conjugation_relations(self):
        n = 2
        rng = random.Random(6)
        pj = dolbeault("partial_J", n)
        pjc = pj.conjugate()
        dbj = dolbeault("dbar_J", n)
        for _ in range(10):
            xi = random_fourier_form(n, rng)
            assert pjc.apply(xi) == dbj.apply(xi)
        pk = dolbeault("partial_K", n)
        for _ in range(5):
            xi = random_fourier_form(n, rng)
            assert dolbeault("dbar_K", n).apply(xi) == \
                pk.conjugate().apply(xi)
            assert dolbeault("partial_K", n).apply(xi) == \
                pj.apply(xi).scalar_mul(IU)

    def test_dual_construction_d_J(self):
        # J o d o Jinv against the contraction-word build, random jets
        n = 2
        rng = random.Random(7)
        d = dolbeault("d", n)
        dj = dolbeault("d_J", n)
        dual = d.right_compose(AlgebraOp.gen("Jinv")).left_compose(
            AlgebraOp.gen("J"))
        for _ in range(50):
            xi = random_jet_form(n, 3, rng)
            assert dual.apply(xi) == dj.apply(xi)

    def test_dual_construction_d_K_orientation(self):
        # the K-twist conjugates the other way around: Kinv o d o K
        n = 1
        rng = random.Random(8)
        d = dolbeault("d", n)
        dk = dolbeault("d_K", n)
        dual = d.right_compose(AlgebraOp.gen("K")).left_compose(
            AlgebraOp.gen("Kinv"))
        flipped = d.right_compose(AlgebraOp.gen("Kinv")).left_compose(
            AlgebraOp.gen("K"))
        for _ in range(20):
            xi = random_jet_form(n, 3, rng)
            assert dual.apply(xi) == dk.apply(xi)
            assert flipped.apply(xi) == -dk.apply(xi)

    def test_dc_is_conjugation_by_I(self):
        n = 1
        rng = random.Random(9)
        dc = dolbeault("dc", n)
        dual = dolbeault("d", n).right_compose(
            AlgebraOp.gen("I")).left_compose(AlgebraOp.gen("Iinv"))
        for _ in range(20):
            xi = random_fourier_form(n, rng)
            assert dual.apply(xi) == dc.apply(xi)

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            dolbeault("nabla", 1)

    @pytest.mark.parametrize("n", [1, 2])
    def test_squares_vanish(self, n):
        rng = random.Random(10 + n)
        p = dolbeault("partial", n)
        db = dolbeault("dbar", n)
        pj = dolbeault("partial_J", n)
        for _ in range(10):
            xi = random_jet_form(n, 3, rng)
            assert p.apply(p.apply(xi)).is_zero()
            assert db.apply(db.apply(xi)).is_zero()
            assert (p.apply(db.apply(xi)) + db.apply(p.apply(xi))).is_zero()
            assert (db.apply(pj.apply(xi)) + pj.apply(db.apply(xi))).is_zero()

    def test_graded_leibniz_for_d_J(self):
        n = 1
        rng = random.Random(12)
        dj = dolbeault("d_J", n)
        for _ in range(15):
            a = random_fourier_form(n, rng, max_terms=2)
            b = random_fourier_form(n, rng, max_terms=2)
            for deg in range(2 * 2 * n + 1):
                x = a.total_degree_component(deg)
                if x.is_zero():
                    continue
                lhs = dj.apply(wedge(x, b))
                rhs = wedge(dj.apply(x), b) + \
                    wedge(x, dj.apply(b)).scalar_mul((-1) ** deg)
                assert lhs == rhs


class TestFormalAdjoint:
    def test_printed_terms_of_partial_star(self):
        n = 2
        adj = formal_adjoint(dolbeault("partial", n))
        expected = DiffOp([(-ONE, AlgebraOp.gen("i", a), ("dbar", a))
                           for a in range(1, 2 * n + 1)])
        assert set(adj.terms) == set(expected.terms)

    def test_printed_terms_of_twisted_adjoints(self):
        n = 1
        adj = formal_adjoint(dolbeault("partial_J", n))
        expected = DiffOp(
            [(-ONE, AlgebraOp.gen("ibar", k + n), ("dbar", k))
             for k in range(1, n + 1)]
            + [(ONE, AlgebraOp.gen("ibar", k), ("dbar", k + n))
               for k in range(1, n + 1)])
        assert set(adj.terms) == set(expected.terms)

    def test_unweighted_integral_pairing(self):
        n = 1
        rng = random.Random(21)
        p = dolbeault("partial", n)
        adj = formal_adjoint(p)
        for _ in range(25):
            u = random_fourier_form(n, rng, max_freq=2)
            v = random_fourier_form(n, rng, max_freq=2)
            lhs = pointwise_inner(p.apply(u), v).integrate()
            rhs = pointwise_inner(u, adj.apply(v)).integrate()
            assert lhs == rhs

    def test_weighted_rewrite_structure(self):
        n = 1
        phi = FourierPoly.real_cosine((1, 0, 1, 0))
        adj0 = formal_adjoint(dolbeault("dbar", n))
        adjw = formal_adjoint(dolbeault("dbar", n), phi)
        extra = [t for t in adjw.terms if t not in adj0.terms]
        # exactly the zeroth-order contraction corrections survive
        assert all(d is None for _, _, d in extra)
        assert len(extra) == 2 * n
        for c, w, _ in extra:
            assert isinstance(c, FourierPoly)
            assert len(w.terms) == 1 and len(w.terms[0][1]) == 1
            assert w.terms[0][1][0][0] == "ibar"

    def test_non_real_weight_rejected(self):
        with pytest.raises(InvalidWeight):
            formal_adjoint(dolbeault("dbar", 1),
                           FourierPoly.mode((1, 0, 0, 0)))

    @pytest.mark.parametrize("op_label", ["partial", "dbar", "partial_J",
                                          "dbar_K"])
    def test_weighted_divergence_certificate(self, op_label):
        n = 1
        phi = FourierPoly.real_cosine((1, 0, 0, 0)) + \
            FourierPoly.real_sine((0, 0, 2, 0), F(1, 3))
        op = dolbeault(op_label, n)
        rng = random.Random(31)
        for _ in range(10):
            u = random_fourier_form(n, rng)
            v = random_fourier_form(n, rng)
            defect, divergence = adjointness_defect_certificate(
                op, phi, u, v)
            assert defect == divergence

    def test_unweighted_certificate(self):
        n = 1
        op = dolbeault("partial", n)
        rng = random.Random(32)
        for _ in range(10):
            u = random_fourier_form(n, rng)
            v = random_fourier_form(n, rng)
            defect, divergence = adjointness_defect_certificate(
                op, None, u, v)
            assert defect == divergence
            # and the divergence really integrates to zero
            assert divergence.integrate() == Scalar(0)

    def test_double_adjoint_returns_start(self):
        n = 1
        p = dolbeault("partial", n)
        back = formal_adjoint(formal_adjoint(p))
        rng = random.Random(33)
        for _ in range(10):
            xi = random_fourier_form(n, rng)
            assert back.apply(xi) == p.apply(xi)


class TestDiffOpMechanics:
    def test_form_derivative_on_scalars_is_zero(self):
        xi = Form.monomial(1, 1, 2, Scalar(5))
        assert form_derivative(xi, "d", 1).is_zero()

    def test_linear_application(self):
        n = 1
        rng = random.Random(41)
        op = dolbeault("partial_K", n)
        a = random_fourier_form(n, rng)
        b = random_fourier_form(n, rng)
        assert op.apply(a + b) == op.apply(a) + op.apply(b)

    def test_conjugate_is_involution(self):
        n = 2
        op = dolbeault("partial_J", n)
        rng = random.Random(42)
        for _ in range(5):
            xi = random_fourier_form(n, rng)
            assert op.conjugate().conjugate().apply(xi) == op.apply(xi)

    def test_weight_conjugation_leaves_zeroth_order_alone(self):
        n = 1
        phi = FourierPoly.real_cosine((0, 1, 0, 0))
        op = DiffOp.from_algebra(AlgebraOp.gen("e", 1))
        assert conjugate_by_weight(op, phi).terms == op.terms


class TestSuites:
    def test_hodge_identities_pass(self):
        report = verify_hodge_identities(1, trials=5, seed=3)
        assert report.all_passed()
        assert len(report.rows) == 3
        control = report.rows[-1]
        assert control.passed and "residual detected" in control.detail

    def test_twisted_table_shape_and_factors(self):
        report = verify_twisted_table(1, trials=3, seed=3)
        assert report.all_passed()
        assert len(report.rows) == 17
        flipped = [r for r in report.rows if r.factor == "-1"]
        assert len(flipped) == 6
        assert all("Lambda_I" in r.name or "Lambda_K" in r.name
                   for r in flipped)

    def test_bracket_symbol_completeness_claim(self):
        # a broken identity must be caught by the mode family alone
        n = 1
        lam = suite_lambda("J", n).scalar_mul(Scalar(F(1, 3)))
        dop = dolbeault("partial", n)
        rhs = formal_adjoint(dolbeault("dbar_J", n))
        bad = False
        for xi in mode_forms(n):
            if bracket_apply(lam, dop, xi) != rhs.apply(xi):
                bad = True
                break
        assert bad

    @given(st.integers(min_value=0, max_value=2 ** 16))
    def test_row_scaling_consistency(self, seed):
        # scaling Lambda scales the bracket linearly
        n = 1
        rng = random.Random(seed)
        lam = suite_lambda("K", n)
        dop = dolbeault("dbar", n)
        xi = random_fourier_form(n, rng)
        double = bracket_apply(lam.scalar_mul(2), dop, xi)
        assert double == bracket_apply(lam, dop, xi).scalar_mul(2)


def test_row_tables_are_well_formed():
    assert len(TWISTED_ROWS) == 16
    assert len(HODGE_ROWS) == 2
    labels = {"I", "J", "K"}
    for name, anchor, lam, op, rhs, printed, factor in \
            HODGE_ROWS + TWISTED_ROWS:
        assert lam in labels
        assert factor in (1, -1)
        assert anchor.split(" / ")[0] in ("lemma-3.2", "prop-3.3")
