"""Bundle metrics, connections, curvature, and the weighted operator table."""

import random
from fractions import Fraction

import pytest
from hypothesis import given

from hkcalc.bundle import (
    AdjointUnavailable, BundleForm, ExpWeight, JetMatrix, MatrixOp,
    ball_metric, bundle_adjoints, bundle_d_ops, chern_connection,
    chern_curvature, connection_compatibility_defects,
    connection_structure_defect, curvature_form, curvature_via_connection,
    first_chern_defects, identity_metric, jet_matrix_inverse, laplacian,
    raised_metric, random_bundle_form, random_jet_metric, standard_weights,
    twisted_curvature_assembly, twisted_curvatures, verify_bundle_laplacians,
    verify_bundle_tables, verify_chern_connection, verify_curvature_dual,
    verify_twisted_curvature, wedge_operator,
)
from hkcalc.calculus import (
    adjointness_defect_certificate, bracket_apply, dolbeault, formal_adjoint,
    mode_forms, random_fourier_form, suite_lambda,
)
from hkcalc.exterior import Form
from hkcalc.scalars import FourierPoly, InvalidWeight, Jet, Scalar, jet_invert

from support import scalar_forms

F = Fraction
ONE = Scalar(1)
I = Scalar(0, 1)


def weight_forms(n, count=5, seed=3):
    rng = random.Random(seed)
    out = list(mode_forms(n))
    out.extend(random_fourier_form(n, rng) for _ in range(count))
    return out


class TestMetricValidation:
    def test_exp_weight_shape(self):
        w = ExpWeight(FourierPoly(4))
        assert w.rank == 1 and w.n == 1

    def test_exp_weight_needs_real_phi(self):
        wave = FourierPoly.mode((1, 0, 0, 0), ONE)
        with pytest.raises(InvalidWeight):
            ExpWeight(wave)

    def test_exp_weight_needs_quaternionic_arity(self):
        with pytest.raises(InvalidWeight):
            ExpWeight(FourierPoly(2))

    def test_exp_weight_needs_fourier_type(self):
        with pytest.raises(TypeError):
            ExpWeight(Jet.constant(2, 2, 1))

    def test_jet_matrix_accessors(self):
        h = identity_metric(2, 3, 4)
        assert (h.n, h.rank, h.order) == (2, 3, 4)

    def test_jet_matrix_rejects_non_hermitian(self):
        one = Jet.constant(2, 3, 1)
        z = Jet.variable(2, 3, 1)
        with pytest.raises(ValueError, match="Hermitian"):
            JetMatrix(((one, z), (z, one)))

    def test_jet_matrix_rejects_indefinite_constant(self):
        one = Jet.constant(2, 3, 1)
        two = Jet.constant(2, 3, 2)
        with pytest.raises(ValueError, match="positive definite"):
            JetMatrix(((one, two), (two, one)))

    def test_jet_matrix_rejects_odd_coordinates(self):
        with pytest.raises(ValueError, match="2n"):
            JetMatrix(((Jet.constant(1, 3, 1),),))

    def test_jet_matrix_rejects_mixed_orders(self):
        one = Jet.constant(2, 3, 1)
        other = Jet.constant(2, 2, 1)
        zero = Jet(2, 3)
        with pytest.raises(ValueError, match="share"):
            JetMatrix(((one, zero), (zero, other)))

    def test_jet_matrix_rejects_ragged_rows(self):
        one = Jet.constant(2, 3, 1)
        with pytest.raises(ValueError, match="square"):
            JetMatrix(((one, one),))


class TestInverses:
    def test_line_inverse_matches_jet_invert(self):
        h = ball_metric(1, 4)
        inv = jet_matrix_inverse(h.entries)[0][0]
        assert inv == jet_invert(h.entries[0][0])

    def test_inverse_round_trip(self):
        rng = random.Random(1)
        h = random_jet_metric(1, 2, 3, rng)
        inv = jet_matrix_inverse(h.entries)
        for a in range(2):
            for b in range(2):
                acc = None
                for c in range(2):
                    t = h.entries[a][c] * inv[c][b]
                    acc = t if acc is None else acc + t
                expect = Jet.constant(2, 3, 1 if a == b else 0)
                assert acc == expect

    def test_raised_metric_is_transposed_inverse(self):
        rng = random.Random(2)
        h = random_jet_metric(1, 2, 3, rng)
        inv = jet_matrix_inverse(h.entries)
        g = raised_metric(h)
        assert all(g[a][b] == inv[b][a] for a in range(2) for b in range(2))


class TestBundleAlgebra:
    def test_needs_components(self):
        with pytest.raises(ValueError):
            BundleForm(())

    def test_components_share_n(self):
        with pytest.raises(ValueError):
            BundleForm((Form(1), Form(2)))

    @given(scalar_forms(1), scalar_forms(1))
    def test_additive_group(self, a, b):
        xi = BundleForm((a, b))
        eta = BundleForm((b, a))
        assert (xi + eta) - eta == xi
        assert (xi - xi).is_zero()
        assert (-xi) + xi == BundleForm((Form(1), Form(1)))

    def test_diagonal_operator_acts_componentwise(self):
        rng = random.Random(4)
        xi = random_bundle_form(1, 2, 3, rng)
        dbar = dolbeault("dbar", 1)
        out = MatrixOp.diagonal(dbar, 2).apply(xi)
        assert out.components == tuple(dbar.apply(c) for c in xi.components)

    def test_rank_mismatch_rejected(self):
        op = MatrixOp.diagonal(dolbeault("dbar", 1), 2)
        with pytest.raises(ValueError):
            op.apply(BundleForm((Form(1),)))

    def test_wedge_operator_prefixes_the_word(self):
        two_theta = Form(1, {(1, 0): Scalar(2)})
        target = Form(1, {(0, 1): ONE})
        out = wedge_operator(two_theta).apply(target)
        assert out == Form(1, {(1, 1): Scalar(2)})

    def test_wedge_operator_multiplies_jet_coefficients(self):
        z = Jet.variable(2, 3, 1)
        zb = Jet.variable(2, 3, 1, bar=True)
        op = wedge_operator(Form(1, {(1, 0): z}))
        out = op.apply(Form(1, {(0, 0): zb}))
        assert out == Form(1, {(1, 0): z * zb})


class TestConnection:
    def test_identity_metric_is_flat(self):
        theta = chern_connection(identity_metric(1, 2, 3))
        assert all(f.is_zero() for row in theta for f in row)

    def test_weight_connection_is_minus_d_phi(self):
        w = standard_weights(1)[1][1]
        dphi = dolbeault("partial", 1).apply(Form.scalar(1, w.phi))
        assert chern_connection(w)[0][0] == dphi.scalar_mul(Scalar(-1))

    def test_ball_connection_matches_direct_quotient(self):
        h = ball_metric(1, 3)
        theta = chern_connection(h)
        hj = h.entries[0][0]
        for j in (1, 2):
            got = theta[0][0].coeffs.get((1 << (j - 1), 0), Jet(2, 2))
            assert got == jet_invert(hj) * hj.derivative("d", j)

    def test_compatibility_defects_vanish(self):
        rng = random.Random(5)
        h = random_jet_metric(1, 2, 4, rng)
        hol, antihol = connection_compatibility_defects(h)
        assert all(d.is_zero() for d in hol + antihol)

    def test_structure_equation_regression(self):
        # the second draw from this seed once leaked degree-3 residue of
        # theta^theta past the partial(theta) truncation
        rng = random.Random(0)
        random_jet_metric(1, 2, 4, rng)
        h = random_jet_metric(1, 2, 4, rng)
        defect = connection_structure_defect(h)
        assert all(f.is_zero() for row in defect for f in row)


class TestCurvature:
    def test_ball_curvature_is_identity_at_origin(self):
        tensor = chern_curvature(ball_metric(1, 3)).at_origin()
        for j in (1, 2):
            for k in (1, 2):
                assert tensor.entry(0, 0, j, k) == Scalar(int(j == k))

    def test_dual_constructions_agree(self):
        rng = random.Random(6)
        h = random_jet_metric(1, 2, 4, rng)
        lhs = curvature_form(chern_curvature(h))
        rhs = curvature_via_connection(h)
        assert all(lhs[a][b] == rhs[a][b] for a in range(2) for b in range(2))

    def test_weight_arena_dual_constructions_agree(self):
        w = standard_weights(1)[2][1]
        lhs = curvature_form(chern_curvature(w))
        assert lhs[0][0] == curvature_via_connection(w)[0][0]

    def test_twisted_family_multiples(self):
        rng = random.Random(7)
        h = random_jet_metric(1, 2, 4, rng)
        tj, tk, tp = twisted_curvatures(h)
        for a in range(2):
            for b in range(2):
                assert tk[a][b] == tj[a][b].scalar_mul(I)
                assert tp[a][b] == tj[a][b]

    def test_twisted_assembly_matches_dbar_route(self):
        rng = random.Random(8)
        h = random_jet_metric(1, 2, 4, rng)
        tj, _, _ = twisted_curvatures(h)
        assembled = twisted_curvature_assembly(chern_curvature(h))
        assert all(assembled[a][b] == tj[a][b]
                   for a in range(2) for b in range(2))

    def test_determinant_line_identities(self):
        rng = random.Random(9)
        h = random_jet_metric(1, 2, 4, rng)
        dets, trace_defect = first_chern_defects(h)
        assert all(d.is_zero() for d in dets)
        assert trace_defect.is_zero()

    def test_curvature_relation_on_ball(self):
        # (D''D' + D'D'')xi = e(Theta)xi at the degree both sides reach
        h = ball_metric(1, 4)
        ops = bundle_d_ops(h)
        e_theta = wedge_operator(curvature_form(chern_curvature(h))[0][0])
        rng = random.Random(10)
        xi = random_bundle_form(1, 1, 4, rng)
        lhs = ops["Dpp"].apply(ops["Dp"].apply(xi)) \
            + ops["Dp"].apply(ops["Dpp"].apply(xi))
        diff = lhs.components[0] - e_theta.apply(xi.components[0])
        for c in diff.coeffs.values():
            assert Jet(c.n_vars, 2, c.terms).terms == {}


class TestTwistedOperators:
    def test_eight_operators_per_arena(self):
        w = standard_weights(1)[0][1]
        h = identity_metric(1, 2, 3)
        assert len(bundle_d_ops(w)) == len(bundle_d_ops(h)) == 8

    def test_identity_metric_gives_plain_derivatives(self):
        rng = random.Random(11)
        xi = random_bundle_form(1, 2, 3, rng)
        ops = bundle_d_ops(identity_metric(1, 2, 3))
        partial = dolbeault("partial", 1)
        assert ops["Dp"].apply(xi).components == \
            tuple(partial.apply(c) for c in xi.components)

    def test_phibar_holomorphic_operator_collapses(self):
        w = standard_weights(1)[2][1]
        ops = bundle_d_ops(w)
        for xi in weight_forms(1):
            assert ops["Dp_phibar"].apply(xi) == ops["Dp_J"].apply(xi)

    def test_phibar_antiholomorphic_operator_vanishes(self):
        w = standard_weights(1)[2][1]
        op = bundle_d_ops(w)["Dpp_phibar"]
        for xi in weight_forms(1):
            assert op.apply(xi).is_zero()

    def test_jet_metrics_refuse_adjoints(self):
        with pytest.raises(AdjointUnavailable):
            bundle_adjoints(identity_metric(1, 2, 3))

    def test_flat_weight_laplacians_coincide(self):
        w = standard_weights(1)[0][1]
        ops, adj = bundle_d_ops(w), bundle_adjoints(w)
        lap_p = laplacian(ops["Dp"], adj["dp"])
        lap_pp = laplacian(ops["Dpp"], adj["dpp"])
        for xi in weight_forms(1, count=3):
            assert lap_p(xi) == lap_pp(xi)


class TestAdjointness:
    def test_divergence_certificate_for_weighted_pairing(self):
        w = standard_weights(1)[2][1]
        ops = bundle_d_ops(w)
        rng = random.Random(12)
        for key in ("Dp", "Dp_J"):
            for _ in range(4):
                u = random_fourier_form(1, rng)
                v = random_fourier_form(1, rng)
                defect, div = adjointness_defect_certificate(
                    ops[key], w.phi, u, v)
                assert (defect - div).is_zero()

    def test_weighted_holomorphic_adjoint_collapses(self):
        w = standard_weights(1)[2][1]
        delta = bundle_adjoints(w)["dp"]
        plain = formal_adjoint(dolbeault("partial", 1))
        for xi in weight_forms(1):
            assert delta.apply(xi) == plain.apply(xi)

    def test_frozen_bracket_signs(self):
        # [Lambda_J, D'] carries the printed sign; [Lambda_I, D'_J]
        # flips it, matching the six-row pattern of the form-level table
        w = standard_weights(1)[2][1]
        ops, adj = bundle_d_ops(w), bundle_adjoints(w)
        lam_i = suite_lambda("I", 1)
        lam_j = suite_lambda("J", 1)
        flipped = False
        for xi in weight_forms(1):
            plus = bracket_apply(lam_j, ops["Dp"], xi)
            assert plus == adj["dpp_J"].apply(xi)
            minus = bracket_apply(lam_i, ops["Dp_J"], xi)
            expect = adj["dpp_J"].apply(xi).scalar_mul(-I)
            assert minus == expect
            if not expect.is_zero():
                flipped = True
        assert flipped


class TestSuiteDrivers:
    def test_connection_suite(self):
        assert verify_chern_connection().all_passed()

    def test_curvature_dual_suite(self):
        assert verify_curvature_dual().all_passed()

    def test_twisted_curvature_suite(self):
        assert verify_twisted_curvature().all_passed()

    @pytest.mark.parametrize("index", [0, 1, 2])
    def test_bracket_table_suite(self, index):
        label, w = standard_weights(1)[index]
        report = verify_bundle_tables(w)
        assert report.all_passed(), label
        assert len(report.rows) == 26

    @pytest.mark.parametrize("index", [0, 1, 2])
    def test_laplacian_suite(self, index):
        label, w = standard_weights(1)[index]
        report = verify_bundle_laplacians(w)
        assert report.all_passed(), label
        assert len(report.rows) == (10 if index == 0 else 11)

    def test_standard_weights_are_real(self):
        for label, w in standard_weights(1):
            assert w.phi.is_real()
        assert standard_weights(1)[0][1].phi.is_zero()
