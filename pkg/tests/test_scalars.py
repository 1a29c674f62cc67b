"""Exact coefficient rings: Gaussian rationals, truncated jets, torus modes."""

from fractions import Fraction

import pytest
from hypothesis import given

from hkcalc.scalars import (
    FourierPoly, Jet, NotDifferentiable, NotInvertible, Scalar,
    VariantMismatch, jet_compose, jet_invert,
)

from support import fourier_polys, jets, nonzero_scalars, scalars

F = Fraction


class TestScalar:
    def test_display(self):
        assert str(Scalar(F(3, 4), F(1, 2))) == "3/4+1/2i"
        assert str(Scalar(-1)) == "-1"
        assert str(Scalar(0, -1)) == "-i"

    def test_inverse_of_i(self):
        assert Scalar(0, 1).inverse() == Scalar(0, -1)

    def test_inverse_of_zero_raises(self):
        with pytest.raises(NotInvertible):
            Scalar(0).inverse()

    @given(scalars, scalars, scalars)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a * b == b * a

    @given(nonzero_scalars)
    def test_inverse_round_trip(self, a):
        assert a * a.inverse() == Scalar(1)

    @given(scalars, scalars)
    def test_conjugation_is_a_ring_map(self, a, b):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        assert a.conjugate().conjugate() == a

    @given(scalars)
    def test_norm_sq_matches_conjugate_product(self, a):
        assert a * a.conjugate() == Scalar(a.norm_sq())

    def test_constant_derivative_vanishes(self):
        assert Scalar(5, 2).derivative("d", 1) == Scalar(0)


class TestJet:
    def test_invert_constant(self):
        one = Jet.constant(1, 2, 1)
        assert jet_invert(one) == one

    def test_invert_geometric_series(self):
        z = Jet.variable(1, 2, 1)
        zb = Jet.variable(1, 2, 1, bar=True)
        h = Jet.constant(1, 2, 1) - z * zb
        assert jet_invert(h) == Jet.constant(1, 2, 1) + z * zb

    def test_invert_affine(self):
        h = Jet.constant(1, 1, 2) + Jet.variable(1, 1, 1)
        inv = jet_invert(h)
        expect = Jet.constant(1, 1, F(1, 2)) \
            - Jet.variable(1, 1, 1).scalar_mul(Scalar(F(1, 4)))
        assert inv == expect
        assert h * inv == Jet.constant(1, 1, 1)

    def test_invert_needs_a_unit(self):
        with pytest.raises(NotInvertible):
            jet_invert(Jet.variable(1, 3, 1))

    def test_derivative_drops_order(self):
        z = Jet.variable(1, 3, 1)
        d = (z * z).derivative("d", 1)
        assert d == Jet.variable(1, 2, 1).scalar_mul(Scalar(2))
        assert d.order == 2

    def test_derivative_at_order_zero_raises(self):
        with pytest.raises(NotDifferentiable):
            Jet.constant(1, 0, 3).derivative("d", 1)

    def test_holo_derivative_kills_antiholo_variable(self):
        zb = Jet.variable(2, 2, 1, bar=True)
        assert zb.derivative("d", 1).is_zero()
        assert zb.derivative("dbar", 1) == Jet.constant(2, 1, 1)

    def test_mixed_variants_refuse_to_combine(self):
        with pytest.raises(VariantMismatch):
            Jet.variable(1, 2, 1) + Jet.variable(2, 2, 1)

    @given(jets(), jets(), jets())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @given(jets())
    def test_conjugation_involution(self, a):
        assert a.conjugate().conjugate() == a

    @given(jets(), jets())
    def test_conjugation_is_multiplicative(self, a, b):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()

    @given(jets(n_vars=2, order=3), jets(n_vars=2, order=3))
    def test_leibniz_rule(self, f, g):
        lhs = (f * g).derivative("d", 2)
        rhs = f.derivative("d", 2) * g + f * g.derivative("d", 2)
        assert lhs == rhs

    @given(jets(n_vars=2, order=4))
    def test_mixed_partials_commute(self, f):
        a = f.derivative("d", 1).derivative("dbar", 2)
        b = f.derivative("dbar", 2).derivative("d", 1)
        assert a == b

    @given(jets(), jets())
    def test_eval_at_origin_is_a_ring_map(self, a, b):
        assert (a * b).eval_at_origin() == a.eval_at_origin() * b.eval_at_origin()

    @given(jets())
    def test_invert_round_trip(self, h):
        if h.eval_at_origin().is_zero():
            return
        assert h * jet_invert(h) == Jet.constant(h.n_vars, h.order, 1)

    def test_compose_with_shift_free_substitution(self):
        # f(z) = z^2 with z -> z + z^2 at order 3: (z + z^2)^2 = z^2 + 2 z^3
        f = Jet.variable(1, 3, 1) * Jet.variable(1, 3, 1)
        sub = Jet.variable(1, 3, 1) + Jet.variable(1, 3, 1) * Jet.variable(1, 3, 1)
        out = jet_compose(f, [sub], [Jet.variable(1, 3, 1, bar=True)])
        z = Jet.variable(1, 3, 1)
        assert out == z * z + (z * z * z).scalar_mul(Scalar(2))

    @given(jets(n_vars=1, order=3))
    def test_compose_with_identity(self, f):
        out = jet_compose(
            f, [Jet.variable(1, 3, 1)], [Jet.variable(1, 3, 1, bar=True)])
        assert out == f


class TestFourierPoly:
    def test_mode_derivative_factors(self):
        m = FourierPoly.mode((1, 0))
        assert m.derivative("d", 1) == FourierPoly.mode((1, 0), Scalar(0, F(1, 2)))
        assert m.derivative("dbar", 1) == FourierPoly.mode((1, 0), Scalar(0, F(1, 2)))
        m2 = FourierPoly.mode((0, 1))
        assert m2.derivative("d", 1) == FourierPoly.mode((0, 1), Scalar(F(1, 2)))
        assert m2.derivative("dbar", 1) == FourierPoly.mode((0, 1), Scalar(F(-1, 2)))

    def test_real_constructors_are_real(self):
        assert FourierPoly.real_cosine((1, -2)).is_real()
        assert FourierPoly.real_sine((1, -2), F(2, 3)).is_real()

    def test_integrate_picks_zero_mode(self):
        f = FourierPoly.constant(2, F(5, 3)) + FourierPoly.mode((1, 1))
        assert f.integrate() == Scalar(F(5, 3))

    @given(fourier_polys())
    def test_integral_of_derivative_vanishes(self, f):
        assert f.derivative("d", 1).integrate() == Scalar(0)
        assert f.derivative("dbar", 1).integrate() == Scalar(0)

    @given(fourier_polys(), fourier_polys())
    def test_integration_by_parts(self, f, g):
        lhs = (f.derivative("d", 1) * g).integrate()
        rhs = -(f * g.derivative("d", 1)).integrate()
        assert lhs == rhs

    @given(fourier_polys(n_real_vars=4, max_freq=1))
    def test_derivatives_commute(self, f):
        a = f.derivative("d", 1).derivative("dbar", 2)
        b = f.derivative("dbar", 2).derivative("d", 1)
        assert a == b

    @given(fourier_polys(), fourier_polys())
    def test_ring_and_conjugation(self, f, g):
        assert f * g == g * f
        assert (f * g).conjugate() == f.conjugate() * g.conjugate()
        assert f.conjugate().conjugate() == f

    @given(fourier_polys(n_real_vars=4, max_freq=1))
    def test_conjugate_swaps_derivative_kinds(self, f):
        lhs = f.derivative("d", 2).conjugate()
        rhs = f.conjugate().derivative("dbar", 2)
        assert lhs == rhs

    @given(fourier_polys())
    def test_real_iff_equals_conjugate(self, f):
        assert f.is_real() == (f == f.conjugate())
