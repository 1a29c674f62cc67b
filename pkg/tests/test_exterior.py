"""Pointwise exterior algebra: wedge, contractions, I/J/K, star, Lefschetz."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkcalc.scalars import Jet, Scalar
from hkcalc.exterior import (
    AlgebraOp, Form, IndexSet, apply_complex_structure, basis_monomials,
    contract, hodge_star, lefschetz, monomial_name, omega_I, omega_J,
    omega_K, phi_form, pointwise_inner, volume_form, wedge,
)

from support import scalar_forms, scalars

F = Fraction
IU = Scalar(0, 1)


def anticommutator(a, b):
    return a @ b + b @ a


def commutator(a, b):
    return a @ b - b @ a


class TestIndexSet:
    def test_round_trip(self):
        assert IndexSet.indices(IndexSet.of([3, 1])) == (1, 3)

    def test_repeated_index_rejected(self):
        with pytest.raises(ValueError):
            IndexSet.of([2, 2])

    def test_sign_of_empty_and_full(self):
        full = IndexSet.of([1, 2, 3, 4])
        assert IndexSet.sign(0, 4) == 1
        assert IndexSet.sign(full, 4) == 1

    def test_sign_single_index(self):
        # theta^2 ^ theta^{134} needs one transposition
        assert IndexSet.sign(IndexSet.of([2]), 4) == -1
        assert IndexSet.sign(IndexSet.of([1]), 4) == 1


class TestWedge:
    def test_anticommutes_on_coframes(self):
        t1, t2 = Form.theta(2, 1), Form.theta(2, 2)
        m = Form.monomial(2, IndexSet.of([1, 2]), 0)
        assert wedge(t1, t2) == m
        assert wedge(t2, t1) == -m
        assert wedge(t1, t1).is_zero()

    def test_mixed_block_sign(self):
        tb1, t2 = Form.theta_bar(1, 1), Form.theta(1, 2)
        # thetabar^1 ^ theta^2 = - theta^2 ^ thetabar^1
        assert wedge(tb1, t2) == -Form.monomial(1, IndexSet.of([2]), IndexSet.of([1]))

    @given(scalar_forms(1), scalar_forms(1), scalar_forms(1))
    def test_bilinear_and_associative(self, a, b, c):
        assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    @given(scalar_forms(2), scalar_forms(2))
    def test_graded_commutativity_on_homogeneous_parts(self, a, b):
        for p, q in a.bidegrees():
            for r, s in b.bidegrees():
                x = a.bidegree_component(p, q)
                y = b.bidegree_component(r, s)
                sign = (-1) ** ((p + q) * (r + s))
                assert wedge(x, y) == wedge(y, x).scalar_mul(sign)

    @given(scalar_forms(1), scalar_forms(1))
    def test_conjugation_distributes(self, a, b):
        assert wedge(a, b).conjugate() == wedge(a.conjugate(), b.conjugate())


class TestContraction:
    def test_normalization(self):
        assert contract(1, False, Form.theta(2, 1)) == Form.scalar(2, Scalar(2))

    def test_sign_past_leading_coframe(self):
        m12 = Form.monomial(2, IndexSet.of([1, 2]), 0)
        assert contract(2, False, m12) == Form.theta(2, 1).scalar_mul(-2)

    def test_bar_contraction_crosses_holomorphic_block(self):
        m = Form.monomial(1, IndexSet.of([1]), IndexSet.of([1]))
        assert contract(1, True, m) == Form.theta(1, 1).scalar_mul(-2)

    @pytest.mark.parametrize("n", [1, 2])
    def test_wedge_contraction_anticommutators(self, n):
        two = AlgebraOp.identity().scalar_mul(2)
        zero = AlgebraOp.zero()
        for j in range(1, 2 * n + 1):
            for k in range(1, 2 * n + 1):
                e_j, i_k = AlgebraOp.gen("e", j), AlgebraOp.gen("i", k)
                eb_j, ib_k = AlgebraOp.gen("ebar", j), AlgebraOp.gen("ibar", k)
                want = two if j == k else zero
                assert anticommutator(e_j, i_k).equals(want, n)
                assert anticommutator(eb_j, ib_k).equals(want, n)
                assert anticommutator(e_j, ib_k).equals(zero, n)
                assert anticommutator(eb_j, i_k).equals(zero, n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_contraction_is_adjoint_of_wedge(self, n):
        for k in (1, n + 1):
            e_k = AlgebraOp.gen("e", k)
            for A, B in basis_monomials(n):
                xi = Form.monomial(n, A, B)
                for C, D in basis_monomials(n):
                    eta = Form.monomial(n, C, D)
                    lhs = pointwise_inner(e_k.apply(xi), eta)
                    rhs = pointwise_inner(xi, contract(k, False, eta))
                    assert lhs == rhs


class TestComplexStructures:
    def test_coframe_images_at_n1(self):
        t1, t2 = Form.theta(1, 1), Form.theta(1, 2)
        tb1, tb2 = Form.theta_bar(1, 1), Form.theta_bar(1, 2)
        assert apply_complex_structure("I", t1) == t1.scalar_mul(IU)
        assert apply_complex_structure("I", tb1) == tb1.scalar_mul(-IU)
        assert apply_complex_structure("J", t1) == tb2
        assert apply_complex_structure("J", t2) == -tb1
        assert apply_complex_structure("J", tb1) == t2
        assert apply_complex_structure("J", tb2) == -t1
        assert apply_complex_structure("K", t1) == tb2.scalar_mul(-IU)
        assert apply_complex_structure("K", t2) == tb1.scalar_mul(IU)
        assert apply_complex_structure("K", tb1) == t2.scalar_mul(IU)
        assert apply_complex_structure("K", tb2) == t1.scalar_mul(-IU)

    @pytest.mark.parametrize("n", [1, 2])
    def test_quaternion_relation_and_inverses(self, n):
        for A, B in basis_monomials(n):
            xi = Form.monomial(n, A, B)
            ij = apply_complex_structure("I", apply_complex_structure("J", xi))
            assert ij == apply_complex_structure("K", xi)
            for S in ("I", "J", "K"):
                back = apply_complex_structure(
                    S + "inv", apply_complex_structure(S, xi))
                assert back == xi

    @pytest.mark.parametrize("n", [1, 2])
    def test_square_is_degree_parity(self, n):
        for A, B in basis_monomials(n):
            xi = Form.monomial(n, A, B)
            sign = (-1) ** (IndexSet.size(A) + IndexSet.size(B))
            for S in ("I", "J", "K"):
                ss = apply_complex_structure(S, apply_complex_structure(S, xi))
                assert ss == xi.scalar_mul(sign)

    @given(scalar_forms(1), scalar_forms(1))
    def test_multiplicative_on_wedge(self, a, b):
        for S in ("I", "J", "K"):
            lhs = apply_complex_structure(S, wedge(a, b))
            rhs = wedge(apply_complex_structure(S, a),
                        apply_complex_structure(S, b))
            assert lhs == rhs

    def test_linear_over_coefficients(self):
        # J acts on coframes only; an antiholomorphic jet coefficient rides along
        zb = Jet.variable(1, 2, 1, bar=True)
        xi = Form.monomial(1, IndexSet.of([1]), 0, zb)
        out = apply_complex_structure("J", xi)
        assert out == Form.monomial(1, 0, IndexSet.of([2]), zb)

    @pytest.mark.parametrize("n", [1, 2])
    def test_contraction_structure_commutation(self, n):
        Iop, Jop, Kop = (AlgebraOp.gen(S) for S in ("I", "J", "K"))
        for k in range(1, n + 1):
            ik, ikn = AlgebraOp.gen("i", k), AlgebraOp.gen("i", k + n)
            ibk = AlgebraOp.gen("ibar", k)
            ibkn = AlgebraOp.gen("ibar", k + n)
            assert (Iop @ ik).equals((ik @ Iop).scalar_mul(-IU), n)
            assert (Iop @ ibk).equals((ibk @ Iop).scalar_mul(IU), n)
            assert (Jop @ ik).equals(ibkn @ Jop, n)
            assert (Jop @ ikn).equals((ibk @ Jop).scalar_mul(-1), n)
            assert (Kop @ ik).equals((ibkn @ Kop).scalar_mul(IU), n)
            assert (Kop @ ikn).equals((ibk @ Kop).scalar_mul(-IU), n)


class TestDistinguishedForms:
    @pytest.mark.parametrize("n", [1, 2])
    def test_phi_decomposition(self, n):
        assert omega_J(n) + omega_K(n).scalar_mul(IU) == phi_form(n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_reality(self, n):
        for w in (omega_I(n), omega_J(n), omega_K(n)):
            assert w.conjugate() == w

    @pytest.mark.parametrize("n", [1, 2])
    def test_structure_action_on_omegas(self, n):
        assert apply_complex_structure("I", omega_I(n)) == omega_I(n)
        assert apply_complex_structure("J", omega_I(n)) == -omega_I(n)
        assert apply_complex_structure("I", omega_J(n)) == -omega_J(n)
        assert apply_complex_structure("J", omega_J(n)) == omega_J(n)
        assert apply_complex_structure("K", omega_K(n)) == omega_K(n)
        assert apply_complex_structure("J", phi_form(n)) == phi_form(n).conjugate()

    @pytest.mark.parametrize("n", [1, 2])
    def test_norms(self, n):
        for w in (omega_I(n), omega_J(n), omega_K(n)):
            assert pointwise_inner(w, w) == Scalar(2 * n)
        assert pointwise_inner(phi_form(n), phi_form(n)) == Scalar(4 * n)
        assert pointwise_inner(omega_I(n), omega_J(n)) == Scalar(0)
        assert pointwise_inner(omega_J(n), omega_K(n)) == Scalar(0)

    def test_volume_at_n1(self):
        full = IndexSet.of([1, 2])
        assert volume_form(1) == Form.monomial(1, full, full, Scalar(F(1, 4)))


class TestHodgeStar:
    @pytest.mark.parametrize("n", [1, 2])
    def test_star_of_one_is_volume(self, n):
        assert hodge_star(Form.scalar(n, Scalar(1))) == volume_form(n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_double_star_parity(self, n):
        for A, B in basis_monomials(n):
            xi = Form.monomial(n, A, B)
            sign = (-1) ** (IndexSet.size(A) + IndexSet.size(B))
            assert hodge_star(hodge_star(xi)) == xi.scalar_mul(sign)

    def test_riesz_identity_n1(self):
        vol = volume_form(1)
        for A, B in basis_monomials(1):
            for C, D in basis_monomials(1):
                if IndexSet.size(A) + IndexSet.size(B) != \
                        IndexSet.size(C) + IndexSet.size(D):
                    continue
                xi = Form.monomial(1, A, B)
                eta = Form.monomial(1, C, D)
                assert wedge(xi, hodge_star(eta)) == \
                    vol.scalar_mul(pointwise_inner(xi, eta))

    @given(scalar_forms(1), scalars)
    def test_conjugate_linear(self, a, c):
        assert hodge_star(a.scalar_mul(c)) == \
            hodge_star(a).scalar_mul(c.conjugate())


class TestPointwiseInner:
    @given(scalar_forms(1), scalar_forms(1))
    def test_hermitian(self, a, b):
        assert pointwise_inner(a, b) == pointwise_inner(b, a).conjugate()

    @given(scalar_forms(1))
    def test_positive_definite(self, a):
        norm = pointwise_inner(a, a)
        assert norm.is_real()
        assert norm.re >= 0
        assert (norm.re == 0) == a.is_zero()

    def test_monomial_weights(self):
        m = Form.monomial(2, IndexSet.of([1, 3]), IndexSet.of([2]))
        assert pointwise_inner(m, m) == Scalar(8)


class TestAlgebraOp:
    @given(st.integers(min_value=0, max_value=15),
           st.integers(min_value=0, max_value=15))
    def test_adjoint_of_sampled_words(self, seed_a, seed_b):
        import random
        rng = random.Random(seed_a * 16 + seed_b)
        kinds = ["e", "ebar", "i", "ibar", "I", "J", "K"]
        word = []
        for _ in range(rng.randrange(0, 4)):
            kd = rng.choice(kinds)
            word.append(
                (kd, rng.randrange(1, 3) if kd in ("e", "ebar", "i", "ibar")
                 else 0))
        coeff = Scalar(F(rng.randrange(-3, 4)), F(rng.randrange(-3, 4)))
        op = AlgebraOp([(coeff, tuple(word))])
        ops = op.adjoint()
        for A, B in basis_monomials(1):
            xi = Form.monomial(1, A, B)
            for C, D in basis_monomials(1):
                eta = Form.monomial(1, C, D)
                assert pointwise_inner(op.apply(xi), eta) == \
                    pointwise_inner(xi, ops.apply(eta))

    def test_composition_is_right_to_left(self):
        # (e_1 o i_1)(theta^1) = e_1(2) = 2 theta^1
        op = AlgebraOp.gen("e", 1) @ AlgebraOp.gen("i", 1)
        assert op.apply(Form.theta(1, 1)) == Form.theta(1, 1).scalar_mul(2)
        assert op.apply(Form.scalar(1, Scalar(1))).is_zero()

    def test_matrix_detects_inequality(self):
        assert not AlgebraOp.gen("e", 1).equals(AlgebraOp.gen("e", 2), 1)

    def test_wedge_by_matches_direct_wedge(self):
        w = omega_J(2)
        op = AlgebraOp.wedge_by(w)
        for A, B in [(0, 0), (1, 2), (5, 0), (3, 9)]:
            xi = Form.monomial(2, A, B)
            assert op.apply(xi) == wedge(w, xi)


class TestLefschetz:
    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("which", ["I", "J", "K"])
    def test_pair_is_wedge_and_true_adjoint(self, n, which):
        L, Lam = lefschetz(which, n)
        form = {"I": omega_I, "J": omega_J, "K": omega_K}[which](n)
        xi = Form.monomial(n, IndexSet.of([1]), 0)
        assert L.apply(xi) == wedge(form, xi)
        assert Lam.equals(L.adjoint(), n)

    def test_adjointness_exhaustive_n1(self):
        for which in ("I", "J", "K", "phi"):
            L, Lam = lefschetz(which, 1)
            target = AlgebraOp.wedge_by(phi_form(1).conjugate()) \
                if which == "phi" else L
            for A, B in basis_monomials(1):
                xi = Form.monomial(1, A, B)
                for C, D in basis_monomials(1):
                    eta = Form.monomial(1, C, D)
                    assert pointwise_inner(xi, Lam.apply(eta)) == \
                        pointwise_inner(target.apply(xi), eta)

    @pytest.mark.parametrize("n", [1, 2])
    def test_lambda_eats_its_form(self, n):
        for which, form in (("I", omega_I(n)), ("J", omega_J(n)),
                            ("K", omega_K(n))):
            _, Lam = lefschetz(which, n)
            assert Lam.apply(form) == Form.scalar(n, Scalar(2 * n))
        _, Lam = lefschetz("phi", n)
        assert Lam.apply(phi_form(n).conjugate()) == \
            Form.scalar(n, Scalar(4 * n))

    @pytest.mark.parametrize("n", [1, 2])
    def test_phi_lambda_contraction_word(self, n):
        _, Lam = lefschetz("phi", n)
        built = AlgebraOp.zero()
        for k in range(1, n + 1):
            built = built + (
                AlgebraOp.gen("ibar", k + n) @ AlgebraOp.gen("ibar", k))
        assert Lam.equals(built, n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_primitive_coframe_commutator(self, n):
        # [Lambda_I, L_I] acts on 1-forms as multiplication by 2n - deg
        L, Lam = lefschetz("I", n)
        xi = Form.theta(n, 1)
        out = commutator(Lam, L).apply(xi)
        assert out == xi.scalar_mul(2 * n - 1)


def test_monomial_name():
    assert monomial_name(IndexSet.of([1, 3]), IndexSet.of([2])) == "t1^t3^tb2"
    assert monomial_name(0, 0) == "1"
