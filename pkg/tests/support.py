"""Shared hypothesis strategies for the exact arithmetic layers."""

from fractions import Fraction

from hypothesis import strategies as st

from hkcalc.scalars import FourierPoly, Jet, Scalar

small_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=6)

scalars = st.builds(Scalar, small_fractions, small_fractions)

nonzero_scalars = scalars.filter(lambda s: not s.is_zero())


def jet_keys(n_vars: int, order: int):
    exps = st.integers(min_value=0, max_value=order)
    return st.tuples(*([exps] * (2 * n_vars))).filter(
        lambda key: sum(key) <= order)


def jets(n_vars: int = 1, order: int = 3):
    return st.dictionaries(
        jet_keys(n_vars, order), scalars, max_size=5).map(
            lambda terms: Jet(n_vars, order, terms))


def fourier_polys(n_real_vars: int = 2, max_freq: int = 2):
    freq = st.integers(min_value=-max_freq, max_value=max_freq)
    keys = st.tuples(*([freq] * n_real_vars))
    return st.dictionaries(keys, scalars, max_size=4).map(
        lambda terms: FourierPoly(n_real_vars, terms))


def mask_pairs(n: int):
    masks = st.integers(min_value=0, max_value=(1 << (2 * n)) - 1)
    return st.tuples(masks, masks)


def scalar_forms(n: int, max_terms: int = 4):
    from hkcalc.exterior import Form
    return st.dictionaries(mask_pairs(n), scalars, max_size=max_terms).map(
        lambda coeffs: Form(n, coeffs))
