"""Pointwise commutator tables and curvature pairing expansions.

Three layers, all exact and all at a single point:

* closed-form case tables for commutators of wedge pairs against
  contraction pairs, compared with functionally expanded brackets as
  complete matrices on the monomial basis;
* the common-remainder expansion of (e_q i_k xi, xi), which pins down
  the power-of-two bookkeeping between operator values and coefficient
  sums;
* the quadratic forms (1/2)<[e(i Theta), Lambda_I] xi, xi> and
  (1/2)<[e(Theta_J), Lambda_J] xi, xi>, each computed by functional
  commutators, by a regrouped constant-word operator, and by the
  block-by-block coefficient summation, with all routes required to
  agree exactly.

The coefficient sums weight each paired monomial by its pointwise_inner
norm; against a unit-frame convention every term differs by 2^(p+q),
and that ratio is recorded in the report factor column instead of being
absorbed into either side.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Union

from .bundle import BundleForm, MatrixOp
from .calculus import DiffOp, suite_lambda
from .exterior import (
    AlgebraOp, Form, IndexSet, basis_monomials, pointwise_inner,
)
from .report import Report, Row
from .scalars import FourierPoly, Scalar

ONE = Scalar(1)
ZERO = Scalar(0)
HALF = Scalar(Fraction(1, 2))
IU = Scalar(0, 1)

CoeffValue = Union[Scalar, FourierPoly]

FLAVORS = ("ee-ii", "e-ebar-i-ibar", "ebar-ebar-ibar-ibar")


def _scale(value: CoeffValue, s: Scalar) -> CoeffValue:
    if isinstance(value, Scalar):
        return value * s
    return value.scalar_mul(s)


def _mono(c, *gens) -> AlgebraOp:
    return AlgebraOp([(Scalar.of(c), tuple(gens))])


def _check_index(label: str, value: int, upper: int) -> None:
    if not 1 <= value <= upper:
        raise ValueError(f"{label} must lie in 1..{upper}, got {value}")


# commutator case tables ------------------------------------------------


def commutator_case(p: int, q: int, k: int, flavor: str, n: int) -> AlgebraOp:
    """Closed form for one index case of [wedge pair, contraction pair].

    Flavors name the generator families of the bracket: "ee-ii" is
    [ebar_p ebar_q, i_k i_{k+n}], "e-ebar-i-ibar" is
    [e_p ebar_q, i_k ibar_k], and "ebar-ebar-ibar-ibar" is
    [ebar_p ebar_q, ibar_k ibar_{k+n}].  The paired-contraction flavors
    need k <= n so that k+n stays in range; the mixed flavor allows any
    k <= 2n.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    _check_index("p", p, 2 * n)
    _check_index("q", q, 2 * n)
    _check_index("k", k, 2 * n if flavor == "e-ebar-i-ibar" else n)
    if flavor == "ee-ii":
        return AlgebraOp.zero()
    if flavor == "e-ebar-i-ibar":
        if p == k and q == k:
            return (_mono(4) + _mono(-2, ("e", k), ("i", k))
                    + _mono(-2, ("ebar", k), ("ibar", k)))
        if p == k:
            return _mono(-2, ("ebar", q), ("ibar", k))
        if q == k:
            return _mono(-2, ("e", p), ("i", k))
        return AlgebraOp.zero()
    # barred wedge against the paired barred contraction
    if p == q:
        return AlgebraOp.zero()
    kk = k + n
    saturated = (_mono(4) + _mono(-2, ("ebar", k), ("ibar", k))
                 + _mono(-2, ("ebar", kk), ("ibar", kk)))
    if p == k and q == kk:
        return saturated
    if q == k and p == kk:
        return saturated.scalar_mul(Scalar(-1))
    if p == k:
        return _mono(-2, ("ebar", q), ("ibar", kk))
    if q == k:
        return _mono(2, ("ebar", p), ("ibar", kk))
    if p == kk:
        return _mono(2, ("ebar", q), ("ibar", k))
    if q == kk:
        return _mono(-2, ("ebar", p), ("ibar", k))
    return AlgebraOp.zero()


def _flavor_bracket(p: int, q: int, k: int, flavor: str, n: int) -> AlgebraOp:
    gen = AlgebraOp.gen
    if flavor == "ee-ii":
        left = gen("ebar", p) @ gen("ebar", q)
        right = gen("i", k) @ gen("i", k + n)
    elif flavor == "e-ebar-i-ibar":
        left = gen("e", p) @ gen("ebar", q)
        right = gen("i", k) @ gen("ibar", k)
    else:
        left = gen("ebar", p) @ gen("ebar", q)
        right = gen("ibar", k) @ gen("ibar", k + n)
    return left @ right - right @ left


def verify_lemma42(n: int) -> Report:
    """Check all three commutator tables as complete matrix identities.

    Every (p, q, k) case is expanded functionally and compared against
    its closed form on the full 4^(2n)-dimensional monomial basis; a
    sign-mutated case is rerun as the negative control.
    """
    if n not in (1, 2):
        raise ValueError("complete matrix comparison is sized for n <= 2")
    t0 = time.perf_counter()
    report = Report("lemma-4.2", meta={"n": n})
    tables = (
        ("unbarred contraction pair vanishes",
         "lemma-4.2 / [ē_pē_q, i_ki_{k+n}]=0", "ee-ii"),
        ("mixed wedge against diagonal contraction",
         "lemma-4.2 / [e_pē_q, i_kī_k] case table", "e-ebar-i-ibar"),
        ("barred wedge against paired contraction",
         "lemma-4.2 / [ē_pē_q, ī_kī_{k+n}] case table",
         "ebar-ebar-ibar-ibar"),
    )
    dim = 4 ** (2 * n)
    for name, anchor, flavor in tables:
        k_top = 2 * n if flavor == "e-ebar-i-ibar" else n
        ok, checked, witness = True, 0, ""
        for p, q, k in product(range(1, 2 * n + 1), range(1, 2 * n + 1),
                               range(1, k_top + 1)):
            bracket = _flavor_bracket(p, q, k, flavor, n)
            if not bracket.equals(commutator_case(p, q, k, flavor, n), n):
                ok = False
                witness = f"mismatch at (p,q,k)=({p},{q},{k})"
                break
            checked += 1
        report.add(Row(
            name=name, anchor=anchor, arena=f"n={n} matrices", passed=ok,
            detail=witness or f"{checked} cases on the {dim}-dim basis"))
    bracket = _flavor_bracket(1, n + 1, 1, "ebar-ebar-ibar-ibar", n)
    mutated = commutator_case(
        1, n + 1, 1, "ebar-ebar-ibar-ibar", n).scalar_mul(Scalar(-1))
    report.add(Row(
        name="sign-mutated case is detected",
        anchor="lemma-4.2 / negative control",
        arena=f"n={n} matrices",
        passed=not bracket.equals(mutated, n),
        detail="flipped closed form must not match the bracket"))
    report.elapsed = time.perf_counter() - t0
    return report


# common-remainder coefficient sums -------------------------------------


def _bit(k: int) -> int:
    return 1 << (k - 1)


def _sgn_below(mask: int, k: int) -> int:
    return -1 if IndexSet.size(mask & (_bit(k) - 1)) % 2 else 1


def _append_sum(plain: Form, conj: Form, a: int, b: int, slot: str,
                extra: int) -> Scalar:
    """Pair a-appended keys of `plain` against b-appended keys of `conj`.

    Both keys share a common remainder set S in the chosen slot (the
    other slot must match exactly); each term carries the two
    transposition signs and the weight 2^(spectator + |S| + extra).
    With extra=2 this reproduces raw operator inner products; extra=1
    folds in the global one-half of the commutator pairings.
    """
    total = ZERO
    for (A, B), c in plain.coeffs.items():
        if slot == "hol":
            if not A & _bit(a):
                continue
            S = A & ~_bit(a)
            if a != b and S & _bit(b):
                continue
            key = (S | _bit(b), B)
            spectator = IndexSet.size(B)
        else:
            if not B & _bit(a):
                continue
            S = B & ~_bit(a)
            if a != b and S & _bit(b):
                continue
            key = (A, S | _bit(b))
            spectator = IndexSet.size(A)
        d = conj.coeffs.get(key)
        if d is None:
            continue
        sgn = _sgn_below(S, a) * _sgn_below(S, b)
        weight = sgn * (1 << (spectator + IndexSet.size(S) + extra))
        total = total + c * d.conjugate() * Scalar(weight)
    return total


def inner_expansion(q: int, k: int, xi) -> tuple[Scalar, Scalar]:
    """Both routes to (e_q i_k xi, xi): operator value and coefficient sum.

    Accepts a Form or a BundleForm with Scalar coefficients.  The sum
    side pairs k-appended against q-appended holomorphic keys over a
    common remainder, weighting each term by twice the appended
    monomial's squared norm; both values are returned so callers assert
    the equality themselves.
    """
    if isinstance(xi, Form):
        xi = BundleForm((xi,))
    _check_index("q", q, 2 * xi.n)
    _check_index("k", k, 2 * xi.n)
    word = AlgebraOp.gen("e", q) @ AlgebraOp.gen("i", k)
    op_side, sum_side = ZERO, ZERO
    for comp in xi.components:
        op_side = op_side + pointwise_inner(word.apply(comp), comp)
        sum_side = sum_side + _append_sum(comp, comp, k, q, "hol", 2)
    return op_side, sum_side


def verify_inner_expansion(n: int = 2, trials: int = 20,
                           seed: int = 0) -> Report:
    """Drive the dual inner-product computation on frozen and random input."""
    t0 = time.perf_counter()
    report = Report("inner-expansion",
                    meta={"n": n, "trials": trials, "seed": seed})
    anchor = "prop-4.3 / (e_qi_kξ,ξ) common-remainder sum"
    rng = random.Random(seed)

    op_side, sum_side = inner_expansion(1, 1, Form.monomial(1, _bit(1), 0))
    report.add(Row(
        name="single holomorphic frame line",
        anchor=anchor, arena="n=1 scalar",
        passed=op_side == sum_side == Scalar(4),
        factor="2^(p+q)",
        detail="(e_1i_1θ¹,θ¹) = 4 on both routes"))

    op_side, sum_side = inner_expansion(1, 1, Form.monomial(1, _bit(2), 0))
    report.add(Row(
        name="contraction misses the monomial",
        anchor=anchor, arena="n=1 scalar",
        passed=op_side == ZERO and sum_side == ZERO,
        detail="(e_1i_1θ²,θ²) = 0 on both routes"))

    ok, checked, witness = True, 0, ""
    for A, B in basis_monomials(1):
        for q, k in product((1, 2), repeat=2):
            op_side, sum_side = inner_expansion(
                q, k, Form.monomial(1, A, B))
            if op_side != sum_side:
                ok, witness = False, f"monomial ({A},{B}), q={q}, k={k}"
                break
            checked += 1
        if not ok:
            break
    report.add(Row(
        name="complete monomial sweep",
        anchor=anchor, arena="n=1 scalar",
        passed=ok, factor="2^(p+q)",
        detail=witness or f"{checked} monomial/index combinations"))

    ok, witness = True, ""
    for t in range(trials):
        xi = BundleForm(tuple(
            _random_scalar_form(n, rng) for _ in range(2)))
        q = rng.randint(1, 2 * n)
        k = rng.randint(1, 2 * n)
        op_side, sum_side = inner_expansion(q, k, xi)
        if op_side != sum_side:
            ok, witness = False, f"trial {t}, q={q}, k={k}"
            break
    report.add(Row(
        name="random rank-2 forms",
        anchor=anchor, arena=f"n={n} scalar",
        passed=ok, factor="2^(p+q)",
        detail=witness or f"{trials} random draws"))
    report.elapsed = time.perf_counter() - t0
    return report


# pointwise states ------------------------------------------------------


@dataclass(frozen=True)
class CurvatureTensor:
    """Curvature coefficients R^alpha_beta(p, q-bar) at one point.

    `entries[alpha][beta][p-1][q-1]` holds the value for frame slots
    alpha, beta (0-based) and coframe indices p, q (1-based); values are
    Scalars or torus polynomials.  The tensor must be Hermitian:
    swapping both index pairs conjugates the entry.
    """

    n: int
    r: int
    entries: tuple

    def __post_init__(self):
        rows = tuple(
            tuple(tuple(tuple(block_row) for block_row in block)
                  for block in frame_row)
            for frame_row in self.entries)
        object.__setattr__(self, "entries", rows)
        m = 2 * self.n
        if len(rows) != self.r or any(len(fr) != self.r for fr in rows):
            raise ValueError("curvature needs r x r frame blocks")
        for frame_row in rows:
            for block in frame_row:
                if len(block) != m or any(len(br) != m for br in block):
                    raise ValueError("each frame block must be 2n x 2n")
        for al in range(self.r):
            for be in range(self.r):
                for p in range(m):
                    for q in range(m):
                        if rows[al][be][p][q] != \
                                rows[be][al][q][p].conjugate():
                            raise ValueError(
                                "curvature must be Hermitian, violated "
                                f"at [{al}][{be}][{p}][{q}]")

    @staticmethod
    def zero(n: int, r: int) -> "CurvatureTensor":
        m = 2 * n
        return CurvatureTensor(n, r, tuple(
            tuple(tuple(tuple(ZERO for _ in range(m)) for _ in range(m))
                  for _ in range(r)) for _ in range(r)))

    def entry(self, alpha: int, beta: int, p: int, q: int) -> CoeffValue:
        """Frame slots 0-based, coframe indices 1-based."""
        return self.entries[alpha][beta][p - 1][q - 1]

    def is_zero(self) -> bool:
        return all(v.is_zero() for fr in self.entries for bl in fr
                   for br in bl for v in br)


@dataclass(frozen=True)
class PointwiseState:
    """One evaluation point: a curvature tensor plus a bundle-valued form."""

    n: int
    r: int
    R: CurvatureTensor
    xi: BundleForm

    def __post_init__(self):
        if self.R.n != self.n or self.R.r != self.r:
            raise ValueError("curvature shape disagrees with the state")
        if self.xi.n != self.n or self.xi.rank != self.r:
            raise ValueError("form shape disagrees with the state")
        for comp in self.xi.components:
            for c in comp.coeffs.values():
                if not isinstance(c, Scalar):
                    raise ValueError(
                        "pointwise forms carry Scalar coefficients")


def _random_scalar(rng: random.Random) -> Scalar:
    return Scalar(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))),
                  Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))))


def _random_scalar_form(n: int, rng: random.Random, terms: int = 4) -> Form:
    keys = list(basis_monomials(n))
    coeffs = {}
    for _ in range(terms):
        coeffs[rng.choice(keys)] = _random_scalar(rng)
    return Form(n, coeffs)


def random_curvature(n: int, r: int, rng: random.Random) -> CurvatureTensor:
    """Dense Hermitian tensor built from a random draw plus its adjoint."""
    m = 2 * n
    raw = [[[[_random_scalar(rng) for _ in range(m)] for _ in range(m)]
            for _ in range(r)] for _ in range(r)]
    entries = tuple(tuple(tuple(tuple(
        raw[al][be][p][q] + raw[be][al][q][p].conjugate()
        for q in range(m)) for p in range(m))
        for be in range(r)) for al in range(r))
    return CurvatureTensor(n, r, entries)


def random_pointwise_state(n: int, r: int, rng: random.Random,
                           terms: int = 4) -> PointwiseState:
    xi = BundleForm(tuple(_random_scalar_form(n, rng, terms)
                          for _ in range(r)))
    return PointwiseState(n, r, random_curvature(n, r, rng), xi)


def diagonal_pointwise_state(n: int, r: int, spectra,
                             xi: BundleForm) -> PointwiseState:
    """State with R^alpha_alpha(p, p-bar) = spectra[alpha][p-1], rest zero."""
    m = 2 * n
    entries = tuple(tuple(tuple(tuple(
        Scalar.of(spectra[al][p]) if al == be and p == q else ZERO
        for q in range(m)) for p in range(m))
        for be in range(r)) for al in range(r))
    return PointwiseState(n, r, CurvatureTensor(n, r, entries), xi)


def symbolic_pointwise_state(n: int, r: int, rng: random.Random,
                             terms: int = 3) -> PointwiseState:
    """Hermitian curvature with one independent torus mode per slot.

    Distinct base frequencies keep the entries linearly independent, so
    an equality that holds at this state holds identically in the
    curvature entries.  The form keeps Scalar coefficients.
    """
    m = 2 * n
    n4 = 4 * n
    blank = [[[[None] * m for _ in range(m)] for _ in range(r)]
             for _ in range(r)]
    counter = 0
    for al in range(r):
        for be in range(r):
            for p in range(m):
                for q in range(m):
                    if blank[al][be][p][q] is not None:
                        continue
                    counter += 1
                    freq = tuple(counter if j == 0 else 0
                                 for j in range(n4))
                    if al == be and p == q:
                        blank[al][be][p][q] = FourierPoly.real_cosine(freq)
                    else:
                        mode = FourierPoly.mode(freq)
                        blank[al][be][p][q] = mode
                        blank[be][al][q][p] = mode.conjugate()
    entries = tuple(tuple(tuple(tuple(blank[al][be][p][q]
                                      for q in range(m)) for p in range(m))
                          for be in range(r)) for al in range(r))
    xi = BundleForm(tuple(_random_scalar_form(n, rng, terms)
                          for _ in range(r)))
    return PointwiseState(n, r, CurvatureTensor(n, r, entries), xi)


# operator assemblies ---------------------------------------------------


def _matrix_op(state: PointwiseState, entry_builder) -> MatrixOp:
    return MatrixOp(tuple(
        tuple(entry_builder(al, be) for be in range(state.r))
        for al in range(state.r)))


def icurvature_wedge(state: PointwiseState) -> MatrixOp:
    """Wedge by i Theta as a frame-indexed operator matrix."""
    gen = AlgebraOp.gen

    def entry(al, be):
        terms = []
        for p in range(1, 2 * state.n + 1):
            for q in range(1, 2 * state.n + 1):
                v = state.R.entry(al, be, p, q)
                if v.is_zero():
                    continue
                terms.append((_scale(v, IU),
                              gen("e", p) @ gen("ebar", q), None))
        return DiffOp(terms)

    return _matrix_op(state, entry)


def twisted_curvature_wedge(state: PointwiseState) -> MatrixOp:
    """Wedge by the J-twisted curvature assembled from the same tensor.

    Per frame pair the (0,2) assembly over p, q <= n reads
    -R(p,q) ebar_q ebar_{p+n} - R(p,q+n) ebar_{q+n} ebar_{p+n}
    + R(p+n,q) ebar_q ebar_p + R(p+n,q+n) ebar_{q+n} ebar_p.
    """
    gen = AlgebraOp.gen
    n = state.n

    def entry(al, be):
        terms = []
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                for sign, u, v, a, b in (
                        (-1, p, q, q, p + n),
                        (-1, p, q + n, q + n, p + n),
                        (1, p + n, q, q, p),
                        (1, p + n, q + n, q + n, p)):
                    val = state.R.entry(al, be, u, v)
                    if val.is_zero():
                        continue
                    terms.append((_scale(val, Scalar(sign)),
                                  gen("ebar", a) @ gen("ebar", b), None))
        return DiffOp(terms)

    return _matrix_op(state, entry)


def regrouped_commutator(state: PointwiseState) -> MatrixOp:
    """[e(Theta_J), Lambda_J] collapsed to constant words.

    The rearranged summation: a full-range ebar-ibar sum, minus twice
    the trace times the identity, the two index-shifted n-block sums,
    and two negative mixed-shift corrections.  The positive
    mixed-quadrant words are not listed separately: they are the
    off-diagonal quadrants of the full-range sum already.
    """
    gen = AlgebraOp.gen
    n = state.n

    def entry(al, be):
        terms = []

        def add(u, v, a, b, sign):
            val = state.R.entry(al, be, u, v)
            if not val.is_zero():
                terms.append((_scale(val, Scalar(sign)),
                              gen("ebar", a) @ gen("ibar", b), None))

        for p in range(1, 2 * n + 1):
            for q in range(1, 2 * n + 1):
                add(p, q, q, p, 1)
        trace = ZERO
        for k in range(1, 2 * n + 1):
            trace = trace + state.R.entry(al, be, k, k)
        if not trace.is_zero():
            terms.append((_scale(trace, Scalar(-2)),
                          AlgebraOp.identity(), None))
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                add(p, q, p + n, q + n, 1)
                add(p + n, q + n, p, q, 1)
                add(p, q + n, p + n, q, -1)
                add(p + n, q, p, q + n, -1)
        return DiffOp(terms)

    return _matrix_op(state, entry)


# pairings --------------------------------------------------------------


def _half_inner(image: BundleForm, xi: BundleForm) -> CoeffValue:
    total = None
    for out, comp in zip(image.components, xi.components):
        term = pointwise_inner(out, comp)
        total = term if total is None else total + term
    return _scale(ZERO if total is None else total, HALF)


def half_pairing(op: MatrixOp, xi: BundleForm) -> CoeffValue:
    """(1/2) sum_alpha <(op xi)_alpha, xi_alpha> at the point."""
    return _half_inner(op.apply(xi), xi)


def bracket_pairing(wedge: MatrixOp, lam: AlgebraOp,
                    xi: BundleForm) -> CoeffValue:
    """(1/2)<[wedge, Lambda] xi, xi> with the commutator applied, not
    normal-ordered."""
    lam_mat = MatrixOp.diagonal(DiffOp.from_algebra(lam), xi.rank)
    com = wedge.apply(lam_mat.apply(xi)) - lam_mat.apply(wedge.apply(xi))
    return _half_inner(com, xi)


# block summations ------------------------------------------------------


def _append_block(state: PointwiseState, pairs) -> CoeffValue:
    """Sum R(u,v) times signed append-pair sums over all frame slots.

    `pairs` yields (u, v, plain_append, conj_append, sign) with all
    appends in the antiholomorphic slot.  The unconjugated side carries
    the second frame slot of R, matching the pairing convention that
    conjugates the second argument; the plain append is the tensor's
    contraction index.
    """
    xi = state.xi
    acc = None
    for al in range(state.r):
        for be in range(state.r):
            plain, conj = xi.components[be], xi.components[al]
            for u, v, a, b, sign in pairs:
                rv = state.R.entry(al, be, u, v)
                if rv.is_zero():
                    continue
                s = _append_sum(plain, conj, a, b, "anti", 1)
                if sign < 0:
                    s = s * Scalar(-1)
                if s.is_zero():
                    continue
                term = _scale(rv, s)
                acc = term if acc is None else acc + term
    return ZERO if acc is None else acc


def _trace_block(state: PointwiseState) -> CoeffValue:
    """Minus the R-trace paired against the form's squared norms."""
    xi = state.xi
    acc = None
    for al in range(state.r):
        for be in range(state.r):
            inner = pointwise_inner(xi.components[be], xi.components[al])
            if inner.is_zero():
                continue
            for k in range(1, 2 * state.n + 1):
                rv = state.R.entry(al, be, k, k)
                if rv.is_zero():
                    continue
                term = _scale(rv, inner * Scalar(-1))
                acc = term if acc is None else acc + term
    return ZERO if acc is None else acc


def plain_expansion(state: PointwiseState):
    """Coefficient-sum value of (1/2)<[e(i Theta), Lambda_I] xi, xi>.

    Returns (total, blocks); blocks holds the antiholomorphic append
    sum, the holomorphic append sum, and the signed trace term.
    """
    n, xi = state.n, state.xi
    full = range(1, 2 * n + 1)
    anti = _append_block(state, [(p, q, p, q, 1)
                                 for p in full for q in full])
    hol = None
    for al in range(state.r):
        for be in range(state.r):
            plain, conj = xi.components[be], xi.components[al]
            for p in full:
                for q in full:
                    rv = state.R.entry(al, be, p, q)
                    if rv.is_zero():
                        continue
                    s = _append_sum(plain, conj, q, p, "hol", 1)
                    if s.is_zero():
                        continue
                    term = _scale(rv, s)
                    hol = term if hol is None else hol + term
    blocks = {
        "antiholomorphic-append": anti,
        "holomorphic-append": ZERO if hol is None else hol,
        "trace": _trace_block(state),
    }
    total = blocks["antiholomorphic-append"] \
        + blocks["holomorphic-append"] + blocks["trace"]
    return total, blocks


def twisted_expansion(state: PointwiseState):
    """Coefficient-sum value of (1/2)<[e(Theta_J), Lambda_J] xi, xi>.

    Returns (total, blocks) with the four block groups of the regrouped
    identity: the full-range append sum, the signed trace, the
    index-shifted n-block sums, and the two negative mixed-shift
    corrections.  On forms whose antiholomorphic set is saturated the
    first two cancel and the mixed-shift group vanishes.
    """
    n = state.n
    full = range(1, 2 * n + 1)
    half_range = range(1, n + 1)
    shifted, mixed = [], []
    for p in half_range:
        for q in half_range:
            shifted.append((p, q, q + n, p + n, 1))
            shifted.append((p + n, q + n, q, p, 1))
            mixed.append((p, q + n, q, p + n, -1))
            mixed.append((p + n, q, q + n, p, -1))
    blocks = {
        "full-range": _append_block(state, [(p, q, p, q, 1)
                                            for p in full for q in full]),
        "trace": _trace_block(state),
        "index-shifted": _append_block(state, shifted),
        "mixed-shift": _append_block(state, mixed),
    }
    total = blocks["full-range"] + blocks["trace"] \
        + blocks["index-shifted"] + blocks["mixed-shift"]
    return total, blocks


# suite drivers ---------------------------------------------------------


def verify_prop44(n: int = 2, r: int = 2, trials: int = 20,
                  seed: int = 0) -> Report:
    """Functional [e(i Theta), Lambda_I] pairing versus its block sums."""
    t0 = time.perf_counter()
    report = Report("bkn-expansion-I",
                    meta={"n": n, "r": r, "trials": trials, "seed": seed})
    anchor = "prop-4.4 / ⟨[e(iΘ),Λ]ξ,ξ⟩ expansion"
    rng = random.Random(seed)
    lam = suite_lambda("I", n)

    xi = BundleForm(tuple(_random_scalar_form(n, rng) for _ in range(r)))
    state = PointwiseState(n, r, CurvatureTensor.zero(n, r), xi)
    value = bracket_pairing(icurvature_wedge(state), lam, state.xi)
    total, _ = plain_expansion(state)
    report.add(Row(
        name="zero curvature",
        anchor=anchor, arena=f"n={n} r={r} scalar",
        passed=value == ZERO and total == ZERO,
        detail="0 = 0"))

    m = 2 * n
    ok, witness = True, ""
    for qdeg in range(m + 1):
        mask = (1 << qdeg) - 1
        state = diagonal_pointwise_state(
            n, 1, ((Fraction(1),) * m,),
            BundleForm((Form.monomial(n, 0, mask),)))
        expected = Scalar(Fraction((qdeg - m) * (1 << qdeg)))
        value = bracket_pairing(icurvature_wedge(state), lam, state.xi)
        total, _ = plain_expansion(state)
        if not (value == expected and total == expected):
            ok, witness = False, f"degree {qdeg}: {value} vs {expected}"
            break
    report.add(Row(
        name="unit diagonal on antiholomorphic monomials",
        anchor=anchor, arena=f"n={n} r=1 scalar",
        passed=ok,
        detail=witness or "value (q-2n)·2^q for q = 0..2n"))

    ok, real_ok, witness = True, True, ""
    for t in range(trials):
        state = random_pointwise_state(n, r, rng)
        value = bracket_pairing(icurvature_wedge(state), lam, state.xi)
        total, _ = plain_expansion(state)
        if value != total:
            ok, witness = False, f"trial {t}"
            break
        if not value.is_real():
            real_ok, witness = False, f"complex value in trial {t}"
            break
    report.add(Row(
        name="dense Hermitian tensors",
        anchor=anchor, arena=f"n={n} r={r} scalar",
        passed=ok and real_ok,
        detail=witness or f"{trials} draws, real values throughout"))

    sym = symbolic_pointwise_state(1, min(r, 2), rng)
    value = bracket_pairing(icurvature_wedge(sym), suite_lambda("I", 1),
                            sym.xi)
    total, _ = plain_expansion(sym)
    report.add(Row(
        name="independent-mode symbolic entries",
        anchor=anchor, arena="n=1 torus modes",
        passed=value == total,
        detail="equality is linear in each curvature entry"))
    report.elapsed = time.perf_counter() - t0
    return report


def _full_q_form(n: int, rng: random.Random, terms: int = 3) -> Form:
    full = (1 << (2 * n)) - 1
    coeffs = {}
    for _ in range(terms):
        coeffs[(rng.randrange(1 << (2 * n)), full)] = _random_scalar(rng)
    return Form(n, coeffs)


def verify_prop45(n: int = 2, r: int = 2, trials: int = 20,
                  seed: int = 0) -> Report:
    """Three-way check of the twisted curvature commutator pairing."""
    t0 = time.perf_counter()
    report = Report("bkn-expansion-J",
                    meta={"n": n, "r": r, "trials": trials, "seed": seed})
    anchor = "prop-4.5 / ⟨[e(Θ_J),Λ_J]ξ,ξ⟩ expansion"
    rng = random.Random(seed)
    lam = suite_lambda("J", n)

    xi = BundleForm(tuple(_random_scalar_form(n, rng) for _ in range(r)))
    state = PointwiseState(n, r, CurvatureTensor.zero(n, r), xi)
    value = bracket_pairing(twisted_curvature_wedge(state), lam, state.xi)
    total, _ = twisted_expansion(state)
    report.add(Row(
        name="zero curvature",
        anchor=anchor, arena=f"n={n} r={r} scalar",
        passed=value == ZERO and total == ZERO,
        detail="0 = 0"))

    ok, witness = True, ""
    for t in range(trials):
        state = random_pointwise_state(n, r, rng)
        functional = bracket_pairing(
            twisted_curvature_wedge(state), lam, state.xi)
        regrouped = half_pairing(regrouped_commutator(state), state.xi)
        total, _ = twisted_expansion(state)
        if not (functional == regrouped == total):
            ok, witness = False, f"trial {t}"
            break
    report.add(Row(
        name="functional, regrouped, and summed routes agree",
        anchor=anchor, arena=f"n={n} r={r} scalar",
        passed=ok,
        detail=witness or
        f"{trials} draws; blocks full-range/trace/index-shifted/mixed-shift"))

    ok, witness = True, ""
    for t in range(max(trials // 4, 3)):
        xi = BundleForm(tuple(_full_q_form(n, rng) for _ in range(r)))
        state = PointwiseState(n, r, random_curvature(n, r, rng), xi)
        total, blocks = twisted_expansion(state)
        if blocks["full-range"] + blocks["trace"] != ZERO:
            ok, witness = False, f"trial {t}: first two blocks survive"
            break
        if blocks["mixed-shift"] != ZERO:
            ok, witness = False, f"trial {t}: mixed block survives"
            break
        if total != blocks["index-shifted"]:
            ok, witness = False, f"trial {t}: total is not the shifted block"
            break
    report.add(Row(
        name="saturated antiholomorphic degree collapses the blocks",
        anchor="prop-4.5 / full-Q block cancellation",
        arena=f"n={n} r={r} scalar",
        passed=ok,
        detail=witness or "full-range cancels trace; mixed block vanishes"))

    m = 2 * n
    spectra = tuple(tuple(Fraction(rng.randint(-3, 5), rng.choice((1, 2)))
                          for _ in range(m)) for _ in range(r))
    xi = BundleForm(tuple(_full_q_form(n, rng) for _ in range(r)))
    state = diagonal_pointwise_state(n, r, spectra, xi)
    value = bracket_pairing(twisted_curvature_wedge(state), lam, state.xi)
    expected = ZERO
    norm_sq = ZERO
    for al in range(r):
        trace = Scalar(sum(spectra[al]))
        comp_norm = pointwise_inner(xi.components[al], xi.components[al])
        expected = expected + trace * comp_norm
        norm_sq = norm_sq + comp_norm
    lam_min = min(v for row in spectra for v in row)
    slack = value - Scalar(lam_min) * norm_sq
    report.add(Row(
        name="diagonal tensors reduce to the eigenvalue trace",
        anchor="prop-4.5 / diagonal eigenvalue collapse (kkk)",
        arena=f"n={n} r={r} scalar",
        passed=(value == expected and slack.is_real()
                and slack.re >= 0),
        detail="sum_j lambda_j per frame slot; bounded below by the "
               "least eigenvalue"))

    sym = symbolic_pointwise_state(1, min(r, 2), rng)
    functional = bracket_pairing(
        twisted_curvature_wedge(sym), suite_lambda("J", 1), sym.xi)
    regrouped = half_pairing(regrouped_commutator(sym), sym.xi)
    total, _ = twisted_expansion(sym)
    report.add(Row(
        name="independent-mode symbolic entries",
        anchor=anchor, arena="n=1 torus modes",
        passed=functional == regrouped == total,
        detail="three-way equality with indeterminate-like entries"))
    report.elapsed = time.perf_counter() - t0
    return report
