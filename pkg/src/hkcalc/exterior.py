"""Pointwise exterior algebra of the flat model C^{2n}.

Monomials theta^A wedge thetabar^B are keyed by a pair of bitmasks over the
2n coframe indices; coefficients live in any of the exact rings of
`scalars`.  The module provides wedge and the normalized contractions, the
three complex-structure actions and their inverses, the Hodge star, the
orthogonal pointwise inner product with monomial norms 2^{|A|+|B|}, and the
Lefschetz pairs for the distinguished 2-forms.

Composition convention: `AlgebraOp` words compose right-to-left, standard
function composition.  Basis monomial norms make each contraction i_k the
exact inner-product adjoint of the wedge e_k, with i_k e_k + e_k i_k = 2.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable, Iterable

from .report import Report, Row
from .scalars import Scalar, VariantMismatch

ONE = Scalar(1)
ZERO = Scalar(0)
IUNIT = Scalar(0, 1)


class IndexSet:
    """Bitmask utilities for coframe index sets; bit j-1 encodes index j."""

    @staticmethod
    def of(indices: Iterable[int]) -> int:
        mask = 0
        for k in indices:
            bit = 1 << (k - 1)
            if mask & bit:
                raise ValueError(f"repeated index {k}")
            mask |= bit
        return mask

    @staticmethod
    def indices(mask: int) -> tuple[int, ...]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length())
            mask ^= low
        return tuple(out)

    @staticmethod
    def size(mask: int) -> int:
        return mask.bit_count()

    @staticmethod
    def complement(mask: int, n2: int) -> int:
        return ((1 << n2) - 1) ^ mask

    @staticmethod
    def merge_sign(first: int, second: int) -> int:
        """Parity sign of sorting the concatenation (first, second)."""
        s = 0
        m = second
        while m:
            low = m & -m
            pos = low.bit_length() - 1
            s += (first >> (pos + 1)).bit_count()
            m ^= low
        return -1 if s & 1 else 1

    @staticmethod
    def sign(mask: int, n2: int) -> int:
        """sign(A) with theta^A wedge theta^Ahat = sign(A) theta^{1..2n}."""
        return IndexSet.merge_sign(mask, IndexSet.complement(mask, n2))


def _below(mask: int, k: int) -> int:
    """Count of set bits strictly below 1-based index k."""
    return (mask & ((1 << (k - 1)) - 1)).bit_count()


class Form:
    """Sparse exterior form: {(A, B) bitmask pair -> coefficient}.

    Mixed bidegrees are allowed; coefficients may be Scalar, Jet or
    FourierPoly (Scalar mixes freely with either ring).
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        if n < 1:
            raise ValueError("n must be positive")
        clean = {}
        if coeffs:
            limit = 1 << (2 * n)
            for (A, B), c in coeffs.items():
                if not (0 <= A < limit and 0 <= B < limit):
                    raise ValueError(f"mask pair ({A}, {B}) out of range for n={n}")
                if isinstance(c, (int, Fraction)):
                    c = Scalar(c)
                if not c.is_zero():
                    clean[(A, B)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    # constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "Form":
        return Form(n)

    @staticmethod
    def monomial(n: int, A: int, B: int, coeff=ONE) -> "Form":
        return Form(n, {(A, B): coeff})

    @staticmethod
    def scalar(n: int, coeff) -> "Form":
        return Form(n, {(0, 0): coeff})

    @staticmethod
    def theta(n: int, k: int) -> "Form":
        return Form(n, {(IndexSet.of([k]), 0): ONE})

    @staticmethod
    def theta_bar(n: int, k: int) -> "Form":
        return Form(n, {(0, IndexSet.of([k])): ONE})

    # linear structure --------------------------------------------------

    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.n != self.n:
            raise VariantMismatch("forms live on different models")

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for key, c in other.coeffs.items():
            if key in coeffs:
                coeffs[key] = coeffs[key] + c
            else:
                coeffs[key] = c
        return Form(self.n, coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Form(self.n, {k: -c for k, c in self.coeffs.items()})

    def scalar_mul(self, s) -> "Form":
        s = Scalar.of(s) if isinstance(s, (int, Fraction)) else s
        if isinstance(s, Scalar):
            if s.is_zero():
                return Form(self.n)
            return Form(self.n, {k: c.scalar_mul(s) if not isinstance(c, Scalar)
                                 else c * s
                                 for k, c in self.coeffs.items()})
        # ring-element multiplier (Jet or FourierPoly)
        return Form(self.n, {k: c * s for k, c in self.coeffs.items()})

    def conjugate(self) -> "Form":
        """Complex conjugate: swaps the two index blocks with the parity sign."""
        coeffs = {}
        for (A, B), c in self.coeffs.items():
            sign = -1 if (IndexSet.size(A) * IndexSet.size(B)) & 1 else 1
            cc = c.conjugate()
            if sign < 0:
                cc = cc.scalar_mul(Scalar(-1)) if not isinstance(cc, Scalar) else -cc
            coeffs[(B, A)] = cc
        return Form(self.n, coeffs)

    # structure queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def bidegree_component(self, p: int, q: int) -> "Form":
        return Form(self.n, {
            (A, B): c for (A, B), c in self.coeffs.items()
            if IndexSet.size(A) == p and IndexSet.size(B) == q})

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(IndexSet.size(A), IndexSet.size(B)) for A, B in self.coeffs}

    def total_degree_component(self, d: int) -> "Form":
        return Form(self.n, {
            (A, B): c for (A, B), c in self.coeffs.items()
            if IndexSet.size(A) + IndexSet.size(B) == d})

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0])

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        raise TypeError("Form is not hashable")

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for (A, B), c in self.sorted_items():
            mono = monomial_name(A, B)
            if mono == "1":
                bits.append(f"({c})")
            else:
                bits.append(f"({c})*{mono}")
        return " + ".join(bits)

    def __repr__(self):
        return f"Form(n={self.n}, {str(self)})"


def monomial_name(A: int, B: int) -> str:
    parts = [f"t{k}" for k in IndexSet.indices(A)]
    parts += [f"tb{k}" for k in IndexSet.indices(B)]
    return "^".join(parts) if parts else "1"


def basis_monomials(n: int):
    """All (A, B) mask pairs in canonical order; 4^{2n} of them."""
    limit = 1 << (2 * n)
    for A in range(limit):
        for B in range(limit):
            yield (A, B)


# primitive operator actions -------------------------------------------


def wedge(alpha: Form, beta: Form) -> Form:
    """Exterior product with canonical-order sign bookkeeping."""
    alpha._check(beta)
    coeffs = {}
    for (A1, B1), c1 in alpha.coeffs.items():
        for (A2, B2), c2 in beta.coeffs.items():
            if (A1 & A2) or (B1 & B2):
                continue
            sign = IndexSet.merge_sign(A1, A2) * IndexSet.merge_sign(B1, B2)
            if IndexSet.size(A2) * IndexSet.size(B1) & 1:
                sign = -sign
            c = c1 * c2
            if sign < 0:
                c = -c
            key = (A1 | A2, B1 | B2)
            if key in coeffs:
                coeffs[key] = coeffs[key] + c
            else:
                coeffs[key] = c
    return Form(alpha.n, coeffs)


def _apply_wedge_gen(form: Form, k: int, bar: bool) -> Form:
    bit = 1 << (k - 1)
    coeffs = {}
    for (A, B), c in form.coeffs.items():
        if bar:
            if B & bit:
                continue
            sign = -1 if (IndexSet.size(A) + _below(B, k)) & 1 else 1
            key = (A, B | bit)
        else:
            if A & bit:
                continue
            sign = -1 if _below(A, k) & 1 else 1
            key = (A | bit, B)
        coeffs[key] = -c if sign < 0 else c
    return Form(form.n, coeffs)


def _apply_contract_gen(form: Form, k: int, bar: bool) -> Form:
    bit = 1 << (k - 1)
    coeffs = {}
    for (A, B), c in form.coeffs.items():
        if bar:
            if not (B & bit):
                continue
            sign = -1 if (IndexSet.size(A) + _below(B, k)) & 1 else 1
            key = (A, B ^ bit)
        else:
            if not (A & bit):
                continue
            sign = -1 if _below(A, k) & 1 else 1
            key = (A ^ bit, B)
        c2 = c.scalar_mul(Scalar(2 * sign)) if not isinstance(c, Scalar) \
            else c * Scalar(2 * sign)
        coeffs[key] = c2
    return Form(form.n, coeffs)


def contract(k: int, bar: bool, xi: Form) -> Form:
    """The contraction i_k (bar=False) or ibar_k (bar=True).

    Removes the matching 1-coframe with the move-to-front sign and the
    normalization factor 2 forced by e_k i_k + i_k e_k = 2.
    """
    if not 1 <= k <= 2 * xi.n:
        raise ValueError(f"contraction index {k} out of range")
    return _apply_contract_gen(xi, k, bar)


# complex-structure substitutions --------------------------------------

# Each table maps (bar, j_class) to the image of one coframe; j ranges over
# 1..n with partner j+n.  Entries: (factor, bar', index-map).  J and K are
# real operators extended C-linearly, so coefficients are never conjugated.

def _structure_map(name: str, n: int):
    i = IUNIT
    mi = Scalar(0, -1)

    def low(j):  # 1 <= j <= n
        return j

    def high(j):
        return j + n

    if name == "I":
        def act(bar, k):
            return (mi if bar else i), bar, k
    elif name == "Iinv":
        def act(bar, k):
            return (i if bar else mi), bar, k
    elif name == "J":
        def act(bar, k):
            j = k if k <= n else k - n
            hi = k > n
            if not bar:
                return (ONE, True, high(j)) if not hi else (Scalar(-1), True, low(j))
            return (ONE, False, high(j)) if not hi else (Scalar(-1), False, low(j))
    elif name == "Jinv":
        def act(bar, k):
            j = k if k <= n else k - n
            hi = k > n
            if not bar:
                return (Scalar(-1), True, high(j)) if not hi else (ONE, True, low(j))
            return (Scalar(-1), False, high(j)) if not hi else (ONE, False, low(j))
    elif name == "K":
        def act(bar, k):
            j = k if k <= n else k - n
            hi = k > n
            if not bar:
                return (mi, True, high(j)) if not hi else (i, True, low(j))
            return (i, False, high(j)) if not hi else (mi, False, low(j))
    elif name == "Kinv":
        def act(bar, k):
            j = k if k <= n else k - n
            hi = k > n
            if not bar:
                return (i, True, high(j)) if not hi else (mi, True, low(j))
            return (mi, False, high(j)) if not hi else (i, False, low(j))
    else:
        raise ValueError(f"unknown structure {name!r}")
    return act


def apply_complex_structure(name: str, xi: Form) -> Form:
    """Apply I, J, K (or Iinv/Jinv/Kinv) multiplicatively to a form.

    Coefficients transform C-linearly; only the coframes are substituted.
    """
    act = _structure_map(name, xi.n)
    out = Form(xi.n)
    coeffs = {}
    for (A, B), c in xi.coeffs.items():
        seq = [(False, k) for k in IndexSet.indices(A)]
        seq += [(True, k) for k in IndexSet.indices(B)]
        factor = ONE
        mapped = []
        for bar, k in seq:
            f, nbar, nk = act(bar, k)
            factor = factor * f
            mapped.append((nbar, nk))
        # sort mapped coframes into canonical order, tracking parity
        sign, key = _canonicalize(mapped)
        if sign == 0:
            continue
        total = factor * Scalar(sign)
        c2 = c.scalar_mul(total) if not isinstance(c, Scalar) else c * total
        if key in coeffs:
            coeffs[key] = coeffs[key] + c2
        else:
            coeffs[key] = c2
    return Form(xi.n, coeffs)


def _canonicalize(seq: list[tuple[bool, int]]) -> tuple[int, tuple[int, int]]:
    """Sort 1-coframes to canonical order; returns (parity sign or 0, (A, B))."""
    keys = [(bar, k) for bar, k in seq]
    if len(set(keys)) != len(keys):
        return 0, (0, 0)
    inversions = 0
    for idx in range(len(keys)):
        for jdx in range(idx + 1, len(keys)):
            if keys[idx] > keys[jdx]:
                inversions += 1
    A = 0
    B = 0
    for bar, k in keys:
        if bar:
            B |= 1 << (k - 1)
        else:
            A |= 1 << (k - 1)
    return (-1 if inversions & 1 else 1), (A, B)


# AlgebraOp -------------------------------------------------------------

_GEN_KINDS = {"e", "ebar", "i", "ibar", "I", "J", "K", "Iinv", "Jinv", "Kinv"}
_ADJOINT_GEN = {"e": "i", "i": "e", "ebar": "ibar", "ibar": "ebar",
                "I": "Iinv", "Iinv": "I", "J": "Jinv", "Jinv": "J",
                "K": "Kinv", "Kinv": "K"}
_CONJ_GEN = {"e": "ebar", "ebar": "e", "i": "ibar", "ibar": "i"}


class AlgebraOp:
    """Linear combination of composable generator words.

    A term is (Scalar coefficient, word); a word is a tuple of generators
    (kind, index) applied right-to-left.  Generators: wedges e/ebar,
    contractions i/ibar, and the complex structures with inverses.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = []
        for coeff, word in (terms or []):
            coeff = Scalar.of(coeff)
            if coeff.is_zero():
                continue
            word = tuple(word)
            for kind, k in word:
                if kind not in _GEN_KINDS:
                    raise ValueError(f"unknown generator {kind!r}")
            clean.append((coeff, word))
        object.__setattr__(self, "terms", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraOp is immutable")

    def __eq__(self, other):
        # structural equality on the term list; use equals() for the
        # action-level comparison that ignores word rewriting
        if not isinstance(other, AlgebraOp):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    # constructors ------------------------------------------------------

    @staticmethod
    def identity() -> "AlgebraOp":
        return AlgebraOp([(ONE, ())])

    @staticmethod
    def zero() -> "AlgebraOp":
        return AlgebraOp([])

    @staticmethod
    def gen(kind: str, k: int = 0, coeff=ONE) -> "AlgebraOp":
        return AlgebraOp([(Scalar.of(coeff), ((kind, k),))])

    @staticmethod
    def wedge_by(form: Form) -> "AlgebraOp":
        """Left wedge by a constant-coefficient form, as a word sum."""
        terms = []
        for (A, B), c in form.sorted_items():
            if not isinstance(c, Scalar):
                raise TypeError("wedge_by needs Scalar coefficients")
            word = tuple(("e", k) for k in IndexSet.indices(A))
            word += tuple(("ebar", k) for k in IndexSet.indices(B))
            terms.append((c, word))
        return AlgebraOp(terms)

    # algebra -----------------------------------------------------------

    def __add__(self, other):
        return AlgebraOp(list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraOp([(-c, w) for c, w in self.terms])

    def scalar_mul(self, s) -> "AlgebraOp":
        s = Scalar.of(s)
        return AlgebraOp([(c * s, w) for c, w in self.terms])

    def __matmul__(self, other):
        """Composition self o other (other applied first)."""
        terms = []
        for c1, w1 in self.terms:
            for c2, w2 in other.terms:
                terms.append((c1 * c2, w1 + w2))
        return AlgebraOp(terms)

    def adjoint(self) -> "AlgebraOp":
        """Exact pointwise_inner adjoint: reverse words, swap e<->i."""
        terms = []
        for c, w in self.terms:
            word = tuple((_ADJOINT_GEN[kind], k) for kind, k in reversed(w))
            terms.append((c.conjugate(), word))
        return AlgebraOp(terms)

    def conjugate(self) -> "AlgebraOp":
        """conj o self o conj: swaps barred and unbarred generators."""
        terms = []
        for c, w in self.terms:
            word = tuple((_CONJ_GEN.get(kind, kind), k) for kind, k in w)
            terms.append((c.conjugate(), word))
        return AlgebraOp(terms)

    # action ------------------------------------------------------------

    def apply(self, xi: Form) -> Form:
        out = Form(xi.n)
        for coeff, word in self.terms:
            cur = xi
            for kind, k in reversed(word):
                cur = _apply_gen(kind, k, cur)
                if cur.is_zero():
                    break
            if not cur.is_zero():
                out = out + cur.scalar_mul(coeff)
        return out

    def matrix(self, n: int) -> dict:
        """Sparse matrix over the canonical monomial basis: entries
        {(row_key, col_key): Scalar} with keys (A, B)."""
        entries = {}
        for col in basis_monomials(n):
            image = self.apply(Form.monomial(n, col[0], col[1]))
            for row, c in image.coeffs.items():
                entries[(row, col)] = entries.get((row, col), ZERO) + c
        return {k: v for k, v in entries.items() if not v.is_zero()}

    def equals(self, other: "AlgebraOp", n: int) -> bool:
        return self.matrix(n) == other.matrix(n)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for c, w in self.terms:
            word = " ".join(f"{kind}{k if k else ''}" for kind, k in w) or "id"
            bits.append(f"({c})*{word}")
        return " + ".join(bits)

    __repr__ = __str__


def _apply_gen(kind: str, k: int, form: Form) -> Form:
    if kind == "e":
        return _apply_wedge_gen(form, k, False)
    if kind == "ebar":
        return _apply_wedge_gen(form, k, True)
    if kind == "i":
        return _apply_contract_gen(form, k, False)
    if kind == "ibar":
        return _apply_contract_gen(form, k, True)
    return apply_complex_structure(kind, form)


# distinguished forms ---------------------------------------------------


def omega_I(n: int) -> Form:
    half_i = Scalar(0, Fraction(1, 2))
    coeffs = {}
    for a in range(1, 2 * n + 1):
        bit = 1 << (a - 1)
        coeffs[(bit, bit)] = half_i
    return Form(n, coeffs)


def omega_J(n: int) -> Form:
    half = Scalar(Fraction(1, 2))
    coeffs = {}
    for k in range(1, n + 1):
        pair = (1 << (k - 1)) | (1 << (k + n - 1))
        coeffs[(pair, 0)] = half
        coeffs[(0, pair)] = half
    return Form(n, coeffs)


def omega_K(n: int) -> Form:
    half_i = Scalar(0, Fraction(1, 2))
    coeffs = {}
    for k in range(1, n + 1):
        pair = (1 << (k - 1)) | (1 << (k + n - 1))
        coeffs[(0, pair)] = half_i
        coeffs[(pair, 0)] = -half_i
    return Form(n, coeffs)


def phi_form(n: int) -> Form:
    """The holomorphic symplectic form omega_J + i omega_K = sum theta^k theta^{k+n}."""
    coeffs = {}
    for k in range(1, n + 1):
        pair = (1 << (k - 1)) | (1 << (k + n - 1))
        coeffs[(pair, 0)] = ONE
    return Form(n, coeffs)


def volume_form(n: int) -> Form:
    """vol = omega_I^{2n} / (2n)!."""
    power = Form.scalar(n, ONE)
    for _ in range(2 * n):
        power = wedge(power, omega_I(n))
    fact = 1
    for j in range(2, 2 * n + 1):
        fact *= j
    return power.scalar_mul(Scalar(Fraction(1, fact)))


# metric structure ------------------------------------------------------


def hodge_star(xi: Form) -> Form:
    """Conjugate-linear Hodge star with xi wedge star(eta) = <xi, eta> vol."""
    n = xi.n
    n2 = 2 * n
    coeffs = {}
    for (A, B), c in xi.coeffs.items():
        p = IndexSet.size(A)
        q = IndexSet.size(B)
        Ahat = IndexSet.complement(A, n2)
        Bhat = IndexSet.complement(B, n2)
        eps = IndexSet.sign(A, n2) * IndexSet.sign(B, n2)
        if (n * (n2 - 1) + (n2 - p) * q) & 1:
            eps = -eps
        if n & 1:
            eps = -eps
        factor = Scalar(Fraction(2 ** (p + q), 2 ** n2) * eps)
        cc = c.conjugate()
        c2 = cc.scalar_mul(factor) if not isinstance(cc, Scalar) else cc * factor
        key = (Ahat, Bhat)
        if key in coeffs:
            coeffs[key] = coeffs[key] + c2
        else:
            coeffs[key] = c2
    return Form(n, coeffs)


def _zero_coeff_like(*forms: Form):
    for f in forms:
        for c in f.coeffs.values():
            return c.zero_like()
    return ZERO


def pointwise_inner(xi: Form, eta: Form):
    """Hermitian inner product; monomials are orthogonal with norm^2 = 2^{|A|+|B|}."""
    xi._check(eta)
    total = _zero_coeff_like(xi, eta)
    for key, c in xi.coeffs.items():
        d = eta.coeffs.get(key)
        if d is None:
            continue
        weight = Scalar(2 ** (IndexSet.size(key[0]) + IndexSet.size(key[1])))
        term = c * d.conjugate()
        term = term.scalar_mul(weight) if not isinstance(term, Scalar) \
            else term * weight
        total = total + term
    return total


def lefschetz(which: str, n: int) -> tuple[AlgebraOp, AlgebraOp]:
    """Lefschetz pair (L, Lambda) for omega_I, omega_J, omega_K or phi.

    L is wedge-by the distinguished form.  For the omegas (real forms),
    Lambda is the exact pointwise_inner adjoint of L.  For phi, Lambda_phi
    is the adjoint of wedge-by-conj(phi): phi is complex, and the
    conjugate wedge is the partner that the phi-twisted identities pair
    with; it equals sum_k ibar_{k+n} o ibar_k.
    """
    if which == "I":
        form = omega_I(n)
    elif which == "J":
        form = omega_J(n)
    elif which == "K":
        form = omega_K(n)
    elif which == "phi":
        form = phi_form(n)
    else:
        raise ValueError(f"unknown Lefschetz label {which!r}")
    L = AlgebraOp.wedge_by(form)
    if which == "phi":
        Lam = AlgebraOp.wedge_by(form.conjugate()).adjoint()
    else:
        Lam = L.adjoint()
    return L, Lam


def _juxtapose(flip: bool, *gens) -> AlgebraOp:
    """Decode a left-to-right generator juxtaposition into a composition."""
    op = None
    for kind, k in reversed(gens):
        g = AlgebraOp.gen(kind, k)
        if flip and kind in ("i", "ibar"):
            g = g.scalar_mul(-ONE)
        op = g if op is None else op @ g
    return op


def verify_algebra(n: int, inject_sign_error: bool = False) -> Report:
    """Canonical anticommutators and the complex-structure conjugations.

    Every row is a complete operator-matrix identity over the 4^{2n}
    monomial basis.  The sign-injection flag flips every contraction
    generator, a negative control that must break exactly the
    same-index pairing row: the zero anticommutators and the structure
    conjugations are linear in one contraction and survive the flip.
    """
    t0 = time.perf_counter()
    report = Report("algebra", meta={"n": n,
                                     "inject_sign_error": inject_sign_error})
    m = 2 * n
    arena = f"n={n} matrices"

    def juxt(*gens):
        return _juxtapose(inject_sign_error, *gens)

    def vanishes(pairs):
        return all((juxt(*a) + juxt(*b)).matrix(n) == {} for a, b in pairs)

    mixed = [((("e", k), ("ibar", l)), (("ibar", l), ("e", k)))
             for k in range(1, m + 1) for l in range(1, m + 1)]
    mixed += [((("ebar", k), ("i", l)), (("i", l), ("ebar", k)))
              for k in range(1, m + 1) for l in range(1, m + 1)]
    report.add(Row(
        name="mixed-flavor pairs anticommute to zero",
        anchor="eq-kd0 / e_k ī_l + ī_l e_k = 0",
        arena=arena, passed=vanishes(mixed)))

    distinct = [((("e", k), ("i", l)), (("i", l), ("e", k)))
                for k in range(1, m + 1) for l in range(1, m + 1) if k != l]
    distinct += [((("ebar", k), ("ibar", l)), (("ibar", l), ("ebar", k)))
                 for k in range(1, m + 1) for l in range(1, m + 1) if k != l]
    report.add(Row(
        name="distinct-index pairs anticommute to zero",
        anchor="eq-kd2 / e_k i_l + i_l e_k = 0 (k ≠ l)",
        arena=arena, passed=vanishes(distinct)))

    two = AlgebraOp.identity().scalar_mul(Scalar(2))
    paired_ok = all(
        (juxt(("e", k), ("i", k)) + juxt(("i", k), ("e", k))).equals(two, n)
        and (juxt(("ebar", k), ("ibar", k))
             + juxt(("ibar", k), ("ebar", k))).equals(two, n)
        for k in range(1, m + 1))
    report.add(Row(
        name="same-index pairing normalizes to two",
        anchor="eq-kd3 / e_k i_k + i_k e_k = 2",
        arena=arena, passed=paired_ok))

    i_ok = all(
        juxt(("i", k), ("I", 0)).equals(
            juxt(("I", 0), ("i", k)).scalar_mul(-IUNIT), n)
        and juxt(("ibar", k), ("I", 0)).equals(
            juxt(("I", 0), ("ibar", k)).scalar_mul(IUNIT), n)
        for k in range(1, m + 1))
    report.add(Row(
        name="contractions conjugate through I",
        anchor="prop-3.1 / i_k I = −iI i_k, ī_k I = iI ī_k",
        arena=arena, passed=i_ok))

    j_ok = all(
        juxt(("i", k), ("J", 0)).equals(juxt(("J", 0), ("ibar", k + n)), n)
        and juxt(("i", k + n), ("J", 0)).equals(
            juxt(("J", 0), ("ibar", k)).scalar_mul(-ONE), n)
        for k in range(1, n + 1))
    report.add(Row(
        name="contractions conjugate through J",
        anchor="prop-3.1 / i_k J = J ī_{k+n}, i_{k+n} J = −J ī_k",
        arena=arena, passed=j_ok))

    k_ok = all(
        juxt(("i", k), ("K", 0)).equals(
            juxt(("K", 0), ("ibar", k + n)).scalar_mul(IUNIT), n)
        and juxt(("i", k + n), ("K", 0)).equals(
            juxt(("K", 0), ("ibar", k)).scalar_mul(-IUNIT), n)
        for k in range(1, n + 1))
    report.add(Row(
        name="contractions conjugate through K",
        anchor="prop-3.1 / i_k K = iK ī_{k+n}, i_{k+n} K = −iK ī_k",
        arena=arena, passed=k_ok))

    report.elapsed = time.perf_counter() - t0
    return report
