"""Positivity certificates for the twisted curvature commutator.

The machinery here turns curvature data into exact decisions.  A
curvature tensor can be queried for (k,s)-positivity in three modes:
line bundles reduce to a rank test on the 2n x 2n Chern form,
Nakano-type positivity is decided exactly on the rn x rn block matrix,
and intermediate Griffiths-style positivity is sampled on random
tuples because no finite test settles it.  On top of the queries sit
per-fiber Hermitian matrices for the commutator of the twisted
curvature wedge with its Lefschetz adjoint, restricted to forms of a
fixed bidegree, plus certificates that sweep a schedule of metric
rescalings kappa and record which fibers become positive definite.

Degree bookkeeping: fiber degrees are quoted as (p, q) where p counts
the antiholomorphic slots and q the holomorphic ones.  The commutator
words only touch antiholomorphic indices, so every positivity
statement is driven by p; q tags a spectator factor of the fiber.
Fiber matrices are Gram matrices in the same half-folded pairing the
expansion blocks use; the raw operator coefficients are twice these
entries, and the half is what lands diagonal tensors exactly on d_B.

For a diagonal curvature with ratios rho_1..rho_{2n} the fiber matrix
is diagonal with entries

    d_B = sum_{j in B} (rho_j + rho_{j'}) - sum_j rho_j,

where B is the antiholomorphic index set and j' is the partner index
j +- n.  Re-diagonalizing a dense tensor against a rescaled metric
loses track of how the partner involution acts on the new eigenbasis,
so certificates built on that route only ever use the pairing-free
lower bound 2(rho_1 + ... + rho_p) - sum rho (ratios sorted
ascending), which under-estimates every d_B regardless of pairing.

The module also houses the normal-coordinate normalization of metric
jets: a quadratic coordinate change removes the degree-1 terms of a
closed Hermitian metric jet that starts at +-delta.  The returned jet
is certified through degree 1 only; quadratic terms of the pullback
depend on data the change does not control and are not reported.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Optional, Sequence

from hkcalc.bundle import BundleForm
from hkcalc.curvature_algebra import (
    CurvatureTensor, PointwiseState, regrouped_commutator,
)
from hkcalc.exterior import Form
from hkcalc.linalg import (
    inertia, min_eigenvalue_interval, pencil_eigenvalue_interval,
    pencil_rational_eigenvalues,
)
from hkcalc.report import Report, Row
from hkcalc.scalars import Jet, Scalar

ONE = Scalar(1)
ZERO = Scalar(0)

MODES = ("exact-line", "nakano-exact", "griffiths-sampled")

# Tuple entries name the space the s-tuple is drawn from; the form
# then lives on s copies of the other space.
ORIENTATIONS = ("bundle-tuples", "tangent-tuples")

DEFAULT_KAPPA_SCHEDULE = tuple(Fraction(1, 2 ** t) for t in range(21))

EIG_TOL = Fraction(1, 10 ** 9)


class NotKahlerJet(ValueError):
    """Metric jet violates a reality or closedness symmetry."""


class PositivityPreconditionFailed(ValueError):
    """Claimed positivity hypothesis fails on the supplied curvature."""


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


# line bundles ----------------------------------------------------------


@dataclass(frozen=True)
class LinePositivity:
    """Outcome of the rank test on a line-bundle curvature form."""

    k: int
    psd: bool
    positive: int
    zero: int
    negative: int

    @property
    def passed(self) -> bool:
        return self.psd and self.zero <= self.k

    @property
    def least_k(self) -> Optional[int]:
        """Smallest budget the form satisfies, None when not semipositive."""
        return self.zero if self.psd else None

    @property
    def verdict(self) -> str:
        if not self.psd:
            return "not-semipositive"
        return f"{self.zero}-positive" if self.passed else \
            f"kernel {self.zero} exceeds budget {self.k}"


def chern_form_matrix(R: CurvatureTensor):
    """The 2n x 2n Hermitian coefficient matrix of a rank-1 curvature."""
    if R.r != 1:
        raise ValueError("line-bundle test needs rank 1")
    m = 2 * R.n
    return tuple(
        tuple(R.entry(0, 0, p, q) for q in range(1, m + 1))
        for p in range(1, m + 1))


def check_k_positive_line(R: CurvatureTensor, k: int) -> LinePositivity:
    """Decide k-positivity of a line bundle by exact congruence.

    The curvature form must be semipositive with kernel dimension at
    most k, equivalently with at least 2n - k positive eigenvalues.
    """
    if k < 0:
        raise ValueError("kernel budget k must be nonnegative")
    sig = inertia(chern_form_matrix(R))
    return LinePositivity(k, sig.negative == 0, sig.positive, sig.zero,
                          sig.negative)


# (k,s)-positivity ------------------------------------------------------


@dataclass(frozen=True)
class PositivityQuery:
    """A (k,s)-positivity question about one curvature tensor.

    The orientation names which space the s-tuples come from, since
    the definition admits both role assignments.
    """

    k: int
    s: int
    R: CurvatureTensor
    mode: str
    orientation: str = "bundle-tuples"

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("kernel budget k must be nonnegative")
        if not 1 <= self.s <= self.R.r:
            raise ValueError(f"tuple size s must lie in 1..{self.R.r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.mode == "exact-line" and self.R.r != 1:
            raise ValueError("exact-line mode needs rank 1")
        if self.mode == "nakano-exact" \
                and self.s < min(2 * self.R.n, self.R.r):
            raise ValueError("nakano-exact mode needs s >= min(2n, r)")


@dataclass(frozen=True)
class KsResult:
    passed: bool
    label: str
    mode: str
    detail: str = ""


def nakano_matrix(R: CurvatureTensor):
    """The rn x rn block matrix indexed by tangent-frame pairs (j, a)."""
    m, r = 2 * R.n, R.r
    pairs = [(j, a) for j in range(1, m + 1) for a in range(r)]
    return tuple(
        tuple(R.entry(a, b, j, kk) for kk, b in pairs) for j, a in pairs)


def _random_vector(rng: random.Random, dim: int) -> tuple:
    return tuple(
        Scalar(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
        for _ in range(dim))


def _tuple_rank(vectors) -> int:
    rows = [list(v) for v in vectors]
    rank, cols = 0, len(rows[0])
    for col in range(cols):
        row = next((i for i in range(rank, len(rows))
                    if not rows[i][col].is_zero()), None)
        if row is None:
            continue
        rows[rank], rows[row] = rows[row], rows[rank]
        inv = rows[rank][col].inverse()
        for i in range(len(rows)):
            if i == rank or rows[i][col].is_zero():
                continue
            factor = rows[i][col] * inv
            rows[i] = [rows[i][j] - factor * rows[rank][j]
                       for j in range(cols)]
        rank += 1
    return rank


def _sample_tuple(rng: random.Random, dim: int, s: int) -> tuple:
    # Dependent tuples force a structural kernel the definition does
    # not intend, so redraw until the tuple has full rank.
    while True:
        vectors = tuple(_random_vector(rng, dim) for _ in range(s))
        if _tuple_rank(vectors) == s:
            return vectors


def tuple_form(R: CurvatureTensor, vectors, orientation: str):
    """Hermitian form on s copies of the complementary space."""
    m, r, s = 2 * R.n, R.r, len(vectors)
    if orientation == "bundle-tuples":
        slots = [(j, p) for j in range(s) for p in range(1, m + 1)]

        def entry(j, p, kk, q):
            total = ZERO
            for a, b in product(range(r), repeat=2):
                total = total + R.entry(a, b, p, q) \
                    * vectors[j][a] * vectors[kk][b].conjugate()
            return total
    elif orientation == "tangent-tuples":
        slots = [(j, a) for j in range(s) for a in range(r)]

        def entry(j, a, kk, b):
            total = ZERO
            for p, q in product(range(1, m + 1), repeat=2):
                total = total + R.entry(a, b, p, q) \
                    * vectors[j][p - 1] * vectors[kk][q - 1].conjugate()
            return total
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    return tuple(
        tuple(entry(j, x, kk, y) for kk, y in slots) for j, x in slots)


def check_ks_positive(query: PositivityQuery, samples: int = 20,
                      seed: int = 0) -> KsResult:
    """Decide or sample the (k,s)-positivity question.

    Exact modes return "certified" or "refuted"; the sampled mode can
    only report the absence of counterexamples among random tuples.
    """
    if query.mode == "exact-line":
        line = check_k_positive_line(query.R, query.k)
        return KsResult(line.passed,
                        "certified" if line.passed else "refuted",
                        query.mode, line.verdict)
    if query.mode == "nakano-exact":
        sig = inertia(nakano_matrix(query.R))
        passed = sig.negative == 0 and sig.zero <= query.k
        detail = f"inertia (+{sig.positive}, -{sig.negative}, 0:{sig.zero})"
        return KsResult(passed, "certified" if passed else "refuted",
                        query.mode, detail)
    rng = random.Random(seed)
    dim = query.R.r if query.orientation == "bundle-tuples" else 2 * query.R.n
    for trial in range(samples):
        vectors = _sample_tuple(rng, dim, query.s)
        sig = inertia(tuple_form(query.R, vectors, query.orientation))
        if sig.negative > 0 or sig.zero > query.k:
            return KsResult(False, f"counterexample-found(trial {trial})",
                            query.mode,
                            f"inertia (+{sig.positive}, -{sig.negative}, "
                            f"0:{sig.zero})")
    return KsResult(True, f"no-counterexample-found({samples})", query.mode)


def griffiths_witness(epsilon=Fraction(1, 2)) -> CurvatureTensor:
    """Rank-2 curvature at n=1 that is Griffiths- but not Nakano-positive.

    The block matrix is (1 - eps) I plus the swap operator; tuples of
    length one always see the positive form (1 - eps)|v|^2 |w|^2 +
    |<v, w>|^2 while the full 4x4 matrix has the eigenvalue -eps on
    the antisymmetric line.
    """
    eps = _frac(epsilon)
    if not 0 < eps < 1:
        raise ValueError("witness needs 0 < epsilon < 1")
    entries = [[[[ZERO for _ in range(2)] for _ in range(2)]
                for _ in range(2)] for _ in range(2)]
    for a, b, j, kk in product(range(2), range(2), (1, 2), (1, 2)):
        value = Fraction(0)
        if j == kk and a == b:
            value += 1 - eps
        if j == b + 1 and kk == a + 1:
            value += 1
        entries[a][b][j - 1][kk - 1] = Scalar(value)
    return CurvatureTensor(1, 2, entries)


# eigenvalue rescaling --------------------------------------------------


def rescale_eigenvalues(nu: Sequence, mu: Sequence, kappa) -> list:
    """Ratios of the curvature against the shifted metric, exactly.

    Each entry is nu_j / (kappa mu_j + nu_j); zero curvature
    directions stay at zero and every ratio lies in [0, 1).
    """
    kappa = _frac(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if len(nu) != len(mu):
        raise ValueError("eigenvalue lists must have equal length")
    out = []
    for nu_j, mu_j in zip(nu, mu):
        nu_j, mu_j = _frac(nu_j), _frac(mu_j)
        if mu_j <= 0:
            raise ValueError("metric eigenvalues must be positive")
        if nu_j < 0:
            raise ValueError("curvature eigenvalues must be nonnegative")
        out.append(nu_j / (kappa * mu_j + nu_j))
    return out


def pairing_free_bound(ratios: Sequence[Fraction], p: int) -> Fraction:
    """Lower bound 2(rho_1 + .. + rho_p) - sum rho, ratios sorted."""
    ordered = sorted(ratios)
    return 2 * sum(ordered[:p], Fraction(0)) - sum(ordered, Fraction(0))


# fiber matrices --------------------------------------------------------


def _partner(j: int, n: int) -> int:
    return j - n if j > n else j + n


def _masks(m: int, size: int):
    for combo in combinations(range(1, m + 1), size):
        yield sum(1 << (j - 1) for j in combo)


def fiber_diagonal(ratios: Sequence[Fraction], p: int, n: int) -> dict:
    """Diagonal entries d_B over antiholomorphic masks of size p."""
    total = sum((_frac(x) for x in ratios), Fraction(0))
    out = {}
    for mask in _masks(2 * n, p):
        value = -total
        for j in range(1, 2 * n + 1):
            if mask >> (j - 1) & 1:
                value += _frac(ratios[j - 1]) + _frac(ratios[_partner(j, n) - 1])
        out[mask] = value
    return out


def _diagonal_spectra(R: CurvatureTensor):
    """Per-frame real eigenvalue lists when R is diagonal, else None."""
    m = 2 * R.n
    spectra = []
    for a in range(R.r):
        row = []
        for b in range(R.r):
            for p, q in product(range(1, m + 1), repeat=2):
                value = R.entry(a, b, p, q)
                if (a != b or p != q) and not value.is_zero():
                    return None
                if a == b and p == q:
                    if not value.is_real():
                        return None
                    row.append(value.re)
        spectra.append(tuple(row))
    return tuple(spectra)


@dataclass(frozen=True)
class FiberMatrix:
    """Positivity data for the commutator on one (p, q) fiber.

    `route` records how the decision was reached; `lower_bound` is the
    pairing-free estimate when eigenvalue ratios are available, and
    `diagnostic` brackets the least eigenvalue of the coefficient
    matrix when requested.  `is_pd` is None when the route cannot
    settle the sign (interval straddle or unknown index pairing).
    """

    n: int
    r: int
    p: int
    q: int
    route: str
    dimension: int
    is_pd: Optional[bool]
    is_psd: Optional[bool]
    min_diagonal: Optional[Fraction]
    lower_bound: Optional[Fraction]
    witness: Optional[tuple]
    diagnostic: Optional[tuple]
    detail: str = ""


def _dense_fiber_matrix(R: CurvatureTensor, p: int, q: int):
    """Half-pairing Gram matrix of the commutator on (p, q) monomials.

    The half folds the package-wide pairing convention into the
    matrix, which is what lands diagonal tensors exactly on d_B.
    """
    n, r = R.n, R.r
    half = Scalar(Fraction(1, 2))
    zero = BundleForm(tuple(Form(n) for _ in range(r)))
    op = regrouped_commutator(PointwiseState(n, r, R, zero))
    basis = [(al, a_mask, b_mask)
             for al in range(r)
             for a_mask in _masks(2 * n, q)
             for b_mask in _masks(2 * n, p)]
    columns = []
    for al, a_mask, b_mask in basis:
        comps = [Form(n) for _ in range(r)]
        comps[al] = Form.monomial(n, a_mask, b_mask)
        columns.append(op.apply(BundleForm(tuple(comps))))
    return basis, tuple(
        tuple(image.components[al].coeffs.get((a_mask, b_mask), ZERO) * half
              for image in columns)
        for al, a_mask, b_mask in basis)


def _pair_witness(matrix, basis):
    """Explicit nonpositive direction from a 1x1 or 2x2 submatrix."""
    for i, label in enumerate(basis):
        if matrix[i][i].re <= 0:
            return ((label, ONE),)
    for i, j in combinations(range(len(basis)), 2):
        a, c = matrix[i][i].re, matrix[j][j].re
        b = matrix[i][j]
        if a * c - b.norm_sq() >= 0:
            continue
        # diagonals are positive past the scan above, and the value at
        # (t, 1) with t = -conj(b)/a is c - |b|^2/a < 0
        return ((basis[i], -b.conjugate() * Scalar(a).inverse()),
                (basis[j], ONE))
    return None


def bkn_fiber_matrix(R: CurvatureTensor, p: int, q: int,
                     mu: Optional[Sequence] = None, kappa=None, *,
                     dim_cap: int = 4096, diagnostic: bool = False,
                     tol: Fraction = EIG_TOL) -> FiberMatrix:
    """Assemble and decide one fiber of the twisted commutator.

    Without a rescaling the tensor is used as given: diagonal tensors
    produce the exact diagonal d_B per frame, dense tensors are
    assembled on the monomial basis and decided by congruence.  With
    mu and kappa the rank-1 curvature is measured against the shifted
    metric; rational ratio spectra give an exact diagonal model and
    irrational ones fall back to certified eigenvalue intervals.
    """
    n, r, m = R.n, R.r, 2 * R.n
    if not (0 <= p <= m and 0 <= q <= m):
        raise ValueError(f"fiber degrees must lie in 0..{m}")
    dimension = comb(m, p) * comb(m, q) * r
    if dimension > dim_cap:
        raise ValueError(
            f"fiber dimension {dimension} exceeds the cap {dim_cap}")

    if kappa is not None:
        if R.r != 1:
            raise ValueError("rescaled fibers cover line bundles only")
        kappa = _frac(kappa)
        if kappa <= 0:
            raise ValueError("kappa must be positive")
        mu = tuple(_frac(x) for x in (mu if mu is not None else (1,) * m))
        if len(mu) != m or any(x <= 0 for x in mu):
            raise ValueError("mu must list 2n positive metric eigenvalues")
        if not check_k_positive_line(R, m).psd:
            raise PositivityPreconditionFailed(
                "rescaled fibers need a semipositive curvature form")
        theta = chern_form_matrix(R)
        metric = tuple(
            tuple(Scalar(mu[i]) if i == j else ZERO for j in range(m))
            for i in range(m))
        spectrum = pencil_rational_eigenvalues(theta, metric)
        if spectrum is not None:
            ratios = sorted(t / (kappa + t) for t in spectrum)
            bound = pairing_free_bound(ratios, p)
            diag = fiber_diagonal(ratios, p, n)
            low = min(diag.values())
            pd = True if bound > 0 else None
            psd = True if bound >= 0 else None
            note = "" if bound > 0 else \
                "pairing of eigendirections unknown after rescaling"
            return FiberMatrix(n, r, p, q, "pencil-exact", dimension, pd,
                               psd, low, bound, None,
                               (low, low) if diagnostic else None, note)
        lo_ratios, hi_ratios = [], []
        for index in range(m):
            lo, hi = pencil_eigenvalue_interval(theta, metric, index, tol)
            lo = max(lo, Fraction(0))
            lo_ratios.append(lo / (kappa + lo))
            hi_ratios.append(hi / (kappa + hi))
        bound_lo = 2 * sum(sorted(lo_ratios)[:p], Fraction(0)) \
            - sum(hi_ratios, Fraction(0))
        bound_hi = 2 * sum(sorted(hi_ratios)[:p], Fraction(0)) \
            - sum(lo_ratios, Fraction(0))
        pd = True if bound_lo > 0 else None
        return FiberMatrix(n, r, p, q, "pencil-interval", dimension, pd,
                           pd, None, bound_lo, None, None,
                           f"certification radius {float(tol):.1e}, "
                           f"bound in [{bound_lo}, {bound_hi}]")

    spectra = _diagonal_spectra(R)
    if spectra is not None:
        low, witness, bound = None, None, None
        for al, lam in enumerate(spectra):
            diag = fiber_diagonal(lam, p, n)
            frame_bound = pairing_free_bound(lam, p)
            bound = frame_bound if bound is None else min(bound, frame_bound)
            for mask, value in diag.items():
                if low is None or value < low:
                    low = value
                    first_a = next(_masks(m, q))
                    witness = (al, first_a, mask, value)
        is_pd = low > 0
        return FiberMatrix(n, r, p, q, "diagonal", dimension, is_pd,
                           low >= 0, low, bound,
                           None if is_pd else witness, (low, low))

    basis, matrix = _dense_fiber_matrix(R, p, q)
    sig = inertia(matrix)
    reals = [matrix[i][i].re for i in range(dimension)]
    low = min(reals) if reals else Fraction(0)
    witness = None if sig.is_pd else _pair_witness(matrix, basis)
    interval = min_eigenvalue_interval(matrix, tol) if diagnostic else None
    detail = f"inertia (+{sig.positive}, -{sig.negative}, 0:{sig.zero})"
    if witness is None and not sig.is_pd:
        detail += "; no low-order witness"
    return FiberMatrix(n, r, p, q, "dense", dimension, sig.is_pd,
                       sig.is_psd, low, None, witness, interval, detail)


# vanishing certificates ------------------------------------------------


@dataclass(frozen=True)
class FiberVerdict:
    p: int
    q: int
    pd: bool
    kappa: Optional[Fraction]
    bound: Optional[Fraction]


@dataclass(frozen=True)
class Certificate:
    """Sweep of rescaled fiber decisions for one curvature field.

    `kappa` is the largest schedule entry making every fiber in the
    claimed region positive definite at every evaluated point; the
    claimed region collects p > n + floor(k/2) together with the
    saturated row p = 2n.
    """

    n: int
    r: int
    k: int
    kappa: Optional[Fraction]
    rows: tuple
    verdict: str
    notes: tuple = ()

    def row(self, p: int, q: int) -> FiberVerdict:
        match = [row for row in self.rows if row.p == p and row.q == q]
        if not match:
            raise KeyError(f"no fiber row for (p, q) = ({p}, {q})")
        return match[0]

    def claimed(self, p: int) -> bool:
        return p > self.n + self.k // 2 or p == 2 * self.n


CERTIFICATE_NOTES = (
    "degree-range vanishing (part (i)) is cited from external results "
    "and is not recomputed here",
    "positive definiteness is certified at every evaluated point; "
    "gluing to a global statement needs compactness outside this engine",
)


def _point_spectrum(R: CurvatureTensor, mu) -> Optional[list]:
    theta = chern_form_matrix(R)
    m = len(mu)
    metric = tuple(
        tuple(Scalar(mu[i]) if i == j else ZERO for j in range(m))
        for i in range(m))
    spectrum = pencil_rational_eigenvalues(theta, metric)
    return None if spectrum is None else sorted(spectrum)


def vanishing_certificate(R, k: int, kappa_schedule=None,
                          mu: Optional[Sequence] = None,
                          p_range: Optional[Sequence[int]] = None,
                          q_range: Optional[Sequence[int]] = None,
                          tol: Fraction = EIG_TOL) -> Certificate:
    """Certify fiber positivity across a kappa schedule.

    Accepts one curvature tensor or a sequence of pointwise tensors.
    The k-positivity hypothesis is verified first and a violation
    raises; k = 2n is declined because every claim in range becomes
    vacuous.  Each (p, q) row records the largest kappa making the
    pairing-free bound positive at every point.
    """
    points = tuple(R) if isinstance(R, (list, tuple)) else (R,)
    if not points:
        raise ValueError("need at least one curvature point")
    n, r = points[0].n, points[0].r
    m = 2 * n
    if r != 1:
        raise ValueError("rescaled certificates cover line bundles only")
    if any(point.n != n or point.r != r for point in points):
        raise ValueError("curvature points must share one shape")
    if k >= m:
        return Certificate(
            n, r, k, None, (),
            f"declined(k = {k} is vacuous; the saturated-row claim "
            f"needs k <= {m - 1})", CERTIFICATE_NOTES)
    for index, point in enumerate(points):
        line = check_k_positive_line(point, k)
        if not line.passed:
            raise PositivityPreconditionFailed(
                f"curvature is not {k}-positive at point {index}: "
                + line.verdict)

    schedule = tuple(_frac(x) for x in (kappa_schedule
                                        if kappa_schedule is not None
                                        else DEFAULT_KAPPA_SCHEDULE))
    if any(x <= 0 for x in schedule):
        raise ValueError("kappa schedule must be positive")
    mu = tuple(_frac(x) for x in (mu if mu is not None else (1,) * m))
    ps = tuple(p_range) if p_range is not None else tuple(range(m + 1))
    qs = tuple(q_range) if q_range is not None else tuple(range(m + 1))

    # ratio lists per (point, kappa); irrational spectra fall back to
    # certified intervals (lo, hi) per direction
    ratio_table = []
    for point in points:
        spectrum = _point_spectrum(point, mu)
        per_kappa = {}
        for kappa in schedule:
            if spectrum is not None:
                ratios = [t / (kappa + t) for t in spectrum]
                per_kappa[kappa] = (ratios, ratios)
            else:
                theta = chern_form_matrix(point)
                metric = tuple(
                    tuple(Scalar(mu[i]) if i == j else ZERO
                          for j in range(m))
                    for i in range(m))
                los, his = [], []
                for index in range(m):
                    lo, hi = pencil_eigenvalue_interval(
                        theta, metric, index, tol)
                    lo = max(lo, Fraction(0))
                    los.append(lo / (kappa + lo))
                    his.append(hi / (kappa + hi))
                per_kappa[kappa] = (los, his)
        ratio_table.append(per_kappa)

    def bound_at(p, kappa):
        worst = None
        for per_kappa in ratio_table:
            los, his = per_kappa[kappa]
            value = 2 * sum(sorted(los)[:p], Fraction(0)) \
                - sum(his, Fraction(0))
            worst = value if worst is None else min(worst, value)
        return worst

    rows = []
    for p in ps:
        kappa_found, bound_found = None, None
        for kappa in schedule:
            value = bound_at(p, kappa)
            if value > 0:
                kappa_found, bound_found = kappa, value
                break
        for q in qs:
            rows.append(FiberVerdict(p, q, kappa_found is not None,
                                     kappa_found,
                                     bound_found if kappa_found is not None
                                     else bound_at(p, schedule[-1])))

    claimed_ps = [p for p in ps if p > n + k // 2 or p == m]
    region_kappa = None
    for kappa in schedule:
        if all(bound_at(p, kappa) > 0 for p in claimed_ps):
            region_kappa = kappa
            break
    gaps = [p for p in claimed_ps
            if not any(row.p == p and row.pd for row in rows)]
    if gaps:
        verdict = f"refuted(claimed region gap at p = {gaps[0]})"
    else:
        verdict = "certified"
    return Certificate(n, r, k, region_kappa, tuple(rows), verdict,
                       CERTIFICATE_NOTES)


# metric jet normalization ----------------------------------------------


@dataclass(frozen=True)
class MetricJet:
    """Hermitian metric jet: entries[j][k] expands g_{j kbar} at 0."""

    m: int
    entries: tuple

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one complex variable")
        entries = tuple(tuple(row) for row in self.entries)
        if len(entries) != self.m \
                or any(len(row) != self.m for row in entries):
            raise ValueError("entries must form an m x m grid of jets")
        for row in entries:
            for jet in row:
                if not isinstance(jet, Jet) or jet.n_vars != self.m:
                    raise ValueError(
                        f"entries must be jets in {self.m} variables")
        object.__setattr__(self, "entries", entries)


def _linear_data(g: MetricJet):
    """Signs and degree-1 coefficient tensors of a metric jet."""
    m = g.m
    signs = []
    for j in range(m):
        for kk in range(m):
            const = g.entries[j][kk].eval_at_origin()
            if j == kk:
                if const not in (ONE, -ONE):
                    raise NotKahlerJet(
                        f"diagonal constant g[{j + 1}][{kk + 1}] must be "
                        "+1 or -1")
            elif not const.is_zero():
                raise NotKahlerJet(
                    f"off-diagonal constant g[{j + 1}][{kk + 1}] must "
                    "vanish")
        signs.append(1 if g.entries[j][j].eval_at_origin() == ONE else -1)

    def coeff(j, kk, slot):
        key = [0] * (2 * m)
        key[slot] = 1
        return g.entries[j][kk].terms.get(tuple(key), ZERO)

    hol = [[[coeff(j, kk, ell) for ell in range(m)]
            for kk in range(m)] for j in range(m)]
    anti = [[[coeff(j, kk, m + ell) for ell in range(m)]
             for kk in range(m)] for j in range(m)]
    return tuple(signs), hol, anti


def normalize_metric_jet(g: MetricJet):
    """Remove degree-1 metric terms by a quadratic coordinate change.

    Validates the reality symmetry (the zbar-coefficients are the
    conjugates of the z-coefficients with the outer indices swapped)
    and the closedness symmetry (z-coefficients symmetric under
    swapping the derivative index with the first form index).  The
    change z_k = w_k + (1/2) sum b[k][u][v] w_u w_v with
    b[k][u][v] = -sign_k a[v][k][u] then cancels both degree-1 blocks
    exactly.  Returns (b, normalized jet); the output jet carries
    order 1 since the quadratic block of the pullback is not tracked.
    """
    m = g.m
    signs, hol, anti = _linear_data(g)
    for j, kk, ell in product(range(m), repeat=3):
        if anti[j][kk][ell] != hol[kk][j][ell].conjugate():
            raise NotKahlerJet(
                f"reality symmetry fails at ({j + 1}, {kk + 1}, {ell + 1})")
        if hol[j][kk][ell] != hol[ell][kk][j]:
            raise NotKahlerJet(
                f"closedness symmetry fails at ({j + 1}, {kk + 1}, "
                f"{ell + 1})")
    b = tuple(
        tuple(
            tuple(-Scalar(signs[kk]) * hol[v][kk][u] for v in range(m))
            for u in range(m))
        for kk in range(m))
    entries = []
    for j in range(m):
        row = []
        for kk in range(m):
            terms = {(0,) * (2 * m): g.entries[j][kk].eval_at_origin()}
            for ell in range(m):
                hol_res = hol[j][kk][ell] + Scalar(signs[kk]) * b[kk][ell][j]
                anti_res = anti[j][kk][ell] \
                    + Scalar(signs[j]) * b[j][ell][kk].conjugate()
                key = [0] * (2 * m)
                key[ell] = 1
                terms[tuple(key)] = hol_res
                key = [0] * (2 * m)
                key[m + ell] = 1
                terms[tuple(key)] = anti_res
            row.append(Jet(m, 1, terms))
        entries.append(tuple(row))
    return b, MetricJet(m, tuple(entries))


def random_kahler_jet(m: int, rng: random.Random, order: int = 2) -> MetricJet:
    """Random metric jet satisfying the reality and closedness symmetries."""
    def draw():
        return Scalar(Fraction(rng.randint(-3, 3), rng.choice((1, 2))),
                      Fraction(rng.randint(-3, 3), rng.choice((1, 2))))

    hol = [[[None] * m for _ in range(m)] for _ in range(m)]
    for j, kk, ell in product(range(m), repeat=3):
        if hol[j][kk][ell] is None:
            value = draw()
            hol[j][kk][ell] = value
            hol[ell][kk][j] = value
    signs = [rng.choice((1, -1)) for _ in range(m)]
    entries = []
    for j in range(m):
        row = []
        for kk in range(m):
            terms = {(0,) * (2 * m): Scalar(signs[j]) if j == kk else ZERO}
            for ell in range(m):
                key = [0] * (2 * m)
                key[ell] = 1
                terms[tuple(key)] = hol[j][kk][ell]
                key = [0] * (2 * m)
                key[m + ell] = 1
                terms[tuple(key)] = hol[kk][j][ell].conjugate()
            row.append(Jet(m, order, terms))
        entries.append(tuple(row))
    return MetricJet(m, tuple(entries))


# suite drivers ---------------------------------------------------------


def verify_rescale(n_max: int = 6) -> Report:
    """Exact arithmetic behind the kappa-rescaled eigenvalue ratios."""
    t0 = time.perf_counter()
    report = Report("rescale-arithmetic", meta={"n_max": n_max})

    unit = rescale_eigenvalues((1, 1), (1, 1), 1)
    pinned = rescale_eigenvalues((0, 1), (1, 1), Fraction(1, 9))
    report.add(Row(
        name="ratio formula on pinned inputs",
        anchor="thm-5.3 / r_j = nu_j/(kappa mu_j + nu_j)",
        arena="rationals",
        passed=unit == [Fraction(1, 2)] * 2
        and pinned == [Fraction(0), Fraction(9, 10)],
        detail="unit pair gives 1/2, (0,1) against kappa=1/9 gives (0, 9/10)"))

    limit_ok = True
    for n in range(1, n_max + 1):
        m = 2 * n
        for s in range(m + 1):
            nu = (0,) * s + (1,) * (m - s)
            for p in range(s, m + 1):
                target = Fraction(2 * (p - s) - (m - s))
                previous = None
                for t in range(0, 21, 5):
                    kappa = Fraction(1, 2 ** t)
                    ratios = rescale_eigenvalues(nu, (1,) * m, kappa)
                    value = pairing_free_bound(ratios, p)
                    # every positive ratio sits within kappa of 1, so
                    # the bound sits within 2m kappa of its limit
                    gap = abs(target - value)
                    if gap > 2 * m * kappa:
                        limit_ok = False
                    if previous is not None and gap > previous:
                        limit_ok = False
                    previous = gap
    report.add(Row(
        name="kappa to zero limit of the lower bound",
        anchor="thm-5.3 / limit 2(p-s) - (2n-s)",
        arena=f"n <= {n_max} rationals",
        passed=limit_ok,
        detail="gap to the limit shrinks monotonically with kappa"))

    chain_ok = True
    for n in range(1, n_max + 1):
        m = 2 * n
        for k in range(m + 1):
            half = Fraction(k, 2)
            if 2 * (1 + k // 2 - half) < 1:
                chain_ok = False
            for s in range(k + 1):
                for p in range(n + k // 2 + 1, m + 1):
                    chain = Fraction(2 * (p - s) - (m - s))
                    if chain < 2 * (p - (n + half)) \
                            or 2 * (p - (n + half)) < 2 * (1 + k // 2 - half) \
                            or chain < 1:
                        chain_ok = False
    report.add(Row(
        name="inequality chain down to one",
        anchor="thm-5.3 / 2(p-s)-(2n-s) >= 2(p-n-k/2) >= 1",
        arena=f"n <= {n_max} integers",
        passed=chain_ok,
        detail="all budgets k <= 2n, kernels s <= k, p > n + floor(k/2)"))

    mono_ok = True
    nu, mu = (0, 1, 2, 3), (2, 1, 3, 1)
    previous = None
    for t in range(8):
        ratios = rescale_eigenvalues(nu, mu, Fraction(1, 2 ** t))
        if any(not 0 <= x < 1 for x in ratios):
            mono_ok = False
        if (ratios[0] != 0) or (previous is not None
                               and any(a < b for a, b
                                       in zip(ratios, previous))):
            mono_ok = False
        previous = ratios
    report.add(Row(
        name="ratios stay in [0, 1) and grow as kappa shrinks",
        anchor="thm-5.3 / r_j = 1 - 1/(1 + (nu/mu)/kappa)",
        arena="rationals",
        passed=mono_ok))

    report.elapsed = time.perf_counter() - t0
    return report


def verify_fiber_positivity(seed: int = 0) -> Report:
    """Fiber matrices against the diagonal coefficient sums."""
    t0 = time.perf_counter()
    report = Report("fiber-positivity", meta={"seed": seed})
    rng = random.Random(seed)

    sweep_ok = True
    for n in (1, 2):
        m = 2 * n
        R = CurvatureTensor(
            n, 1,
            ((tuple(tuple(ONE if p == q else ZERO for q in range(m))
                    for p in range(m)),),))
        for p, q in product(range(m + 1), repeat=2):
            fiber = bkn_fiber_matrix(R, p, q)
            expected = Fraction(2 * p - m)
            if fiber.min_diagonal != expected:
                sweep_ok = False
            if fiber.is_pd != (p > n):
                sweep_ok = False
            if p <= n and fiber.witness is None:
                sweep_ok = False
    report.add(Row(
        name="unit curvature sweep pins the diagonal",
        anchor="eq-213 / diagonal sum over the antiholomorphic mask",
        arena="n in {1,2} diagonal route",
        passed=sweep_ok,
        detail="diagonal 2p - 2n, positive definite exactly when p > n"))

    lam = (0, 2, 3, 5)
    R = CurvatureTensor(
        2, 1,
        ((tuple(tuple(Scalar(lam[p]) if p == q else ZERO
                      for q in range(4)) for p in range(4)),),))
    fiber = bkn_fiber_matrix(R, 4, 1, diagnostic=True)
    saturated_ok = fiber.is_pd is True \
        and fiber.min_diagonal == Fraction(sum(lam)) \
        and fiber.min_diagonal >= max(lam)
    report.add(Row(
        name="saturated antiholomorphic fiber stays positive",
        anchor="eq-kkk / <[e(Theta_J),Lambda_J]xi, xi> >= lambda |xi|^2",
        arena="n=2 diagonal route",
        passed=saturated_ok,
        detail="full mask collects the whole trace; the half-folded "
               "pairing matches the printed display exactly"))

    agree_ok = True
    for _ in range(4):
        lam = tuple(Fraction(rng.randint(0, 4)) for _ in range(2))
        R = CurvatureTensor(
            1, 1,
            ((tuple(tuple(Scalar(lam[p]) if p == q else ZERO
                          for q in range(2)) for p in range(2)),),))
        for p, q in product(range(3), repeat=2):
            diag_route = bkn_fiber_matrix(R, p, q)
            dense = _dense_fiber_matrix(R, p, q)[1]
            reals = sorted(row[i].re for i, row in enumerate(dense))
            diag = sorted(fiber_diagonal(lam, p, 1).values())
            expect = sorted(diag * (len(reals) // len(diag)))
            if reals != expect or min(reals) != diag_route.min_diagonal:
                agree_ok = False
    report.add(Row(
        name="dense assembly matches the diagonal formula",
        anchor="prop-4.5 / block sums specialize to eq-213",
        arena="n=1 dual route",
        passed=agree_ok,
        detail="engine-applied commutator reproduces d_B on every monomial"))

    R = griffiths_witness(Fraction(1, 2))
    sampled = check_ks_positive(
        PositivityQuery(0, 1, R, "griffiths-sampled"), samples=25, seed=seed)
    sampled_t = check_ks_positive(
        PositivityQuery(0, 1, R, "griffiths-sampled", "tangent-tuples"),
        samples=25, seed=seed)
    nakano = check_ks_positive(PositivityQuery(0, 2, R, "nakano-exact"))
    report.add(Row(
        name="griffiths positive yet nakano indefinite witness",
        anchor="def-5.1 / (k,s) tuples against the swap perturbation",
        arena="n=1 r=2 exact + sampled",
        passed=sampled.passed and sampled_t.passed and not nakano.passed,
        detail=f"{sampled.label} on both orientations, nakano {nakano.label}"))

    line_ok = True
    eye = CurvatureTensor(
        1, 1, ((tuple(tuple(ONE if p == q else ZERO for q in range(2))
                      for p in range(2)),),))
    soft = CurvatureTensor(
        1, 1, ((((ZERO, ZERO), (ZERO, ONE)),),))
    bad = CurvatureTensor(
        1, 1, ((((-ONE, ZERO), (ZERO, ONE)),),))
    if not check_k_positive_line(eye, 0).passed:
        line_ok = False
    if check_k_positive_line(soft, 0).passed \
            or not check_k_positive_line(soft, 1).passed:
        line_ok = False
    if check_k_positive_line(bad, 2).psd:
        line_ok = False
    exact_line = check_ks_positive(PositivityQuery(1, 1, soft, "exact-line"))
    if not exact_line.passed or exact_line.label != "certified":
        line_ok = False
    report.add(Row(
        name="line bundle rank tests",
        anchor="sec-5 / k-positive iff semipositive with kernel <= k",
        arena="n=1 exact",
        passed=line_ok,
        detail="identity 0-positive, one kernel direction 1-positive, "
               "negative direction refused"))

    report.elapsed = time.perf_counter() - t0
    return report


def verify_vanishing() -> Report:
    """Certificates across the kappa schedule."""
    t0 = time.perf_counter()
    report = Report("vanishing-certificate", meta={})

    eye2 = CurvatureTensor(
        2, 1, ((tuple(tuple(ONE if p == q else ZERO for q in range(4))
                      for p in range(4)),),))
    cert = vanishing_certificate(eye2, 0)
    region_ok = cert.verdict == "certified" and all(
        row.pd == (row.p > 2) for row in cert.rows)
    report.add(Row(
        name="unit curvature region",
        anchor="eq-213 / positive exactly beyond p = n",
        arena="n=2 k=0",
        passed=region_ok,
        detail="PD rows are p in {3, 4} for every q; "
               f"largest kappa {cert.kappa}"))

    lam = (0, 1, 1, 1)
    soft = CurvatureTensor(
        2, 1, ((tuple(tuple(Scalar(lam[p]) if p == q else ZERO
                            for q in range(4)) for p in range(4)),),))
    cert = vanishing_certificate(soft, 1)
    row = cert.row(4, 0)
    chain_ok = cert.verdict == "certified" and row.pd \
        and row.bound is not None and row.bound >= Fraction(1, 2)
    report.add(Row(
        name="one kernel direction still certifies the top row",
        anchor="cor-5.4 / p > n + floor(k/2)",
        arena="n=2 k=1",
        passed=chain_ok,
        detail=f"p=4 bound {row.bound} at kappa {row.kappa}; "
               "limit value 2(p-s)-(2n-s) = 3"))

    declined = vanishing_certificate(eye2, 4)
    report.add(Row(
        name="saturated kernel budget is declined",
        anchor="thm-5.2 / the saturated row needs k <= 2n-1",
        arena="n=2 k=2n",
        passed=declined.verdict.startswith("declined")
        and not declined.rows,
        detail=declined.verdict))

    mono_ok = True
    for n in (1, 2):
        m = 2 * n
        eye = CurvatureTensor(
            n, 1, ((tuple(tuple(ONE if p == q else ZERO for q in range(m))
                          for p in range(m)),),))
        cert = vanishing_certificate(eye, 0, q_range=(0,))
        bounds = [cert.row(p, 0).bound for p in range(m + 1)]
        if any(b is None or bounds[i] > bounds[i + 1]
               for i, b in enumerate(bounds[:-1])):
            mono_ok = False
    report.add(Row(
        name="bound grows with the antiholomorphic degree",
        anchor="eq-213 / adding an index adds 2 rho",
        arena="n in {1,2}",
        passed=mono_ok))

    report.elapsed = time.perf_counter() - t0
    return report


def verify_jet_normalization(trials: int = 10, seed: int = 0) -> Report:
    """Quadratic coordinate changes kill degree-1 metric terms."""
    t0 = time.perf_counter()
    report = Report("jet-normalization",
                    meta={"trials": trials, "seed": seed})
    rng = random.Random(seed)

    flat = MetricJet(2, tuple(
        tuple(Jet.constant(2, 2, 1 if j == kk else 0) for kk in range(2))
        for j in range(2)))
    b, out = normalize_metric_jet(flat)
    flat_ok = all(c.is_zero() for plane in b for row in plane for c in row) \
        and all(out.entries[j][kk] == flat.entries[j][kk].truncate(1)
                for j in range(2) for kk in range(2))
    report.add(Row(
        name="constant metric is untouched",
        anchor="prop-2.3 / b = 0 on a flat start",
        arena="m=2 jets",
        passed=flat_ok))

    z1 = Jet.variable(1, 2, 1)
    entry = Jet.constant(1, 2, 1) + z1 + z1.conjugate()
    b, out = normalize_metric_jet(MetricJet(1, ((entry,),)))
    example_ok = b[0][0][0] == -ONE \
        and out.entries[0][0] == Jet.constant(1, 1, 1)
    report.add(Row(
        name="single variable linear bump",
        anchor="prop-2.3 / b_klj = -a_jkl",
        arena="m=1 jets",
        passed=example_ok,
        detail="g = 1 + z + zbar normalizes with b_111 = -1"))

    random_ok = True
    for _ in range(trials):
        m = rng.choice((1, 2, 3))
        g = random_kahler_jet(m, rng)
        _, out = normalize_metric_jet(g)
        for j, kk in product(range(m), repeat=2):
            if not out.entries[j][kk].degree_part(1).is_zero():
                random_ok = False
            if out.entries[j][kk].eval_at_origin() \
                    != g.entries[j][kk].eval_at_origin():
                random_ok = False
    report.add(Row(
        name="random closed real jets normalize",
        anchor="prop-2.3 / g = +-delta + O(|w|^2)",
        arena="m <= 3 jets",
        passed=random_ok,
        detail=f"{trials} draws, degree-1 block exactly zero"))

    g = random_kahler_jet(2, rng)
    broken_real = MetricJet(2, tuple(
        tuple(g.entries[j][kk] + (Jet.variable(2, 2, 1, bar=True)
                                  if (j, kk) == (0, 1) else 0)
              for kk in range(2))
        for j in range(2)))
    caught_real = False
    try:
        normalize_metric_jet(broken_real)
    except NotKahlerJet:
        caught_real = True
    broken_closed = MetricJet(2, tuple(
        tuple(g.entries[j][kk] + (Jet.variable(2, 2, 2)
                                  if (j, kk) == (0, 0) else 0)
              for kk in range(2))
        for j in range(2)))
    caught_closed = False
    try:
        normalize_metric_jet(broken_closed)
    except NotKahlerJet:
        caught_closed = True
    report.add(Row(
        name="symmetry violations are rejected",
        anchor="prop-2.3 / reality and closedness preconditions",
        arena="m=2 jets",
        passed=caught_real and caught_closed,
        detail="stray zbar and stray z perturbations both raise"))

    report.elapsed = time.perf_counter() - t0
    return report
