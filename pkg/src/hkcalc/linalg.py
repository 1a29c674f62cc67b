"""Exact linear algebra over Gaussian rationals.

Matrices are tuples of tuples of Scalar.  Everything here is
division-ring arithmetic on Fractions, so semidefiniteness verdicts,
ranks and inertia counts are decisions, not estimates.  Numeric
eigenvalue brackets are produced only as diagnostics, by bisecting
exact inertia counts of shifted matrices.
"""

from fractions import Fraction
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .scalars import NotInvertible, Scalar

ZERO = Scalar(0)
ONE = Scalar(1)


def as_matrix(rows: Sequence[Sequence]) -> tuple:
    """Coerce nested ints/Fractions/Scalars to a square Scalar matrix."""
    out = tuple(tuple(Scalar.of(x) for x in row) for row in rows)
    size = len(out)
    for row in out:
        if len(row) != size:
            raise ValueError("matrix must be square")
    return out


def identity_matrix(size: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(size))
                 for i in range(size))


def zero_matrix(size: int) -> tuple:
    return tuple((ZERO,) * size for _ in range(size))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_scale(a, c) -> tuple:
    c = Scalar.of(c)
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a, b):
    size = len(a)
    cols = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in cols)
        for row in a)


def mat_vec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def conjugate_transpose(a):
    return tuple(tuple(a[j][i].conjugate() for j in range(len(a)))
                 for i in range(len(a)))


def is_hermitian(a) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i].conjugate()
               for i in range(n) for j in range(i, n))


def _require_hermitian(a):
    if not is_hermitian(a):
        raise ValueError("matrix is not Hermitian")


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    @property
    def size(self) -> int:
        return self.positive + self.negative + self.zero

    @property
    def rank(self) -> int:
        return self.positive + self.negative

    @property
    def is_psd(self) -> bool:
        return self.negative == 0

    @property
    def is_pd(self) -> bool:
        return self.negative == 0 and self.zero == 0


def _principal_submatrix(a, keep):
    return tuple(tuple(a[i][j] for j in keep) for i in keep)


def inertia(a) -> Inertia:
    """Signature of a Hermitian matrix by pivoted congruence reduction.

    Uses a 1x1 pivot when a nonzero diagonal entry exists; otherwise a
    nonzero off-diagonal entry yields an indefinite 2x2 block [[0,c],
    [conj(c),0]] contributing (1,1).  Sylvester's law makes the counts
    congruence-invariant, so Schur complements preserve them.
    """
    _require_hermitian(a)
    pos = neg = zero = 0
    m = a
    while m:
        size = len(m)
        pivot = next((i for i in range(size) if not m[i][i].is_zero()), None)
        if pivot is not None:
            d = m[pivot][pivot]
            if d.re > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(size) if i != pivot]
            dinv = d.inverse()
            m = tuple(
                tuple(m[i][j] - m[i][pivot] * dinv * m[pivot][j]
                      for j in rest)
                for i in rest)
            continue
        off = next(((i, j) for i in range(size) for j in range(i + 1, size)
                    if not m[i][j].is_zero()), None)
        if off is None:
            zero += size
            break
        i0, j0 = off
        pos += 1
        neg += 1
        c = m[i0][j0]
        cinv = c.inverse()
        cbinv = c.conjugate().inverse()
        rest = [i for i in range(size) if i not in (i0, j0)]
        # Schur complement with block inverse [[0, 1/conj(c)], [1/c, 0]]
        m = tuple(
            tuple(m[i][j]
                  - m[i][i0] * cbinv * m[j0][j]
                  - m[i][j0] * cinv * m[i0][j]
                  for j in rest)
            for i in rest)
    return Inertia(pos, neg, zero)


def shifted_inertia(a, t: Fraction) -> Inertia:
    t = Scalar.of(t)
    shifted = tuple(
        tuple(a[i][j] - t if i == j else a[i][j] for j in range(len(a)))
        for i in range(len(a)))
    return inertia(shifted)


def is_positive_definite_minors(a) -> bool:
    """Sylvester criterion: every leading principal minor positive."""
    _require_hermitian(a)
    for k in range(1, len(a) + 1):
        d = determinant(_principal_submatrix(a, range(k)))
        if not d.is_real() or d.re <= 0:
            return False
    return True


def determinant(a) -> Scalar:
    size = len(a)
    if size == 0:
        return ONE
    rows = [list(row) for row in a]
    det = ONE
    for col in range(size):
        pivot = next((r for r in range(col, size)
                      if not rows[r][col].is_zero()), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, size):
            factor = rows[r][col] * inv
            if factor.is_zero():
                continue
            for c in range(col, size):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


def matrix_inverse(a):
    size = len(a)
    rows = [list(row) + [ONE if i == j else ZERO for j in range(size)]
            for i, row in enumerate(a)]
    for col in range(size):
        pivot = next((r for r in range(col, size)
                      if not rows[r][col].is_zero()), None)
        if pivot is None:
            raise NotInvertible("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(size):
            if r == col or rows[r][col].is_zero():
                continue
            factor = rows[r][col]
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[size:]) for row in rows)


def char_poly(a) -> tuple:
    """Coefficients c_0..c_n of det(tI - A), ascending degree.

    Faddeev-LeVerrier recursion; exact in the Scalar field.
    """
    size = len(a)
    coeffs = [ZERO] * size + [ONE]
    m = identity_matrix(size)
    for k in range(1, size + 1):
        am = mat_mul(a, m)
        trace = sum((am[i][i] for i in range(size)), ZERO)
        c = -trace * Scalar(Fraction(1, k))
        coeffs[size - k] = c
        m = tuple(
            tuple(am[i][j] + (c if i == j else ZERO) for j in range(size))
            for i in range(size))
    return tuple(coeffs)


def real_poly(coeffs) -> tuple:
    """Project Scalar coefficients to Fractions, insisting they are real."""
    out = []
    for c in coeffs:
        c = Scalar.of(c)
        if not c.is_real():
            raise ValueError("polynomial has a non-real coefficient")
        out.append(c.re)
    return tuple(out)


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out


def poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def rational_roots(coeffs) -> list:
    """All rational roots (with multiplicity) of a Fraction polynomial."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    roots = []
    zero_mult = 0
    while coeffs[0] == 0:
        zero_mult += 1
        coeffs = coeffs[1:]
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(coeffs) > 1:
        scale = 1
        for c in coeffs:
            scale = scale * c.denominator // _gcd(scale, c.denominator)
        ints = [int(c * scale) for c in coeffs]
        candidates = sorted(
            {Fraction(s * p, q)
             for p in _divisors(ints[0]) for q in _divisors(ints[-1])
             for s in (1, -1)},
        ) if ints[0] != 0 else []
        for cand in candidates:
            mult = 0
            while len(coeffs) > 1 and poly_eval(coeffs, cand) == 0:
                coeffs = _synthetic_quotient(coeffs, cand)
                mult += 1
            if mult:
                roots.append((cand, mult))
    return sorted(roots)


def _synthetic_quotient(coeffs, root: Fraction):
    # Horner from the top coefficient down; remainder must vanish
    rev = list(reversed(coeffs))
    acc = Fraction(0)
    quot = []
    for c in rev[:-1]:
        acc = acc * root + c
        quot.append(acc)
    if acc * root + rev[-1] != 0:
        raise ValueError("not a root")
    return tuple(reversed(quot))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def gershgorin_radius(a) -> Fraction:
    """A bound r with every eigenvalue of Hermitian a in [-r, r]."""
    best = Fraction(0)
    for row in a:
        total = Fraction(0)
        for x in row:
            sq = x.norm_sq()
            # |x| <= 1 + |x|^2 is crude but rational; tighten cheaply
            total += _sqrt_upper(sq)
        best = max(best, total)
    return best


def _sqrt_upper(sq: Fraction) -> Fraction:
    """A rational upper bound for sqrt(sq), via integer square root."""
    if sq == 0:
        return Fraction(0)
    p, q = sq.numerator, sq.denominator
    return Fraction(isqrt(p * q) + 1, q)


def eigenvalues_below(a, t: Fraction) -> int:
    """Count of eigenvalues strictly below t (Hermitian a)."""
    return shifted_inertia(a, t).negative


def eigenvalue_interval(a, index: int, tol: Fraction) -> tuple:
    """Bracket the index-th smallest eigenvalue to width < tol.

    The invariant lambda_index in [lo, hi] holds throughout: if more
    than `index` eigenvalues lie strictly below the midpoint the target
    is below it, otherwise at or above it.
    """
    _require_hermitian(a)
    radius = gershgorin_radius(a) + 1
    lo, hi = -radius, radius
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        if eigenvalues_below(a, mid) > index:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def min_eigenvalue_interval(a, tol: Fraction = Fraction(1, 10 ** 9)) -> tuple:
    return eigenvalue_interval(a, 0, tol)


def pencil_eigenvalues_below(theta, omega, t: Fraction) -> int:
    """Generalized eigenvalues of (theta, omega) below t; omega must be PD."""
    shifted = mat_sub(theta, mat_scale(omega, Fraction(t)))
    return inertia(shifted).negative


def pencil_char_poly(theta, omega) -> tuple:
    """det(tI - omega^{-1} theta) as real Fraction coefficients."""
    return real_poly(char_poly(mat_mul(matrix_inverse(omega), theta)))


def pencil_rational_eigenvalues(theta, omega):
    """All generalized eigenvalues when rational, else None."""
    coeffs = pencil_char_poly(theta, omega)
    roots = rational_roots(coeffs)
    total = sum(m for _, m in roots)
    if total != len(theta):
        return None
    out = []
    for value, mult in roots:
        out.extend([value] * mult)
    return out


def pencil_eigenvalue_interval(theta, omega, index: int,
                               tol: Fraction = Fraction(1, 10 ** 9)) -> tuple:
    """Bracket a generalized eigenvalue by exact inertia bisection."""
    _require_hermitian(theta)
    _require_hermitian(omega)
    radius = Fraction(1)
    size = len(theta)
    while inertia(mat_add(theta, mat_scale(omega, radius))).positive < size \
            or inertia(mat_sub(theta, mat_scale(omega, radius))
                       ).negative < size:
        radius *= 2
    lo, hi = -radius, radius
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        if pencil_eigenvalues_below(theta, omega, mid) > index:
            hi = mid
        else:
            lo = mid
    return (lo, hi)
