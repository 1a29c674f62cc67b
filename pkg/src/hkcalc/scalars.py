"""Exact coefficient arithmetic for the operator calculus.

Three coefficient rings share one interface: complex rationals (`Scalar`),
truncated polynomial jets at the origin (`Jet`), and finite Fourier series on
a real torus (`FourierPoly`).  Every ring supports addition, multiplication,
conjugation and the complex Wirtinger derivatives, all with exact rational
coefficients, so operator identities can be checked with zero tolerance.

Values are immutable after construction; arithmetic never mutates operands.
Mixing different coefficient rings in one expression is an error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union


class NotInvertible(ZeroDivisionError):
    """Inversion requested for an element with no inverse in its ring."""


class InvalidWeight(ValueError):
    """A weight function that must be real-valued is not."""


class NotDifferentiable(ValueError):
    """Derivative request that the coefficient ring cannot satisfy."""


class VariantMismatch(TypeError):
    """Arithmetic attempted between distinct coefficient rings."""


RationalLike = Union[int, Fraction]


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Scalar:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def of(value: "Scalar | RationalLike") -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar(value)

    @staticmethod
    def i() -> "Scalar":
        return Scalar(0, 1)

    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise NotInvertible("division by zero Scalar")
        return Scalar(self.re / n, -self.im / n)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        """|x|^2 as an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"

    # CoeffFn interface -------------------------------------------------

    def derivative(self, kind: str, j: int) -> "Scalar":
        """Constants have zero derivative in every direction."""
        if kind not in ("d", "dbar"):
            raise NotDifferentiable(f"unknown derivative kind {kind!r}")
        return ZERO

    def scalar_mul(self, s: "Scalar") -> "Scalar":
        return self * s

    def eval_at_origin(self) -> "Scalar":
        return self

    def zero_like(self) -> "Scalar":
        return ZERO


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


def _as_scalar(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


class Jet:
    """Polynomial jet at the origin, truncated at total degree `order`.

    Variables are the complex coordinates z^1..z^{n_vars} and their
    conjugates; a term key is a tuple of 2*n_vars exponents (z-block then
    zbar-block).  Multiplication truncates, so a Jet models a function known
    only up to an O(degree > order) error, and each derivative lowers the
    reliable order by one.
    """

    __slots__ = ("n_vars", "order", "terms")

    def __init__(self, n_vars: int, order: int,
                 terms: Mapping[tuple, Scalar] | None = None):
        if n_vars < 1:
            raise ValueError("n_vars must be positive")
        if order < 0:
            raise ValueError("order must be nonnegative")
        clean: dict[tuple, Scalar] = {}
        if terms:
            width = 2 * n_vars
            for key, coeff in terms.items():
                key = tuple(key)
                if len(key) != width or any(e < 0 for e in key):
                    raise ValueError(f"bad exponent key {key!r}")
                if sum(key) > order:
                    continue
                coeff = Scalar.of(coeff)
                if not coeff.is_zero():
                    clean[key] = coeff
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Jet is immutable")

    # constructors ------------------------------------------------------

    @staticmethod
    def constant(n_vars: int, order: int, value: Scalar | RationalLike) -> "Jet":
        value = Scalar.of(value)
        key = (0,) * (2 * n_vars)
        return Jet(n_vars, order, {key: value})

    @staticmethod
    def variable(n_vars: int, order: int, j: int, bar: bool = False) -> "Jet":
        """The coordinate jet z^j (or zbar^j), 1-based index."""
        if not 1 <= j <= n_vars:
            raise ValueError(f"variable index {j} out of range")
        exps = [0] * (2 * n_vars)
        exps[(n_vars if bar else 0) + j - 1] = 1
        return Jet(n_vars, order, {tuple(exps): ONE})

    def zero_like(self) -> "Jet":
        return Jet(self.n_vars, self.order)

    # ring arithmetic ---------------------------------------------------

    def _check(self, other: "Jet") -> None:
        if not isinstance(other, Jet):
            raise VariantMismatch(f"cannot combine Jet with {type(other).__name__}")
        if other.n_vars != self.n_vars:
            raise VariantMismatch("jet variable counts differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Jet.constant(self.n_vars, self.order, other)
        self._check(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, ZERO) + coeff
        return Jet(self.n_vars, order, terms)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet) else -Scalar.of(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Jet(self.n_vars, self.order,
                   {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scalar_mul(Scalar.of(other))
        self._check(other)
        order = min(self.order, other.order)
        terms: dict[tuple, Scalar] = {}
        for ka, ca in self.terms.items():
            da = sum(ka)
            for kb, cb in other.terms.items():
                if da + sum(kb) > order:
                    continue
                key = tuple(a + b for a, b in zip(ka, kb))
                prod = ca * cb
                if key in terms:
                    terms[key] = terms[key] + prod
                else:
                    terms[key] = prod
        return Jet(self.n_vars, order, terms)

    __rmul__ = __mul__

    def scalar_mul(self, s: Scalar) -> "Jet":
        if s.is_zero():
            return self.zero_like()
        return Jet(self.n_vars, self.order,
                   {k: c * s for k, c in self.terms.items()})

    # structure ---------------------------------------------------------

    def conjugate(self) -> "Jet":
        n = self.n_vars
        terms = {}
        for key, coeff in self.terms.items():
            terms[key[n:] + key[:n]] = coeff.conjugate()
        return Jet(n, self.order, terms)

    def derivative(self, kind: str, j: int) -> "Jet":
        """Wirtinger derivative d/dz^j (kind 'd') or d/dzbar^j ('dbar')."""
        if kind not in ("d", "dbar"):
            raise NotDifferentiable(f"unknown derivative kind {kind!r}")
        if not 1 <= j <= self.n_vars:
            raise NotDifferentiable(f"direction {j} out of range")
        if self.order == 0:
            raise NotDifferentiable("jet order exhausted: derivative unknown")
        pos = (0 if kind == "d" else self.n_vars) + j - 1
        terms = {}
        for key, coeff in self.terms.items():
            e = key[pos]
            if e == 0:
                continue
            new = key[:pos] + (e - 1,) + key[pos + 1:]
            terms[new] = terms.get(new, ZERO) + coeff * e
        return Jet(self.n_vars, self.order - 1, terms)

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise ValueError("cannot extend a jet's reliable order")
        return Jet(self.n_vars, order, self.terms)

    def eval_at_origin(self) -> Scalar:
        return self.terms.get((0,) * (2 * self.n_vars), ZERO)

    def degree_part(self, d: int) -> "Jet":
        """The homogeneous part of total degree d (same order tag)."""
        return Jet(self.n_vars, self.order,
                   {k: c for k, c in self.terms.items() if sum(k) == d})

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return self == self.conjugate()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = Jet.constant(self.n_vars, self.order, other)
        if not isinstance(other, Jet):
            return NotImplemented
        return (self.n_vars == other.n_vars and self.order == other.order
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n_vars, self.order,
                     tuple(sorted((k, c.re, c.im) for k, c in self.terms.items()))))

    def sorted_terms(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for key, coeff in self.sorted_terms():
            mono = _monomial_str(key, self.n_vars)
            if not mono:
                bits.append(str(coeff))
            elif coeff == ONE:
                bits.append(mono)
            elif coeff == -ONE:
                bits.append(f"-{mono}")
            elif coeff.re != 0 and coeff.im != 0:
                bits.append(f"({coeff})*{mono}")
            else:
                bits.append(f"{coeff}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"Jet(n_vars={self.n_vars}, order={self.order}, {str(self)})"


def _monomial_str(key: tuple, n: int) -> str:
    parts = []
    for idx, e in enumerate(key):
        if e == 0:
            continue
        name = f"z{idx + 1}" if idx < n else f"zb{idx - n + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def jet_invert(h: Jet) -> Jet:
    """Multiplicative inverse of a jet, exact at its truncation order.

    Requires a nonzero constant term; the result is the truncated geometric
    series c^{-1} * sum_k (-(h - c)/c)^k, so h * jet_invert(h) = 1 up to
    terms of degree > order.
    """
    c = h.eval_at_origin()
    if c.is_zero():
        raise NotInvertible("jet has zero constant term")
    c_inv = c.inverse()
    nil = -(h - c).scalar_mul(c_inv)  # valuation >= 1
    acc = Jet.constant(h.n_vars, h.order, ONE)
    power = Jet.constant(h.n_vars, h.order, ONE)
    for _ in range(h.order):
        power = power * nil
        if power.is_zero():
            break
        acc = acc + power
    return acc.scalar_mul(c_inv)


def jet_compose(jet: Jet, subs_z: list[Jet], subs_zbar: list[Jet]) -> Jet:
    """Substitute origin-preserving jets for each variable.

    subs_z[j] replaces z^{j+1}, subs_zbar[j] replaces zbar^{j+1}; every
    substituted jet must vanish at the origin so truncation orders compose
    honestly.  The result order is the minimum of all participating orders.
    """
    n = jet.n_vars
    if len(subs_z) != n or len(subs_zbar) != n:
        raise ValueError("substitution lists must cover every variable")
    order = jet.order
    for s in (*subs_z, *subs_zbar):
        if s.n_vars != n:
            raise VariantMismatch("substitution jet has wrong variable count")
        if not s.eval_at_origin().is_zero():
            raise ValueError("substitution must preserve the origin")
        order = min(order, s.order)
    base = [s.truncate(order) for s in subs_z] + [s.truncate(order) for s in subs_zbar]
    result = Jet(n, order)
    one = Jet.constant(n, order, ONE)
    for key, coeff in jet.terms.items():
        term = one
        for pos, e in enumerate(key):
            for _ in range(e):
                term = term * base[pos]
                if term.is_zero():
                    break
        result = result + term.scalar_mul(coeff)
    return result


class FourierPoly:
    """Finite Fourier series on a torus with 2*n_complex real coordinates.

    A term maps an integer frequency vector nu to a Scalar coefficient of
    exp(i <nu, x>).  The complex coordinate z^j = x^{2j-1} + i x^{2j} gives
    Wirtinger derivatives that stay inside Gaussian-rational coefficients,
    and integrate() is exact: only the zero mode survives.
    """

    __slots__ = ("n_real_vars", "terms")

    def __init__(self, n_real_vars: int,
                 terms: Mapping[tuple, Scalar] | None = None):
        if n_real_vars < 2 or n_real_vars % 2:
            raise ValueError("n_real_vars must be a positive even count")
        clean: dict[tuple, Scalar] = {}
        if terms:
            for key, coeff in terms.items():
                key = tuple(key)
                if len(key) != n_real_vars:
                    raise ValueError(f"frequency vector {key!r} has wrong length")
                coeff = Scalar.of(coeff)
                if not coeff.is_zero():
                    clean[key] = coeff
        object.__setattr__(self, "n_real_vars", n_real_vars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("FourierPoly is immutable")

    @property
    def n_complex(self) -> int:
        return self.n_real_vars // 2

    # constructors ------------------------------------------------------

    @staticmethod
    def constant(n_real_vars: int, value: Scalar | RationalLike) -> "FourierPoly":
        return FourierPoly(n_real_vars, {(0,) * n_real_vars: Scalar.of(value)})

    @staticmethod
    def mode(freq: Iterable[int], coeff: Scalar | RationalLike = 1) -> "FourierPoly":
        freq = tuple(freq)
        return FourierPoly(len(freq), {freq: Scalar.of(coeff)})

    @staticmethod
    def real_cosine(freq: Iterable[int], amplitude: RationalLike = 1) -> "FourierPoly":
        """amplitude * cos(<freq, x>), a real element."""
        freq = tuple(freq)
        half = Fraction(amplitude) / 2
        neg = tuple(-f for f in freq)
        terms = {freq: Scalar(half)}
        terms[neg] = terms.get(neg, ZERO) + Scalar(half)
        return FourierPoly(len(freq), terms)

    @staticmethod
    def real_sine(freq: Iterable[int], amplitude: RationalLike = 1) -> "FourierPoly":
        """amplitude * sin(<freq, x>), a real element."""
        freq = tuple(freq)
        half = Fraction(amplitude) / 2
        neg = tuple(-f for f in freq)
        terms = {freq: Scalar(0, -half)}
        prev = terms.get(neg, ZERO)
        terms[neg] = prev + Scalar(0, half)
        return FourierPoly(len(freq), terms)

    def zero_like(self) -> "FourierPoly":
        return FourierPoly(self.n_real_vars)

    # ring arithmetic ---------------------------------------------------

    def _check(self, other: "FourierPoly") -> None:
        if not isinstance(other, FourierPoly):
            raise VariantMismatch(
                f"cannot combine FourierPoly with {type(other).__name__}")
        if other.n_real_vars != self.n_real_vars:
            raise VariantMismatch("torus dimensions differ")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = FourierPoly.constant(self.n_real_vars, other)
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, ZERO) + coeff
        return FourierPoly(self.n_real_vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = FourierPoly.constant(self.n_real_vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FourierPoly(self.n_real_vars,
                           {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scalar_mul(Scalar.of(other))
        self._check(other)
        terms: dict[tuple, Scalar] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(a + b for a, b in zip(ka, kb))
                prod = ca * cb
                if key in terms:
                    terms[key] = terms[key] + prod
                else:
                    terms[key] = prod
        return FourierPoly(self.n_real_vars, terms)

    __rmul__ = __mul__

    def scalar_mul(self, s: Scalar) -> "FourierPoly":
        if s.is_zero():
            return self.zero_like()
        return FourierPoly(self.n_real_vars,
                           {k: c * s for k, c in self.terms.items()})

    # structure ---------------------------------------------------------

    def conjugate(self) -> "FourierPoly":
        return FourierPoly(
            self.n_real_vars,
            {tuple(-f for f in key): coeff.conjugate()
             for key, coeff in self.terms.items()})

    def derivative(self, kind: str, j: int) -> "FourierPoly":
        """Wirtinger derivative for z^j = x^{2j-1} + i x^{2j}.

        On a mode exp(i<nu,x>) the factor is (i nu_{2j-1} + nu_{2j})/2 for
        kind 'd' and (i nu_{2j-1} - nu_{2j})/2 for 'dbar'.
        """
        if kind not in ("d", "dbar"):
            raise NotDifferentiable(f"unknown derivative kind {kind!r}")
        if not 1 <= j <= self.n_complex:
            raise NotDifferentiable(f"direction {j} out of range")
        odd = 2 * j - 2   # index of x^{2j-1}
        even = 2 * j - 1  # index of x^{2j}
        sign = 1 if kind == "d" else -1
        terms = {}
        for key, coeff in self.terms.items():
            factor = Scalar(Fraction(sign * key[even], 2), Fraction(key[odd], 2))
            if factor.is_zero():
                continue
            terms[key] = coeff * factor
        return FourierPoly(self.n_real_vars, terms)

    def integrate(self) -> Scalar:
        """Mean value over the torus: the zero-frequency coefficient."""
        return self.terms.get((0,) * self.n_real_vars, ZERO)

    def eval_at_origin(self) -> Scalar:
        total = ZERO
        for coeff in self.terms.values():
            total = total + coeff
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return self == self.conjugate()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = FourierPoly.constant(self.n_real_vars, other)
        if not isinstance(other, FourierPoly):
            return NotImplemented
        return (self.n_real_vars == other.n_real_vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n_real_vars,
                     tuple(sorted((k, c.re, c.im) for k, c in self.terms.items()))))

    def sorted_terms(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for key, coeff in self.sorted_terms():
            if any(key):
                freq = ",".join(str(f) for f in key)
                bits.append(f"({coeff})*E({freq})")
            else:
                bits.append(f"({coeff})")
        return " + ".join(bits)

    def __repr__(self):
        return f"FourierPoly({self.n_real_vars}, {str(self)})"


CoeffFn = Union[Scalar, Jet, FourierPoly]


def coeff_variants_match(a: CoeffFn, b: CoeffFn) -> bool:
    """True when two coefficients live in the same ring instance."""
    if isinstance(a, Scalar) or isinstance(b, Scalar):
        return isinstance(a, Scalar) and isinstance(b, Scalar)
    if isinstance(a, Jet) and isinstance(b, Jet):
        return a.n_vars == b.n_vars
    if isinstance(a, FourierPoly) and isinstance(b, FourierPoly):
        return a.n_real_vars == b.n_real_vars
    return False
