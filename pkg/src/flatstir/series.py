"""Truncated power series over exact rationals and the concrete EGFs.

Coefficients are stored as ordinary rationals a_n; the EGF convention
(series sum of c_n z^n / n!) is applied only at extraction, where the
coefficient is multiplied by n!.  Arithmetic never silently changes the
truncation order: binary operations truncate to the shorter operand.

Three concrete generating functions live here:

  * egf_flattened(k):  exp((k-1) z + (exp(kz) - 1)/k); n! a_n counts the
    flattened words of order n+1.
  * h_series(j):  sum of S(n-1, j) z^n / n!.
  * descent_egf(k):  the bivariate series in z whose z^n coefficient,
    times n!, is the descent polynomial over flattened words of order
    n+1; built as (t(e^z-1)+1)^(k-1) * exp(z + sum_j k!/(k-j)! H_j t^j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .counting import CountContext, stirling2
from .errors import DomainError, NonIntegralCoefficientError

TPoly = tuple[Fraction, ...]  # polynomial in t, ascending powers, trimmed


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, lowest degree first, no trailing zeros.

    The zero polynomial is the empty tuple.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            trimmed = list(self.coeffs)
            while trimmed and trimmed[-1] == 0:
                trimmed.pop()
            object.__setattr__(self, "coeffs", tuple(trimmed))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))
        )

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed(self) -> "IntPolynomial":
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def to_text(self) -> str:
        """Canonical ascending-power form, e.g. "1 + 26*t + 36*t^2"."""
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                t = "t" if e == 1 else f"t^{e}"
                parts.append(t if c == 1 else f"{c}*{t}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series truncated at z^N, exact rational ordinary coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("a truncated series needs at least the z^0 coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> Fraction:
        return self.coeffs[n]

    def egf_coefficient(self, n: int) -> Fraction:
        """n! times the ordinary coefficient: the EGF-counted value."""
        return self.coeffs[n] * factorial(n)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i] == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a[i] * b[j]
        return TruncatedSeries(tuple(out))

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(tuple(x * c for x in self.coeffs))

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            raise DomainError("negative series powers are not supported")
        result = TruncatedSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, by the derivative
        recurrence (n+1) g_{n+1} = sum_i (i+1) a_{i+1} g_{n-i}."""
        if self.coeffs[0] != 0:
            raise DomainError("series_exp needs a zero constant term")
        n_max = self.order
        a = self.coeffs
        g = [Fraction(1)] + [Fraction(0)] * n_max
        for n in range(n_max):
            acc = Fraction(0)
            for i in range(n + 1):
                acc += (i + 1) * a[i + 1] * g[n - i]
            g[n + 1] = acc / (n + 1)
        return TruncatedSeries(tuple(g))

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @classmethod
    def exponential(cls, c, order: int) -> "TruncatedSeries":
        """e^(cz): ordinary coefficients c^n / n!."""
        c = Fraction(c)
        return cls(tuple(c**n / factorial(n) for n in range(order + 1)))


def egf_flattened(k: int, order: int, ctx: CountContext | None = None) -> TruncatedSeries:
    """F_k(z) = exp((k-1) z + (exp(kz) - 1)/k), truncated.

    n! a_n equals the number of flattened k-Stirling words of order n+1.
    """
    if k < 1 or order < 0:
        raise DomainError(f"need k >= 1 and order >= 0, got k={k}, order={order}")
    inner = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        inner[n] = Fraction(k ** (n - 1), factorial(n))
    if order >= 1:
        inner[1] += k - 1
    return TruncatedSeries(tuple(inner)).exp()


def h_series(j: int, order: int, ctx: CountContext | None = None) -> TruncatedSeries:
    """H_j(z) = sum_n S(n-1, j) z^n / n!, with S(m, j) = 0 for m < 0."""
    if j < 1:
        raise DomainError(f"need j >= 1, got {j}")
    ctx = ctx or CountContext()
    return TruncatedSeries(
        tuple(Fraction(stirling2(n - 1, j, ctx), factorial(n)) for n in range(order + 1))
    )


def _tp_trim(p: list[Fraction]) -> TPoly:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _tp_add(a: TPoly, b: TPoly) -> TPoly:
    n = max(len(a), len(b))
    return _tp_trim(
        [(a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0)) for i in range(n)]
    )


def _tp_mul(a: TPoly, b: TPoly) -> TPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _tp_trim(out)


def _tp_scale(a: TPoly, c: Fraction) -> TPoly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


@dataclass(frozen=True)
class BivariateSeries:
    """Series in z truncated at z^N whose coefficients are polynomials in t.

    The t-degree is never truncated; it stays small (bounded by the
    maximum descent count at each order) in every use here.
    """

    coeffs: tuple[TPoly, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("a bivariate series needs at least the z^0 coefficient")
        object.__setattr__(
            self, "coeffs", tuple(_tp_trim([Fraction(c) for c in p]) for p in self.coeffs)
        )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, n: int) -> TPoly:
        return self.coeffs[n]

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        n = min(self.order, other.order)
        return BivariateSeries(tuple(_tp_add(self.coeffs[i], other.coeffs[i]) for i in range(n + 1)))

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        n = min(self.order, other.order)
        out: list[TPoly] = []
        for i in range(n + 1):
            acc: TPoly = ()
            for j in range(i + 1):
                acc = _tp_add(acc, _tp_mul(self.coeffs[j], other.coeffs[i - j]))
            out.append(acc)
        return BivariateSeries(tuple(out))

    def __pow__(self, e: int) -> "BivariateSeries":
        if e < 0:
            raise DomainError("negative series powers are not supported")
        result = BivariateSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exp(self) -> "BivariateSeries":
        """exp by the z-derivative recurrence; the z^0 coefficient must be
        the zero polynomial (zero constant term in the combined grading)."""
        if self.coeffs[0]:
            raise DomainError("bivariate exp needs a zero z^0 coefficient")
        n_max = self.order
        a = self.coeffs
        g: list[TPoly] = [(Fraction(1),)] + [()] * n_max
        for n in range(n_max):
            acc: TPoly = ()
            for i in range(n + 1):
                acc = _tp_add(acc, _tp_scale(_tp_mul(a[i + 1], g[n - i]), Fraction(i + 1)))
            g[n + 1] = _tp_scale(acc, Fraction(1, n + 1))
        return BivariateSeries(tuple(g))

    def eval_t(self, value) -> TruncatedSeries:
        """Substitute a rational for t, collapsing to a univariate series."""
        x = Fraction(value)
        out = []
        for p in self.coeffs:
            acc = Fraction(0)
            for c in reversed(p):
                acc = acc * x + c
            out.append(acc)
        return TruncatedSeries(tuple(out))

    @classmethod
    def one(cls, order: int) -> "BivariateSeries":
        return cls(((Fraction(1),),) + ((),) * order)


def descent_egf(k: int, order: int, ctx: CountContext | None = None) -> BivariateSeries:
    """The bivariate EGF of descent polynomials over flattened words.

    (t(e^z - 1) + 1)^(k-1) * exp(z + sum_{j=1}^{k} k!/(k-j)! H_j(z) t^j);
    n! times the z^n coefficient is the descent polynomial at order n+1.
    """
    if k < 1 or order < 0:
        raise DomainError(f"need k >= 1 and order >= 0, got k={k}, order={order}")
    ctx = ctx or CountContext()
    weight = BivariateSeries(
        ((Fraction(1),),)
        + tuple((Fraction(0), Fraction(1, factorial(n))) for n in range(1, order + 1))
    )
    arg_coeffs: list[TPoly] = []
    for n in range(order + 1):
        poly = [Fraction(0)] * (k + 1)
        if n == 1:
            poly[0] = Fraction(1)
        for j in range(1, k + 1):
            falling = factorial(k) // factorial(k - j)
            poly[j] = Fraction(falling * stirling2(n - 1, j, ctx), factorial(n))
        arg_coeffs.append(tuple(poly))
    return weight ** (k - 1) * BivariateSeries(tuple(arg_coeffs)).exp()


def extract_descent_polynomial(b: BivariateSeries, n: int) -> IntPolynomial:
    """n! times the z^n coefficient of b, cleared to integers.

    Raises NonIntegralCoefficientError when a denominator fails to clear
    or a coefficient is negative: both indicate a series bug, not input
    error.
    """
    if n > b.order:
        raise DomainError(f"series truncated at z^{b.order}, cannot extract z^{n}")
    f = factorial(n)
    cleared = [c * f for c in b.coefficient(n)]
    bad = [c for c in cleared if c.denominator != 1 or c < 0]
    if bad:
        raise NonIntegralCoefficientError(
            f"z^{n} extraction produced non-integral or negative coefficients: {cleared}"
        )
    return IntPolynomial(tuple(int(c) for c in cleared))
