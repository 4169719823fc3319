"""Descent statistics gathered by enumeration, plus exploratory checks.

Unimodality and real-rootedness of the descent polynomials are open
questions; this module only gathers evidence.  The real-rootedness test is
an exact decision procedure (square-free reduction, then a Sturm chain
over a Cauchy root bound, all in rational arithmetic), never a numeric
root finder.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import enumeration
from .counting import CountContext
from .errors import DomainError
from .series import IntPolynomial, descent_egf, extract_descent_polynomial
from .words import word_stats


def descent_polynomial_bruteforce(
    n: int, k: int, *, budget: int | None = None, force: bool = False
) -> IntPolynomial:
    """Sum of t^descents over the flattened words of order n."""
    counts: dict[int, int] = {}
    for w in enumeration.gen_flattened(n, k, budget=budget, force=force):
        d = word_stats(w).descents
        counts[d] = counts.get(d, 0) + 1
    top = max(counts)
    return IntPolynomial(tuple(counts.get(d, 0) for d in range(top + 1)))


def joint_distribution(
    n: int, k: int, *, budget: int | None = None, force: bool = False
) -> dict[tuple[int, int, int], int]:
    """Tally of (descents, plateaus, ascents) over flattened words."""
    tally: dict[tuple[int, int, int], int] = {}
    for w in enumeration.gen_flattened(n, k, budget=budget, force=force):
        s = word_stats(w)
        key = (s.descents, s.plateaus, s.ascents)
        tally[key] = tally.get(key, 0) + 1
    return tally


def is_unimodal(p: IntPolynomial) -> bool:
    """True iff the coefficients weakly rise then weakly fall.

    The zero polynomial counts as unimodal (vacuous case).
    """
    c = p.coeffs
    i = 0
    while i + 1 < len(c) and c[i] <= c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] >= c[i + 1]:
        i += 1
    return i + 1 >= len(c)


def is_real_rooted(p: IntPolynomial) -> bool:
    """Exact decision: are all complex roots of p real?

    Reduces to the square-free part, then compares its degree against the
    number of distinct real roots counted by a Sturm chain evaluated at
    +-(Cauchy bound).  Constants (no roots) decide True.
    """
    if not p.coeffs:
        raise DomainError("the zero polynomial has no root multiset to decide")
    poly = [Fraction(c) for c in p.coeffs]
    square_free = _fp_quotient(poly, _fp_gcd(poly, _fp_derivative(poly)))
    deg = len(square_free) - 1
    if deg <= 0:
        return True
    chain = _sturm_chain(square_free)
    bound = _cauchy_bound(square_free)
    return _sign_variations(chain, -bound) - _sign_variations(chain, bound) == deg


@dataclass(frozen=True)
class ConjectureRow:
    """One polynomial's verdicts for the evidence report."""

    n: int
    k: int
    coefficients: tuple[int, ...]
    unimodal: bool
    real_rooted: bool


def conjecture_report(
    k: int, max_n: int, ctx: CountContext | None = None
) -> list[ConjectureRow]:
    """Unimodal / real-rooted verdicts for orders 1..max_n (series route)."""
    ctx = ctx or CountContext()
    egf = descent_egf(k, max_n - 1, ctx)
    rows = []
    for n in range(1, max_n + 1):
        poly = extract_descent_polynomial(egf, n - 1)
        rows.append(
            ConjectureRow(n, k, poly.coeffs, is_unimodal(poly), is_real_rooted(poly))
        )
    return rows


# -- dense rational polynomial helpers (ascending coefficients) --


def _fp_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _fp_derivative(p: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:]


def _fp_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _fp_trim(list(a))
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
        rem.pop()  # leading term cancelled exactly
        _fp_trim(rem)
    return _fp_trim(quo), rem


def _fp_quotient(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    quo, rem = _fp_divmod(a, b)
    if rem:
        raise AssertionError("expected exact polynomial division")
    return quo


def _fp_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        _, r = _fp_divmod(a, b)
        a, b = b, r
    if not a:
        raise AssertionError("gcd of two zero polynomials")
    lead = a[-1]
    return [c / lead for c in a]


def _fp_evaluate(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [list(p), _fp_derivative(p)]
    while len(chain[-1]) > 1:
        _, r = _fp_divmod(chain[-2], chain[-1])
        if not r:
            break  # square-free input: only a constant remainder ends the chain
        chain.append([-c for c in r])
    return chain


def _cauchy_bound(p: list[Fraction]) -> Fraction:
    lead = abs(p[-1])
    return 1 + max(abs(c) for c in p) / lead


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = _fp_evaluate(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)
