"""
Exact special values for eta invariants

Bernoulli polynomials and Hurwitz zeta values in exact rational arithmetic:
- zeta_c(1-n) = -B_n(c')/n at non-positive integers (exact)
- zeta_c(s) for real s > 1 by direct summation with a rigorous tail bound

Conventions:
- zeta_0 := zeta(., 1), the Riemann zeta function. This fixes B_1(1) = +1/2.
- Rationals are fractions.Fraction and serialize as "p/q" ("p" when q = 1).
"""

import math
import re
from fractions import Fraction
from functools import lru_cache

import numpy as np

import config

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def binomial(n, k):
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def bernoulli_number(m):
    """
    Bernoulli number B_m = B_m(0) (first convention, B_1 = -1/2).

    Uses the recurrence sum_{k<m+1} C(m+1, k) B_k = 0 for m >= 1.
    """
    if m < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {m}")
    if m == 0:
        return Fraction(1)
    if m > 1 and m % 2 == 1:
        return Fraction(0)
    total = Fraction(0)
    for k in range(m):
        total += binomial(m + 1, k) * bernoulli_number(k)
    return -total / (m + 1)


def bernoulli_poly(n, c):
    """
    Evaluate the Bernoulli polynomial B_n at a rational point.

    Args:
        n: Degree, n >= 0
        c: Rational evaluation point

    Returns:
        B_n(c) as an exact Fraction
    """
    if n < 0:
        raise ValueError(f"Bernoulli polynomial degree must be >= 0, got {n}")
    x = as_rational(c)
    return sum(
        (binomial(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


def hurwitz_zeta_neg(n, c):
    """
    Exact Hurwitz zeta value zeta_c(1 - n).

    Args:
        n: Positive integer
        c: Twist parameter, 0 <= c < 1 (c = 0 means the Riemann zeta function)

    Returns:
        -B_n(c')/n with c' = c for c > 0 and c' = 1 for c = 0
    """
    if n < 1:
        raise ValueError(f"hurwitz_zeta_neg requires n >= 1, got {n}")
    c = as_twist(c)
    shifted = c if c > 0 else Fraction(1)
    return -bernoulli_poly(n, shifted) / n


def complementary_twist(c):
    """The twist 1 - c reduced into [0, 1); zeta_{1-0} = zeta_1 = zeta_0."""
    return (1 - as_twist(c)) % 1


def circle_eta(c):
    """Eta invariant of i d/dt on a circle twisted by e^{2 pi i c}: zeta_c(0) - zeta_{1-c}(0)."""
    return hurwitz_zeta_neg(1, c) - hurwitz_zeta_neg(1, complementary_twist(c))


def _tail_error_bound(s, start):
    # Trapezoid error for f(x) = x^{-s} on [start, inf): sum of sup f'' per unit step / 12
    return (s * start ** (-s - 1) + s * (s + 1) * start ** (-s - 2)) / 12.0


def hurwitz_zeta_series(s, c, tol=config.SERIES_TOL):
    """
    Hurwitz zeta zeta_c(s) for real s > 1 by direct summation.

    The first N terms are summed explicitly; the remainder sum_{k>=N} f(k + c')
    is replaced by its trapezoid estimate f(N + c')/2 + integral, whose error is
    bounded by (|f'| + f'')/12 at the cut. N doubles until that bound is <= tol.

    Args:
        s: Real exponent, s > 1
        c: Twist parameter, 0 <= c < 1
        tol: Absolute error target

    Returns:
        Float approximation within tol of zeta_c(s)
    """
    if not s > 1:
        raise ValueError(f"Hurwitz zeta series diverges for s <= 1 (got s={s})")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    c = as_twist(c)
    shift = float(c) if c > 0 else 1.0

    n_terms = 16
    while _tail_error_bound(s, n_terms + shift) > tol:
        n_terms *= 2

    terms = (np.arange(n_terms, dtype=np.float64) + shift) ** (-s)
    start = n_terms + shift
    tail = 0.5 * start ** (-s) + start ** (1 - s) / (s - 1)
    return math.fsum(terms[::-1]) + tail


def as_rational(value):
    """Coerce ints, Fractions and "p/q" strings to Fraction; floats are refused."""
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise ValueError(f"exact rational expected (int, Fraction or 'p/q'), got {value!r}")


def as_twist(c):
    """Validate a twist parameter: rational with 0 <= c < 1."""
    c = as_rational(c)
    if not 0 <= c < 1:
        raise ValueError(f"twist parameter must satisfy 0 <= c < 1, got {format_rational(c)}")
    return c


def parse_rational(text):
    """
    Parse "p/q" or "p" into a Fraction.

    Decimal strings are rejected: exact invariants never pass through floats.
    """
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise ValueError(f"rational must be written 'p/q' or as an integer, got {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value):
    """Render as "p/q" in lowest terms, "p" when the denominator is 1."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_weight(weight):
    """Serialize a sequence of rationals as a list of "p/q" strings."""
    return [format_rational(x) for x in weight]
