"""Exact monic polynomials with rational roots, evaluation and bisection.

Every scalar is a :class:`fractions.Fraction`.  Polynomials store their
coefficients highest degree first, so ``Poly((1, 0, -4))`` is ``x**2 - 4``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import DegreeTooLow, NoSignChange

Rational = Fraction

DEFAULT_TOL = Fraction(1, 2**60)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction.

    Floats are refused: they would silently carry binary rounding into
    certificate arithmetic.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    """Canonical ``num/den`` string; integers print without a denominator."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def hull(cls, a, b) -> Interval:
        a, b = as_rational(a), as_rational(b)
        return cls(min(a, b), max(a, b))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi


@dataclass(frozen=True)
class RootList:
    """Roots sorted in nonincreasing order.

    Use :meth:`RootList.of` to sort arbitrary input; the plain constructor
    insists the values already come sorted.
    """

    roots: tuple[Fraction, ...]

    def __post_init__(self):
        roots = tuple(as_rational(r) for r in self.roots)
        if not roots:
            raise ValueError("a RootList needs at least one root")
        for a, b in zip(roots, roots[1:]):
            if a < b:
                raise ValueError("roots must be nonincreasing; use RootList.of() to sort")
        object.__setattr__(self, "roots", roots)

    @classmethod
    def of(cls, values: Iterable) -> RootList:
        return cls(tuple(sorted((as_rational(v) for v in values), reverse=True)))

    @property
    def simple(self) -> bool:
        return all(a > b for a, b in zip(self.roots, self.roots[1:]))

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def total(self) -> Fraction:
        return sum(self.roots, Fraction(0))


@dataclass(frozen=True)
class Poly:
    """Polynomial with rational coefficients, highest degree first.

    Root-built polynomials are monic; derivatives and differences such as
    ``q - p`` are not, so the class itself does not enforce monicity.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [as_rational(c) for c in self.coefficients]
        while len(cs) > 1 and cs[0] == 0:
            cs.pop(0)
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coefficients", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def monic(self) -> bool:
        return self.coefficients[0] == 1

    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        a = (Fraction(0),) * (n - len(a)) + a
        b = (Fraction(0),) * (n - len(b)) + b
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c) -> Poly:
        c = as_rational(c)
        return Poly(tuple(c * a for a in self.coefficients))

    def __mul__(self, other: Poly) -> Poly:
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Poly(tuple(out))

    def to_float(self) -> list[float]:
        return [float(c) for c in self.coefficients]


def poly_from_roots(roots: RootList | Sequence) -> Poly:
    """Expand prod(x - r) exactly; repeated roots are kept with multiplicity."""
    roots = list(roots)
    if not roots:
        raise ValueError("need at least one root")
    cs = [Fraction(1)]
    for r in roots:
        r = as_rational(r)
        # multiply by (x - r)
        nxt = cs + [Fraction(0)]
        for i, c in enumerate(cs):
            nxt[i + 1] -= r * c
        cs = nxt
    return Poly(tuple(cs))


def evaluate(p: Poly, x) -> Fraction:
    x = as_rational(x)
    acc = Fraction(0)
    for c in p.coefficients:
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    n = p.degree
    if n < 1:
        raise DegreeTooLow("cannot differentiate a constant in this setting")
    return Poly(tuple(c * (n - i) for i, c in enumerate(p.coefficients[:-1])))


def sign(x) -> int:
    return (x > 0) - (x < 0)


class IntPoly:
    """Positive integer multiple of a rational polynomial.

    Same sign as the original everywhere, evaluated with integer-only Horner
    at ``num/den`` points.  This is the hot path of root isolation.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[int]):
        self.coefficients = tuple(coefficients)

    @classmethod
    def from_poly(cls, p: Poly) -> IntPoly:
        den = lcm(*(c.denominator for c in p.coefficients))
        return cls(c.numerator * (den // c.denominator) for c in p.coefficients)

    def scaled_value(self, num: int, den: int) -> int:
        """Return den**deg * P(num/den), an integer with the sign of P(num/den)."""
        cs = self.coefficients
        acc = cs[0]
        dpow = 1
        for c in cs[1:]:
            dpow *= den
            acc = acc * num + c * dpow
        return acc

    def sign_at(self, num: int, den: int) -> int:
        v = self.scaled_value(num, den)
        return (v > 0) - (v < 0)


def bisect_scaled(ip: IntPoly, lo: Fraction, hi: Fraction, s_lo: int, s_hi: int,
                  tol: Fraction) -> Interval:
    """Bisection on [lo, hi] given exact endpoint signs.

    Endpoints are kept over a shared power-of-two multiple of one
    denominator, so each step is a handful of integer operations.
    """
    if s_lo == 0:
        return Interval(lo, lo)
    if s_hi == 0:
        return Interval(hi, hi)
    if s_lo == s_hi:
        raise NoSignChange(f"no sign change on [{lo}, {hi}]")
    den = lcm(lo.denominator, hi.denominator)
    L = lo.numerator * (den // lo.denominator)
    H = hi.numerator * (den // hi.denominator)
    tn, td = tol.numerator, tol.denominator
    while (H - L) * td > tn * den:
        L, H, den = 2 * L, 2 * H, 2 * den
        M = (L + H) // 2
        s = ip.sign_at(M, den)
        if s == 0:
            x = Fraction(M, den)
            return Interval(x, x)
        if s == s_lo:
            L = M
        else:
            H = M
    return Interval(Fraction(L, den), Fraction(H, den))


def isolate_root_in_interval(p: Poly, bracket: Interval, tol=DEFAULT_TOL) -> Interval:
    """Shrink ``bracket`` to width <= tol around a root of ``p`` by exact bisection."""
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    ip = IntPoly.from_poly(p)
    lo, hi = bracket.lo, bracket.hi
    s_lo = ip.sign_at(lo.numerator, lo.denominator)
    s_hi = ip.sign_at(hi.numerator, hi.denominator)
    return bisect_scaled(ip, lo, hi, s_lo, s_hi, tol)
