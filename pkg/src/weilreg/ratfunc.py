"""Rational functions on an irreducible affine variety, and the fraction
substitution machinery used to compose coordinate expressions.

Numerator and denominator are kept exactly as supplied; use ``simplified``
where a canonical representative is wanted.  Equality is cross-multiplication
modulo the host ideal, so un-simplified representatives compare correctly.
"""

from fractions import Fraction

from .errors import ZeroDenominator
from .exprparse import parse_fraction
from .poly import Polynomial, format_polynomial
from .polygcd import simplify_fraction
from .varieties import AffineVariety


def compose_poly(p: Polynomial, images):
    """Substitute fraction pairs images[i] = (num_i, den_i) into p.

    Returns a fraction pair over the images' ring.
    """
    if not images:
        raise ValueError("no images supplied")
    arity = images[0][0].arity
    degs = [p.degree_in(i) if p.degree_in(i) > 0 else 0 for i in range(p.arity)]
    den = Polynomial.one(arity)
    den_pows = []
    for (num_i, den_i), d in zip(images, degs):
        pows = [Polynomial.one(arity)]
        for _ in range(d):
            pows.append(pows[-1] * den_i)
        den_pows.append(pows)
        den = den * pows[d]
    total = Polynomial.zero(arity)
    for exps, coeff in sorted(p.terms.items()):
        term = Polynomial.constant(arity, coeff)
        for i, e in enumerate(exps):
            if e:
                term = term * images[i][0] ** e
            term = term * den_pows[i][degs[i] - e]
        total = total + term
    return total, den


def compose_fraction(num: Polynomial, den: Polynomial, images):
    """(num/den) after substituting fraction images for the variables."""
    n_num, d_num = compose_poly(num, images)
    n_den, d_den = compose_poly(den, images)
    return n_num * d_den, d_num * n_den


class RationalFunction:
    """Element of the function field of an irreducible affine variety."""

    __slots__ = ("host", "num", "den")

    def __init__(self, host: AffineVariety, num: Polynomial, den: Polynomial = None):
        if not host.irreducible:
            raise ValueError("rational functions require an irreducible host")
        if den is None:
            den = Polynomial.one(host.arity)
        if num.arity != host.arity or den.arity != host.arity:
            raise ValueError("numerator/denominator arity does not match the host")
        if host.ideal.contains(den):
            raise ZeroDenominator(f"denominator {host.format(den)} vanishes on the host")
        self.host = host
        self.num = num
        self.den = den

    @classmethod
    def parse(cls, host: AffineVariety, text: str) -> "RationalFunction":
        num, den = parse_fraction(text, host.names)
        return cls(host, num, den)

    @classmethod
    def coordinate(cls, host: AffineVariety, index: int) -> "RationalFunction":
        return cls(host, Polynomial.variable(host.arity, index))

    def fraction_pair(self):
        return self.num, self.den

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def simplified(self) -> "RationalFunction":
        num = self.host.ideal.normal_form(self.num)
        den = self.host.ideal.normal_form(self.den)
        num, den = simplify_fraction(num, den)
        return RationalFunction(self.host, num, den)

    def equals(self, other: "RationalFunction") -> bool:
        cross = self.num * other.den - other.num * self.den
        return self.host.ideal.contains(cross)

    def evaluate(self, point) -> Fraction:
        point = self.host.require_point(point)
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDenominator(f"denominator vanishes at {point}")
        return self.num.evaluate(point) / d

    def defined_at(self, point) -> bool:
        return self.den.evaluate(self.host.require_point(point)) != 0

    def substitute(self, images, new_host: AffineVariety) -> "RationalFunction":
        """Compose with fraction images of this host's coordinates, producing
        a function on new_host."""
        num, den = compose_fraction(self.num, self.den, images)
        if new_host.ideal.contains(den):
            raise ZeroDenominator("denominator vanishes identically after substitution")
        num, den = simplify_fraction(new_host.ideal.normal_form(num), new_host.ideal.normal_form(den))
        return RationalFunction(new_host, num, den)

    # arithmetic stays raw; equality is ideal-aware
    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.host, self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.host, self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.host, self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if self.host.ideal.contains(other.num):
            raise ZeroDenominator("division by a function vanishing on the host")
        return RationalFunction(self.host, self.num * other.den, self.den * other.num)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.host.names != self.host.names:
                raise ValueError("rational functions on different hosts")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(self.host, other)
        return RationalFunction(self.host, Polynomial.constant(self.host.arity, other))

    def __repr__(self):
        return fraction_text(self)


def fraction_text(f: "RationalFunction") -> str:
    """Canonical compact form, parenthesising only where reparsing needs it."""
    names = f.host.names
    num = format_polynomial(f.num, names)
    if f.den.is_constant() and f.den.constant_value() == 1:
        return num
    den = format_polynomial(f.den, names)
    if any(c in num[1:] for c in "+-"):
        num = f"({num})"
    if any(c in den[1:] for c in "+-*"):
        den = f"({den})"
    return f"{num}/{den}"
