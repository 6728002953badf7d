"""Exact multivariate polynomials over arbitrary-precision rationals.

A polynomial is immutable: an arity plus a mapping from exponent tuples to
nonzero Fraction coefficients.  Term order is a view concern; sorted term
lists are produced on demand for a given MonomialOrder.
"""

from fractions import Fraction
from math import gcd

from .errors import ArityMismatch
from .orders import GREVLEX, MonomialOrder


class Polynomial:
    __slots__ = ("arity", "terms", "_hash")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        clean = {}
        if terms:
            for exps, coeff in (terms.items() if isinstance(terms, dict) else terms):
                if not isinstance(coeff, Fraction):
                    coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != arity:
                    raise ArityMismatch(f"exponent vector {exps} has wrong length for arity {arity}")
                prev = clean.get(exps)
                if prev is not None:
                    coeff = prev + coeff
                    if coeff == 0:
                        del clean[exps]
                        continue
                clean[exps] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls(arity, {})

    @classmethod
    def constant(cls, arity: int, value) -> "Polynomial":
        return cls(arity, {(0,) * arity: Fraction(value)})

    @classmethod
    def variable(cls, arity: int, index: int) -> "Polynomial":
        exps = tuple(1 if i == index else 0 for i in range(arity))
        return cls(arity, {exps: Fraction(1)})

    @classmethod
    def one(cls, arity: int) -> "Polynomial":
        return cls.constant(arity, 1)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        [(exps, coeff)] = self.terms.items()
        if any(exps):
            raise ValueError("not a constant polynomial")
        return coeff

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(exps) for exps in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(exps[var] for exps in self.terms)

    def variables_present(self):
        present = set()
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    present.add(i)
        return present

    # -- ordering views ----------------------------------------------------

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        exps = max(self.terms, key=order.key)
        return exps, self.terms[exps]

    def sort_key(self, order: MonomialOrder = GREVLEX):
        return tuple((order.key(e), c.numerator, c.denominator) for e, c in self.sorted_terms(order))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.arity, other)
        self._check(other)
        res = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = res.get(exps, Fraction(0)) + coeff
            if acc == 0:
                res.pop(exps, None)
            else:
                res[exps] = acc
        out = Polynomial.__new__(Polynomial)
        out.arity, out.terms, out._hash = self.arity, res, None
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.arity = self.arity
        out.terms = {e: -c for e, c in self.terms.items()}
        out._hash = None
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.arity, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(other))
        self._check(other)
        res = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = res.get(exps, Fraction(0)) + c1 * c2
                if acc == 0:
                    res.pop(exps, None)
                else:
                    res[exps] = acc
        out = Polynomial.__new__(Polynomial)
        out.arity, out.terms, out._hash = self.arity, res, None
        return out

    __rmul__ = __mul__

    def scale(self, factor: Fraction) -> "Polynomial":
        if factor == 0:
            return Polynomial.zero(self.arity)
        out = Polynomial.__new__(Polynomial)
        out.arity = self.arity
        out.terms = {e: c * factor for e, c in self.terms.items()}
        out._hash = None
        return out

    def mul_term(self, exps, coeff: Fraction) -> "Polynomial":
        out = Polynomial.__new__(Polynomial)
        out.arity = self.arity
        out.terms = {tuple(a + b for a, b in zip(e, exps)): c * coeff for e, c in self.terms.items()}
        out._hash = None
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- normalisation -----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive; 0 for the zero poly."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Divide out the content and make the leading coefficient positive."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term(order)[1] < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_term(order)[1])

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point) -> Fraction:
        if len(point) != self.arity:
            raise ArityMismatch(f"point of length {len(point)} for arity {self.arity}")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            val = coeff
            for x, e in zip(point, exps):
                if e:
                    val *= Fraction(x) ** e
            total += val
        return total

    def substitute(self, images) -> "Polynomial":
        """Substitute polynomial images[i] for variable i.  All images must
        share one arity, which becomes the result arity."""
        if len(images) != self.arity:
            raise ArityMismatch("one image per variable required")
        if not images:
            return Polynomial(0, dict(self.terms))
        target_arity = images[0].arity
        result = Polynomial.zero(target_arity)
        powers = [{} for _ in images]
        for exps, coeff in sorted(self.terms.items()):
            term = Polynomial.constant(target_arity, coeff)
            for i, e in enumerate(exps):
                if not e:
                    continue
                cache = powers[i]
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            result = result + term
        return result

    def embed(self, new_arity: int, var_map) -> "Polynomial":
        """Reindex variables: old index i becomes var_map[i] in the new ring."""
        res = {}
        for exps, coeff in self.terms.items():
            new = [0] * new_arity
            for i, e in enumerate(exps):
                if e:
                    new[var_map[i]] += e
            res[tuple(new)] = coeff
        return Polynomial(new_arity, res)

    def restrict(self, keep) -> "Polynomial":
        """Project onto the listed variables; all others must be absent."""
        keep = list(keep)
        pos = {v: i for i, v in enumerate(keep)}
        res = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(keep)
            for i, e in enumerate(exps):
                if not e:
                    continue
                if i not in pos:
                    raise ValueError(f"variable {i} still present; cannot restrict")
                new[pos[i]] = e
            res[tuple(new)] = coeff
        return Polynomial(len(keep), res)

    def coefficients_wrt(self, vars_subset, order: MonomialOrder = GREVLEX):
        """Collect by monomials in the given variables.

        Returns [(vars_monomial_exps, coefficient_polynomial)] with the
        monomials strictly descending in the order and coefficients living in
        the full ring but free of the given variables.
        """
        vset = set(vars_subset)
        buckets = {}
        for exps, coeff in self.terms.items():
            head = tuple(e if i in vset else 0 for i, e in enumerate(exps))
            tail = tuple(0 if i in vset else e for i, e in enumerate(exps))
            buckets.setdefault(head, {})[tail] = coeff
        out = []
        for head in sorted(buckets, key=order.key, reverse=True):
            out.append((head, Polynomial(self.arity, buckets[head])))
        return out

    # -- comparison plumbing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.arity, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        names = [f"x{i}" for i in range(self.arity)]
        return format_polynomial(self, names)


def format_polynomial(p: Polynomial, names, order: MonomialOrder = GREVLEX) -> str:
    """Canonical compact string, e.g. ``u1*u3-1`` or ``3/2*x^2*y``."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, coeff in p.sorted_terms(order):
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = f"{mag}*" + "*".join(factors)
        else:
            body = str(mag)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append(("+" if coeff > 0 else "-") + body)
    return "".join(parts)


def coefficient_list(p: Polynomial, vars_subset, order: MonomialOrder = GREVLEX):
    """The nonzero coefficients of p collected by monomials in vars_subset,
    descending; the companion of coefficients_wrt that drops the monomials."""
    return [c for _, c in p.coefficients_wrt(vars_subset, order)]
