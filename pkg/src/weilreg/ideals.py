"""Ideals and the Buchberger engine.

The engine is plain Buchberger with the product and chain criteria and
normal-strategy pair selection, producing the reduced (hence canonical)
Groebner basis.  A configurable cap on processed S-pairs turns intractable
instances into a BudgetExceeded error instead of a hang.
"""

import threading
from fractions import Fraction

from .errors import ArityMismatch, BudgetExceeded
from .orders import GREVLEX, MonomialOrder, block_order
from .poly import Polynomial

DEFAULT_MAX_STEPS = 200_000

_tls = threading.local()


def _bump_steps(n: int = 1):
    _tls.count = getattr(_tls, "count", 0) + n


def step_tally() -> int:
    """S-pairs processed in this thread since the last reset."""
    return getattr(_tls, "count", 0)


def reset_step_tally():
    _tls.count = 0


def set_default_max_steps(n: int):
    global DEFAULT_MAX_STEPS
    DEFAULT_MAX_STEPS = int(n)


# -- polynomial reduction ----------------------------------------------------


def reduce_full(f: Polynomial, basis, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Normal form of f modulo the list of divisors: every term reduced."""
    if not basis:
        return f
    leads = [(g.leading_term(order), g) for g in basis if not g.is_zero()]
    remainder = Polynomial.zero(f.arity)
    p = f
    while not p.is_zero():
        exps, coeff = p.leading_term(order)
        for (lexps, lcoeff), g in leads:
            diff = tuple(a - b for a, b in zip(exps, lexps))
            if all(d >= 0 for d in diff):
                p = p - g.mul_term(diff, coeff / lcoeff)
                break
        else:
            head = Polynomial(f.arity, {exps: coeff})
            remainder = remainder + head
            p = p - head
    return remainder


def divide_with_quotients(f: Polynomial, divisors, order: MonomialOrder = GREVLEX):
    """Division with quotient tracking: f = sum(q_i * divisors_i) + remainder."""
    quotients = [Polynomial.zero(f.arity) for _ in divisors]
    leads = [(g.leading_term(order) if not g.is_zero() else None) for g in divisors]
    remainder = Polynomial.zero(f.arity)
    p = f
    while not p.is_zero():
        exps, coeff = p.leading_term(order)
        for i, lead in enumerate(leads):
            if lead is None:
                continue
            lexps, lcoeff = lead
            diff = tuple(a - b for a, b in zip(exps, lexps))
            if all(d >= 0 for d in diff):
                c = coeff / lcoeff
                quotients[i] = quotients[i] + Polynomial(f.arity, {diff: c})
                p = p - divisors[i].mul_term(diff, c)
                break
        else:
            head = Polynomial(f.arity, {exps: coeff})
            remainder = remainder + head
            p = p - head
    return quotients, remainder


# -- Buchberger ---------------------------------------------------------------


def _s_polynomial(f, g, order):
    (ef, cf) = f.leading_term(order)
    (eg, cg) = g.leading_term(order)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = tuple(l - a for l, a in zip(lcm, ef))
    mg = tuple(l - b for l, b in zip(lcm, eg))
    return f.mul_term(mf, Fraction(1) / cf) - g.mul_term(mg, Fraction(1) / cg)


def _reduced_basis(basis, order):
    basis = [g.monic(order) for g in basis if not g.is_zero()]
    # minimal: drop generators whose lead is divisible by another's
    basis.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    minimal = []
    for g in basis:
        eg = g.leading_term(order)[0]
        if any(all(a >= b for a, b in zip(eg, h.leading_term(order)[0])) for h in minimal):
            continue
        minimal.append(g)
    # inter-reduce tails
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = minimal[:i] + minimal[i + 1:]
            r = reduce_full(minimal[i], others, order)
            if r.is_zero():
                del minimal[i]
                changed = True
                break
            r = r.monic(order)
            if r != minimal[i]:
                minimal[i] = r
                changed = True
    minimal.sort(key=lambda g: order.key(g.leading_term(order)[0]), reverse=True)
    return tuple(minimal)


def buchberger(generators, order: MonomialOrder = GREVLEX, max_steps=None):
    """Reduced Groebner basis of the ideal the generators span."""
    limit = DEFAULT_MAX_STEPS if max_steps is None else max_steps
    gens = [g.primitive(order) for g in generators if not g.is_zero()]
    seen = set()
    basis = []
    for g in sorted(gens, key=lambda g: g.sort_key(order)):
        if g not in seen:
            seen.add(g)
            basis.append(g)
    if not basis:
        return ()
    leads = [g.leading_term(order)[0] for g in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    done = set()
    steps = 0

    def lcm_of(i, j):
        return tuple(max(a, b) for a, b in zip(leads[i], leads[j]))

    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(lcm_of(*p)), p))
        pairs.remove((i, j))
        done.add((i, j))
        steps += 1
        _bump_steps()
        if steps > limit:
            raise BudgetExceeded(steps, limit)
        lcm = lcm_of(i, j)
        # product criterion: disjoint leading monomials
        if all(a + b == l for a, b, l in zip(leads[i], leads[j], lcm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if all(l >= e for l, e in zip(lcm, leads[k])):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in done and pjk in done:
                    skip = True
                    break
        if skip:
            continue
        s = _s_polynomial(basis[i], basis[j], order)
        r = reduce_full(s, basis, order)
        if r.is_zero():
            continue
        r = r.primitive(order)
        basis.append(r)
        leads.append(r.leading_term(order)[0])
        t = len(basis) - 1
        for k in range(t):
            pairs.add((k, t))
    return _reduced_basis(basis, order)


# -- the Ideal type -----------------------------------------------------------


class Ideal:
    """Finitely generated ideal with a lazily cached reduced basis per order."""

    __slots__ = ("arity", "gens", "_bases")

    def __init__(self, arity: int, gens):
        gens = tuple(gens)
        for g in gens:
            if g.arity != arity:
                raise ArityMismatch(f"generator arity {g.arity} in ideal of arity {arity}")
        self.arity = arity
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._bases = {}

    @classmethod
    def zero(cls, arity: int) -> "Ideal":
        return cls(arity, ())

    def groebner_basis(self, order: MonomialOrder = GREVLEX, max_steps=None):
        cached = self._bases.get(order)
        if cached is None:
            cached = buchberger(self.gens, order, max_steps)
            self._bases[order] = cached
        return cached

    def normal_form(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        if f.arity != self.arity:
            raise ArityMismatch(f"polynomial arity {f.arity} vs ideal arity {self.arity}")
        return reduce_full(f, list(self.groebner_basis(order)), order)

    def contains(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return self.normal_form(f, order).is_zero()

    def is_unit(self) -> bool:
        basis = self.groebner_basis(GREVLEX)
        return len(basis) == 1 and basis[0].is_constant()

    def plus(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            extra = other.gens
        else:
            extra = tuple(other)
        return Ideal(self.arity, self.gens + tuple(g for g in extra if not g.is_zero()))

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.arity != other.arity:
            return False
        return all(other.contains(g) for g in self.gens) and all(self.contains(g) for g in other.gens)

    def __hash__(self):
        raise TypeError("ideals are compared by membership; not hashable")

    def __repr__(self):
        return f"Ideal(arity={self.arity}, gens={list(self.gens)})"


def normal_form(f: Polynomial, ideal: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    return ideal.normal_form(f, order)


def is_empty_variety(ideal: Ideal) -> bool:
    """True iff 1 lies in the ideal (no points over the algebraic closure)."""
    return ideal.is_unit()


def eliminate(ideal: Ideal, variables) -> Ideal:
    """Intersection with the subring omitting the given variables, presented
    by generators free of them (same ambient arity)."""
    variables = set(variables)
    if not variables:
        return Ideal(ideal.arity, ideal.groebner_basis(GREVLEX))
    if not variables <= set(range(ideal.arity)):
        raise ArityMismatch("eliminated variables outside the ambient ring")
    order = block_order(variables)
    basis = ideal.groebner_basis(order)
    kept = [g for g in basis if not (g.variables_present() & variables)]
    return Ideal(ideal.arity, kept)


def saturate(ideal: Ideal, f: Polynomial) -> Ideal:
    """I : f^infinity by the auxiliary-variable method."""
    if f.is_zero():
        raise ZeroDivisionError("cannot saturate by the zero polynomial")
    n = ideal.arity
    emb = list(range(n))
    big = [g.embed(n + 1, emb) for g in ideal.gens]
    t = Polynomial.variable(n + 1, n)
    big.append(t * f.embed(n + 1, emb) - 1)
    out = eliminate(Ideal(n + 1, big), {n})
    return Ideal(n, [g.restrict(range(n)) for g in out.gens])


def saturate_many(ideal: Ideal, polys) -> Ideal:
    for f in polys:
        ideal = saturate(ideal, f)
    return ideal


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """Ideal intersection via the auxiliary-variable trick."""
    if a.arity != b.arity:
        raise ArityMismatch("intersection of ideals in different rings")
    n = a.arity
    emb = list(range(n))
    t = Polynomial.variable(n + 1, n)
    gens = [t * g.embed(n + 1, emb) for g in a.gens]
    gens += [(Polynomial.one(n + 1) - t) * g.embed(n + 1, emb) for g in b.gens]
    out = eliminate(Ideal(n + 1, gens), {n})
    return Ideal(n, [g.restrict(range(n)) for g in out.gens])


def radical_membership(f: Polynomial, ideal: Ideal) -> bool:
    """f in the radical of the ideal, by the auxiliary-variable trick."""
    if f.is_zero():
        return True
    n = ideal.arity
    emb = list(range(n))
    gens = [g.embed(n + 1, emb) for g in ideal.gens]
    t = Polynomial.variable(n + 1, n)
    gens.append(Polynomial.one(n + 1) - t * f.embed(n + 1, emb))
    return is_empty_variety(Ideal(n + 1, gens))


def ideals_equal(a: Ideal, b: Ideal) -> bool:
    return a == b
