"""Rational actions of algebraic groups on affine varieties.

A parametric action is a rational map G x X -> X validated against the
identity and associativity laws; a finite action is one birational map per
group element validated against the multiplication table.  The module
computes the lifted product map (g, x) |-> (g, rho(g, x)), its inverse, and
the locus of G-regular points.
"""

from dataclasses import dataclass
from .errors import EmptyLocus, NotAnAction, RoundTripFailure, ZeroDenominator
from .groups import AlgebraicGroup
from .ideals import Ideal
from .maps import (
    RationalMap,
    biregular_locus,
    compose,
    identity_map,
    make_rational_map,
    maps_equal,
    point_status,
    _roundtrip_is_identity,
)
from .poly import Polynomial
from .polygcd import simplify_fraction
from .ratfunc import RationalFunction, compose_fraction
from .varieties import AffineVariety, OpenSubset, ProductAmbient


@dataclass
class GRegularLocus:
    """The computed locus of points whose lifted action map is biregular on a
    dense set of group elements."""

    locus: OpenSubset
    bad_ideals: list
    tilde_complement: object  # Ideal (parametric) or {element: Ideal} (finite)


class RationalAction:
    __slots__ = ("group", "space", "ambient", "rho", "maps", "domain",
                 "_tilde", "_xreg", "_specialized")

    def __init__(self, group: AlgebraicGroup, space: AffineVariety, rho=None,
                 maps=None, domain: OpenSubset = None):
        self.group = group
        self.space = space
        self.ambient = None if group.is_finite else ProductAmbient(group.variety, space)
        self.rho = rho
        self.maps = dict(maps) if maps is not None else None
        self.domain = domain if domain is not None else OpenSubset.full(space)
        self._tilde = None
        self._xreg = None
        self._specialized = {}

    @property
    def is_finite(self) -> bool:
        return self.group.is_finite

    @property
    def is_restricted(self) -> bool:
        return not self.domain.is_all()

    def element_map(self, g) -> RationalMap:
        return specialize(self, g)

    def __repr__(self):
        kind = "finite" if self.is_finite else "parametric"
        return f"RationalAction({kind}, on {self.space!r})"


def _group_images_const(action: RationalAction, point):
    """Fraction images substituting a constant group point into the product
    ring coordinates: group block -> constants, space block -> variables."""
    n = action.space.arity
    images = [(Polynomial.constant(n, c), Polynomial.one(n)) for c in point]
    images += [(Polynomial.variable(n, j), Polynomial.one(n)) for j in range(n)]
    return images


def specialize(action: RationalAction, g) -> RationalMap:
    """The birational map of one group element, with its inverse attached."""
    g = action.group.require_point(g)
    cached = action._specialized.get(g)
    if cached is not None:
        return cached
    if action.is_finite:
        result = action.maps[g]
    else:
        result = _specialize_raw(action, g)
        g_inv = action.group.invert_point(g)
        candidate = _specialize_raw(action, g_inv)
        if not (_roundtrip_is_identity(result, candidate) and _roundtrip_is_identity(candidate, result)):
            raise RoundTripFailure(f"specialisations at {g} and {g_inv} are not mutually inverse")
        result._inverse = candidate
        candidate._inverse = result
        result._dominant = candidate._dominant = True
        result._birational = candidate._birational = True
        action._specialized[g_inv] = candidate
    action._specialized[g] = result
    return result


def _specialize_raw(action: RationalAction, point) -> RationalMap:
    X = action.space
    images = _group_images_const(action, point)
    last_error = None
    for rep in action.rho.reps:
        coords = []
        try:
            for f in rep:
                num, den = compose_fraction(f.num, f.den, images)
                if X.ideal.contains(den):
                    raise ZeroDenominator(
                        f"denominators vanish identically at the group point {point}"
                    )
                num, den = simplify_fraction(X.ideal.normal_form(num), X.ideal.normal_form(den))
                coords.append(RationalFunction(X, num, den))
        except ZeroDenominator as err:
            last_error = err
            continue
        return make_rational_map(X, X, [tuple(coords)])
    raise last_error


def make_rational_action(group: AlgebraicGroup, space: AffineVariety, rho) -> RationalAction:
    """Validate the action laws and build the action.

    Parametric: rho is a rational map on the product of the group and the
    space; identity and associativity are checked as exact rational-map
    identities.  Finite: rho is a mapping element -> RationalMap; the
    homomorphism law is checked on all pairs.
    """
    if group.is_finite:
        action = RationalAction(group, space, maps=rho)
        _validate_finite_action(action)
        return action
    action = RationalAction(group, space, rho=rho)
    if rho.source.names != action.ambient.names or rho.target.names != space.names:
        raise NotAnAction("shape", "the map must go from the group-space product to the space")
    _validate_identity_law(action)
    _validate_associativity_law(action)
    return action


def _validate_identity_law(action: RationalAction):
    e = action.group.identity_point()
    try:
        at_e = _specialize_raw(action, e)
    except ZeroDenominator as err:
        raise NotAnAction("identity", str(err))
    ident = identity_map(action.space)
    if not maps_equal(at_e, ident):
        k = next(i for i, (a, b) in enumerate(zip(at_e.reps[0], ident.reps[0])) if not a.equals(b))
        residue = at_e.reps[0][k].num - at_e.reps[0][k].den * Polynomial.variable(action.space.arity, k)
        raise NotAnAction("identity", action.space.format(action.space.ideal.normal_form(residue)))


def _validate_associativity_law(action: RationalAction):
    """rho(m(g, g'), x) = rho(g, rho(g', x)) on G x G x X."""
    G, X = action.group, action.space
    r, n = G.arity, X.arity
    big = ProductAmbient(G.variety, action.ambient.variety)
    arity = 2 * r + n
    big_ideal = big.variety.ideal

    def var(i):
        return (Polynomial.variable(arity, i), Polynomial.one(arity))

    inner_images = [var(r + i) for i in range(r)] + [var(2 * r + j) for j in range(n)]
    inner = []
    for f in action.rho.reps[0]:
        num, den = compose_fraction(f.num, f.den, inner_images)
        if big_ideal.contains(den):
            raise NotAnAction("associativity", "inner substitution has identically zero denominator")
        inner.append((num, den))
    lhs_images = [var(i) for i in range(r)] + inner
    mult_embedded = [m.embed(arity, list(range(2 * r))) for m in G.mult]
    rhs_images = [(m, Polynomial.one(arity)) for m in mult_embedded]
    rhs_images += [var(2 * r + j) for j in range(n)]
    for k, f in enumerate(action.rho.reps[0]):
        lnum, lden = compose_fraction(f.num, f.den, lhs_images)
        rnum, rden = compose_fraction(f.num, f.den, rhs_images)
        if big_ideal.contains(lden) or big_ideal.contains(rden):
            raise NotAnAction("associativity", "law is not checkable with this representative")
        residue = big_ideal.normal_form(lnum * rden - rnum * lden)
        if not residue.is_zero():
            raise NotAnAction("associativity", big.variety.format(residue.primitive()))


def _validate_finite_action(action: RationalAction):
    G, X = action.group, action.space
    maps = action.maps
    if set(maps) != set(G.elements):
        raise NotAnAction("homomorphism", "need exactly one map per group element")
    e = G.identity_element
    if not maps_equal(maps[e], identity_map(X)):
        raise NotAnAction("identity", "the identity element does not act as the identity map")
    # attach inverses so every element map is certified birational
    for g in G.elements:
        g_inv = G.inverse_element(g)
        if not (_roundtrip_is_identity(maps[g], maps[g_inv])
                and _roundtrip_is_identity(maps[g_inv], maps[g])):
            raise NotAnAction("homomorphism", f"maps of {g} and {g_inv} are not mutually inverse")
        maps[g]._inverse = maps[g_inv]
        maps[g]._dominant = True
        maps[g]._birational = True
    for g in G.elements:
        for h in G.elements:
            gh = G.table[(g, h)]
            if not maps_equal(compose(maps[h], maps[g]), maps[gh]):
                raise NotAnAction("homomorphism", f"map of {g}*{h} differs from the composition")
    action._specialized = dict(maps)


# -- the lifted product map ----------------------------------------------------------


def lift_action(action: RationalAction, element=None):
    """The pair (g, x) |-> (g, rho(g, x)) and its inverse (g, y) |-> (g, rho(g^-1, y)).

    The inverse comes from conjugating with the group-inversion swap, so no
    Groebner inversion is needed; the round trip is verified exactly.  For a
    finite group the lift lives per element: pass one and get that element's
    map together with its inverse element's map.
    """
    if action.is_finite:
        if element is None:
            raise NotAnAction("lift", "finite groups lift per element; pass one")
        g = action.group.require_point(element)
        return specialize(action, g), specialize(action, action.group.inverse_element(g))
    if action._tilde is not None:
        return action._tilde
    P = action.ambient.variety
    G = action.group
    r, n = G.arity, action.space.arity
    arity = r + n
    g_coords = tuple(RationalFunction.coordinate(P, i) for i in range(r))
    forward = make_rational_map(P, P, [g_coords + tuple(
        RationalFunction(P, f.num, f.den) for f in action.rho.reps[0])])
    inv_embedded = [p.embed(arity, list(range(r))) for p in G.inv]
    images = [(p, Polynomial.one(arity)) for p in inv_embedded]
    images += [(Polynomial.variable(arity, r + j), Polynomial.one(arity)) for j in range(n)]
    back_coords = []
    for f in action.rho.reps[0]:
        num, den = compose_fraction(f.num, f.den, images)
        if P.ideal.contains(den):
            raise ZeroDenominator("inverse lift has identically zero denominator")
        num, den = simplify_fraction(P.ideal.normal_form(num), P.ideal.normal_form(den))
        back_coords.append(RationalFunction(P, num, den))
    backward = make_rational_map(P, P, [g_coords + tuple(back_coords)])
    if not (_roundtrip_is_identity(forward, backward) and _roundtrip_is_identity(backward, forward)):
        raise RoundTripFailure("lifted action map and its conjugated inverse do not round-trip")
    forward._inverse = backward
    backward._inverse = forward
    forward._dominant = backward._dominant = True
    forward._birational = backward._birational = True
    action._tilde = (forward, backward)
    return action._tilde


def _pullback_witness(space: AffineVariety, witness: Polynomial, images):
    """Numerator of the witness composed with coordinate fraction images."""
    num, _ = compose_fraction(witness, Polynomial.one(witness.arity), images)
    return num


def tilde_biregular_locus(action: RationalAction) -> OpenSubset:
    """Biregular locus of the lifted map on the product, with the restriction
    witnesses (x in the domain, g.x in the domain) multiplied in."""
    forward, _ = lift_action(action)
    base = biregular_locus(forward)
    if not action.is_restricted:
        return base
    amb = action.ambient
    images = [f.fraction_pair() for f in action.rho.reps[0]]
    witnesses = []
    for w in base.witnesses:
        for v in action.domain.witnesses:
            v_emb = amb.embed_right(v)
            v_pull = _pullback_witness(action.space, v, images)
            witnesses.append(w * v_emb * v_pull)
    return OpenSubset.principal_union(amb.variety, witnesses)


def element_biregular_locus(action: RationalAction, g) -> OpenSubset:
    """Biregular locus of one element's map, restricted to the action domain."""
    m = specialize(action, g)
    base = biregular_locus(m)
    if not action.is_restricted:
        return base
    images = [f.fraction_pair() for f in m.reps[0]]
    witnesses = []
    for w in base.witnesses:
        for v in action.domain.witnesses:
            witnesses.append(w * v * _pullback_witness(action.space, v, images))
    return OpenSubset.principal_union(action.space, witnesses)


def action_point_defined(action: RationalAction, g, x):
    """Whether g.x is defined for the (possibly restricted) action, and its
    value when it is: (True, value) or (False, None)."""
    m = specialize(action, g)
    st = point_status(m, x)
    if st.kind != "DEFINED":
        return False, None
    if action.is_restricted:
        if not action.domain.contains_point(x) or not action.domain.contains_point(st.value):
            return False, None
    return True, st.value


# -- the G-regular locus ----------------------------------------------------------------


def g_regular_locus(action: RationalAction) -> GRegularLocus:
    if action._xreg is not None:
        return action._xreg
    X = action.space
    if action.is_finite:
        bad_ideals = []
        complements = {}
        locus = OpenSubset.full(X)
        for g in action.group.elements:
            breg = element_biregular_locus(action, g)
            bad = Ideal(X.arity, breg.witnesses)
            bad = Ideal(X.arity, bad.groebner_basis())
            bad_ideals.append(bad)
            complements[g] = bad
            locus = locus.intersect(breg)
        locus = locus.intersect(action.domain)
        if locus.is_empty():
            raise EmptyLocus("no G-regular points certified; supply more representatives")
        result = GRegularLocus(locus, bad_ideals, complements)
    else:
        if not action.group.variety.irreducible:
            raise NotAnAction("components", "parametric G-regular loci need an irreducible group")
        amb = action.ambient
        r, n = action.group.arity, X.arity
        breg = tilde_biregular_locus(action)
        e_ideal = Ideal(amb.arity, breg.witnesses)
        group_ideal = Ideal(amb.arity, [amb.embed_left(g) for g in action.group.variety.ideal.gens])
        from .orders import block_order

        order = block_order(range(r))
        coeffs = []
        for w in breg.witnesses:
            nf = group_ideal.normal_form(w, order)
            for _, c in nf.coefficients_wrt(range(r)):
                coeffs.append(c.restrict(range(r, r + n)))
        bad = Ideal(n, coeffs)
        bad = Ideal(n, bad.groebner_basis())
        locus = OpenSubset.principal_union(X, bad.gens if bad.gens else ())
        locus = locus.intersect(action.domain)
        if locus.is_empty():
            raise EmptyLocus("no G-regular points certified; supply more representatives")
        result = GRegularLocus(locus, [bad], e_ideal)
    action._xreg = result
    return result


def restrict_to_open(action: RationalAction, subset: OpenSubset) -> RationalAction:
    """The induced action on a nonempty open subset of the space.

    The maps are unchanged; all loci computations pick up witnesses for
    membership of the point and of its image.
    """
    subset.require_nonempty()
    domain = action.domain.intersect(subset)
    domain.require_nonempty()
    if action.is_finite:
        return RationalAction(action.group, action.space, maps=action.maps, domain=domain)
    restricted = RationalAction(action.group, action.space, rho=action.rho, domain=domain)
    restricted._specialized = dict(action._specialized)
    return restricted


def restrict_to_regular_locus(action: RationalAction) -> RationalAction:
    """Restriction to the computed G-regular locus."""
    return restrict_to_open(action, g_regular_locus(action).locus)
