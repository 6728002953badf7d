"""Rational maps between affine varieties: graphs, closed images, composition,
inversion, definable and biregular loci, the closed-graph test, and the
tri-state point evaluator.

All loci are representative-generated: they are sound under-approximations
that are exact on every fixture shipped with the test suite, and callers may
add representatives to enlarge them.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotBirational,
    NotComposable,
    NotDominant,
    NotIntoTarget,
    PointNotOnVariety,
    RepresentativeMismatch,
    ZeroDenominator,
)
from .ideals import Ideal, eliminate, saturate
from .orders import GREVLEX, block_order
from .poly import Polynomial
from .polygcd import simplify_fraction, squarefree_part_degree
from .ratfunc import RationalFunction, compose_fraction
from .varieties import AffineVariety, OpenSubset, product_names, varieties_equal


@dataclass(frozen=True)
class GraphClosure:
    """Vanishing ideal of the closure of the set-theoretic graph, living in
    the product ambient source x target."""

    names: tuple
    ideal: Ideal
    n_source: int
    n_target: int

    @property
    def arity(self) -> int:
        return self.n_source + self.n_target

    def source_indices(self):
        return range(self.n_source)

    def target_indices(self):
        return range(self.n_source, self.n_source + self.n_target)


@dataclass(frozen=True)
class PointStatus:
    kind: str  # DEFINED | UNDEFINED | UNKNOWN
    value: tuple = None

    def __repr__(self):
        if self.kind == "DEFINED":
            return f"DEFINED{self.value}"
        return self.kind


class RationalMap:
    """Rational map given by one or more tuples of coordinate fractions."""

    __slots__ = ("source", "target", "reps", "_graph", "_image", "_dominant", "_inverse", "_birational")

    def __init__(self, source, target, reps):
        self.source = source
        self.target = target
        self.reps = tuple(tuple(rep) for rep in reps)
        self._graph = None
        self._image = None
        self._dominant = None
        self._inverse = None
        self._birational = None

    # -- representative access ----------------------------------------------

    def rep_fractions(self, rep_index: int = 0):
        return [f.fraction_pair() for f in self.reps[rep_index]]

    def coordinates(self, rep_index: int = 0):
        return self.reps[rep_index]

    def simplified_rep(self):
        return tuple(f.simplified() for f in self.reps[0])

    def __repr__(self):
        body = ", ".join(repr(f) for f in self.reps[0])
        return f"RationalMap(({body}))"


def make_rational_map(source: AffineVariety, target: AffineVariety, reps) -> RationalMap:
    """Validate and build a rational map.

    Each representative is a tuple of RationalFunctions on an irreducible
    source, one per target coordinate.  Validation checks that target
    relations pull back to zero and that representatives agree pairwise.
    """
    if not reps:
        raise ValueError("at least one representative required")
    packed = []
    for rep in reps:
        rep = tuple(rep)
        if len(rep) != target.arity:
            raise ValueError(f"representative has {len(rep)} coordinates, target needs {target.arity}")
        for f in rep:
            if f.host.names != source.names:
                raise ValueError("representative coordinates must live on the source")
        packed.append(rep)
    for rep in packed:
        images = [f.fraction_pair() for f in rep]
        for gen in target.ideal.gens:
            num, den = compose_fraction(gen, Polynomial.one(target.arity), images)
            if not source.ideal.contains(num):
                raise NotIntoTarget(
                    f"pullback of target relation {target.format(gen)} does not vanish on the source"
                )
    for a in range(len(packed)):
        for b in range(a + 1, len(packed)):
            for j, (fa, fb) in enumerate(zip(packed[a], packed[b])):
                if not fa.equals(fb):
                    raise RepresentativeMismatch(
                        f"representatives {a} and {b} disagree in coordinate {j}"
                    )
    return RationalMap(source, target, packed)


def rational_map(source: AffineVariety, target: AffineVariety, *rep_texts) -> RationalMap:
    """Convenience: representatives as tuples of expression strings."""
    reps = []
    for rep in rep_texts:
        reps.append(tuple(RationalFunction.parse(source, t) for t in rep))
    return make_rational_map(source, target, reps)


def identity_map(X: AffineVariety) -> RationalMap:
    rep = tuple(RationalFunction.coordinate(X, i) for i in range(X.arity))
    m = RationalMap(X, X, [rep])
    m._dominant = True
    m._birational = True
    m._inverse = m
    return m


# -- graph ---------------------------------------------------------------------


def graph_closure(phi: RationalMap) -> GraphClosure:
    if phi._graph is not None:
        return phi._graph
    src, tgt = phi.source, phi.target
    n, m = src.arity, tgt.arity
    names = product_names(src.names, tgt.names)
    arity = n + m
    src_emb = list(range(n))
    tgt_emb = list(range(n, n + m))
    gens = [g.embed(arity, src_emb) for g in src.ideal.gens]
    gens += [g.embed(arity, tgt_emb) for g in tgt.ideal.gens]
    rep = phi.reps[0]
    dens = []
    for j, f in enumerate(rep):
        num = f.num.embed(arity, src_emb)
        den = f.den.embed(arity, src_emb)
        yj = Polynomial.variable(arity, n + j)
        gens.append(den * yj - num)
        dens.append(f.den)
    ideal = Ideal(arity, gens)
    product = Polynomial.one(src.arity)
    for d in {d.primitive(GREVLEX) for d in dens}:
        if not d.is_constant():
            product = product * d
    if not product.is_constant():
        ideal = saturate(ideal, product.embed(arity, src_emb))
    phi._graph = GraphClosure(names, ideal, n, m)
    return phi._graph


def closed_image(phi: RationalMap) -> AffineVariety:
    if phi._image is not None:
        return phi._image
    graph = graph_closure(phi)
    n, m = graph.n_source, graph.n_target
    projected = eliminate(graph.ideal, set(range(n)))
    gens = [g.restrict(range(n, n + m)) for g in projected.gens]
    phi._image = AffineVariety(
        phi.target.names, Ideal(m, gens), irreducible=phi.source.irreducible, check=False
    )
    return phi._image


def is_dominant(phi: RationalMap) -> bool:
    if phi._dominant is None:
        image = closed_image(phi)
        phi._dominant = image.ideal == phi.target.ideal
    return phi._dominant


# -- composition and equality ----------------------------------------------------


def compose(phi: RationalMap, psi: RationalMap) -> RationalMap:
    """The composition psi o phi (first phi, then psi); phi must be dominant."""
    if not varieties_equal(phi.target, psi.source):
        raise NotComposable("target of the first map is not the source of the second")
    if not is_dominant(phi):
        raise NotDominant("cannot compose through a non-dominant map")
    src = phi.source
    last_error = None
    for rep_phi in phi.reps:
        images = [f.fraction_pair() for f in rep_phi]
        for rep_psi in psi.reps:
            coords = []
            try:
                for f in rep_psi:
                    num, den = compose_fraction(f.num, f.den, images)
                    if src.ideal.contains(den):
                        raise ZeroDenominator(
                            "denominator vanishes identically after substitution"
                        )
                    num = src.ideal.normal_form(num)
                    den = src.ideal.normal_form(den)
                    num, den = simplify_fraction(num, den)
                    coords.append(RationalFunction(src, num, den))
            except ZeroDenominator as err:
                last_error = err
                continue
            return make_rational_map(src, psi.target, [tuple(coords)])
    raise last_error if last_error else ZeroDenominator("no composable representative pair")


def maps_equal(phi: RationalMap, psi: RationalMap) -> bool:
    if not varieties_equal(phi.source, psi.source) or not varieties_equal(phi.target, psi.target):
        raise NotComposable("maps compare only between identical varieties")
    for fa, fb in zip(phi.reps[0], psi.reps[0]):
        if not fa.equals(fb):
            return False
    return True


# -- inversion --------------------------------------------------------------------


def _roundtrip_is_identity(phi: RationalMap, psi: RationalMap) -> bool:
    """psi o phi = id on phi's source, by direct substitution."""
    src = phi.source
    images = [f.fraction_pair() for f in phi.reps[0]]
    for k, f in enumerate(psi.reps[0]):
        num, den = compose_fraction(f.num, f.den, images)
        if src.ideal.contains(den):
            return False
        xk = Polynomial.variable(src.arity, k)
        if not src.ideal.contains(num - xk * den):
            return False
    return True


def inverse(phi: RationalMap) -> RationalMap:
    """Rational inverse extracted from the graph closure.

    Failure raises NotBirational: a failure to certify, not a proof that no
    inverse exists.
    """
    if phi._inverse is not None:
        return phi._inverse
    if not is_dominant(phi):
        raise NotDominant("only dominant maps can be inverted")
    if not phi.target.irreducible:
        raise NotBirational("inverse construction needs an irreducible target")
    graph = graph_closure(phi)
    n, m = graph.n_source, graph.n_target
    src_vars = set(range(n))
    basis = graph.ideal.groebner_basis(block_order(src_vars))
    tgt = phi.target
    coords = []
    for k in range(n):
        unit = tuple(1 if i == k else 0 for i in range(graph.arity))
        zero_head = (0,) * graph.arity
        candidate = None
        for g in basis:
            buckets = g.coefficients_wrt(src_vars)
            heads = [h for h, _ in buckets]
            if set(heads) == {unit, zero_head} or heads == [unit]:
                a = dict(buckets)[unit]
                c = dict(buckets).get(zero_head, Polynomial.zero(graph.arity))
                a_t = a.restrict(range(n, n + m))
                c_t = c.restrict(range(n, n + m))
                if tgt.ideal.contains(a_t):
                    continue
                num, den = simplify_fraction(tgt.ideal.normal_form(-c_t), tgt.ideal.normal_form(a_t))
                candidate = RationalFunction(tgt, num, den)
                break
        if candidate is None:
            raise NotBirational(f"no element linear in source coordinate {phi.source.names[k]}")
        coords.append(candidate)
    try:
        psi = make_rational_map(tgt, phi.source, [tuple(coords)])
    except (NotIntoTarget, ZeroDenominator) as err:
        raise NotBirational(f"extracted candidate is not a map into the source: {err}")
    if not _roundtrip_is_identity(phi, psi) or not _roundtrip_is_identity(psi, phi):
        raise NotBirational("round-trip identity failed for the extracted candidate")
    psi._dominant = True
    psi._birational = True
    psi._inverse = phi
    phi._inverse = psi
    phi._birational = True
    phi._dominant = True
    return psi


def is_birational(phi: RationalMap) -> bool:
    if phi._birational is None:
        try:
            inverse(phi)
        except (NotBirational, NotDominant):
            phi._birational = False
    return bool(phi._birational)


# -- loci --------------------------------------------------------------------------


def definable_locus(phi: RationalMap) -> OpenSubset:
    """Union over representatives of the opens where all denominators are
    nonzero (the computed domain of definition)."""
    witnesses = []
    for rep in phi.reps:
        q = Polynomial.one(phi.source.arity)
        for f in rep:
            if not f.den.is_constant():
                q = q * f.den
        witnesses.append(q)
    return OpenSubset.principal_union(phi.source, witnesses)


def biregular_locus(phi: RationalMap) -> OpenSubset:
    """Union over representative pairs (of the map and its inverse) of opens
    on which the map restricts to an open immersion."""
    psi = inverse(phi)
    witnesses = []
    for rep in phi.reps:
        images = [f.fraction_pair() for f in rep]
        q = Polynomial.one(phi.source.arity)
        for f in rep:
            if not f.den.is_constant():
                q = q * f.den
        for rep_inv in psi.reps:
            q_inv = Polynomial.one(psi.source.arity)
            for f in rep_inv:
                if not f.den.is_constant():
                    q_inv = q_inv * f.den
            pulled_num, _ = compose_fraction(q_inv, Polynomial.one(q_inv.arity), images)
            witnesses.append(q * pulled_num)
    return OpenSubset.principal_union(phi.source, witnesses)


# -- closed graph test ---------------------------------------------------------------


def is_graph_closed(phi: RationalMap, host: OpenSubset = None):
    """Is the graph of phi (restricted to host) closed in host x host?

    Returns (True, None) or (False, witness_ideal): the witness is the ideal
    of closure points over the complement of the computed domain that survive
    inside host x host.
    """
    if host is None:
        host = OpenSubset.full(phi.source)
    if not varieties_equal(phi.source, phi.target):
        raise NotComposable("closed-graph test applies to self-maps")
    graph = graph_closure(phi)
    n, m = graph.n_source, graph.n_target
    arity = graph.arity
    src_emb = list(range(n))
    tgt_emb = list(range(n, n + m))
    dom = definable_locus(phi)
    bad = graph.ideal.plus([w.embed(arity, src_emb) for w in dom.witnesses])
    for ws in host.witnesses:
        for wt in host.witnesses:
            sat = saturate(bad, ws.embed(arity, src_emb) * wt.embed(arity, tgt_emb))
            if not sat.is_unit():
                return False, sat
    return True, None


# -- point evaluation -----------------------------------------------------------------


def _fiber_ideal(phi: RationalMap, point):
    graph = graph_closure(phi)
    n, m = graph.n_source, graph.n_target
    consts = [Polynomial.constant(m, Fraction(x)) for x in point]
    vars_ = [Polynomial.variable(m, j) for j in range(m)]
    gens = [g.substitute(consts + vars_) for g in graph.ideal.gens]
    return Ideal(m, gens)


def _zero_dimensional(basis, m, order=GREVLEX):
    covered = set()
    for g in basis:
        exps = g.leading_term(order)[0]
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            covered.add(support[0])
    return covered == set(range(m))


def point_status(phi: RationalMap, point) -> PointStatus:
    """DEFINED with the image, UNDEFINED, or UNKNOWN (singleton graph fiber
    that no supplied representative reaches)."""
    if not phi.source.point_on(point):
        raise PointNotOnVariety(f"{tuple(point)} is not on the source variety")
    point = tuple(Fraction(x) for x in point)
    for rep in phi.reps:
        if all(f.den.evaluate(point) != 0 for f in rep):
            value = tuple(f.evaluate(point) for f in rep)
            return PointStatus("DEFINED", value)
    fiber = _fiber_ideal(phi, point)
    if fiber.is_unit():
        return PointStatus("UNDEFINED")
    m = phi.target.arity
    basis = fiber.groebner_basis(GREVLEX)
    if not _zero_dimensional(basis, m):
        return PointStatus("UNDEFINED")
    for k in range(m):
        others = set(range(m)) - {k}
        uni = eliminate(fiber, others)
        nonzero = [g for g in uni.gens if not g.is_zero()]
        if not nonzero:
            return PointStatus("UNDEFINED")
        g = min(nonzero, key=lambda p: p.degree_in(k))
        if squarefree_part_degree(g, k) >= 2:
            return PointStatus("UNDEFINED")
    return PointStatus("UNKNOWN")
