"""Chart atlases: the glued model of an action whose points are all
G-regular, represented as chart copies of the space plus transition maps,
together with the four machine-checkable gluing conditions.

The glued object is never embedded; the checks certify exactly the
conditions that make the quotient of the chart union a separated variety
carrying a regular action: transition symmetry, the cocycle identity,
closedness of the transition graphs, and the finite covering of the group
by shifted biregularity loci.
"""

from dataclasses import dataclass, field

from .actions import (
    RationalAction,
    element_biregular_locus,
    specialize,
    tilde_biregular_locus,
)
from .errors import PointNotOnGroup, ZeroDenominator
from .ideals import Ideal, saturate
from .maps import RationalMap, compose, inverse, is_graph_closed, maps_equal
from .poly import Polynomial


@dataclass
class AtlasReport:
    symmetry: dict = None
    cocycle: dict = None
    separated: dict = None
    covering: dict = None

    def all_passed(self) -> bool:
        return all(part and part.get("passed") for part in
                   (self.symmetry, self.cocycle, self.separated, self.covering))


@dataclass
class Atlas:
    action: RationalAction
    points: tuple  # group points; first is the identity
    transitions: dict  # (i, j) -> RationalMap from chart i to chart j
    report: AtlasReport = field(default=None)


def build_atlas(action: RationalAction, points=None) -> Atlas:
    """Atlas over the given group points (the identity leads; for finite
    groups the default is every element)."""
    group = action.group
    if points is None:
        if not group.is_finite:
            raise PointNotOnGroup("a finite list of group points is required")
        points = list(group.elements)
    points = [group.require_point(p) for p in points]
    e = group.identity_point()
    if points[0] != e:
        if e in points:
            points.remove(e)
        points.insert(0, e)
    transitions = {}
    for i, gi in enumerate(points):
        for j, gj in enumerate(points):
            g = group.multiply_points(group.invert_point(gj), gi)
            transitions[(i, j)] = specialize(action, g)
    return Atlas(action, tuple(points), transitions)


def _fresh_copy(m: RationalMap) -> RationalMap:
    """Same representatives, no cached inverse: forces honest re-inversion."""
    return RationalMap(m.source, m.target, m.reps)


def _check_symmetry(atlas: Atlas) -> dict:
    failures = []
    m = len(atlas.points)
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            recomputed = inverse(_fresh_copy(atlas.transitions[(i, j)]))
            if not maps_equal(recomputed, atlas.transitions[(j, i)]):
                failures.append([i, j])
    return {"passed": not failures, "failures": failures}


def _check_cocycle(atlas: Atlas) -> dict:
    failures = []
    skipped = []
    m = len(atlas.points)
    for i in range(m):
        for j in range(m):
            for k in range(m):
                try:
                    composite = compose(atlas.transitions[(i, j)], atlas.transitions[(j, k)])
                except ZeroDenominator:
                    skipped.append([i, j, k])
                    continue
                if not maps_equal(composite, atlas.transitions[(i, k)]):
                    failures.append([i, j, k])
    return {"passed": not failures, "failures": failures, "skipped": skipped}


def _check_separated(atlas: Atlas) -> dict:
    failures = {}
    m = len(atlas.points)
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            closed, witness = is_graph_closed(atlas.transitions[(i, j)], atlas.action.domain)
            if not closed:
                failures[(i, j)] = witness
    return {"passed": not failures, "witnesses": failures}


def _shift_witness(action: RationalAction, w: Polynomial, point):
    """Substitute g -> (point^-1) * g into a witness over the product ring."""
    group = action.group
    r, n = group.arity, action.space.arity
    arity = r + n
    inv_point = group.invert_point(point)
    consts = [Polynomial.constant(group.arity, c) for c in inv_point]
    shift = [m.substitute(consts + [Polynomial.variable(r, i) for i in range(r)]) for m in group.mult]
    images = [s.embed(arity, list(range(r))) for s in shift]
    images += [Polynomial.variable(arity, r + j) for j in range(n)]
    return w.substitute(images)


def _check_covering(atlas: Atlas) -> dict:
    """The shifted complements of the biregularity locus must have empty
    common intersection over the (possibly restricted) host."""
    action = atlas.action
    if action.is_finite:
        group = action.group
        component_ideals = {}
        passed = True
        for g in group.elements:
            gens = []
            for gi in atlas.points:
                h = group.multiply_points(group.inverse_element(gi), g)
                gens.extend(element_biregular_locus(action, h).witnesses)
            ideal = Ideal(action.space.arity, gens)
            component_ideals[g] = ideal
            for v in action.domain.witnesses:
                if not saturate(ideal, v).is_unit():
                    passed = False
        return {"passed": passed, "component_ideals": component_ideals}
    amb = action.ambient
    breg = tilde_biregular_locus(action)
    gens = []
    for point in atlas.points:
        for w in breg.witnesses:
            gens.append(_shift_witness(action, w, point))
    gens += list(amb.variety.ideal.gens)
    covering_ideal = Ideal(amb.arity, gens)
    passed = True
    saturations = []
    for v in action.domain.witnesses:
        sat = saturate(covering_ideal, amb.embed_right(v))
        saturations.append(sat)
        if not sat.is_unit():
            passed = False
    return {"passed": passed, "ideal": covering_ideal, "saturations": saturations}


def check_atlas(atlas: Atlas) -> AtlasReport:
    report = AtlasReport(
        symmetry=_check_symmetry(atlas),
        cocycle=_check_cocycle(atlas),
        separated=_check_separated(atlas),
        covering=_check_covering(atlas),
    )
    atlas.report = report
    return report
