from fractions import Fraction

import pytest

from weilreg import Ideal, Polynomial
from weilreg.errors import (
    AxiomFailure,
    EmptyLocus,
    NotAnAction,
    PointNotOnGroup,
    ZeroDenominator,
)
from weilreg.groups import (
    additive_group,
    cyclic_group_2,
    finite_group,
    make_group,
    multiplicative_group,
    product_group,
)
from weilreg.maps import maps_equal, identity_map, rational_map, point_status
from weilreg.actions import (
    action_point_defined,
    element_biregular_locus,
    g_regular_locus,
    lift_action,
    make_rational_action,
    restrict_to_open,
    restrict_to_regular_locus,
    specialize,
    tilde_biregular_locus,
)
from weilreg.ratfunc import RationalFunction
from weilreg.varieties import OpenSubset, affine_space, variety


# -- groups ------------------------------------------------------------------------


def test_additive_group_valid():
    G = additive_group("s")
    assert G.multiply_points((2,), (3,)) == (Fraction(5),)
    assert G.invert_point((4,)) == (Fraction(-4),)
    assert G.identity_point() == (Fraction(0),)


def test_multiplicative_group_valid():
    G = multiplicative_group()
    assert G.multiply_points((2, Fraction(1, 2)), (3, Fraction(1, 3))) == (6, Fraction(1, 6))
    assert G.invert_point((2, Fraction(1, 2))) == (Fraction(1, 2), 2)
    with pytest.raises(PointNotOnGroup):
        G.require_point((2, 3))


def test_cyclic_group_of_order_two():
    G = cyclic_group_2()
    assert G.multiply_points("g", "g") == "e"
    assert G.inverse_element("g") == "g"


def test_axiom_failure_detected():
    line = affine_space(["s"])
    bad_mult = [Polynomial.variable(2, 0) + Polynomial.variable(2, 1) + Polynomial.one(2)]
    with pytest.raises(AxiomFailure):
        make_group(line, bad_mult, [-Polynomial.variable(1, 0)], (0,))


def test_bad_finite_table_rejected():
    with pytest.raises(AxiomFailure):
        finite_group(("e", "a"), {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "a"})


def test_product_group():
    G = product_group(additive_group("s"), multiplicative_group())
    assert G.arity == 3
    assert G.multiply_points((1, 2, Fraction(1, 2)), (2, 3, Fraction(1, 3))) == (3, 6, Fraction(1, 6))


# -- fixture actions ----------------------------------------------------------------


@pytest.fixture
def blowup_action():
    G = additive_group("s")
    X = affine_space(["u", "t"])
    from weilreg.varieties import ProductAmbient

    P = ProductAmbient(G.variety, X)
    rho = rational_map(P.variety, X, ("u+s", "u*t/(u+s)"))
    return make_rational_action(G, X, rho)


@pytest.fixture
def translation_action():
    G = additive_group("s")
    X = affine_space(["x", "y"])
    from weilreg.varieties import ProductAmbient

    P = ProductAmbient(G.variety, X)
    rho = rational_map(P.variety, X, ("x+s", "y"))
    return make_rational_action(G, X, rho)


@pytest.fixture
def cremona_action():
    G = cyclic_group_2(("e", "sig"))
    X = affine_space(["x", "y"])
    sigma = rational_map(X, X, ("1/x", "1/y"))
    return make_rational_action(G, X, {"e": identity_map(X), "sig": sigma})


# -- action validation ----------------------------------------------------------------


def test_blowup_action_accepted(blowup_action):
    assert not blowup_action.is_finite


def test_cremona_action_accepted(cremona_action):
    assert cremona_action.is_finite


def test_translation_action_accepted(translation_action):
    assert not translation_action.is_finite


def test_mutated_denominator_rejected_with_nonzero_residue():
    G = additive_group("s")
    X = affine_space(["u", "t"])
    from weilreg.varieties import ProductAmbient

    P = ProductAmbient(G.variety, X)
    rho = rational_map(P.variety, X, ("u+s", "u*t/(u+2*s)"))
    with pytest.raises(NotAnAction) as err:
        make_rational_action(G, X, rho)
    assert err.value.law == "associativity"
    assert err.value.residue not in (None, "0")


def test_non_homomorphism_finite_rejected():
    G = cyclic_group_2(("e", "g"))
    X = affine_space(["x", "y"])
    not_involution = rational_map(X, X, ("x+1", "y"))
    with pytest.raises(NotAnAction):
        make_rational_action(G, X, {"e": identity_map(X), "g": not_involution})


# -- lift ---------------------------------------------------------------------------------


def test_lift_of_blowup_action(blowup_action):
    forward, backward = lift_action(blowup_action)
    P = forward.source
    expected_fwd = rational_map(P, P, ("s", "u+s", "u*t/(u+s)"))
    expected_bwd = rational_map(P, P, ("s", "u-s", "u*t/(u-s)"))
    assert maps_equal(forward, expected_fwd)
    assert maps_equal(backward, expected_bwd)


def test_lift_of_translation_is_polynomial_both_ways(translation_action):
    forward, backward = lift_action(translation_action)
    assert all(f.is_polynomial() for f in forward.reps[0])
    assert all(f.is_polynomial() for f in backward.reps[0])


def test_finite_lift_is_the_element_map(cremona_action):
    forward, backward = lift_action(cremona_action, "sig")
    assert maps_equal(forward, backward)  # the involution is self-inverse
    assert maps_equal(forward, specialize(cremona_action, "sig"))


# -- specialize ------------------------------------------------------------------------------


def test_specialize_blowup_at_one(blowup_action):
    rho1 = specialize(blowup_action, (1,))
    X = rho1.source
    assert maps_equal(rho1, rational_map(X, X, ("u+1", "u*t/(u+1)")))
    assert rho1._inverse is not None


def test_specialize_at_identity_is_identity(blowup_action, cremona_action):
    X = blowup_action.space
    assert maps_equal(specialize(blowup_action, (0,)), identity_map(X))
    assert maps_equal(specialize(cremona_action, "e"), identity_map(cremona_action.space))


def test_specialize_translation(translation_action):
    X = translation_action.space
    assert maps_equal(specialize(translation_action, (3,)), rational_map(X, X, ("x+3", "y")))


def test_specialize_requires_group_point(blowup_action, cremona_action):
    with pytest.raises(PointNotOnGroup):
        specialize(cremona_action, "tau")


# -- G-regular locus --------------------------------------------------------------------------


def test_blowup_regular_locus_is_chart_minus_exceptional_fiber(blowup_action):
    reg = g_regular_locus(blowup_action)
    X = blowup_action.space
    assert reg.locus.witnesses == (X.poly("u"),)
    [bad] = reg.bad_ideals
    assert bad == Ideal(2, [X.poly("u")])
    # open with proper complement on an irreducible host: dense
    assert reg.locus.is_dense()


def test_cremona_regular_locus_is_torus(cremona_action):
    reg = g_regular_locus(cremona_action)
    X = cremona_action.space
    assert reg.locus.witnesses == (X.poly("x*y"),)
    assert reg.locus.complement_ideal == Ideal(2, [X.poly("x*y")])


def test_translation_regular_locus_is_everything(translation_action):
    reg = g_regular_locus(translation_action)
    assert reg.locus.is_all()


# -- restriction --------------------------------------------------------------------------------


def test_restrict_cremona_to_torus_makes_action_regular(cremona_action):
    X = cremona_action.space
    torus_part = OpenSubset.principal_union(X, [X.poly("x*y")])
    restricted = restrict_to_open(cremona_action, torus_part)
    reg = g_regular_locus(restricted)
    # every point of the open host is regular: witnesses cover the host
    assert reg.locus.witnesses == restricted.domain.witnesses


def test_restrict_blowup_to_punctured_chart_all_points_regular(blowup_action):
    restricted = restrict_to_regular_locus(blowup_action)
    reg = g_regular_locus(restricted)
    samples = [(u, t) for u in (-3, -1, 1, 2) for t in (-2, 0, 1)]
    for p in samples:
        if restricted.domain.contains_point(p):
            assert reg.locus.contains_point(p)


def test_restrict_to_everything_changes_nothing(blowup_action):
    X = blowup_action.space
    restricted = restrict_to_open(blowup_action, OpenSubset.full(X))
    assert not restricted.is_restricted
    assert g_regular_locus(restricted).locus.witnesses == g_regular_locus(blowup_action).locus.witnesses


# -- sampled pointwise regularity laws --------------------------------------------------------------


def _tilde_biregular_at(action, witnesses, g, x):
    point = tuple(Fraction(c) for c in g) + tuple(Fraction(c) for c in x)
    return any(w.evaluate(point) != 0 for w in witnesses)


def test_regular_image_stays_regular_on_samples(blowup_action):
    # if x is G-regular and the lifted map is biregular at (g, x), then g.x is G-regular
    reg = g_regular_locus(blowup_action)
    breg = tilde_biregular_locus(blowup_action)
    count = 0
    for s in range(-3, 4):
        for u in range(-3, 4):
            for t in range(-3, 4):
                if not reg.locus.contains_point((u, t)):
                    continue
                if not _tilde_biregular_at(blowup_action, breg.witnesses, (s,), (u, t)):
                    continue
                ok, image = action_point_defined(blowup_action, (s,), (u, t))
                assert ok
                assert reg.locus.contains_point(image)
                count += 1
    assert count >= 200


def test_biregular_composition_law_on_samples(blowup_action):
    # if the lift is biregular at (g, x) and rho_h is biregular at g.x,
    # then the lift is biregular at (h+g, x)
    breg = tilde_biregular_locus(blowup_action)
    count = 0
    for h in range(-2, 3):
        h_breg = element_biregular_locus(blowup_action, (h,))
        for s in range(-2, 3):
            for u in range(-2, 3):
                for t in range(-2, 3):
                    if not _tilde_biregular_at(blowup_action, breg.witnesses, (s,), (u, t)):
                        continue
                    ok, image = action_point_defined(blowup_action, (s,), (u, t))
                    if not ok or not h_breg.contains_point(image):
                        continue
                    assert _tilde_biregular_at(blowup_action, breg.witnesses, (h + s,), (u, t))
                    count += 1
    assert count >= 200


def test_defined_implies_biregular_after_restriction(blowup_action):
    # on the restriction to the G-regular locus, defined points are biregular points
    restricted = restrict_to_regular_locus(blowup_action)
    count = 0
    for s in range(-3, 4):
        breg_s = element_biregular_locus(restricted, (s,))
        for u in range(-3, 4):
            for t in range(-3, 4):
                ok, _ = action_point_defined(restricted, (s,), (u, t))
                if not ok:
                    continue
                assert breg_s.contains_point((u, t))
                count += 1
    assert count >= 100
