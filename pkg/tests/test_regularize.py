from fractions import Fraction

import pytest

from weilreg import Ideal, Polynomial, is_empty_variety, parse_polynomial
from weilreg.actions import (
    g_regular_locus,
    make_rational_action,
    restrict_to_open,
    restrict_to_regular_locus,
    specialize,
)
from weilreg.atlas import Atlas, build_atlas, check_atlas
from weilreg.groups import additive_group, cyclic_group_2
from weilreg.maps import identity_map, maps_equal, point_status, rational_map
from weilreg.ratfunc import RationalFunction
from weilreg.regularize import (
    induced_regular_action,
    present_subalgebra,
    regularize_finite,
    stable_generators,
)
from weilreg.varieties import OpenSubset, ProductAmbient, affine_space


@pytest.fixture
def plane():
    return affine_space(["x", "y"])


@pytest.fixture
def cremona_action(plane):
    G = cyclic_group_2(("e", "sig"))
    sigma = rational_map(plane, plane, ("1/x", "1/y"))
    return make_rational_action(G, plane, {"e": identity_map(plane), "sig": sigma})


@pytest.fixture
def swap_action(plane):
    G = cyclic_group_2(("e", "sw"))
    swap = rational_map(plane, plane, ("y", "x"))
    return make_rational_action(G, plane, {"e": identity_map(plane), "sw": swap})


@pytest.fixture
def half_cremona_action(plane):
    G = cyclic_group_2(("e", "s2"))
    s2 = rational_map(plane, plane, ("1/x", "y"))
    return make_rational_action(G, plane, {"e": identity_map(plane), "s2": s2})


@pytest.fixture
def blowup_action():
    G = additive_group("s")
    X = affine_space(["u", "t"])
    P = ProductAmbient(G.variety, X)
    rho = rational_map(P.variety, X, ("u+s", "u*t/(u+s)"))
    return make_rational_action(G, X, rho)


# -- stable generators -----------------------------------------------------------


def test_stable_generators_cremona(plane, cremona_action):
    gens = stable_generators(cremona_action)
    expected = ["x", "y", "1/x", "1/y"]
    assert len(gens) == 4
    for f, text in zip(gens, expected):
        assert f.equals(RationalFunction.parse(plane, text))


def test_stable_generators_swap_closes_on_coordinates(plane, swap_action):
    gens = stable_generators(swap_action)
    assert len(gens) == 2
    assert gens[0].equals(RationalFunction.parse(plane, "x"))
    assert gens[1].equals(RationalFunction.parse(plane, "y"))


def test_stable_generators_half_cremona(plane, half_cremona_action):
    gens = stable_generators(half_cremona_action)
    texts = ["x", "y", "1/x"]
    assert len(gens) == 3
    for f, text in zip(gens, texts):
        assert f.equals(RationalFunction.parse(plane, text))


# -- subalgebra presentation --------------------------------------------------------


def test_present_subalgebra_cremona_gives_torus(plane, cremona_action):
    gens = stable_generators(cremona_action)
    model, psi, psi_inv = present_subalgebra(plane, gens)
    assert model.names == ("u1", "u2", "u3", "u4")
    expected = Ideal(4, [parse_polynomial(t, model.names) for t in ("u1*u3-1", "u2*u4-1")])
    assert model.ideal == expected
    assert [repr(f) for f in psi.reps[0]] == ["u1", "u2"]
    assert maps_equal(psi_inv, rational_map(plane, model, ("x", "y", "1/x", "1/y")))


def test_present_subalgebra_swap_is_identity_presentation(plane, swap_action):
    gens = stable_generators(swap_action)
    model, psi, psi_inv = present_subalgebra(plane, gens)
    assert model.ideal.gens == ()
    assert model.arity == 2


def test_present_subalgebra_half_cremona(plane, half_cremona_action):
    gens = stable_generators(half_cremona_action)
    model, psi, psi_inv = present_subalgebra(plane, gens)
    expected = Ideal(3, [parse_polynomial("u1*u3-1", model.names)])
    assert model.ideal == expected


# -- induced action ---------------------------------------------------------------------


def test_induced_action_cremona_swaps_pairs(plane, cremona_action):
    gens = stable_generators(cremona_action)
    model, psi, psi_inv = present_subalgebra(plane, gens)
    endos = induced_regular_action(model, cremona_action, gens)
    u = [Polynomial.variable(4, i) for i in range(4)]
    assert endos["sig"] == (u[2], u[3], u[0], u[1])
    assert endos["e"] == (u[0], u[1], u[2], u[3])
    sig_of_rel = parse_polynomial("u1*u3-1", model.names).substitute(list(endos["sig"]))
    assert model.ideal.contains(sig_of_rel)


def test_induced_action_swap(plane, swap_action):
    gens = stable_generators(swap_action)
    model, _, _ = present_subalgebra(plane, gens)
    endos = induced_regular_action(model, swap_action, gens)
    u = [Polynomial.variable(2, i) for i in range(2)]
    assert endos["sw"] == (u[1], u[0])


def test_induced_action_half_cremona(plane, half_cremona_action):
    gens = stable_generators(half_cremona_action)
    model, _, _ = present_subalgebra(plane, gens)
    endos = induced_regular_action(model, half_cremona_action, gens)
    u = [Polynomial.variable(3, i) for i in range(3)]
    assert endos["s2"] == (u[2], u[1], u[0])


# -- full pipeline -----------------------------------------------------------------------


def test_regularize_cremona(plane, cremona_action):
    result = regularize_finite(cremona_action)
    expected = Ideal(4, [parse_polynomial(t, result.model.names) for t in ("u1*u3-1", "u2*u4-1")])
    assert result.model.ideal == expected
    u = [Polynomial.variable(4, i) for i in range(4)]
    assert result.action_on_model["sig"] == (u[2], u[3], u[0], u[1])
    assert maps_equal(result.from_space, rational_map(plane, result.model, ("x", "y", "1/x", "1/y")))


def test_regularize_swap_model_isomorphic_to_plane(plane, swap_action):
    result = regularize_finite(swap_action)
    assert result.model.ideal.gens == ()
    # already-regular input: the birational morphism has a polynomial inverse
    assert all(f.is_polynomial() for f in result.from_space.reps[0])


def test_regularize_half_cremona(plane, half_cremona_action):
    result = regularize_finite(half_cremona_action)
    assert result.model.ideal == Ideal(3, [parse_polynomial("u1*u3-1", result.model.names)])
    u = [Polynomial.variable(3, i) for i in range(3)]
    assert result.action_on_model["s2"] == (u[2], u[1], u[0])


# -- atlases ---------------------------------------------------------------------------------


def test_atlas_transitions_blowup(blowup_action):
    restricted = restrict_to_regular_locus(blowup_action)
    atlas = build_atlas(restricted, [(0,), (1,)])
    X = blowup_action.space
    assert maps_equal(atlas.transitions[(0, 1)], rational_map(X, X, ("u-1", "u*t/(u-1)")))
    assert maps_equal(atlas.transitions[(1, 0)], rational_map(X, X, ("u+1", "u*t/(u+1)")))
    assert maps_equal(atlas.transitions[(0, 0)], identity_map(X))


def test_single_chart_atlas_passes_covering_iff_action_regular(blowup_action):
    # regular action: the lone identity chart already covers
    G = additive_group("s")
    X = affine_space(["x", "y"])
    P = ProductAmbient(G.variety, X)
    translation = make_rational_action(G, X, rational_map(P.variety, X, ("x+s", "y")))
    report = check_atlas(build_atlas(translation, [(0,)]))
    assert report.symmetry["passed"] and report.cocycle["passed"] and report.separated["passed"]
    assert report.covering["passed"]
    # merely rational action: a single chart cannot cover
    restricted = restrict_to_regular_locus(blowup_action)
    report = check_atlas(build_atlas(restricted, [(0,)]))
    assert report.symmetry["passed"] and report.cocycle["passed"] and report.separated["passed"]
    assert not report.covering["passed"]


def test_blowup_atlas_on_regular_locus_all_checks_pass(blowup_action):
    restricted = restrict_to_regular_locus(blowup_action)
    atlas = build_atlas(restricted, [(0,), (1,)])
    report = check_atlas(atlas)
    assert report.symmetry == {"passed": True, "failures": []}
    assert report.cocycle["passed"] and not report.cocycle["skipped"]
    assert report.separated["passed"]
    assert report.covering["passed"]
    assert all(s.is_unit() for s in report.covering["saturations"])
    assert report.all_passed()


def test_blowup_atlas_on_full_plane_fails_separatedness(blowup_action):
    atlas = build_atlas(blowup_action, [(0,), (1,)])
    report = check_atlas(atlas)
    assert not report.separated["passed"]
    witnesses = report.separated["witnesses"]
    assert witnesses
    # the failure over tau_10 = rho_1 meets the locus u=-1, t=0
    names = ["u", "t", "u'", "t'"]
    w10 = witnesses.get((1, 0))
    assert w10 is not None
    assert w10.contains(parse_polynomial("u+1", names))
    assert w10.contains(parse_polynomial("t", names))


def test_cremona_atlas_on_torus(cremona_action):
    restricted = restrict_to_regular_locus(cremona_action)
    atlas = build_atlas(restricted)
    assert maps_equal(atlas.transitions[(0, 1)], atlas.transitions[(1, 0)])
    report = check_atlas(atlas)
    assert report.all_passed()


def test_covering_certificate_matches_derived_ideal():
    # the shifted complement generators of the blow-up two-chart atlas reduce,
    # after discarding the exceptional factor, to an inconsistent linear pair
    names = ["s", "u", "t"]
    derived = Ideal(3, [parse_polynomial("u+s", names), parse_polynomial("u+s-1", names)])
    assert is_empty_variety(derived)


# -- gluing invariants at point level ------------------------------------------------------------


def test_transitivity_of_chart_identifications(blowup_action):
    restricted = restrict_to_regular_locus(blowup_action)
    atlas = build_atlas(restricted, [(0,), (1,), (2,)])
    samples = [(u, t) for u in (-3, -2, 2, 3) for t in (-1, 1, 2)]
    checked = 0
    for p in samples:
        st01 = point_status(atlas.transitions[(0, 1)], p)
        if st01.kind != "DEFINED":
            continue
        st12 = point_status(atlas.transitions[(1, 2)], st01.value)
        if st12.kind != "DEFINED":
            continue
        st02 = point_status(atlas.transitions[(0, 2)], p)
        assert st02.kind == "DEFINED"
        assert st02.value == st12.value
        checked += 1
    assert checked >= 5


def test_chart_zero_transition_agrees_with_element_map(blowup_action):
    from weilreg.maps import compose

    restricted = restrict_to_regular_locus(blowup_action)
    atlas = build_atlas(restricted, [(0,), (1,)])
    # tau_{0i} is the inverse identification: composing with the element map
    # of g_i returns to chart zero
    g1_map = specialize(restricted, (1,))
    assert maps_equal(compose(atlas.transitions[(0, 1)], g1_map), identity_map(blowup_action.space))
