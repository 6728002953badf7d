"""The reciprocal involution (x, y) -> (1/x, 1/y) of the plane, end to end:
rational-map calculus, the locus where it is an isomorphism, and the torus
model on which the induced Z/2-action becomes regular.
"""

from weilreg.actions import g_regular_locus, make_rational_action
from weilreg.groups import cyclic_group_2
from weilreg.maps import (
    biregular_locus,
    closed_image,
    compose,
    definable_locus,
    graph_closure,
    identity_map,
    inverse,
    is_dominant,
    maps_equal,
    point_status,
    rational_map,
)
from weilreg.poly import format_polynomial
from weilreg.regularize import regularize_finite
from weilreg.varieties import affine_space

X = affine_space(["x", "y"])
sigma = rational_map(X, X, ("1/x", "1/y"))

print("== the map and its graph")
graph = graph_closure(sigma)
print("graph closure in", graph.names, ":",
      [format_polynomial(g, graph.names) for g in graph.ideal.gens])
print("closed image is the whole plane:", closed_image(sigma).ideal.gens == ())
print("dominant:", is_dominant(sigma))

print()
print("== inversion and self-composition")
print("sigma is its own inverse:", maps_equal(inverse(sigma), sigma))
square = compose(sigma, sigma)
print("sigma o sigma simplifies to the identity:", maps_equal(square, identity_map(X)))
print("   representative after simplification:", [repr(f) for f in square.reps[0]])

print()
print("== where the map is defined, and where it is an isomorphism")
dom = definable_locus(sigma)
breg = biregular_locus(sigma)
print("domain complement:", [X.format(w) for w in dom.witnesses])
print("biregularity complement:", [X.format(w) for w in breg.witnesses])
print("status at (2, 3):", point_status(sigma, (2, 3)))
print("status at (0, 1):", point_status(sigma, (0, 1)))

print()
print("== the induced Z/2 action and its regular model")
G = cyclic_group_2(("e", "sig"))
action = make_rational_action(G, X, {"e": identity_map(X), "sig": sigma})
reg = g_regular_locus(action)
print("G-regular locus: complement", [X.format(w) for w in reg.locus.witnesses],
      "- the two coordinate axes")

model = regularize_finite(action)
names = model.model.names
print("model variety:", list(names), "cut out by",
      [format_polynomial(g, names) for g in model.model.ideal.gens])
print("the involution on the model swaps coordinate pairs:")
for elem, coords in model.action_on_model.items():
    print("  ", elem, "->", [format_polynomial(p, names) for p in coords])
print("down-to-plane morphism:", [repr(f) for f in model.to_space.reps[0]])
print("rational inverse:", [repr(f) for f in model.from_space.reps[0]])
print("round trip is the identity:",
      maps_equal(compose(model.from_space, model.to_space), identity_map(X)))
