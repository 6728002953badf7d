"""Slice certificates: proving a fraction on a product is secretly a
polynomial by sampling finitely many slices, and upgrading a rational group
action to a regular one from finitely many regularly-acting elements.
"""

from fractions import Fraction

from weilreg.actions import make_rational_action
from weilreg.errors import NotRegularOnSample, SliceNotRegular
from weilreg.groups import additive_group, multiplicative_group
from weilreg.maps import rational_map
from weilreg.poly import format_polynomial
from weilreg.ratfunc import RationalFunction
from weilreg.slices import certify_regular, decompose_tensor, regularity_from_subgroup
from weilreg.varieties import ProductAmbient, affine_space

A = affine_space(["a"])
Y = affine_space(["y"])
split = ProductAmbient(A, Y)
f = Y.poly("y")

print("== a removable denominator")
F = RationalFunction.parse(split.variety, "(a*y^2+y)/y")
dec = decompose_tensor(split, F, f)
print(f"f^{dec.power} * F =",
      " + ".join(f"({A.format(h)}) (x) ({Y.format(fi)})" for h, fi in dec.terms))
cert = certify_regular(split, F, f, samples=[(0,), (1,)])
print("samples:", [tuple(map(str, p)) for p in cert.samples])
print("evaluation matrix:", [[str(c) for c in row] for row in cert.matrix])
print("slice polynomials:", [Y.format(p) for p in cert.slice_polynomials])
print("solved combination rows:", [[str(c) for c in row] for row in cert.solve_coefficients])
print("certified polynomial form:", format_polynomial(cert.regular_form, split.names))

print()
print("== a genuine singularity is refused")
bad = RationalFunction.parse(split.variety, "1/y")
try:
    certify_regular(split, bad, f, samples=[(0,), (1,)])
except SliceNotRegular as err:
    print("rejected:", err)

print()
print("== regularity of an action from a sampled subgroup")
M = multiplicative_group()
X1 = affine_space(["x"])
P1 = ProductAmbient(M.variety, X1)
# a scaling action hidden behind an inflated representative
scaling = make_rational_action(M, X1, rational_map(P1.variety, X1, ("(z*x*(x+1))/(x+1)",)))
result = regularity_from_subgroup(scaling, [(1, 1), (2, Fraction(1, 2)), (3, Fraction(1, 3))])
print("certified action coordinates:", [repr(c) for c in result.polynomial_map.reps[0]])

print()
print("== the blow-up chart action cannot be certified")
G = additive_group("s")
X = affine_space(["u", "t"])
P = ProductAmbient(G.variety, X)
chart_action = make_rational_action(G, X, rational_map(P.variety, X, ("u+s", "u*t/(u+s)")))
try:
    regularity_from_subgroup(chart_action, [(0,), (1,)])
except NotRegularOnSample as err:
    print("rejected:", err)
