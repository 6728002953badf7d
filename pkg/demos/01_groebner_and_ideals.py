"""Tour of the exact ideal-arithmetic engine.

Everything runs over arbitrary-precision rationals; Groebner bases are
reduced, hence canonical, so printed output is reproducible bit for bit.
"""

from weilreg import (
    GREVLEX,
    LEX,
    Ideal,
    block_order,
    eliminate,
    format_polynomial,
    is_empty_variety,
    parse_polynomial,
    radical_membership,
    saturate,
)

names = ["x", "y"]
P = lambda text: parse_polynomial(text, names)
show = lambda p: format_polynomial(p, names)


print("== membership by normal form")
I = Ideal(2, [P("x-1"), P("y-x")])
f = P("x^2-1")
print(f"normal form of {show(f)} modulo (x-1, y-x):", show(I.normal_form(f, LEX)))
print("so x^2-1 lies in the ideal:", I.contains(f))

print()
print("== reduced bases are canonical")
print("lex basis:", [show(g) for g in I.groebner_basis(LEX)])
J = Ideal(2, [P("y-x"), P("x-1")])  # same ideal, generators permuted
print("same basis from permuted generators:", I.groebner_basis(LEX) == J.groebner_basis(LEX))

print()
print("== elimination: shadows of varieties")
# the graph of inversion on the torus: x*x' = 1, y*y' = 1
g_names = ["x", "y", "xp", "yp"]
G = Ideal(4, [parse_polynomial("x*xp-1", g_names), parse_polynomial("y*yp-1", g_names)])
shadow = eliminate(G, {0, 1})
print("eliminating x, y from (x*xp-1, y*yp-1):", [format_polynomial(g, g_names) for g in shadow.gens] or "(0)")
print("   - the image is dense: no relations among xp, yp survive")

print()
print("== saturation removes unwanted components")
axes = Ideal(2, [P("x*y")])
print("(x*y) : x^inf =", [show(g) for g in saturate(axes, P("x")).gens])

print()
print("== emptiness over the algebraic closure")
print("V(x^2, x-1) empty:", is_empty_variety(Ideal(1, [parse_polynomial(t, ['x']) for t in ('x^2', 'x-1')])))

print()
print("== radical membership without computing radicals")
I2 = Ideal(2, [P("x^2")])
print("x in rad(x^2):", radical_membership(P("x"), I2))
print("y in rad(x^2):", radical_membership(P("y"), I2))

print()
print("== block orders drive the eliminations above")
order = block_order({0})
f2 = P("x + y^5")
lead_block, _ = f2.leading_term(order)
lead_grevlex, _ = f2.leading_term(GREVLEX)
print("leading exponents of x + y^5 under the x-eliminating order:", lead_block)
print("leading exponents under grevlex:", lead_grevlex)
