"""Certifying global regularity of a rational function on a product from
regular slices.

Given F on X x Y whose denominator is supported on a hypersurface f of the
second factor, write f^k F = sum h_i (x) * f_i (y) with linearly independent
h_i, pick sample points of the first factor with an invertible evaluation
matrix, and solve each f_i / f^k as an exact combination of the sampled slice
functions.  When every slice is regular, the solved components are regular
and reassemble into a polynomial equal to F; the same engine upgrades a
rational group action to a regular one from a sample of regularly-acting
elements.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .actions import RationalAction, specialize
from .errors import (
    NonPolynomialResidue,
    NotFPower,
    NotRegularOnSample,
    SampleBudgetExhausted,
    SliceNotRegular,
)
from .ideals import divide_with_quotients, saturate
from .linalg import mat_inverse
from .maps import RationalMap, make_rational_map, maps_equal
from .poly import Polynomial
from .ratfunc import RationalFunction
from .varieties import AffineVariety, ProductAmbient


@dataclass
class SliceDecomposition:
    split: ProductAmbient
    fraction: RationalFunction  # F on the product
    denominator: Polynomial  # f on the second factor
    power: int  # minimal k with f^k in (den F) + I
    terms: list  # [(h_i on the first factor, f_i on the second factor)]
    samples: list = field(default=None)  # points of the first factor
    matrix: list = field(default=None)  # (h_i(x_j))
    solve_coefficients: list = field(default=None)  # rows express f_i/f^k in the slices
    slice_polynomials: list = field(default=None)  # regular forms of the sampled slices
    regular_form: Polynomial = field(default=None)  # polynomial equal to F on the product


def integer_points(dim: int, limit: int = 10_000):
    """Integer tuples in growing boxes, deterministically ordered."""
    count = 0
    radius = 0
    while True:
        if radius == 0:
            block = [(0,) * dim]
        else:
            block = sorted(
                p
                for p in _box(dim, radius)
                if max(abs(c) for c in p) == radius
            )
        for p in block:
            yield tuple(Fraction(c) for c in p)
            count += 1
            if count >= limit:
                return
        radius += 1


def _box(dim, radius):
    if dim == 0:
        yield ()
        return
    for c in range(-radius, radius + 1):
        for rest in _box(dim - 1, radius):
            yield (c,) + rest


def decompose_tensor(split: ProductAmbient, fraction: RationalFunction,
                     denominator: Polynomial) -> SliceDecomposition:
    """Minimal power k with f^k * F polynomial, plus the collected tensor
    terms of the polynomial form (terms only; samples come later)."""
    prod = split.variety
    den = fraction.den
    f_emb = split.embed_right(denominator)
    with_den = prod.ideal.plus([den])
    if not saturate(with_den, f_emb).is_unit():
        raise NotFPower("the denominator is not supported on the given hypersurface")
    k = 0
    power = Polynomial.one(prod.arity)
    while True:
        if with_den.contains(power):
            break
        k += 1
        power = power * f_emb
        if k > 1000:
            raise NotFPower("no reasonable power of f absorbs the denominator")
    divisors = [den] + list(prod.ideal.groebner_basis())
    quotients, remainder = divide_with_quotients(power, divisors)
    if not remainder.is_zero():
        raise NotFPower("internal: membership certificate did not divide out")
    cleared = prod.ideal.normal_form(quotients[0] * fraction.num)
    terms = []
    n_left = len(split.left_indices)
    for head, coeff in cleared.coefficients_wrt(split.left_indices):
        h = Polynomial(split.left.arity, {tuple(head[i] for i in split.left_indices): Fraction(1)})
        terms.append((h, coeff.restrict(split.right_indices)))
    return SliceDecomposition(split, fraction, denominator, k, terms)


def find_unimodular_samples(h, candidates, budget: int = 10_000, host: AffineVariety = None):
    """Points making the evaluation matrix (h_i(x_j)) exactly invertible.

    Scans the candidate enumeration in order, keeping each point whose
    evaluation vector increases the rank; deterministic for a deterministic
    enumeration.
    """
    n = len(h)
    points = []
    reduced = []  # row-echelon basis of accepted evaluation vectors
    consumed = 0
    for candidate in candidates:
        if len(points) == n:
            break
        consumed += 1
        if consumed > budget:
            break
        point = tuple(Fraction(c) for c in candidate)
        if host is not None and not host.point_on(point):
            continue
        vector = [hi.evaluate(point) for hi in h]
        residual = list(vector)
        for row in reduced:
            pivot = next(i for i, x in enumerate(row) if x != 0)
            if residual[pivot] != 0:
                factor = residual[pivot] / row[pivot]
                residual = [a - factor * b for a, b in zip(residual, row)]
        if any(x != 0 for x in residual):
            reduced.append(residual)
            points.append(point)
    if len(points) < n:
        raise SampleBudgetExhausted(
            f"only {len(points)} of {n} independent sample points found; enlarge the candidate set"
        )
    matrix = [[hi.evaluate(p) for p in points] for hi in h]
    return points, matrix


def _slice_at(split: ProductAmbient, fraction: RationalFunction, point):
    """Numerator and denominator of the slice F(point, .) on the second factor."""
    m = split.right.arity
    consts = [Polynomial.constant(m, c) for c in point]
    coords = [Polynomial.variable(m, j) for j in range(m)]
    num = fraction.num.substitute(consts + coords)
    den = fraction.den.substitute(consts + coords)
    return num, den


def _polynomial_form(host: AffineVariety, num: Polynomial, den: Polynomial):
    """Polynomial p with num = p * den modulo the host ideal, or None."""
    if host.ideal.contains(den):
        return None
    if den.is_constant():
        return host.ideal.normal_form(num.scale(Fraction(1) / den.constant_value()))
    if not host.ideal.plus([den]).contains(num):
        return None
    divisors = [den] + list(host.ideal.groebner_basis())
    quotients, remainder = divide_with_quotients(num, divisors)
    if not remainder.is_zero():
        return None
    return host.ideal.normal_form(quotients[0])


def certify_regular(split: ProductAmbient, fraction: RationalFunction,
                    denominator: Polynomial, samples=None, budget: int = 10_000) -> SliceDecomposition:
    """Produce the regular (polynomial) form of the fraction, certified
    through exactly solved slice combinations.

    ``samples`` may be explicit first-factor points or any enumeration;
    integer boxes are used when omitted.
    """
    dec = decompose_tensor(split, fraction, denominator)
    h = [t[0] for t in dec.terms]
    f_parts = [t[1] for t in dec.terms]
    candidates = samples if samples is not None else integer_points(split.left.arity)
    points, matrix = find_unimodular_samples(h, candidates, budget, host=split.left)
    Y = split.right
    slices = []
    for j, p in enumerate(points):
        num, den = _slice_at(split, fraction, p)
        poly = _polynomial_form(Y, num, den)
        if poly is None:
            shown = "(" + ", ".join(str(c) for c in p) + ")"
            raise SliceNotRegular(j, f"the slice at sample {shown} is not regular")
        slices.append(poly)
    transpose = [[matrix[i][j] for i in range(len(h))] for j in range(len(h))]
    coeffs = mat_inverse(transpose)
    f_power = Polynomial.one(Y.arity)
    for _ in range(dec.power):
        f_power = f_power * denominator
    solved = []
    for i in range(len(h)):
        r_i = Polynomial.zero(Y.arity)
        for j in range(len(points)):
            r_i = r_i + slices[j].scale(coeffs[i][j])
        r_i = Y.ideal.normal_form(r_i)
        if not Y.ideal.contains(f_parts[i] - r_i * f_power):
            raise NonPolynomialResidue(
                f"component {i}: {f_parts[i]} over f^{dec.power} is not regular"
            )
        solved.append(r_i)
    total = Polynomial.zero(split.arity)
    for hi, ri in zip(h, solved):
        total = total + split.embed_left(hi) * split.embed_right(ri)
    total = split.variety.ideal.normal_form(total)
    cross = total * fraction.den - fraction.num
    if not split.variety.ideal.contains(cross):
        raise NonPolynomialResidue("reassembled polynomial does not equal the fraction")
    dec.samples = points
    dec.matrix = matrix
    dec.solve_coefficients = coeffs
    dec.slice_polynomials = slices
    dec.regular_form = total
    return dec


@dataclass
class SubgroupRegularity:
    """Successful upgrade of a rational action to a regular one."""

    polynomial_map: RationalMap  # polynomial coordinates on the product
    certificates: list  # one SliceDecomposition per space coordinate
    sample_points: list  # the group points used


def regularity_from_subgroup(action: RationalAction, sample_points) -> SubgroupRegularity:
    """Certify that the action is regular given group points acting by regular
    automorphisms (asserted to generate a dense subgroup).

    Each sampled element must specialise to a polynomial map with polynomial
    inverse; each coordinate of the parametric map is then certified through
    its sampled slices.
    """
    group = action.group
    X = action.space
    if group.is_finite:
        raise NotFPower(
            "sample certification applies to parametric actions; a finite action "
            "is regular exactly when every element map is polynomial"
        )
    points = [group.require_point(p) for p in sample_points]
    for p in points:
        forward = specialize(action, p)
        backward = specialize(action, group.invert_point(p))
        for m, which in ((forward, "element"), (backward, "inverse")):
            for f in m.reps[0]:
                if _polynomial_form(X, f.num, f.den) is None:
                    shown = "(" + ", ".join(str(c) for c in p) + ")"
                    raise NotRegularOnSample(
                        f"the {which} map at {shown} is not a regular automorphism"
                    )
    split = action.ambient
    prod = split.variety
    coords = []
    certificates = []
    for j, f in enumerate(action.rho.reps[0]):
        F = RationalFunction(prod, f.num, f.den)
        if f.den.is_constant():
            den_right = Polynomial.one(X.arity)
        else:
            present = f.den.variables_present()
            if not present <= set(split.right_indices):
                raise NotFPower(
                    "the denominator mixes group parameters into the space factor; "
                    "a parameter-independent open set is required"
                )
            den_right = f.den.restrict(split.right_indices)
        dec = certify_regular(split, F, den_right, samples=points, budget=len(points))
        certificates.append(dec)
        coords.append(RationalFunction(prod, dec.regular_form))
    polynomial_map = make_rational_map(prod, X, [tuple(coords)])
    if not maps_equal(polynomial_map, action.rho):
        raise NonPolynomialResidue("certified coordinates do not reproduce the action")
    return SubgroupRegularity(polynomial_map, certificates, points)
