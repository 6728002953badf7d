"""Independent oracles for property tests: these deliberately avoid the
Groebner engine so that agreement is a real cross-check.
"""

import random
from fractions import Fraction

from weilreg.poly import Polynomial
from weilreg.polygcd import divide_exact


def random_polynomial(rng: random.Random, arity: int, max_deg: int, max_terms: int = 5,
                      coeff_bound: int = 5) -> Polynomial:
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        exps = tuple(rng.randrange(0, max_deg + 1) for _ in range(arity))
        if sum(exps) > max_deg:
            continue
        terms[exps] = Fraction(rng.randrange(-coeff_bound, coeff_bound + 1))
    return Polynomial(arity, terms)


def coefficients_in(f: Polynomial, var: int):
    """Coefficient polynomials of f by ascending powers of the variable."""
    deg = f.degree_in(var)
    parts = [dict() for _ in range(deg + 1)]
    for exps, coeff in f.terms.items():
        rest = list(exps)
        e = rest[var]
        rest[var] = 0
        parts[e][tuple(rest)] = coeff
    return [Polynomial(f.arity, p) for p in parts]


def poly_matrix_determinant(rows):
    """Fraction-free (Bareiss) determinant of a matrix of polynomials."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    arity = rows[0][0].arity
    m = [list(r) for r in rows]
    sign = 1
    previous = Polynomial.one(arity)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot is None:
                return Polynomial.zero(arity)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = divide_exact(numerator, previous)
        previous = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def sylvester_resultant(f: Polynomial, g: Polynomial, var: int) -> Polynomial:
    """Resultant of f and g with respect to one variable, by the Sylvester
    determinant over the remaining variables."""
    fc = coefficients_in(f, var)
    gc = coefficients_in(g, var)
    m = len(fc) - 1
    n = len(gc) - 1
    if m <= 0 or n <= 0:
        raise ValueError("both inputs need positive degree in the variable")
    size = m + n
    arity = f.arity
    zero = Polynomial.zero(arity)
    rows = []
    for shift in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(fc)):
            row[shift + i] = c
        rows.append(row)
    for shift in range(m):
        row = [zero] * size
        for i, c in enumerate(reversed(gc)):
            row[shift + i] = c
        rows.append(row)
    return poly_matrix_determinant(rows)
