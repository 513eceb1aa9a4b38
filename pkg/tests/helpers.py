"""Shared fixtures-adjacent helpers: sympy bridges and deterministic random data.

sympy is used as an independent oracle: conversions go through strings or raw
integer pairs, never through the code paths under test.
"""

import random
from fractions import Fraction

import sympy

from cubelin import GaussianRational, Polynomial, ScalarMatrix, parse_gaussian

PAPER_EXAMPLE_ROWS = [
    ["1", "i", "1", "1"],
    ["-i", "1", "-i", "-i"],
    ["-1", "-i", "1", "-1"],
    ["-1", "-i", "1", "-1"],
]


def paper_example() -> ScalarMatrix:
    # same matrix as the paper-example builtin, built here without matrixio
    return ScalarMatrix([[parse_gaussian(s) for s in row] for row in PAPER_EXAMPLE_ROWS])


def shear_matrix() -> ScalarMatrix:
    return ScalarMatrix([[parse_gaussian(s) for s in row] for row in (("0", "1"), ("0", "0"))])


def scalar_to_sympy(value: GaussianRational):
    re = sympy.Rational(value.re.numerator, value.re.denominator)
    im = sympy.Rational(value.im.numerator, value.im.denominator)
    return re + im * sympy.I


def matrix_to_sympy(M: ScalarMatrix) -> sympy.Matrix:
    return sympy.Matrix([[scalar_to_sympy(v) for v in row] for row in M.entries])


def poly_to_sympy(p: Polynomial, symbols):
    if len(symbols) != p.nvars:
        raise ValueError("symbol count must match arity")
    total = sympy.Integer(0)
    for exps, coeff in p.terms.items():
        term = scalar_to_sympy(coeff)
        for sym, e in zip(symbols, exps):
            term *= sym ** e
        total += term
    return sympy.expand(total)


def coordinate_symbols(n: int):
    return sympy.symbols(f"x1:{n + 1}")


def sympy_cubic_part(M: ScalarMatrix, symbols):
    # (A x)^{*3} written directly from entry strings, independent of Polynomial
    rows = []
    for i in range(M.rows):
        form = sum(scalar_to_sympy(M.entries[i][j]) * symbols[j] for j in range(M.cols))
        rows.append(sympy.expand(form ** 3))
    return rows


def sympy_map(M: ScalarMatrix, symbols):
    return [sympy.expand(symbols[i] + h) for i, h in enumerate(sympy_cubic_part(M, symbols))]


def sympy_trace_is_zero(M: ScalarMatrix) -> bool:
    symbols = coordinate_symbols(M.rows)
    total = sympy.Integer(0)
    for i in range(M.rows):
        form = sum(scalar_to_sympy(M.entries[i][j]) * symbols[j] for j in range(M.cols))
        total += 3 * scalar_to_sympy(M.entries[i][i]) * form ** 2
    return sympy.expand(total) == 0


def sympy_det_jf_is_one(M: ScalarMatrix) -> bool:
    n = M.rows
    symbols = coordinate_symbols(n)
    F = sympy_map(M, symbols)
    J = sympy.Matrix([[sympy.diff(F[i], symbols[j]) for j in range(n)] for i in range(n)])
    return sympy.expand(J.det()) == 1


def random_rational(rng: random.Random, span: int = 3, den: int = 1) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_gaussian(rng: random.Random, span: int = 3, den: int = 1) -> GaussianRational:
    return GaussianRational(random_rational(rng, span, den), random_rational(rng, span, den))


def random_scalar_matrix(rng: random.Random, n: int, span: int = 2, den: int = 1) -> ScalarMatrix:
    return ScalarMatrix(
        [[random_gaussian(rng, span, den) for _ in range(n)] for _ in range(n)]
    )


def random_polynomial(
    rng: random.Random, nvars: int, max_degree: int = 3, max_terms: int = 4, den: int = 1
) -> Polynomial:
    total = Polynomial.zero(nvars)
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        coeff = random_gaussian(rng, 3, den)
        if not coeff.is_zero():
            total = total + Polynomial(nvars, {tuple(exps): coeff})
    return total
