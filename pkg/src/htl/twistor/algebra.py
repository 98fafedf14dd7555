"""Polynomial-matrix helpers shared by the bundle code.

Polynomial matrices are Matrix objects with Poly entries.  Whether a Poly is
read in lambda or in mu = 1/lambda is up to the caller.
"""

from ..exact.matrix import Matrix
from ..exact.poly import LaurentMatrix, Poly, RatFunc, poly_gcd
from ..exact.smith import column_hermite, smith_form


def poly_matrix(m):
    """Coerce scalars and Poly entries of a Matrix (or nested list) to Poly."""
    if not isinstance(m, Matrix):
        rows = len(m)
        cols = len(m[0]) if rows else 0
        m = Matrix([[Poly.coerce(x) if not isinstance(x, Poly) else x for x in r] for r in m], rows, cols)
    return Matrix([[Poly.coerce(x) for x in r] for r in m.tolist()], m.rows, m.cols)


def laurent(m, inverted=False):
    """LaurentMatrix in lambda from a polynomial matrix (in mu when inverted)."""
    return LaurentMatrix.from_poly_matrix(m, variable_inverted=inverted)


def mu_poly(lm):
    """Polynomial matrix in mu from a Laurent matrix in lambda with no positive exponents."""
    return Matrix([[x.invert_variable().to_poly(0) for x in r] for r in lm.tolist()], lm.rows, lm.cols)


def lam_poly(lm):
    return Matrix([[x.to_poly(0) for x in r] for r in lm.tolist()], lm.rows, lm.cols)


def ratfunc_matrix(m):
    if isinstance(m, LaurentMatrix):
        return m.to_ratfunc_matrix()
    return Matrix([[RatFunc.coerce(x) for x in r] for r in m.tolist()], m.rows, m.cols)


def evaluate(m, x):
    """Scalar matrix of a polynomial matrix at a point."""
    return Matrix([[Poly.coerce(e)(x) for e in r] for r in m.tolist()], m.rows, m.cols)


def generic_rank(m):
    if not m.rows or not m.cols:
        return 0
    return ratfunc_matrix(m).rank()


def clear_denominators(vec):
    """Polynomial multiple of a vector of rational functions, with content removed."""
    vec = [RatFunc.coerce(x) for x in vec]
    den = Poly([1])
    for x in vec:
        if not x.den.is_const():
            den = den * x.den.exact_div(poly_gcd(den, x.den))
    out = [(x.num * den).exact_div(x.den) for x in vec]
    g = Poly()
    for p in out:
        if p:
            g = poly_gcd(g, p) if g else p
    if g and not g.is_const():
        out = [p.exact_div(g) for p in out]
    return out


def poly_nullspace(m):
    """Polynomial vectors spanning the kernel of m over the function field."""
    if not m.cols:
        return []
    if not m.rows:
        return [[Poly([1]) if i == j else Poly() for i in range(m.cols)] for j in range(m.cols)]
    return [clear_denominators(v) for v in ratfunc_matrix(m).nullspace()]


def columns_matrix(cols, rows):
    if not cols:
        return Matrix([[]] * rows, rows, 0) if rows else Matrix([], 0, 0)
    return Matrix.from_columns(cols, rows)


def saturate_columns(g):
    """Basis of (function-field span of g) & K[x]^r in column Hermite form."""
    g = poly_matrix(g)
    if not g.cols or not g.rows:
        return columns_matrix([], g.rows)
    s = smith_form(g)
    rank = s.rank
    if not rank:
        return columns_matrix([], g.rows)
    basis = Matrix.from_columns([s.Uinv.col(j) for j in range(rank)], g.rows)
    h, _ = column_hermite(basis)
    return h


def left_inverse(s):
    """Polynomial L with L s = I for a matrix with unit invariant factors."""
    sm = smith_form(s)
    if sm.rank != s.cols or any(not f.is_const() for f in sm.invariant_factors()):
        raise ArithmeticError("matrix has non-unit invariant factors")
    # U s V = D, so (V D^+ U) s = I
    dplus = [[Poly([1 / sm.D[i, i].lc()]) if i == j else Poly() for j in range(s.rows)] for i in range(s.cols)]
    return poly_matrix(sm.V) @ Matrix(dplus, s.cols, s.rows) @ poly_matrix(sm.U)


def complement(s):
    """Columns C with [s | C] unimodular, for s with unit invariant factors."""
    sm = smith_form(s)
    if sm.rank != s.cols or any(not f.is_const() for f in sm.invariant_factors()):
        raise ArithmeticError("matrix has non-unit invariant factors")
    return Matrix.from_columns([sm.Uinv.col(j) for j in range(s.cols, s.rows)], s.rows) \
        if s.rows > s.cols else columns_matrix([], s.rows)
