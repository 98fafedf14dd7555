"""Vector bundles on the projective line given by a Laurent gluing matrix.

Frames: v over the lambda chart and v† over the mu chart (mu = 1/lambda),
related by v† = v A(lambda).  A section v x = v† x† has x(lambda) =
A(lambda) x†(1/lambda) with both coordinate vectors polynomial.  With this
convention the line bundle with gluing lambda^k is O(k).
"""

from functools import cached_property

from ..errors import InputError
from ..exact.matrix import Matrix
from ..exact.poly import LaurentMatrix, LaurentPolynomial, Poly
from ..exact.scalars import GaussianRational, Q
from .algebra import generic_rank, laurent, mu_poly, poly_matrix, ratfunc_matrix


def _field_matrix(rows, nrows, ncols):
    if any(isinstance(x, GaussianRational) for r in rows for x in r):
        rows = [[GaussianRational.coerce(x) for x in r] for r in rows]
    return Matrix(rows, nrows, ncols)


class TwistorBundle:
    """Bundle of rank r with gluing A(lambda), invertible over the Laurent ring."""

    def __init__(self, gluing):
        if isinstance(gluing, Matrix):
            gluing = LaurentMatrix(gluing.tolist(), gluing.rows, gluing.cols)
        elif not isinstance(gluing, LaurentMatrix):
            gluing = LaurentMatrix(gluing)
        if gluing.rows != gluing.cols:
            raise InputError(f"gluing matrix must be square, got {gluing.rows}x{gluing.cols}")
        self.gluing = gluing
        self.rank = gluing.rows
        det = gluing.det()
        if not det or not det.is_monomial():
            raise InputError("determinant of the gluing matrix is not a monomial")
        (self.degree, self.unit), = det.coeffs.items() if self.rank else ((0, Q(1)),)

    @cached_property
    def inverse(self):
        return self.gluing.inverse()

    def twist(self, n):
        """The bundle tensored with O(n)."""
        return TwistorBundle(self.gluing.scale(LaurentPolynomial.monomial(n)))

    def direct_sum(self, other):
        r, s = self.rank, other.rank
        rows = [[self.gluing[i, j] if i < r and j < r else
                 other.gluing[i - r, j - r] if i >= r and j >= r else 0
                 for j in range(r + s)] for i in range(r + s)]
        return TwistorBundle(LaurentMatrix(rows, r + s, r + s))

    def dual(self):
        return TwistorBundle(self.inverse.T)

    def __eq__(self, other):
        return isinstance(other, TwistorBundle) and self.gluing == other.gluing

    def __hash__(self):
        return hash(self.gluing)

    def __repr__(self):
        return f"TwistorBundle(rank={self.rank}, degree={self.degree})"


def validate(b):
    """(total degree m, unit c) with det A = c lambda^m."""
    if not isinstance(b, TwistorBundle):
        b = TwistorBundle(b)
    return b.degree, b.unit


def _section_system(b, n):
    """Linear system on the coefficients of x†; returns (matrix, cap) or None."""
    cap = n - b.inverse.min_exp()
    if cap < 0 or not b.rank:
        return None
    r = b.rank
    a = b.gluing
    low = n + a.min_exp() - cap
    rows = []
    for e in range(low, 0):
        for i in range(r):
            row = []
            for j in range(cap + 1):
                for c in range(r):
                    # lambda^n A[i, c] lambda^-j contributes A[i, c].coef(e - n + j)
                    row.append(a[i, c].coef(e - n + j))
            rows.append(row)
    ncols = (cap + 1) * r
    if not rows:
        rows = [[Q(0)] * ncols]
    return _field_matrix(rows, len(rows), ncols), cap


def sections(b, n):
    """Basis of global sections of b(n) as polynomial vectors x†(mu)."""
    system = _section_system(b, n)
    if system is None:
        return []
    m, cap = system
    r = b.rank
    out = []
    for sol in m.nullspace():
        out.append([Poly([sol[j * r + c] for j in range(cap + 1)]) for c in range(r)])
    return out


def h0(b, n=0):
    system = _section_system(b, n)
    if system is None:
        return 0
    m, _ = system
    return m.cols - m.rank()


def splitting_bounds(b):
    """Every splitting index lies in [min_exp(A), -min_exp(A^-1)]."""
    return b.gluing.min_exp(), -b.inverse.min_exp()


def h0_profile(b):
    lo, hi = splitting_bounds(b)
    return {n: h0(b, n) for n in range(-hi - 2, -lo + 1)}


def splitting_type(b):
    """Splitting indices, largest first, read off from n -> h0(b(n))."""
    if not b.rank:
        return []
    lo, hi = splitting_bounds(b)
    prof = h0_profile(b)
    out = []
    for k in range(hi, lo - 1, -1):
        mult = prof[-k] - 2 * prof[-k - 1] + prof[-k - 2]
        out.extend([k] * mult)
    if len(out) != b.rank or sum(out) != b.degree:
        raise AssertionError(f"inconsistent h0 profile {prof}")
    return out


def is_pure(b, w):
    return all(k == w for k in splitting_type(b))


class Birkhoff:
    """A(lambda) = P(lambda) diag(lambda^k_i) Q(1/lambda), P over K[lambda], Q over K[mu]."""

    def __init__(self, p, exponents, q):
        self.p = p
        self.exponents = exponents
        self.q = q

    def product(self):
        return laurent(self.p) @ LaurentMatrix.diag_monomials(self.exponents) @ laurent(self.q, inverted=True)

    def __iter__(self):
        return iter((self.p, self.exponents, self.q))


def birkhoff(b):
    """Factorization built from a frame of sections of b(-k_i), generically independent."""
    ks = splitting_type(b)
    r = b.rank
    chosen, exps = [], []
    for k in sorted(set(ks), reverse=True):
        need = ks.count(k)
        for sec in sections(b, -k):
            if need == 0:
                break
            trial = chosen + [sec]
            if generic_rank(Matrix.from_columns(trial, r)) == len(trial):
                chosen.append(sec)
                exps.append(k)
                need -= 1
        if need:
            raise AssertionError(f"could not find {ks.count(k)} independent sections of degree {k}")
    xdag = poly_matrix(Matrix.from_columns(chosen, r)) if r else Matrix([], 0, 0)
    # x_i(lambda) = lambda^-k_i A x†_i(1/lambda)
    x = b.gluing @ laurent(xdag, inverted=True) @ LaurentMatrix.diag_monomials([-k for k in exps])
    p = Matrix([[e.to_poly(0) for e in row] for row in x.tolist()], r, r)
    qinv = ratfunc_matrix(xdag).inverse()
    q = Matrix([[f.as_poly() for f in row] for row in qinv.tolist()], r, r)
    out = Birkhoff(p, exps, q)
    if out.product() != b.gluing:
        raise AssertionError("Birkhoff reconstruction failed")
    return out


def random_unimodular_poly(rng, r, steps=None, degree=1, spread=2):
    """Product of elementary matrices with polynomial off-diagonal entries."""
    m = poly_matrix(Matrix.identity(r))
    for _ in range(steps if steps is not None else 2 * r):
        if r < 2:
            break
        i, j = rng.sample(range(r), 2)
        f = Poly([Q(rng.randint(-spread, spread)) for _ in range(degree + 1)])
        e = [[Poly([1]) if a == b else (f if (a, b) == (i, j) else Poly()) for b in range(r)] for a in range(r)]
        m = m @ Matrix(e, r, r)
    return m


def obfuscated_bundle(rng, exponents, degree=1):
    """U(lambda) diag(lambda^k) V(1/lambda) with random unimodular U and V."""
    r = len(exponents)
    u = random_unimodular_poly(rng, r, degree=degree)
    v = random_unimodular_poly(rng, r, degree=degree)
    return TwistorBundle(laurent(u) @ LaurentMatrix.diag_monomials(list(exponents)) @ laurent(v, inverted=True))


def mu_inverse(b):
    """A^-1 written as a polynomial matrix in mu, defined when A^-1 has no positive exponents."""
    return mu_poly(b.inverse)
