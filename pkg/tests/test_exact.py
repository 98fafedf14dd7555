from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from htl.exact import (LAM, GaussianRational, LaurentMatrix, LaurentPolynomial, Matrix, Poly,
                       Q, RatFunc, Subspace, image, kernel, quotient_basis, smith_form)
from htl.exact.mpoly import MPoly, bareiss_rank as mpoly_rank
from htl.exact.poly import poly_gcd
from htl.exact.smith import column_hermite, has_unit_invariant_factors, is_unimodular

from oracles import bareiss_rank, determinantal_divisors, rank_of_columns

small = st.integers(min_value=-4, max_value=4)


def mat(rows):
    return Matrix.rational(rows)


def rand_matrix(rng, r, c, lo=-3, hi=3, density=0.7):
    return Matrix([[Q(rng.randint(lo, hi), rng.randint(1, 3)) if rng.random() < density else Q(0)
                    for _ in range(c)] for _ in range(r)])


def jordan(sizes):
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    k = 0
    for s in sizes:
        for i in range(s - 1):
            rows[k + i][k + i + 1] = 1
        k += s
    return mat(rows)


# rref -------------------------------------------------------------------

def test_rref_identity():
    R, rank, piv = Matrix.identity(2).rref()
    assert R == Matrix.identity(2) and rank == 2 and piv == [0, 1]


def test_rref_jordan_block():
    m = mat([[0, 1], [0, 0]])
    R, rank, piv = m.rref()
    assert R == m and rank == 1 and piv == [1]


def test_rref_rank_matches_bareiss_oracle(rng):
    for _ in range(40):
        m = rand_matrix(rng, 6, 6, density=rng.choice([0.3, 0.6, 0.9]))
        _, rank, _ = m.rref()
        assert rank == bareiss_rank(m.tolist())


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_transpose(rows):
    m = mat(rows)
    assert m.rank() == m.T.rank()


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4), st.integers(1, 9))
def test_scaling_invariance(rows, k):
    m = mat(rows)
    R1, r1, p1 = m.rref()
    R2, r2, p2 = m.scale(Q(k)).rref()
    assert (R1, r1, p1) == (R2, r2, p2)
    assert kernel(m) == kernel(m.scale(Q(k)))


def test_det_inverse_solve(rng):
    for _ in range(20):
        m = rand_matrix(rng, 4, 4, density=0.9)
        d = m.det()
        assert d == Q(sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r]
                                    for r in m.tolist()]).det().p,
                      sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r]
                                    for r in m.tolist()]).det().q)
        if d:
            assert m @ m.inverse() == Matrix.identity(4)
            b = rand_matrix(rng, 4, 2)
            assert m @ m.solve(b) == b


def test_inverse_singular_raises():
    with pytest.raises(ZeroDivisionError):
        mat([[1, 2], [2, 4]]).inverse()


def test_solve_inconsistent():
    with pytest.raises(ValueError):
        mat([[1, 0], [0, 0]]).solve(mat([[0], [1]]))


def test_pow_and_kron():
    n = jordan([3])
    assert n ** 3 == Matrix.zeros(3, 3)
    assert n ** 0 == Matrix.identity(3)
    k = jordan([2]).kron(Matrix.identity(2))
    assert k.shape == (4, 4) and k[0, 2] == 1


# kernel / image -----------------------------------------------------------

def test_kernel_image_zero():
    z = Matrix.zeros(3, 3)
    assert kernel(z).is_full() and image(z).is_zero()


def test_kernel_image_jordan():
    m = mat([[0, 1], [0, 0]])
    e1 = Subspace.span([(Q(1), Q(0))], 2)
    assert kernel(m) == e1 and image(m) == e1


def test_kernel_image_jordan3_square():
    m = jordan([3]) ** 2
    assert kernel(m).dim == 2 and image(m).dim == 1


def test_rank_nullity(rng):
    for _ in range(30):
        m = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), density=0.5)
        k = kernel(m)
        assert k.dim + image(m).dim == m.cols
        for v in k.vectors():
            assert not any(m.apply(v))


# subspaces --------------------------------------------------------------

def e(i, n):
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


def test_sum_intersect_trivial():
    a = Subspace.span([e(0, 2)], 2)
    b = Subspace.span([e(1, 2)], 2)
    assert (a + b).is_full() and (a & b).is_zero()
    assert (a & a) == a
    assert quotient_basis(a, a).cols == 0


def rand_subspace(rng, n, k):
    return Subspace.span([tuple(Q(rng.randint(-2, 2)) for _ in range(n)) for _ in range(k)], n)


def test_dimension_formula_and_modular_law(rng):
    n = 8
    for _ in range(25):
        a, b, c = (rand_subspace(rng, n, rng.randint(0, 6)) for _ in range(3))
        s, i = a + b, a & b
        assert a.dim + b.dim == s.dim + i.dim
        assert s.dim == rank_of_columns(a.vectors() + b.vectors(), n)
        # every vector of the intersection lies in both
        for v in i.vectors():
            assert v in a and v in b
        # modular law: if a <= c then a + (b & c) == (a + b) & c
        a2 = a & c
        assert a2 + (b & c) == (a2 + b) & c


def test_canonical_form_bit_identical(rng):
    for _ in range(20):
        a = rand_subspace(rng, 5, 3)
        vs = a.vectors()
        mixed = [tuple(x * Q(3) + y for x, y in zip(vs[0], vs[-1]))] + [tuple(-x for x in v) for v in vs]
        b = Subspace.span(mixed, 5)
        assert a.basis == b.basis and hash(a) == hash(b)


def test_quotient_basis_completes(rng):
    for _ in range(20):
        a = rand_subspace(rng, 6, 4)
        b = Subspace.span(a.vectors()[:2], 6)
        q = quotient_basis(a, b)
        assert q.cols == a.dim - b.dim
        assert Subspace.span(b.vectors() + q.columns(), 6) == a


def test_quotient_requires_containment():
    with pytest.raises(ValueError):
        quotient_basis(Subspace.span([e(0, 2)], 2), Subspace.span([e(1, 2)], 2))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        Subspace.zero(2) + Subspace.zero(3)


def test_preimage(rng):
    for _ in range(10):
        m = rand_matrix(rng, 4, 5, density=0.5)
        t = rand_subspace(rng, 4, 2)
        pre = t.preimage(m)
        for v in pre.vectors():
            assert m.apply(v) in t
        assert pre.dim == kernel(m).dim + (t & image(m)).dim


# gaussian rationals ------------------------------------------------------

gauss = st.builds(lambda a, b, c, d: GaussianRational(Q(a, c), Q(b, d)), small, small,
                  st.integers(1, 5), st.integers(1, 5))


@given(gauss, gauss)
def test_gaussian_field_ops(x, y):
    assert (x + y) - y == x
    assert x.conjugate().conjugate() == x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if y:
        assert (x / y) * y == x
    assert (x * x.conjugate()).im == 0


def test_gaussian_matrix_elimination():
    i = GaussianRational(0, 1)
    one = GaussianRational(1, 0)
    m = Matrix([[one, i], [i, -one]])
    assert m.rank() == 1
    assert m.det() == 0


# polynomials ------------------------------------------------------------

def test_poly_divmod_gcd():
    x = Poly.x()
    a = (x - 1) * (x + 2) * (x + 2)
    b = (x + 2) * (x - 3)
    q, r = divmod(a, b)
    assert q * b + r == a and r.degree < b.degree
    assert poly_gcd(a, b) == x + 2


def test_ratfunc_normalization():
    x = Poly.x()
    f = RatFunc(x * x - 1, (x - 1) * 2)
    assert f.num == (x + 1) * Q(1, 2) and f.den == Poly([1])
    assert f == RatFunc(x + 1, Poly([2]))
    assert f.invert_variable() == RatFunc(Poly([1, 1]), Poly([0, 2]))


def test_laurent_ops():
    p = LaurentPolynomial({-1: 2, 3: 1})
    assert (p * LAM).coeffs == {0: 2, 4: 1}
    assert p.invert_variable().coeffs == {1: 2, -3: 1}
    assert LaurentPolynomial({2: 0}) == LaurentPolynomial()
    assert (LAM ** -2).coeffs == {-2: 1}


def test_laurent_matrix_det_inverse():
    a = LaurentMatrix([[0, LAM], [-(LAM ** -1), Q(5)]])
    assert a.det() == LaurentPolynomial({0: 1})
    assert a @ a.inverse() == LaurentMatrix.identity(2)
    d = LaurentMatrix.diag_monomials([2, -1])
    assert d.det() == LaurentPolynomial({1: 1})


# smith ------------------------------------------------------------------

def _check_smith(m):
    s = smith_form(m)
    pm = m if isinstance(m, Matrix) else m.to_poly_matrix()[1]
    assert s.U @ pm @ s.V == s.D
    assert is_unimodular(s.U) and is_unimodular(s.V)
    assert s.U @ s.Uinv == Matrix.identity(s.U.rows, Poly([1]))
    assert s.V @ s.Vinv == Matrix.identity(s.V.rows, Poly([1]))
    f = s.invariant_factors()
    for a, b in zip(f, f[1:]):
        assert not (b % a)
    for i in range(s.D.rows):
        for j in range(s.D.cols):
            if i != j:
                assert not s.D[i, j]
    return s


def P(*c):
    return Poly([Q(x) for x in c])


def test_smith_diag():
    s = _check_smith(Matrix([[P(0, 1), P()], [P(), P(0, 0, 1)]]))
    assert s.invariant_factors() == [P(0, 1), P(0, 0, 1)]


def test_smith_jordan_like():
    s = _check_smith(Matrix([[P(0, 1), P(1)], [P(), P(0, 1)]]))
    assert s.invariant_factors() == [P(1), P(0, 0, 1)]


def test_smith_identity():
    s = _check_smith(Matrix.identity(3, P(1)))
    assert s.D == Matrix.identity(3, P(1))


def _to_sympy(p):
    x = sympy.Symbol("x")
    return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x ** k for k, c in enumerate(p.c))


def test_smith_against_determinantal_divisors(rng):
    for _ in range(12):
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        m = Matrix([[P(*[rng.randint(-2, 2) for _ in range(rng.randint(0, 3))]) for _ in range(c)]
                    for _ in range(r)], r, c)
        s = _check_smith(m)
        ours = [sympy.expand(_to_sympy(f)) for f in s.invariant_factors()]
        theirs = [sympy.expand(f) for f in determinantal_divisors([[_to_sympy(e) for e in row]
                                                                   for row in m.tolist()])]
        assert ours == theirs


def test_smith_laurent_records_shift():
    s = smith_form(LaurentMatrix.diag_monomials([2, -1]))
    assert s.shift == 1
    assert s.invariant_factors() == [P(1), P(0, 0, 0, 1)]


def test_column_hermite_canonical():
    x = Poly.x()
    m = Matrix.from_columns([[x * x, x + 1], [x, P(1)]], 2)
    h, piv = column_hermite(m)
    h2, _ = column_hermite(Matrix.from_columns([[x, P(1)], [x * x + x, x + 2]], 2))
    assert h == h2


def test_unit_invariant_factors():
    x = Poly.x()
    assert has_unit_invariant_factors(Matrix.from_columns([[P(1), x]], 2))
    assert not has_unit_invariant_factors(Matrix.from_columns([[x, P()]], 2))


# multivariate -----------------------------------------------------------

def test_mpoly_rank_generic():
    t1, t2 = MPoly.var(2, 0), MPoly.var(2, 1)
    z = MPoly.const(2, 0)
    # t1*J2 (+) t2*J2
    m = [[z, t1, z, z], [z, z, z, z], [z, z, z, t2], [z, z, z, z]]
    assert mpoly_rank(m) == 2
    m2 = [[t1, t2], [t1 * t1, t1 * t2]]
    assert mpoly_rank(m2) == 1


def test_mpoly_rank_matches_sampled(rng):
    for _ in range(10):
        t = [MPoly.var(2, i) for i in range(2)]
        m = [[t[0] * rng.randint(-2, 2) + t[1] * rng.randint(-2, 2) + rng.randint(-1, 1)
              for _ in range(4)] for _ in range(4)]
        r = mpoly_rank(m)
        sym = sympy.Matrix([[sympy.sympify(_mp(e)) for e in row] for row in m])
        assert r == sym.rank(simplify=True)


def _mp(p):
    return " + ".join(f"({c})*t0**{e[0]}*t1**{e[1]}" for e, c in p.terms.items()) or "0"


def test_mpoly_exact_div():
    t1, t2 = MPoly.var(2, 0), MPoly.var(2, 1)
    a = (t1 + t2) * (t1 - t2 * 3)
    assert a.exact_div(t1 + t2) == t1 - t2 * 3
    with pytest.raises(ArithmeticError):
        (t1 + 1).exact_div(t2)


def test_fraction_interop():
    assert Q(Fraction(3, 6)) == Q(1, 2)
    assert Q("4/6") == Q(2, 3)
