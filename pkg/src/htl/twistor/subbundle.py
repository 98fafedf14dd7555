"""Subbundles, quotients and filtrations by subbundles.

A subbundle is stored by saturated polynomial bases in both charts: S(lambda)
in the v-frame and S†(mu) in the v†-frame, with A S†(1/lambda) = S(lambda) T(lambda).
The sub-frames w = v S and w† = v† S† then satisfy w† = w T, so T is the
gluing matrix of the subbundle itself.
"""

from ..errors import InputError
from ..exact.matrix import Matrix
from ..exact.poly import LaurentMatrix, LaurentPolynomial
from .algebra import (columns_matrix, complement, evaluate, generic_rank, lam_poly, laurent,
                      left_inverse, poly_matrix, poly_nullspace, saturate_columns)
from .bundle import TwistorBundle, is_pure, splitting_type

SAMPLE_POINTS = (("lambda", 0), ("lambda", 1), ("lambda", 2), ("mu", 0))


def _shift_to_poly(lm):
    """Multiply a Laurent matrix by the smallest power making it polynomial."""
    return lam_poly(lm.scale(LaurentPolynomial.monomial(max(0, -lm.min_exp()))))


class Subbundle:

    def __init__(self, parent, lam_basis, mu_basis, transition):
        self.parent = parent
        self.lam_basis = lam_basis
        self.mu_basis = mu_basis
        self.transition = transition

    @property
    def rank(self):
        return self.lam_basis.cols

    def bundle(self):
        return TwistorBundle(self.transition) if self.rank else None

    def splitting_type(self):
        return splitting_type(self.bundle()) if self.rank else []

    @property
    def degree(self):
        return self.bundle().degree if self.rank else 0

    def fiber(self, point):
        """Span of the sub-frame at ("lambda", x) in v-coordinates or ("mu", x) in v†-coordinates."""
        from ..exact.subspace import Subspace
        chart, x = point
        basis = self.lam_basis if chart == "lambda" else self.mu_basis
        return Subspace.span(evaluate(basis, x).columns(), self.parent.rank)

    def verify(self):
        a = self.parent.gluing
        if a @ laurent(self.mu_basis, inverted=True) != laurent(self.lam_basis) @ self.transition:
            return "transition witness does not satisfy A S†(1/lambda) = S T"
        for b in (self.lam_basis, self.mu_basis):
            if self.rank and not _unit_factors(b):
                return "basis is not saturated"
        return None

    def contains(self, other):
        """other inside self (checked generically; both are saturated)."""
        if other.rank == 0:
            return True
        both = columns_matrix(self.lam_basis.columns() + other.lam_basis.columns(), self.parent.rank)
        return generic_rank(both) == self.rank

    def __eq__(self, other):
        return isinstance(other, Subbundle) and self.rank == other.rank and self.contains(other)

    def __hash__(self):
        return hash(self.rank)

    def __repr__(self):
        return f"Subbundle(rank={self.rank} of {self.parent.rank})"


def _unit_factors(m):
    from ..exact.smith import has_unit_invariant_factors
    return has_unit_invariant_factors(m)


def _mu_generators(parent, lam_basis):
    """v†-coordinates of the generic span of v S(lambda), as polynomials in mu."""
    x = parent.inverse @ laurent(lam_basis)
    return _shift_to_poly(x.invert_variable())


def _lam_generators(parent, mu_basis):
    x = parent.gluing @ laurent(mu_basis, inverted=True)
    return _shift_to_poly(x)


def _from_lambda(parent, s):
    r = parent.rank
    if not s.cols:
        empty = columns_matrix([], r)
        return Subbundle(parent, empty, empty, LaurentMatrix([], 0, 0))
    sdag = saturate_columns(_mu_generators(parent, s))
    if sdag.cols != s.cols:
        raise InputError("saturations in the two charts have different ranks")
    t = laurent(left_inverse(s)) @ parent.gluing @ laurent(sdag, inverted=True)
    sub = Subbundle(parent, s, sdag, t)
    bad = sub.verify()
    if bad:
        raise InputError(f"not a subbundle: {bad}")
    return sub


def saturate(parent, generators, chart="lambda", allow_rank_drop=False):
    """Smallest subbundle containing the given polynomial columns.

    ``generators`` is a polynomial matrix in the coordinates of the chosen
    chart.  Without ``allow_rank_drop`` the columns must be generically
    independent.
    """
    g = poly_matrix(generators)
    if g.rows != parent.rank:
        raise InputError(f"generators have {g.rows} rows, bundle has rank {parent.rank}")
    if not allow_rank_drop and generic_rank(g) != g.cols:
        raise InputError("generators do not have full generic rank")
    if chart == "mu":
        g = _lam_generators(parent, g)
    elif chart != "lambda":
        raise InputError(f"unknown chart {chart!r}")
    return _from_lambda(parent, saturate_columns(g))


def whole(parent):
    return saturate(parent, Matrix.identity(parent.rank))


def zero_sub(parent):
    return _from_lambda(parent, columns_matrix([], parent.rank))


def sub_sum(s1, s2):
    cols = s1.lam_basis.columns() + s2.lam_basis.columns()
    return saturate(s1.parent, columns_matrix(cols, s1.parent.rank), allow_rank_drop=True)


def sub_intersect(s1, s2):
    r = s1.parent.rank
    if not s1.rank or not s2.rank:
        return zero_sub(s1.parent)
    stacked = s1.lam_basis.hstack(s2.lam_basis.scale(-1)) if s2.rank else s1.lam_basis
    kern = poly_nullspace(stacked)
    vecs = [s1.lam_basis.apply(v[:s1.rank]) for v in kern]
    return saturate(s1.parent, columns_matrix(vecs, r), allow_rank_drop=True)


def coordinates_in(outer, inner):
    """Polynomial M (and M†) with inner.S = outer.S M, inner.S† = outer.S† M†."""
    m = left_inverse(outer.lam_basis) @ inner.lam_basis
    mdag = left_inverse(outer.mu_basis) @ inner.mu_basis
    if outer.lam_basis @ m != inner.lam_basis or outer.mu_basis @ mdag != inner.mu_basis:
        raise InputError("subbundle is not contained in the given one")
    return m, mdag


def as_subbundle_of(outer, inner):
    """inner, re-expressed as a subbundle of the bundle carried by outer."""
    m, mdag = coordinates_in(outer, inner)
    return Subbundle(outer.bundle(), m, mdag, inner.transition)


def push_forward(outer, inner_of_outer):
    """A subbundle of outer.bundle() expressed in the coordinates of outer.parent."""
    return Subbundle(outer.parent, outer.lam_basis @ inner_of_outer.lam_basis,
                     outer.mu_basis @ inner_of_outer.mu_basis, inner_of_outer.transition)


class Quotient:
    """outer / inner with its gluing and the projections in both charts.

    ``project_lam`` maps outer-coordinates (lambda chart) to quotient
    coordinates, ``project_mu`` does the same in the mu chart.
    """

    def __init__(self, bundle, project_lam, project_mu, frame, frame_dag):
        self.bundle = bundle
        self.project_lam = project_lam
        self.project_mu = project_mu
        self.frame = frame
        self.frame_dag = frame_dag


def quotient(outer, inner):
    """Quotient of two nested subbundles of the same parent, via adapted frames."""
    m, mdag = coordinates_in(outer, inner)
    s = outer.rank - inner.rank
    if s == 0:
        empty = Matrix([], 0, outer.rank)
        return Quotient(None, empty, empty, None, None)
    c, cdag = complement(m), complement(mdag)
    g = m.hstack(c) if m.cols else c
    gdag = mdag.hstack(cdag) if mdag.cols else cdag
    ginv = _poly_inverse(g)
    gdaginv = _poly_inverse(gdag)
    t = laurent(ginv) @ outer.transition @ laurent(gdag, inverted=True)
    k = inner.rank
    for i in range(k, outer.rank):
        for j in range(k):
            if t[i, j]:
                raise AssertionError("adapted transition is not block triangular")
    block = LaurentMatrix([[t[i, j] for j in range(k, outer.rank)] for i in range(k, outer.rank)], s, s)
    plam = Matrix([ginv.row(i) for i in range(k, outer.rank)], s, outer.rank)
    pmu = Matrix([gdaginv.row(i) for i in range(k, outer.rank)], s, outer.rank)
    return Quotient(TwistorBundle(block), plam, pmu, g, gdag)


def _poly_inverse(g):
    from .algebra import ratfunc_matrix
    inv = ratfunc_matrix(g).inverse()
    return Matrix([[f.as_poly() for f in row] for row in inv.tolist()], g.rows, g.cols)


class FilteredTwistorBundle:
    """A bundle with an increasing filtration by subbundles {weight: Subbundle}."""

    def __init__(self, bundle, steps):
        self.bundle = bundle
        self.steps = dict(sorted(steps.items()))
        keys = list(self.steps)
        for a, b in zip(keys, keys[1:]):
            if not self.steps[b].contains(self.steps[a]):
                raise InputError(f"filtration steps {a} and {b} are not nested")
        if keys and self.steps[keys[-1]].rank != bundle.rank:
            raise InputError("top filtration step is not the whole bundle")

    def step(self, l):
        best = None
        for k, s in self.steps.items():
            if k <= l:
                best = s
        return best if best is not None else zero_sub(self.bundle)

    def weights(self):
        return list(self.steps)

    def graded(self, l):
        """Gluing bundle of Gr_l (None when the piece is zero)."""
        upper, lower = self.step(l), self.step(l - 1)
        if upper.rank == lower.rank:
            return None
        return quotient(upper, lower).bundle

    def graded_types(self):
        return {l: splitting_type(self.graded(l)) for l in self.steps if self.graded(l) is not None}

    def twist(self, n):
        """The filtered bundle tensored with O(n); weights move up by n."""
        tb = self.bundle.twist(n)
        steps = {}
        for l, s in self.steps.items():
            t = s.transition.scale(LaurentPolynomial.monomial(n)) if s.rank else s.transition
            steps[l + n] = Subbundle(tb, s.lam_basis, s.mu_basis, t)
        return FilteredTwistorBundle(tb, steps)


def is_mixed_twistor(f):
    """(True, None) when every Gr_l is pure of weight l, else (False, l)."""
    for l in f.steps:
        g = f.graded(l)
        if g is not None and not is_pure(g, l):
            return False, l
    return True, None


def induced_on(f, sub):
    """Filtration sub & W_l, as a FilteredTwistorBundle on sub.bundle()."""
    steps = {}
    for l in f.steps:
        inter = sub_intersect(sub, f.step(l))
        steps[l] = as_subbundle_of(sub, inter)
    steps = _drop_repeats(steps)
    return FilteredTwistorBundle(sub.bundle(), steps)


def _drop_repeats(steps):
    out, prev = {}, -1
    for l, s in sorted(steps.items()):
        if s.rank != prev:
            out[l] = s
            prev = s.rank
    return out


def is_sub_mixed_twistor(f, sub):
    if not sub.rank:
        return True
    return is_mixed_twistor(induced_on(f, sub))[0]


def checked_sub_sum(f, s1, s2):
    """Sum of two sub mixed twistors, itself verified to be one."""
    for s in (s1, s2):
        if not is_sub_mixed_twistor(f, s):
            raise InputError("input is not a sub mixed twistor")
    out = sub_sum(s1, s2)
    if not is_sub_mixed_twistor(f, out):
        raise AssertionError("sum of sub mixed twistors is not a sub mixed twistor")
    return out


def checked_sub_intersect(f, s1, s2):
    for s in (s1, s2):
        if not is_sub_mixed_twistor(f, s):
            raise InputError("input is not a sub mixed twistor")
    out = sub_intersect(s1, s2)
    if out.rank and not is_sub_mixed_twistor(f, out):
        raise AssertionError("intersection of sub mixed twistors is not a sub mixed twistor")
    return out
