"""Subspaces of K^n in canonical reduced column echelon form."""

from .matrix import Matrix, rref_rows
from .scalars import Q


class Subspace:
    """A linear subspace of K^n.

    ``basis`` is an ambient_dim x dim matrix whose columns are the nonzero
    rows of the reduced row echelon form of any spanning set (transposed).
    Two equal subspaces therefore have identical bases.
    """

    __slots__ = ("ambient_dim", "_rows", "_pivots", "_hash")

    def __init__(self, ambient_dim, echelon_rows, pivots):
        self.ambient_dim = ambient_dim
        self._rows = tuple(tuple(r) for r in echelon_rows)
        self._pivots = tuple(pivots)
        self._hash = None

    @classmethod
    def span(cls, vectors, ambient_dim):
        rows = [[Q(x) if type(x) is int else x for x in v] for v in vectors]
        if any(len(r) != ambient_dim for r in rows):
            raise ValueError("vector length does not match ambient dimension")
        pivots = rref_rows(rows, ambient_dim)
        return cls(ambient_dim, rows[:len(pivots)], pivots)

    @classmethod
    def from_matrix(cls, m):
        """Column span of ``m``."""
        return cls.span(m.columns(), m.rows)

    @classmethod
    def zero(cls, n):
        return cls(n, [], [])

    @classmethod
    def full(cls, n, one=None):
        o = Q(1) if one is None else one
        z = o - o
        return cls(n, [[o if i == j else z for j in range(n)] for i in range(n)], range(n))

    # basic -------------------------------------------------------------
    @property
    def dim(self):
        return len(self._rows)

    @property
    def basis(self):
        return Matrix.from_columns(self._rows, self.ambient_dim)

    def vectors(self):
        return list(self._rows)

    @property
    def pivots(self):
        return self._pivots

    def is_zero(self):
        return not self._rows

    def is_full(self):
        return self.dim == self.ambient_dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self._rows))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    # membership --------------------------------------------------------
    def reduce(self, v):
        """Remainder of v after eliminating against the echelon basis."""
        v = list(v)
        for row, p in zip(self._rows, self._pivots):
            f = v[p]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def __contains__(self, v):
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coefficients of v in the echelon basis (raises if v is not in the span)."""
        if any(self.reduce(v)):
            raise ValueError("vector not in subspace")
        return tuple(v[p] for p in self._pivots)

    def __le__(self, other):
        self._check(other)
        return all(v in other for v in self._rows)

    def __ge__(self, other):
        return other <= self

    def __lt__(self, other):
        return self <= other and self.dim < other.dim

    # lattice operations -------------------------------------------------
    def __add__(self, other):
        self._check(other)
        if other.is_zero() or other <= self:
            return self
        if self.is_zero():
            return other
        return Subspace.span(list(self._rows) + list(other._rows), self.ambient_dim)

    def __and__(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        if self <= other:
            return self
        if other <= self:
            return other
        # x = A a = B b  <=>  (a, b) in ker [A | -B]
        a, b = self.basis, other.basis
        stacked = a.hstack(-b)
        vecs = []
        for sol in stacked.nullspace():
            coeffs = sol[:self.dim]
            vecs.append(a.apply(coeffs))
        return Subspace.span(vecs, self.ambient_dim)

    def apply(self, m):
        """Image m(self) of this subspace under a matrix."""
        if m.cols != self.ambient_dim:
            raise ValueError("matrix does not act on this space")
        return Subspace.span([m.apply(v) for v in self._rows], m.rows)

    def preimage(self, m, source_space=None):
        """{x : m x in self} (optionally intersected with source_space)."""
        if m.rows != self.ambient_dim:
            raise ValueError("matrix does not map into this space")
        # x with m x in self  <=>  (x, c) in ker [m | -B]
        b = self.basis
        stacked = m.hstack(-b) if self.dim else m
        vecs = [sol[:m.cols] for sol in stacked.nullspace()]
        pre = Subspace.span(vecs, m.cols)
        if source_space is not None:
            pre = pre & source_space
        return pre


def sum_all(spaces, ambient_dim):
    vecs = []
    for s in spaces:
        vecs.extend(s.vectors())
    return Subspace.span(vecs, ambient_dim)


def intersect_all(spaces, ambient_dim, one=None):
    result = Subspace.full(ambient_dim, one)
    for s in spaces:
        result = result & s
    return result


def quotient_basis(a, b):
    """Columns completing a basis of ``b`` to a basis of ``a`` (b must lie in a).

    Greedy over a's canonical basis in echelon order, so the choice is
    deterministic.
    """
    a._check(b)
    if not b <= a:
        raise ValueError("quotient_basis requires b to be contained in a")
    chosen = []
    current = b
    for v in a.vectors():
        if v not in current:
            chosen.append(v)
            current = Subspace.span(current.vectors() + [v], a.ambient_dim)
    return Matrix.from_columns(chosen, a.ambient_dim)


def kernel(m):
    """Kernel of m as a Subspace of K^cols."""
    return Subspace.span(m.nullspace(), m.cols)


def image(m):
    """Column space of m as a Subspace of K^rows."""
    return Subspace.from_matrix(m)


class QuotientChart:
    """Coordinates on upper/lower for nested subspaces lower <= upper."""

    def __init__(self, upper, lower):
        if not lower <= upper:
            raise ValueError("lower must be contained in upper")
        self.upper = upper
        self.lower = lower
        self.transversal = quotient_basis(upper, lower)
        self.dim = self.transversal.cols
        self._frame = self.transversal.hstack(lower.basis) if lower.dim else self.transversal

    def coords(self, v):
        """Quotient coordinates of a vector of ``upper``."""
        if not self.dim:
            return ()
        sol = self._frame.solve(Matrix.from_columns([v], self.upper.ambient_dim))
        return sol.col(0)[:self.dim]

    def project(self, space):
        """Image of (space & upper) in the quotient, as a Subspace of K^dim."""
        space = space & self.upper
        return Subspace.span([self.coords(v) for v in space.vectors()], self.dim)

    def lift(self, coords):
        return self.transversal.apply(coords)

    def lift_space(self, q):
        """Preimage in ``upper`` of a quotient subspace."""
        vecs = [self.lift(c) for c in q.vectors()] + self.lower.vectors()
        return Subspace.span(vecs, self.upper.ambient_dim)

    def induced_map(self, m, target):
        """Matrix of the map induced by m from this quotient to the target quotient."""
        cols = [target.coords(m.apply(t)) for t in self.transversal.columns()]
        return Matrix.from_columns(cols, target.dim) if cols else Matrix.zeros(target.dim, 0)
