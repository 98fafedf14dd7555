"""Dense exact matrices over a field.

Entries may be any exact field elements supporting ``+ - * /`` with each
other and with the integers 0 and 1: rationals (mpq), GaussianRational, or
RatFunc.  A matrix carries no field tag; mixing fields in one matrix is the
caller's problem.
"""

from numbers import Integral

from .scalars import Q


def _pivot_key(x):
    # prefer low-complexity pivots; only meaningful for rational functions
    c = getattr(x, "complexity", None)
    return c() if c is not None else 0


def rref_rows(rows, ncols, simple_pivots=False):
    """In-place reduced row echelon form of a list of row lists.

    Pivots are searched in the first ``ncols`` columns only; row operations
    act on whole rows, so augmented columns are carried along.  Returns the
    list of pivot columns.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            if rows[i][c]:
                if not simple_pivots:
                    best = i
                    break
                if best is None or _pivot_key(rows[i][c]) < _pivot_key(rows[best][c]):
                    best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if not (inv == 1):
            prow = [x * inv for x in prow]
            rows[r] = prow
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


class Matrix:
    """Immutable rows x cols matrix with exact entries."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries, rows=None, cols=None):
        data = tuple(tuple(Q(x) if type(x) is int else x for x in row) for row in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError("ragged or mis-sized matrix entries")
        self.rows = rows
        self.cols = cols
        self._e = data
        self._hash = None

    # construction ------------------------------------------------------
    @classmethod
    def zeros(cls, rows, cols, zero=None):
        z = Q(0) if zero is None else zero
        return cls([[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n, one=None):
        o = Q(1) if one is None else one
        z = o - o
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [tuple(c) for c in columns]
        if any(len(c) != nrows for c in columns):
            raise ValueError("column length mismatch")
        return cls([[c[i] for c in columns] for i in range(nrows)], nrows, len(columns))

    @classmethod
    def rational(cls, entries):
        """Build from nested lists of ints / strings / Fractions."""
        return cls([[Q(x) for x in row] for row in entries])

    @classmethod
    def diag(cls, values, zero=None):
        values = list(values)
        n = len(values)
        z = Q(0) if zero is None else zero
        return cls([[values[i] if i == j else z for j in range(n)] for i in range(n)], n, n)

    # access -------------------------------------------------------------
    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def col(self, j):
        return tuple(row[j] for row in self._e)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def tolist(self):
        return [list(row) for row in self._e]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return not any(x for row in self._e for x in row)

    def map(self, f):
        return Matrix([[f(x) for x in row] for row in self._e], self.rows, self.cols)

    # algebra ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._e))
        return self._hash

    def __add__(self, other):
        self._check_same(other)
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)],
                      self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._e, other._e)],
                      self.rows, self.cols)

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c):
        return self.map(lambda x: c * x)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        zero = self._zero() if self.rows and self.cols else other._zero()
        out = []
        for row in self._e:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out_row = []
            for col in ocols:
                s = None
                for k, a in nz:
                    b = col[k]
                    if b:
                        s = a * b if s is None else s + a * b
                out_row.append(zero if s is None else s)
            out.append(out_row)
        return Matrix(out, self.rows, other.cols)

    def apply(self, vector):
        """Matrix times a column vector (tuple)."""
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        zero = self._zero()
        out = []
        for row in self._e:
            s = None
            for a, b in zip(row, vector):
                if a and b:
                    s = a * b if s is None else s + a * b
            out.append(zero if s is None else s)
        return tuple(out)

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise ValueError("only non-negative integer powers")
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.rows, self._one())
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def _one(self):
        for row in self._e:
            for x in row:
                return x ** 0 if not hasattr(x, "one") else x.one()
        return Q(1)

    def _zero(self):
        for row in self._e:
            for x in row:
                return x - x
        return Q(0)

    @property
    def T(self):
        return Matrix([list(c) for c in zip(*self._e)] if self.rows else [], self.cols, self.rows)

    def transpose(self):
        return self.T

    def hstack(self, *others):
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise ValueError("hstack row mismatch")
        return Matrix([sum((m._e[i] for m in mats), ()) for i in range(self.rows)],
                      self.rows, sum(m.cols for m in mats))

    def vstack(self, *others):
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise ValueError("vstack column mismatch")
        return Matrix([row for m in mats for row in m._e], sum(m.rows for m in mats), self.cols)

    def submatrix(self, rows, cols):
        rows = list(rows)
        cols = list(cols)
        return Matrix([[self._e[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def kron(self, other):
        return Matrix([[a * b for a in r1 for b in r2] for r1 in self._e for r2 in other._e],
                      self.rows * other.rows, self.cols * other.cols)

    def _check_same(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            raise ValueError("shape mismatch")

    # elimination --------------------------------------------------------
    def rref(self):
        """Return ``(R, rank, pivots)`` with R in reduced row echelon form."""
        rows = [list(r) for r in self._e]
        pivots = rref_rows(rows, self.cols)
        return Matrix(rows, self.rows, self.cols), len(pivots), pivots

    def rank(self):
        rows = [list(r) for r in self._e]
        return len(rref_rows(rows, self.cols, simple_pivots=True))

    def nullspace(self):
        """Basis (list of column tuples) of the right kernel."""
        rows = [list(r) for r in self._e]
        pivots = rref_rows(rows, self.cols, simple_pivots=True)
        zero = self._zero()
        one = self._one()
        free = [c for c in range(self.cols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for r, p in enumerate(pivots):
                v[p] = -rows[r][f]
            basis.append(tuple(v))
        return basis

    def det(self):
        if not self.is_square():
            raise ValueError("det of non-square matrix")
        n = self.rows
        rows = [list(r) for r in self._e]
        d = self._one()
        for c in range(n):
            p = next((i for i in range(c, n) if rows[i][c]), None)
            if p is None:
                return self._zero()
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                d = -d
            piv = rows[c][c]
            d = d * piv
            inv = 1 / piv
            for i in range(c + 1, n):
                f = rows[i][c]
                if f:
                    f = f * inv
                    rows[i] = [rows[i][k] - f * rows[c][k] for k in range(n)]
        return d

    def inverse(self):
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        one, zero = self._one(), self._zero()
        rows = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self._e)]
        pivots = rref_rows(rows, 2 * n, simple_pivots=True)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix([r[n:] for r in rows], n, n)

    def solve(self, rhs):
        """Exact solution X of ``self @ X == rhs`` (some solution; raises if none)."""
        if rhs.rows != self.rows:
            raise ValueError("rhs row mismatch")
        n = self.cols
        rows = [list(a) + list(b) for a, b in zip(self._e, rhs._e)]
        pivots = rref_rows(rows, n, simple_pivots=True)
        rank = len(pivots)
        for r in range(rank, self.rows):
            if any(rows[r][n:]):
                raise ValueError("inconsistent linear system")
        zero = rhs._zero() if rhs.rows and rhs.cols else self._zero()
        out = [[zero] * rhs.cols for _ in range(n)]
        for r, p in enumerate(pivots):
            out[p] = rows[r][n:]
        return Matrix(out, n, rhs.cols)

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"

    def __str__(self):
        return "[" + "\n ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._e) + "]"


def rref(m):
    """Reduced row echelon form: ``(R, rank, pivot_columns)``."""
    return m.rref()


def vec(*xs):
    return tuple(Q(x) for x in xs)
