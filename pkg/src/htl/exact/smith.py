"""Smith and column Hermite normal forms over K[lambda]."""

from .matrix import Matrix
from .poly import LaurentMatrix, Poly


class SmithResult:
    """U * M * V = D with U, V unimodular; Uinv, Vinv are their inverses.

    ``shift`` records the power of lambda used to clear a Laurent input, so
    for Laurent input U * (lambda^shift * M) * V = D.
    """

    def __init__(self, U, D, V, Uinv, Vinv, shift=0):
        self.U = U
        self.D = D
        self.V = V
        self.Uinv = Uinv
        self.Vinv = Vinv
        self.shift = shift

    def invariant_factors(self):
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols)) if self.D[i, i]]

    @property
    def rank(self):
        return len(self.invariant_factors())

    def __iter__(self):
        return iter((self.U, self.D, self.V))


def _ident(n):
    return [[Poly([1]) if i == j else Poly() for j in range(n)] for i in range(n)]


def smith_form(m):
    """Smith normal form of a polynomial (or Laurent) matrix."""
    shift = 0
    if isinstance(m, LaurentMatrix):
        shift, m = m.to_poly_matrix()
    a = [[Poly.coerce(x) for x in row] for row in m.tolist()]
    nr, nc = m.rows, m.cols
    U, Ui = _ident(nr), _ident(nr)
    V, Vi = _ident(nc), _ident(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(i, j, f):
        # row_i += f * row_j
        a[i] = [x + f * y for x, y in zip(a[i], a[j])]
        U[i] = [x + f * y for x, y in zip(U[i], U[j])]
        for row in Ui:
            row[j] = row[j] - row[i] * f

    def add_col(i, j, f):
        # col_i += f * col_j
        for row in a:
            row[i] = row[i] + f * row[j]
        for row in V:
            row[i] = row[i] + f * row[j]
        Vi[j] = [y - f * x for x, y in zip(Vi[i], Vi[j])]

    def scale_row(i, c):
        a[i] = [x * c for x in a[i]]
        U[i] = [x * c for x in U[i]]
        inv = 1 / c
        for row in Ui:
            row[i] = row[i] * inv

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                for j in range(t, nc):
                    x = a[i][j]
                    if x and (best is None or x.degree < a[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                break
            i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q, r = divmod(a[i][t], p)
                    add_row(i, t, -q)
                    if r:
                        clean = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q, r = divmod(a[t][j], p)
                    add_col(j, t, -q)
                    if r:
                        clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] and a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, Poly([1]))
        if best is None:
            break
        lc = a[t][t].lc()
        if not (lc == 1):
            scale_row(t, 1 / lc)

    def M(rows, r, c):
        return Matrix(rows, r, c)

    return SmithResult(M(U, nr, nr), M(a, nr, nc), M(V, nc, nc), M(Ui, nr, nr), M(Vi, nc, nc), shift)


def column_hermite(m):
    """Canonical basis of the K[lambda]-column module of m (full column rank).

    Lower column echelon form: pivot rows increase with the column index,
    pivots are monic, and entries to the left of a pivot are reduced modulo it.
    Returns (H, pivot_rows).
    """
    cols = [[Poly.coerce(x) for x in c] for c in m.columns()]
    n = m.rows
    pivots = []
    cur = 0
    for r in range(n):
        if cur == len(cols):
            break
        while True:
            nz = [j for j in range(cur, len(cols)) if cols[j][r]]
            if not nz:
                break
            j = min(nz, key=lambda k: cols[k][r].degree)
            cols[cur], cols[j] = cols[j], cols[cur]
            p = cols[cur][r]
            done = True
            for k in range(cur + 1, len(cols)):
                if cols[k][r]:
                    q, rem = divmod(cols[k][r], p)
                    cols[k] = [x - q * y for x, y in zip(cols[k], cols[cur])]
                    if rem:
                        done = False
            if done:
                break
        if not cols[cur][r]:
            continue
        inv = 1 / cols[cur][r].lc()
        cols[cur] = [x * inv for x in cols[cur]]
        for k in range(cur):
            if cols[k][r]:
                q = cols[k][r] // cols[cur][r]
                if q:
                    cols[k] = [x - q * y for x, y in zip(cols[k], cols[cur])]
        pivots.append(r)
        cur += 1
    # drop columns that became zero (only if m lacked full column rank)
    nonzero = [c for c in cols if any(c)]
    return Matrix.from_columns(nonzero, n) if nonzero else Matrix([[]] * n, n, 0), pivots


def is_unimodular(m):
    """Square polynomial matrix with nonzero constant determinant."""
    if m.rows != m.cols:
        return False
    if m.rows == 0:
        return True
    from .poly import RatFunc
    d = RatFunc.coerce(m.map(RatFunc.coerce).det())
    return bool(d) and d.is_poly() and d.num.is_const()


def has_unit_invariant_factors(m):
    """True iff m has full column rank at every point of the affine line."""
    s = smith_form(m)
    facs = s.invariant_factors()
    return len(facs) == m.cols and all(f.is_const() for f in facs)
