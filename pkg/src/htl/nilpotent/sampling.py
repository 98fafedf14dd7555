"""Seeded generators of nilpotent matrices and commuting nilpotent tuples."""

from ..exact.matrix import Matrix
from ..exact.scalars import Q


def _strict_upper_basis(d):
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def random_unimodular(rng, d, spread=2):
    """Random integer matrix with determinant 1 (product of elementary moves)."""
    m = Matrix.identity(d)
    for _ in range(2 * d):
        i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
        if i == j:
            continue
        e = [[Q(1) if a == b else Q(0) for b in range(d)] for a in range(d)]
        e[i][j] = Q(rng.randint(-spread, spread))
        m = m @ Matrix(e, d, d)
    return m


def random_nilpotent(rng, d, density=0.5, spread=2, conjugate=True):
    """Strictly upper triangular random matrix, optionally conjugated."""
    rows = [[Q(0)] * d for _ in range(d)]
    for i, j in _strict_upper_basis(d):
        if rng.random() < density:
            rows[i][j] = Q(rng.randint(-spread, spread))
    n = Matrix(rows, d, d)
    if conjugate and d > 1:
        p = random_unimodular(rng, d)
        n = p @ n @ p.inverse()
    return n


def commuting_strict_upper(maps, d):
    """Basis of strictly upper triangular matrices commuting with every map."""
    slots = _strict_upper_basis(d)
    if not slots:
        return []
    # unknown X = sum x_s E_s; equations (M X - X M)_{ab} = 0
    eqs = []
    for m in maps:
        for a in range(d):
            for b in range(d):
                row = []
                for (i, j) in slots:
                    # (M E_ij)_{ab} = M[a,i] [b == j];  (E_ij M)_{ab} = [a == i] M[j,b]
                    v = (m[a, i] if b == j else 0) - (m[j, b] if a == i else 0)
                    row.append(Q(v))
                eqs.append(row)
    if not eqs:
        eqs = [[Q(0)] * len(slots)]
    sols = Matrix(eqs, len(eqs), len(slots)).nullspace()
    out = []
    for s in sols:
        rows = [[Q(0)] * d for _ in range(d)]
        for (i, j), x in zip(slots, s):
            rows[i][j] = x
        out.append(Matrix(rows, d, d))
    return out


def random_commuting_tuple(rng, d, n, density=0.5, spread=2, conjugate=True):
    """n pairwise commuting nilpotent d x d matrices.

    The first map is a random strictly upper triangular matrix; each further
    map is a random integer combination of a basis of the strictly upper
    triangular common centralizer.  A common conjugation hides the shape.
    """
    maps = [random_nilpotent(rng, d, density, spread, conjugate=False)]
    while len(maps) < n:
        basis = commuting_strict_upper(maps, d)
        acc = Matrix.zeros(d, d)
        for b in basis:
            c = rng.randint(-spread, spread) if rng.random() < density else 0
            if c:
                acc = acc + b.scale(Q(c))
        maps.append(acc)
    if conjugate and d > 1:
        p = random_unimodular(rng, d)
        pinv = p.inverse()
        maps = [p @ m @ pinv for m in maps]
    return maps
