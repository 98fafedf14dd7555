"""Independent reference computations used only by the tests.

These deliberately avoid the package's own elimination code: integer
fraction-free elimination and sympy.
"""

from fractions import Fraction
from math import lcm

import sympy


def int_rows(rows):
    """Scale each row of rationals to integers."""
    out = []
    for r in rows:
        fr = [Fraction(int(x.numerator), int(x.denominator)) for x in r]
        d = lcm(*[f.denominator for f in fr]) if fr else 1
        out.append([int(f * d) for f in fr])
    return out


def bareiss_rank(rows):
    a = int_rows(rows)
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    prev, rank = 1, 0
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, nr):
            for j in range(c + 1, nc):
                num = p * a[i][j] - a[i][c] * a[rank][j]
                assert num % prev == 0
                a[i][j] = num // prev
            a[i][c] = 0
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def rank_of_columns(vectors, n):
    """Rank of a list of column vectors of length n."""
    if not vectors:
        return 0
    return bareiss_rank([list(r) for r in zip(*vectors)])


def determinantal_divisors(entries):
    """Invariant factors of a polynomial matrix over Q[x] given as sympy exprs.

    d_k = gcd of k x k minors, invariant factor f_k = d_k / d_{k-1}.
    """
    from itertools import combinations
    x = sympy.Symbol("x")
    m = sympy.Matrix(entries)
    r, c = m.shape
    prev = sympy.Integer(1)
    out = []
    for k in range(1, min(r, c) + 1):
        g = sympy.Integer(0)
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = sympy.gcd(g, m.extract(list(rows), list(cols)).det())
        if g == 0:
            break
        g = sympy.Poly(g, x).monic().as_expr()
        out.append(sympy.simplify(g / prev))
        prev = g
    return out
