"""Induced maps on tensor, symmetric and exterior powers.

Basis conventions:
  tensor  -- index tuples in lexicographic order (Kronecker order)
  sym     -- non-decreasing index tuples, monomials e_i1 * ... * e_ip
  wedge   -- strictly increasing index tuples, e_i1 ^ ... ^ e_ip
Power 0 is the one-dimensional space in every case.
"""

from itertools import combinations, combinations_with_replacement, product

from ..exact.matrix import Matrix
from ..exact.scalars import Q
from ..exact.subspace import Subspace
from ..filtration import Filtration
from .weights import NilpotentEndo, sl2_splitting, weight_filtration

KINDS = ("tensor", "sym", "wedge")


def product_basis(d, power, kind):
    if kind == "tensor":
        return list(product(range(d), repeat=power))
    if kind == "sym":
        return list(combinations_with_replacement(range(d), power))
    if kind == "wedge":
        return list(combinations(range(d), power))
    raise ValueError(f"unknown product kind {kind!r}")


def _normalize(idx, kind):
    """Map an index tuple to (basis tuple, sign); sign 0 means the element vanishes."""
    if kind == "tensor":
        return tuple(idx), 1
    if kind == "sym":
        return tuple(sorted(idx)), 1
    # wedge: sort with sign, zero on repeats
    if len(set(idx)) < len(idx):
        return None, 0
    arr = list(idx)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    return tuple(arr), sign


def _expand(factors, kind, pos):
    """Expand a product of vectors (each a dict index -> coef) into basis coordinates."""
    out = {}
    for choice in product(*[list(f.items()) for f in factors]):
        idx = tuple(i for i, _ in choice)
        coef = Q(1)
        for _, c in choice:
            coef = coef * c
        key, sign = _normalize(idx, kind)
        if sign:
            out[pos[key]] = out.get(pos[key], 0) + sign * coef
    return out


def _columns_to_dicts(m):
    return [{i: x for i, x in enumerate(col) if x} for col in m.columns()]


def product_map(m, power, kind):
    """Functorial (group-like) action of a square matrix on the product space."""
    d = m.rows
    basis = product_basis(d, power, kind)
    pos = {b: i for i, b in enumerate(basis)}
    cols = _columns_to_dicts(m)
    size = len(basis)
    out = [[Q(0)] * size for _ in range(size)]
    for j, idx in enumerate(basis):
        for i, c in _expand([cols[k] for k in idx], kind, pos).items():
            out[i][j] = out[i][j] + c
    return Matrix(out, size, size)


def product_vectors(vectors, d, power, kind):
    """Coordinates of the products of tuples of vectors indexed like the product basis."""
    cols = [{i: x for i, x in enumerate(v) if x} for v in vectors]
    pos = {b: i for i, b in enumerate(product_basis(d, power, kind))}
    size = len(pos)
    out = []
    for idx in product_basis(len(vectors), power, kind):
        coords = [Q(0)] * size
        for i, c in _expand([cols[k] for k in idx], kind, pos).items():
            coords[i] = coords[i] + c
        out.append((idx, tuple(coords)))
    return out


def product_endo(n, power, kind):
    """Derivation action sum_k 1 x ... x N x ... x 1 on the product space."""
    m = n.matrix if isinstance(n, NilpotentEndo) else n
    if power < 0:
        raise ValueError("power must be non-negative")
    d = m.rows
    basis = product_basis(d, power, kind)
    size = len(basis)
    if power == 0:
        return NilpotentEndo(Matrix.zeros(size, size))
    if kind == "tensor":
        eye = Matrix.identity(d)
        acc = Matrix.zeros(size, size)
        for k in range(power):
            term = None
            for i in range(power):
                f = m if i == k else eye
                term = f if term is None else term.kron(f)
            acc = acc + term
        return NilpotentEndo(acc)
    pos = {b: i for i, b in enumerate(basis)}
    cols = _columns_to_dicts(m)
    out = [[Q(0)] * size for _ in range(size)]
    for j, idx in enumerate(basis):
        for k in range(power):
            factors = [cols[i] if t == k else {i: Q(1)} for t, i in enumerate(idx)]
            for i, c in _expand(factors, kind, pos).items():
                out[i][j] = out[i][j] + c
    return NilpotentEndo(Matrix(out, size, size))


def product_weight_filtration(n, power, kind, verify=True):
    """Weight filtration of the product map from the closed formula.

    Split the base space into sl2 weight vectors; W_l is spanned by products
    of weight vectors whose weights add up to at most l.  When verify is set
    the result is compared with the weight filtration of product_endo.
    """
    n = n if isinstance(n, NilpotentEndo) else NilpotentEndo(n)
    d = n.dim
    size = len(product_basis(d, power, kind))
    if power == 0 or size == 0:
        formula = Filtration.trivial(size)
    else:
        sl2 = sl2_splitting(n)
        vecs = sl2.basis.columns()
        weights = sl2.weights
        prods = product_vectors(vecs, d, power, kind)
        total = {}
        for idx, v in prods:
            total.setdefault(sum(weights[i] for i in idx), []).append(v)
        steps = {}
        acc = []
        for l in sorted(total):
            acc = acc + total[l]
            steps[l] = Subspace.span(acc, size)
        formula = Filtration(size, steps)
    if verify:
        direct = weight_filtration(product_endo(n, power, kind))
        if direct != formula:
            raise AssertionError(f"product formula disagrees with direct computation ({kind}, {power})")
    return formula
