"""Generic coefficient vectors of commuting tuples, cone constancy of weight
filtrations, the degree-drop property of general combinations and the
semicontinuity of weight filtrations under specialization.
"""

import random
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import combinations

from .errors import NotNilpotentError, PreconditionError
from .exact.matrix import Matrix
from .exact.mpoly import MPoly, bareiss_rank, mat_mul
from .exact.poly import Poly
from .exact.scalars import Q
from .nilpotent.weights import CommutingTuple, jordan_type_from_ranks, weight_filtration

CONE_SPREAD = 10 ** 6


def _as_tuple(t):
    return t if isinstance(t, CommutingTuple) else CommutingTuple(t)


def profile_from_jordan(sizes):
    """Graded dimensions {weight: dim Gr_l} of the weight filtration of a Jordan type."""
    out = {}
    for s in sizes:
        for i in range(s):
            w = s - 1 - 2 * i
            out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


def step_dims(gr_dims):
    """Cumulative dims {l: dim W_l} at the jumps from graded dims."""
    acc, out = 0, {}
    for l in sorted(gr_dims):
        acc += gr_dims[l]
        out[l] = acc
    return out


def dim_at(profile, l):
    """dim W_l from cumulative dims stored at jumps."""
    best = 0
    for k in sorted(profile):
        if k <= l:
            best = profile[k]
    return best


def _symbolic_ranks(rows, dim):
    """Ranks of M^0, M^1, ... for a square matrix of MPoly entries."""
    if dim == 0:
        return [0]
    ranks = [dim]
    p = rows
    for _ in range(dim):
        r = bareiss_rank(p)
        ranks.append(r)
        if r == 0:
            break
        p = mat_mul(p, rows)
    return ranks


@dataclass(frozen=True)
class GenericProfile:
    """Weight filtration dims over the rational function field in the coefficients."""

    jordan_type: tuple
    gr_dims: dict

    @property
    def dims(self):
        return step_dims(self.gr_dims)


def generic_profile(t):
    t = _as_tuple(t)
    n, d = len(t), t.dim
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = MPoly(n)
            for k, m in enumerate(t.maps):
                if m[i, j]:
                    acc = acc + MPoly.var(n, k) * m[i, j]
            row.append(acc)
        rows.append(row)
    sizes = tuple(jordan_type_from_ranks(_symbolic_ranks(rows, d)))
    return GenericProfile(sizes, profile_from_jordan(sizes))


def is_general(t, a):
    t = _as_tuple(t)
    if len(a) != len(t):
        raise ValueError("coefficient vector length does not match the tuple")
    w = weight_filtration(t.combination([Q(x) for x in a]))
    return w.gr_dims() == generic_profile(t).gr_dims


def cone_samples(n, samples, seed=0):
    """All-ones, the unit-dominant vectors and seeded random positive rationals."""
    out = [tuple(Q(1) for _ in range(n))]
    if n > 1:
        for i in range(n):
            out.append(tuple(Q(CONE_SPREAD) if k == i else Q(1) for k in range(n)))
    rng = random.Random(seed)
    for _ in range(samples):
        out.append(tuple(Q(rng.randint(1, 997), rng.randint(1, 97)) for _ in range(n)))
    return out


def positive_cone_constancy(t, subset=None, samples=3, seed=0):
    """(True, None) if W(sum a_i N_i) over i in subset agrees on every sampled
    positive vector and matches the generic profile, else (False, witness).
    """
    t = _as_tuple(t)
    idx = list(range(len(t))) if subset is None else sorted(subset)
    if not idx:
        raise ValueError("empty index subset")
    sub = CommutingTuple([t.maps[i] for i in idx])
    generic = generic_profile(sub).gr_dims
    ref, ref_a = None, None
    for a in cone_samples(len(idx), samples, seed):
        w = weight_filtration(sub.combination(a))
        if w.gr_dims() != generic:
            return False, {"subset": idx, "a": [str(x) for x in a], "dims": w.gr_dims(), "generic": generic}
        if ref is None:
            ref, ref_a = w, a
        elif w != ref:
            return False, {"subset": idx, "a": [str(x) for x in ref_a], "b": [str(x) for x in a]}
    return True, None


_SEED = [0]


@contextmanager
def cone_seed(seed):
    """Seed used by cone_constancy_all_subsets when none is passed."""
    old = _SEED[0]
    _SEED[0] = seed
    try:
        yield
    finally:
        _SEED[0] = old


def cone_constancy_all_subsets(t, samples=2, seed=None):
    """Cone constancy for every index subset with at least two members."""
    t = _as_tuple(t)
    seed = _SEED[0] if seed is None else seed
    for size in range(2, len(t) + 1):
        for subset in combinations(range(len(t)), size):
            ok, witness = positive_cone_constancy(t, subset, samples, seed)
            if not ok:
                return False, witness
    return True, None


def degree_drop_check(t, a):
    """N_i W(a)_l inside W(a)_{l-1} for every i and every weight; a must be general."""
    t = _as_tuple(t)
    if not is_general(t, a):
        raise PreconditionError("coefficient vector is not general")
    w = weight_filtration(t.combination([Q(x) for x in a]))
    grid = w.grid()
    for m in t.maps:
        for l in grid:
            if not w.step(l).apply(m) <= w.step(l - 1):
                return False
    return True


@dataclass
class SpecializationResult:
    generic: dict
    special: dict
    l0: object
    generic_dim: object
    special_dim: object
    holds: bool

    def __bool__(self):
        return self.holds


def _family_rows(family):
    """Matrix of Poly in s -> rows of one-variable MPoly."""
    rows = []
    for i in range(family.rows):
        row = []
        for j in range(family.cols):
            p = Poly.coerce(family[i, j])
            row.append(MPoly(1, {(k,): c for k, c in enumerate(p.c)}))
        rows.append(row)
    return rows


def specialization_check(family, s0):
    """Compare the weight filtration over Q(s) with the one at s = s0.

    At the smallest weight where the dims disagree the generic dim must be
    strictly larger.
    """
    d = family.rows
    rows = _family_rows(family)
    p = rows
    for _ in range(d):
        p = mat_mul(p, rows)
    if d and any(x for r in p for x in r):
        raise NotNilpotentError("family is not nilpotent over Q(s)")
    sizes = jordan_type_from_ranks(_symbolic_ranks(rows, d))
    generic = step_dims(profile_from_jordan(sizes))
    special_matrix = Matrix([[Poly.coerce(family[i, j])(Q(s0)) for j in range(d)] for i in range(d)], d, d)
    try:
        special = step_dims(weight_filtration(special_matrix).gr_dims())
    except NotNilpotentError:
        raise NotNilpotentError("specialized matrix is not nilpotent") from None
    for l in range(-d, d + 1):
        g, s = dim_at(generic, l), dim_at(special, l)
        if g != s:
            return SpecializationResult(generic, special, l, g, s, g > s)
    return SpecializationResult(generic, special, None, None, None, True)
