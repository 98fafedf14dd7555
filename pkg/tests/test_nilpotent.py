import json
import random
from itertools import permutations
from pathlib import Path

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from htl.errors import NotCommutingError, NotCompatibleError, NotNilpotentError
from htl.exact import Matrix, Q, Subspace
from htl.jsonio import decode_tuple
from htl.nilpotent.compat import (is_bottom_compatible, is_hodge_type, is_sequentially_compatible,
                                  is_sequentially_compatible_at_level, is_strongly_sequentially_compatible,
                                  is_universally_bottom_compatible, restricted_level_equals_bottom,
                                  check_reduction_hypotheses)
from htl.nilpotent.hodge import hodge_bigrading
from htl.nilpotent.products import KINDS, product_endo, product_weight_filtration
from htl.nilpotent.sampling import random_commuting_tuple, random_nilpotent
from htl.nilpotent.strong import (chain_dims, differences, partial_sums, strong_basis, strong_splitting,
                                  verify_strong_basis)
from htl.nilpotent.weights import (CommutingTuple, NilpotentEndo, check_weight_axioms, jordan_chains,
                                   primitive_decomposition, sl2_splitting, weight_filtration,
                                   weight_filtration_from_sl2)

from oracles import rank_of_columns

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "hierarchy.json").read_text())


def jordan(sizes):
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    k = 0
    for s in sizes:
        for i in range(s - 1):
            rows[k + i][k + i + 1] = 1
        k += s
    return Matrix.rational(rows)


def sympy_jordan_sizes(m):
    """Block sizes of a nilpotent matrix from sympy's Jordan form."""
    sm = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in m.tolist()])
    j = sm.jordan_form(calc_transform=False)
    sizes, run = [], 1
    for i in range(j.rows):
        if i + 1 < j.rows and j[i, i + 1] == 1:
            run += 1
        else:
            sizes.append(run)
            run = 1
    return sorted(sizes, reverse=True)


def gr_dims_from_sizes(sizes):
    """A block of size s contributes one dimension at s-1, s-3, ..., 1-s."""
    out = {}
    for s in sizes:
        for l in range(1 - s, s, 2):
            out[l] = out.get(l, 0) + 1
    return dict(sorted(out.items()))


def kron(a, b):
    return a.kron(b)


# single nilpotent maps --------------------------------------------------------

def test_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        NilpotentEndo(Matrix.rational([[1, 0], [0, 0]]))


def test_zero_map_is_pure_of_weight_zero():
    w = weight_filtration(Matrix.zeros(3, 3))
    assert w.gr_dims() == {0: 3}


def test_single_block_weights():
    for s in range(1, 6):
        w = weight_filtration(jordan([s]))
        assert w.gr_dims() == gr_dims_from_sizes([s])
        # e_1 spans the bottom (N e_1 = 0 for the upper-shift convention)
        assert [Q(1)] + [Q(0)] * (s - 1) in w.step(1 - s)


def test_jordan_type_matches_sympy(rng):
    for _ in range(30):
        m = random_nilpotent(rng, rng.randint(1, 6), density=rng.choice([0.3, 0.7]))
        assert NilpotentEndo(m).jordan_type() == sympy_jordan_sizes(m)


def test_weight_filtration_dims_from_jordan_oracle(rng):
    for _ in range(40):
        m = random_nilpotent(rng, rng.randint(1, 7), density=rng.choice([0.3, 0.6, 0.9]))
        w = weight_filtration(m)
        assert w.gr_dims() == gr_dims_from_sizes(sympy_jordan_sizes(m))


def test_two_routes_agree(rng):
    for _ in range(30):
        m = random_nilpotent(rng, rng.randint(1, 7))
        assert weight_filtration(m) == weight_filtration_from_sl2(m)


def test_axiom_checker_rejects_a_wrong_filtration():
    n = jordan([3])
    wrong = weight_filtration(n).shifted(1)
    assert check_weight_axioms(n, wrong) is not None
    assert check_weight_axioms(n, weight_filtration(n)) is None


def test_sl2_triple_and_chains(rng):
    for _ in range(15):
        m = random_nilpotent(rng, rng.randint(1, 6))
        data = sl2_splitting(m)
        assert data.verify()
        chains = jordan_chains(NilpotentEndo(m))
        assert sorted((len(c) for c in chains), reverse=True) == sympy_jordan_sizes(m)


def test_primitive_decomposition_fills_graded_pieces():
    pd = primitive_decomposition(jordan([3, 2, 1]))
    assert pd.verify()
    # one primitive class of each weight 2, 1, 0
    assert {k: v for k, v in pd.dims().items() if k[0] == k[1]} == {(0, 0): 1, (1, 1): 1, (2, 2): 1}


@given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3),
       st.integers(min_value=0, max_value=10 ** 6))
def test_weight_axioms_property(sizes, seed):
    rng = random.Random(seed)
    from htl.nilpotent.sampling import random_unimodular
    n = sum(sizes)
    p = random_unimodular(rng, n)
    m = p @ jordan(sizes) @ p.inverse()
    w = weight_filtration(m)
    for l in w.grid():
        assert w.step(l).apply(m) <= w.step(l - 2)
    for k in range(1, max(sizes)):
        # N^k : Gr_k -> Gr_-k is an isomorphism: rank of N^k on W_k modulo W_{-k-1}
        nk = Matrix.identity(n)
        for _ in range(k):
            nk = nk @ m
        image = w.step(k).apply(nk) + w.step(-k - 1)
        assert image == w.step(-k)
        assert w.gr_dim(k) == w.gr_dim(-k)
    assert w.gr_dims() == gr_dims_from_sizes(sizes)


# products ---------------------------------------------------------------------

@pytest.mark.parametrize("kind", KINDS)
def test_product_formula_equals_direct(kind):
    for sizes in ([2], [3], [2, 1]):
        for power in range(0, 3):
            f = product_weight_filtration(jordan(sizes), power, kind)
            assert f == weight_filtration(product_endo(jordan(sizes), power, kind))


def test_sym2_of_j2_is_j3():
    assert NilpotentEndo(product_endo(jordan([2]), 2, "sym").matrix).jordan_type() == [3]


def test_tensor_square_of_j2_is_clebsch_gordan():
    # V_1 (x) V_1 = V_2 + V_0
    assert NilpotentEndo(product_endo(jordan([2]), 2, "tensor").matrix).jordan_type() == [3, 1]


# commuting tuples -------------------------------------------------------------

def test_tuple_rejects_non_commuting():
    with pytest.raises(NotCommutingError):
        CommutingTuple([jordan([2]), jordan([2]).T])


def j2_pair():
    i = Matrix.identity(2)
    return CommutingTuple([kron(jordan([2]), i), kron(i, jordan([2]))])


def test_sl2_pair_hierarchy():
    t = j2_pair()
    assert is_sequentially_compatible(t)[0]
    assert is_strongly_sequentially_compatible(t)[0]
    assert is_hodge_type(t)
    assert is_bottom_compatible(t)
    assert is_universally_bottom_compatible(t)
    assert restricted_level_equals_bottom(t)


def test_single_map_is_always_compatible(rng):
    for _ in range(5):
        t = CommutingTuple([random_nilpotent(rng, 4)])
        assert is_sequentially_compatible(t) == (True, None)
        assert is_strongly_sequentially_compatible(t) == (True, None)


def test_frozen_failing_pair():
    fx = FIXTURES["failing_pair"]
    t = CommutingTuple(decode_tuple(fx["tuple"]))
    ok, witness = is_sequentially_compatible(t)
    assert not ok
    assert not is_strongly_sequentially_compatible(t)[0]
    assert not is_hodge_type(t)
    with pytest.raises(NotCompatibleError):
        strong_splitting(t)


def test_frozen_level_hierarchy():
    fx = FIXTURES["strict_hierarchy"]
    t = CommutingTuple(decode_tuple(fx["tuple"]))
    assert is_sequentially_compatible_at_level(t, fx["level"])
    assert not is_sequentially_compatible(t)[0]


def test_frozen_strong_but_not_hodge():
    t = CommutingTuple(decode_tuple(FIXTURES["strong_not_hodge"]["tuple"]))
    assert is_strongly_sequentially_compatible(t)[0]
    assert not is_hodge_type(t)
    failing = [p for p in permutations(range(len(t)))
               if not is_strongly_sequentially_compatible(t.permuted(p))[0]]
    assert failing


def test_frozen_bottom_pattern():
    fx = FIXTURES["bottom_only_m2"]
    t = CommutingTuple(decode_tuple(fx["tuple"]))
    from htl.nilpotent.compat import wedge_tuple
    pattern = [is_bottom_compatible(wedge_tuple(t, m)) for m in range(t.dim + 1)]
    assert pattern == fx["pattern"]
    assert not is_universally_bottom_compatible(t)


def test_reduction_implication_on_samples(rng):
    for _ in range(10):
        t = CommutingTuple(random_commuting_tuple(rng, rng.randint(2, 4), 2, density=0.6, spread=1))
        holds, details = check_reduction_hypotheses(t)
        assert holds, details


# strong splittings --------------------------------------------------------------

def test_partial_sums_and_differences_invert():
    assert partial_sums((1, -2, 3)) == (1, -1, 2)
    assert differences(partial_sums((1, -2, 3))) == (1, -2, 3)


def test_strong_basis_of_sl2_pair():
    t = j2_pair()
    basis = strong_basis(t)
    assert verify_strong_basis(t, basis) is None
    sp = strong_splitting(t)
    assert sum(sp.dims().values()) == 4
    # every chain of length k + 1 starts at a top vector
    assert sum((k + 1) * c for (k, _), c in chain_dims(sp).items()) == 4


def test_strong_basis_degrees_match_filtrations(rng):
    found = 0
    for _ in range(30):
        maps = random_commuting_tuple(rng, rng.randint(2, 4), 2, density=0.6, spread=1)
        t = CommutingTuple(maps)
        if not is_strongly_sequentially_compatible(t)[0]:
            continue
        found += 1
        basis = strong_basis(t)
        for k, kappa, _, v in basis:
            for f, rho in zip(t.filtrations, partial_sums(kappa)):
                assert f.degree(v) == rho
        assert rank_of_columns([v for *_, v in basis], t.dim) == t.dim
    assert found


# Hodge bigradings -------------------------------------------------------------

def test_hodge_bigrading_steps():
    n = 3
    grading = {l: Subspace.span([[Q(1) if i == k else Q(0) for i in range(n)]], n)
               for k, l in enumerate((-1, 0, 1))}
    one = hodge_bigrading(grading, 1, weight=2)
    assert sorted(one[2]) == [(-1, 3), (0, 2), (1, 1)]
    two = hodge_bigrading(grading, 2)
    assert sorted(two[0]) == [(0, 0)]
    assert sorted(two[1]) == [(0, 1), (1, 0)]
