"""The compatibility hierarchy of commuting nilpotent tuples.

Every check is done upstairs inside W(1)_{h1}: a subspace of Gr_{h1} is
represented by its preimage, which contains W(1)_{h1-1}.  The maps induced
on Gr_a by N_2, ..., N_n preserve the grading, so the induced tuple is
handled piece by piece.
"""

from itertools import permutations, product

from ..exact.subspace import intersect_all
from ..filtration import GradedSpace, induced_on_gr
from .products import product_endo
from .weights import CommutingTuple, weight_filtration

MAX_HODGE_MAPS = 6


def _as_tuple(t):
    return t if isinstance(t, CommutingTuple) else CommutingTuple(t)


class InducedTuple:
    """N_2, ..., N_n induced on the graded pieces of W(N_1).

    ``maps[a]`` lists the induced maps on Gr_a in local coordinates and
    ``filtrations[a][j]`` is the weight filtration of the j-th partial sum
    N_2 + ... + N_{j+2} on Gr_a.
    """

    def __init__(self, t):
        self.tuple = t
        self.graded = GradedSpace(t.filtrations[0])
        self.maps = {}
        self.filtrations = {}
        for a, chart in self.graded.pieces.items():
            local = [chart.induced_map(m, chart) for m in t.maps[1:]]
            self.maps[a] = local
            sums, acc = [], None
            for m in local:
                acc = m if acc is None else acc + m
                sums.append(acc)
            self.filtrations[a] = [weight_filtration(s) for s in sums]

    def piece_tuple(self, a):
        return CommutingTuple(self.maps[a]) if self.maps[a] else None


def _union_grid(*grids):
    return sorted(set().union(*map(set, grids)))


def _condition_grid(t, ind, h1):
    """Weights h_j (j >= 2) where either side of the image condition can change."""
    grids = []
    for j, f in enumerate(t.filtrations[1:]):
        local = ind.filtrations[h1][j]
        grids.append(_union_grid(f.grid(), [h1 + l for l in local.grid()]))
    return grids


def _image_sides(t, ind, h1, hs):
    """Preimages in W(1)_{h1} of Im(pi_h), of the condition's right side and of
    the unshifted induced intersection."""
    d = t.dim
    w1 = t.filtrations[0]
    top, below = w1.step(h1), w1.step(h1 - 1)
    chart = ind.graded.pieces[h1]
    rest = t.filtrations[1:]
    image = intersect_all([top] + [f.step(l) for f, l in zip(rest, hs)], d) + below
    right = intersect_all([chart.lift_space(ind.filtrations[h1][j].step(l - h1)) for j, l in enumerate(hs)], d)
    induced = intersect_all([(f.step(l) & top) + below for f, l in zip(rest, hs)], d)
    return image, right, induced


def _restatement_a(t, ind, h1):
    """Induced filtration of W(j) on Gr_{h1}, shifted by h1, equals W(N^(1)(j))."""
    for j, f in enumerate(t.filtrations[1:]):
        if induced_on_gr(t.filtrations[0], f, shifted=True)[1][h1] != ind.filtrations[h1][j]:
            return j + 2
    return None


def _check_image_condition(t, ind, h1):
    """Witness for the image condition at a fixed h1, or None.

    The direct condition is compared with the two restatements (the shifted
    induced filtration agrees with the weight filtration of the induced map,
    and the image equals the unshifted induced intersection); they must agree.
    """
    direct = None
    restated_b = None
    for hs in product(*_condition_grid(t, ind, h1)):
        image, right, induced = _image_sides(t, ind, h1, hs)
        if direct is None and image != right:
            direct = {"condition": "image", "h": [h1, *hs], "image_dim": image.dim, "expected_dim": right.dim}
        if restated_b is None and image != induced:
            restated_b = hs
    bad_a = _restatement_a(t, ind, h1)
    if (direct is None) != (bad_a is None and restated_b is None):
        raise AssertionError(f"image condition and its restatement disagree at h1={h1}")
    return direct


def _precheck(t, check_cone):
    if check_cone and len(t) > 1:
        from ..generality import cone_constancy_all_subsets
        ok, witness = cone_constancy_all_subsets(t)
        if not ok:
            return {"condition": "cone", **witness}
    return None


def _induced_condition(ind, check_cone):
    for a in ind.graded.pieces:
        sub = ind.piece_tuple(a)
        if sub is None:
            continue
        ok, witness = is_sequentially_compatible(sub, check_cone)
        if not ok:
            return {"condition": "induced", "piece": a, "inner": witness}
    return None


def _level_check(t, level, check_cone):
    if len(t) == 1:
        return None
    witness = _precheck(t, check_cone)
    if witness:
        return witness
    ind = InducedTuple(t)
    witness = _induced_condition(ind, check_cone)
    if witness:
        return witness
    for h1 in t.filtrations[0].jumps:
        if level is not None and h1 > level:
            break
        witness = _check_image_condition(t, ind, h1)
        if witness:
            return witness
    return None


def is_sequentially_compatible(t, check_cone=True):
    """(True, None) or (False, witness) for sequential compatibility."""
    t = _as_tuple(t)
    witness = _level_check(t, None, check_cone)
    return witness is None, witness


def is_sequentially_compatible_at_level(t, h, check_cone=True):
    """The image condition is only required for h1 <= h."""
    return _level_check(_as_tuple(t), h, check_cone) is None


def _bottom_condition(t, ind):
    """W(1)_b & W(j)_h equals the lift of W(N^(1)(j))_{h-b} on Gr_b, for all h."""
    w1 = t.filtrations[0]
    b = w1.bottom
    bottom = w1.step(b)
    chart = ind.graded.pieces[b]
    for j, f in enumerate(t.filtrations[1:]):
        local = ind.filtrations[b][j]
        for l in _union_grid(f.grid(), [b + x for x in local.grid()]):
            if bottom & f.step(l) != chart.lift_space(local.step(l - b)):
                return {"condition": "bottom", "j": j + 2, "h": l}
    return None


def is_bottom_compatible(t, check_cone=True):
    """Sequential compatibility in the bottom part, via the bottom-piece identity."""
    t = _as_tuple(t)
    if len(t) == 1 or t.dim == 0:
        return True
    if _precheck(t, check_cone):
        return False
    ind = InducedTuple(t)
    if _induced_condition(ind, check_cone):
        return False
    return _bottom_condition(t, ind) is None


def wedge_tuple(t, m):
    """Derivation action of every member on the m-th exterior power."""
    return CommutingTuple([product_endo(x, m, "wedge").matrix for x in t.maps])


def is_universally_bottom_compatible(t, max_power=None, check_cone=True):
    """Bottom compatibility of every exterior power up to max_power (default: dim)."""
    t = _as_tuple(t)
    top = t.dim if max_power is None else min(max_power, t.dim)
    for m in range(top + 1):
        if not is_bottom_compatible(wedge_tuple(t, m), check_cone):
            return False
    return True


def _primitive_lift(t, h1):
    """{v in W(1)_{h1} : N_1^{h1+1} v in W(1)_{-h1-3}}."""
    w1 = t.filtrations[0]
    n1 = t.endos[0]
    return w1.step(-h1 - 3).preimage(n1.power(h1 + 1), w1.step(h1))


def _strong_sides(t, h1, hs):
    d = t.dim
    w1 = t.filtrations[0]
    n1 = t.endos[0]
    top, below = w1.step(h1), w1.step(h1 - 1)
    rest = t.filtrations[1:]
    left = intersect_all([n1.kernel_of_power(h1 + 1)] + [f.step(l) for f, l in zip(rest, hs)], d) + below
    right = intersect_all([_primitive_lift(t, h1)] + [(f.step(l) & top) + below for f, l in zip(rest, hs)], d)
    return left, right


def is_strongly_sequentially_compatible(t, check_cone=True):
    """(True, None) or (False, witness): sequential compatibility plus
    surjectivity of the primitive projections."""
    t = _as_tuple(t)
    ok, witness = is_sequentially_compatible(t, check_cone)
    if not ok:
        return False, witness
    if len(t) == 1:
        return True, None
    for h1 in t.filtrations[0].jumps:
        if h1 < 0:
            continue
        for hs in product(*[f.grid() for f in t.filtrations[1:]]):
            left, right = _strong_sides(t, h1, hs)
            if not left <= right:
                raise AssertionError(f"primitive image escapes the induced intersection at {(h1, *hs)}")
            if left != right:
                return False, {"condition": "strong", "h": [h1, *hs], "image_dim": left.dim,
                               "expected_dim": right.dim}
    return True, None


def is_hodge_type(t, check_cone=True):
    t = _as_tuple(t)
    if len(t) > MAX_HODGE_MAPS:
        raise ValueError(f"Hodge type check is limited to {MAX_HODGE_MAPS} maps")
    return all(is_strongly_sequentially_compatible(t.permuted(p), check_cone)[0]
               for p in permutations(range(len(t))))


def check_reduction_hypotheses(t, check_cone=True):
    """Evaluate (universal bottom compatibility and compatibility of
    (N_1 + N_2, N_3, ...)) => sequential compatibility on this instance.

    Returns (implication holds, details).
    """
    t = _as_tuple(t)
    if len(t) < 2:
        raise ValueError("need at least two maps")
    hyp1 = is_universally_bottom_compatible(t, check_cone=check_cone)
    merged = CommutingTuple([t.maps[0] + t.maps[1]] + t.maps[2:])
    hyp2 = is_sequentially_compatible(merged, check_cone)[0]
    conclusion = is_sequentially_compatible(t, check_cone)[0]
    details = {"universal_bottom": hyp1, "merged_compatible": hyp2, "compatible": conclusion}
    return (not (hyp1 and hyp2)) or conclusion, details


def restricted_level_equals_bottom(t, check_cone=True):
    """Level-b compatibility (b the bottom weight of W(1)) agrees with the
    bottom-piece identity."""
    t = _as_tuple(t)
    if t.dim == 0:
        return True
    b = t.filtrations[0].bottom
    return is_sequentially_compatible_at_level(t, b, check_cone) == is_bottom_compatible(t, check_cone)

