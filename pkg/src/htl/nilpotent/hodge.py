"""Hodge bigradings read off from a grading E = sum of E_l."""

from ..errors import InputError
from ..exact.subspace import sum_all


def hodge_bigrading(grading, step, weight=0):
    """Assign E_l to Hodge types.

    ``grading`` maps l to the subspace E_l and must be a direct sum.  With
    step 1 (Higgs field lowering l by one) the result is {weight: {(p, q): E_p}}
    with p + q = weight.  With step 2 the even and odd parts become two
    families of weights 0 and 1: {0: {(p, -p): E_2p}, 1: {(p, 1 - p): E_{2p-1}}}.
    """
    spaces = list(grading.values())
    if not spaces:
        return {}
    n = spaces[0].ambient_dim
    if sum(s.dim for s in spaces) != sum_all(spaces, n).dim:
        raise InputError("grading is not a direct sum")
    if step == 1:
        return {weight: {(p, weight - p): e for p, e in sorted(grading.items())}}
    if step == 2:
        out = {0: {}, 1: {}}
        for l, e in sorted(grading.items()):
            fam = l % 2
            p = (l + fam) // 2
            out[fam][(p, fam - p)] = e
        return {k: v for k, v in out.items() if v}
    raise ValueError("step must be 1 or 2")
