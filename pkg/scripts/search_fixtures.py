"""Bounded seeded searches for counterexample fixtures.

Each search draws random inputs from a fixed seed until it finds an instance
with the wanted behaviour or the budget runs out.  Results (or the fact that
nothing was found) are frozen into tests/fixtures/hierarchy.json.

    python3 scripts/search_fixtures.py
"""

import json
import random
import sys
from pathlib import Path

from htl.exact.subspace import Subspace
from htl.filtration import Filtration, is_compatible_sequence
from htl.generality import cone_constancy_all_subsets
from htl.koszul import filter_complex, purity_check, twistor_filtration_identity
from htl.jsonio import encode_filtration, encode_tuple
from htl.nilpotent.compat import (is_bottom_compatible, is_hodge_type, is_sequentially_compatible,
                                  is_sequentially_compatible_at_level, is_strongly_sequentially_compatible,
                                  wedge_tuple)
from htl.nilpotent.sampling import random_commuting_tuple
from htl.nilpotent.weights import CommutingTuple

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "hierarchy.json"
SEED = 20240917


def random_flag_filtration(rng, d):
    vecs = [[rng.randint(-1, 1) for _ in range(d)] for _ in range(d)]
    while Subspace.span(vecs, d).dim < d:
        vecs = [[rng.randint(-1, 1) for _ in range(d)] for _ in range(d)]
    weights = sorted(rng.sample(range(-2, 3), d))
    return Filtration(d, {w: Subspace.span(vecs[:i + 1], d) for i, w in enumerate(weights)})


def search_incompatible_sequence(rng, budget=2000):
    for tries in range(1, budget + 1):
        seq = [random_flag_filtration(rng, 3) for _ in range(3)]
        ok, witness = is_compatible_sequence(seq)
        if not ok:
            return {"found": True, "tries": tries, "filtrations": [encode_filtration(f) for f in seq],
                    "witness_h": list(witness["h"]) if "h" in witness else None}
    return {"found": False, "tries": budget}


def _draw(rng, dims, n):
    d = rng.choice(dims)
    maps = random_commuting_tuple(rng, d, n, density=rng.choice([0.3, 0.6, 0.9]), spread=rng.choice([1, 2]))
    return CommutingTuple(maps)


def search_failing_pair(rng, budget=3000):
    """n = 2, dim 4, cone constancy holds, the image condition fails."""
    for tries in range(1, budget + 1):
        t = _draw(rng, [4], 2)
        ok, witness = is_sequentially_compatible(t, check_cone=False)
        if not ok and witness["condition"] == "image" and cone_constancy_all_subsets(t)[0]:
            return {"found": True, "tries": tries, "tuple": encode_tuple(t.maps), "witness_h": witness["h"]}
    return {"found": False, "tries": budget}


def search_strict_hierarchy(rng, budget=3000):
    """Compatible in level h but not in level h + 2."""
    for tries in range(1, budget + 1):
        t = _draw(rng, [4, 5, 6], 2)
        if not cone_constancy_all_subsets(t)[0]:
            continue
        for h in t.filtrations[0].jumps:
            if is_sequentially_compatible_at_level(t, h) and not is_sequentially_compatible_at_level(t, h + 2):
                return {"found": True, "tries": tries, "tuple": encode_tuple(t.maps), "level": h}
    return {"found": False, "tries": budget}


def search_bottom_only_m2(rng, budget=3000):
    """Exterior powers bottom compatible for every m except m = 2."""
    for tries in range(1, budget + 1):
        t = _draw(rng, [3, 4], 2)
        res = [is_bottom_compatible(wedge_tuple(t, m)) for m in range(t.dim + 1)]
        if res.count(False) == 1 and not res[2]:
            return {"found": True, "tries": tries, "tuple": encode_tuple(t.maps), "pattern": res}
    return {"found": False, "tries": budget}


def search_strong_not_hodge(rng, budget=3000):
    for tries in range(1, budget + 1):
        t = _draw(rng, [3, 4, 5], rng.choice([2, 3]))
        if is_strongly_sequentially_compatible(t)[0] and not is_hodge_type(t):
            return {"found": True, "tries": tries, "tuple": encode_tuple(t.maps)}
    return {"found": False, "tries": budget}


def search_sequential_not_strong(rng, budget=1500):
    for tries in range(1, budget + 1):
        t = _draw(rng, [3, 4, 5, 6], rng.choice([2, 3]))
        if is_sequentially_compatible(t)[0] and not is_strongly_sequentially_compatible(t)[0]:
            return {"found": True, "tries": tries, "tuple": encode_tuple(t.maps)}
    return {"found": False, "tries": budget}


def search_impure_koszul(rng, budget=500):
    """Koszul complex whose cohomology is not pure; graded vanishing fails with it."""
    for tries in range(1, budget + 1):
        t = _draw(rng, [2, 3, 4, 5], 2)
        fc = filter_complex(t)
        ok, witness = purity_check(fc)
        if not ok:
            return {"found": True, "tries": tries, "tuple": encode_tuple(t.maps), "witness": list(witness)}
    return {"found": False, "tries": budget}


def search_identity_failure(rng, budget=500):
    """N_J(W_k) differs from Im N_J & W_(k-2|J|) while the complex is still pure."""
    for tries in range(1, budget + 1):
        t = _draw(rng, [2, 3, 4], 2)
        ok, witness = twistor_filtration_identity(t)
        if not ok and purity_check(filter_complex(t))[0]:
            return {"found": True, "tries": tries, "tuple": encode_tuple(t.maps),
                    "subset": witness[0], "k": witness[1]}
    return {"found": False, "tries": budget}


SEARCHES = {
    "incompatible_sequence": search_incompatible_sequence,
    "failing_pair": search_failing_pair,
    "strict_hierarchy": search_strict_hierarchy,
    "bottom_only_m2": search_bottom_only_m2,
    "strong_not_hodge": search_strong_not_hodge,
    "sequential_not_strong": search_sequential_not_strong,
    "impure_koszul": search_impure_koszul,
    "identity_failure": search_identity_failure,
}


def main(names=None):
    data = json.loads(OUT.read_text()) if OUT.exists() else {}
    for i, (name, fn) in enumerate(SEARCHES.items()):
        if names and name not in names:
            continue
        result = fn(random.Random(SEED + i))
        result["seed"] = SEED + i
        data[name] = result
        print(name, "found" if result["found"] else "not found", "after", result["tries"], "tries", flush=True)
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main(sys.argv[1:])
