"""Acceptance suite: the eleven end-to-end criteria, each under its time limit.

Every criterion prints one line, PASS or FAIL, with the elapsed time.  Run
with ``pytest tests/test_acceptance.py -v -s`` or ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from contextlib import contextmanager

import pytest
import sympy

from htl.exact import Matrix, Q, Subspace
from htl.exact.poly import Poly
from htl.exact.scalars import GaussianRational
from htl.generality import degree_drop_check, is_general, specialization_check
from htl.koszul import filter_complex, graded_vanishing_check, purity_check, sl2_tensor_fixture
from htl.models import (LParams, ResidueData, anti_diagonal_constants, l_forward, l_inverse, mod2_gluing,
                        mod_sym_gluing, model_nilpotent)
from htl.nilpotent.products import KINDS, product_endo, product_weight_filtration
from htl.nilpotent.sampling import random_commuting_tuple, random_nilpotent, random_unimodular
from htl.nilpotent.weights import CommutingTuple, weight_filtration
from htl.twistor.algebra import generic_rank
from htl.twistor.bundle import birkhoff, h0, obfuscated_bundle, splitting_bounds, splitting_type
from htl.twistor.morphism import morphism_ker_im_coker, morphism_weight_filtration
from htl.twistor.subbundle import is_mixed_twistor

SEED = 20241016
RESULTS = []


@contextmanager
def criterion(number, title, limit):
    """Time the body, print a PASS/FAIL line and enforce the time limit."""
    start = time.perf_counter()
    status, error = "PASS", None
    try:
        yield
    except BaseException as exc:
        status, error = "FAIL", exc
    elapsed = time.perf_counter() - start
    if error is None and elapsed >= limit:
        status = "FAIL"
        error = AssertionError(f"took {elapsed:.1f}s, limit {limit}s")
    line = f"[criterion {number:2d}] {status}  {title}  ({elapsed:.2f}s / {limit}s)"
    if error is not None:
        line += f"  -- {str(error).splitlines()[0] if str(error) else type(error).__name__}"
    RESULTS.append(line)
    print(line)
    if error is not None:
        raise error


def jordan(sizes):
    n = sum(sizes)
    rows = [[0] * n for _ in range(n)]
    k = 0
    for s in sizes:
        for i in range(s - 1):
            rows[k + i][k + i + 1] = 1
        k += s
    return Matrix.rational(rows)


def partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield [k] + rest


def power(m, k):
    out = Matrix.identity(m.rows)
    for _ in range(k):
        out = out @ m
    return out


def sympy_jordan_sizes(m):
    """Block sizes from ranks of powers computed by sympy."""
    sm = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r] for r in m.tolist()])
    ranks, p = [sm.rows], sympy.eye(sm.rows)
    while ranks[-1]:
        p = p * sm
        ranks.append(p.rank())
    r = ranks + [0]
    sizes = []
    for k in range(1, len(r) - 1):
        sizes.extend([k] * ((r[k - 1] - r[k]) - (r[k] - r[k + 1])))
    return sorted(sizes, reverse=True)


def rational_values(rng, count):
    """Seeded nonzero rationals standing for p = y + c."""
    out = []
    while len(out) < count:
        p = Q(rng.randint(-30, 30), rng.randint(1, 9))
        if p and p not in out:
            out.append(p)
    return out


# 1 ------------------------------------------------------------------------------------

def test_criterion_01_weight_filtration_axioms():
    rng = random.Random(SEED + 1)
    with criterion(1, "weight-filtration axioms on 500 random nilpotents, dim <= 10", 60):
        for i in range(500):
            d = rng.randint(1, 10)
            n = random_nilpotent(rng, d, density=rng.choice([0.2, 0.5, 0.8]), spread=2)
            w = weight_filtration(n, verify=False)
            for l in w.grid():
                assert w.step(l).apply(n) <= w.step(l - 2), f"sample {i}: N W_{l} not inside W_{l - 2}"
            top = max(abs(w.bottom), abs(w.top))
            for k in range(0, top + 1):
                assert w.gr_dim(k) == w.gr_dim(-k), f"sample {i}: dim Gr_{k} != dim Gr_-{k}"
                # N^k : Gr_k -> Gr_-k onto, and the dims agree, so it is an isomorphism
                assert w.step(k).apply(power(n, k)) + w.step(-k - 1) == w.step(-k), f"sample {i}: N^{k} not onto"
            if i % 25 == 0:
                sizes = sympy_jordan_sizes(n)
                expected = {}
                for s in sizes:
                    for l in range(1 - s, s, 2):
                        expected[l] = expected.get(l, 0) + 1
                assert w.gr_dims() == dict(sorted(expected.items())), f"sample {i}: dims differ from Jordan type"


# 2 ------------------------------------------------------------------------------------

def test_criterion_02_mod2_splitting_type():
    ps = rational_values(random.Random(SEED + 2), 20)
    with criterion(2, "splitting type of Mod(2) is {-1, 1} for 20 rational p", 5):
        bad = {str(p): splitting_type(mod2_gluing(p)) for p in ps}
        bad = {p: ks for p, ks in bad.items() if ks != [1, -1]}
        assert not bad, f"{len(bad)} of 20 values give another type, e.g. p={next(iter(bad))}: " \
                        f"{bad[next(iter(bad))]}"


# 3 ------------------------------------------------------------------------------------

def test_criterion_03_sym_splitting():
    ps = rational_values(random.Random(SEED + 3), 3)
    with criterion(3, "Sym^l splitting is {-l, -l+2, ..., l} for l <= 5, anti-diagonal monomials", 30):
        for p in ps:
            for l in range(0, 6):
                b = mod_sym_gluing(l, p)
                consts = anti_diagonal_constants(b)
                assert sorted(consts) == list(range(l + 1)) and all(consts.values())
        wrong = {}
        for p in ps:
            for l in range(0, 6):
                ks = splitting_type(mod_sym_gluing(l, p))
                if ks != list(range(l, -l - 1, -2)):
                    wrong[(str(p), l)] = ks
        assert not wrong, f"{len(wrong)} (p, l) pairs differ, e.g. {next(iter(wrong))}: {wrong[next(iter(wrong))]}"


# 4 ------------------------------------------------------------------------------------

def test_criterion_04_mixed_twistor_verdict():
    with criterion(4, "Mod(2) and Sym^2 with the morphism-derived filtration are mixed twistors", 10):
        for p in (Q(3), Q(-5, 2)):
            for l in (1, 2):
                w = morphism_weight_filtration(model_nilpotent(l, p), mod_sym_gluing(l, p))
                ok, where = is_mixed_twistor(w)
                assert ok, f"l={l}, p={p}: Gr_{where} is not pure"
                assert w.graded_types() == {h: [h] for h in range(-l, l + 1, 2)}


# 5 ------------------------------------------------------------------------------------

def test_criterion_05_product_formula():
    rng = random.Random(SEED + 5)
    with criterion(5, "product formula filtration equals the direct weight filtration", 120):
        for d in range(1, 5):
            for sizes in partitions(d):
                g = random_unimodular(rng, d)
                n = g @ jordan(sizes) @ g.inverse()
                for kind in KINDS:
                    for pw in range(0, 4):
                        formula = product_weight_filtration(n, pw, kind, verify=False)
                        direct = weight_filtration(product_endo(n, pw, kind))
                        assert formula == direct, f"{kind}^{pw} of Jordan type {sizes}"


# 6 ------------------------------------------------------------------------------------

def _sym(x):
    g = GaussianRational.coerce(x)
    return sympy.Rational(int(g.re.numerator), int(g.re.denominator)) + \
        sympy.I * sympy.Rational(int(g.im.numerator), int(g.im.denominator))


def test_criterion_06_lparams_round_trip():
    rng = random.Random(SEED + 6)

    def gauss():
        return GaussianRational(Q(rng.randint(-9, 9), rng.randint(1, 6)), Q(rng.randint(-9, 9), rng.randint(1, 6)))

    with criterion(6, "L(a, alpha) forward/inverse round trip on 500 triples and the worked instance", 5):
        for i in range(500):
            big_a, big_b, lam = Q(rng.randint(-9, 9), rng.randint(1, 6)), gauss(), gauss()
            back = l_forward(l_inverse(ResidueData(big_a, big_b), lam))
            assert GaussianRational.coerce(back.A) == GaussianRational.coerce(big_a), f"triple {i}: A"
            assert GaussianRational.coerce(back.B) == big_b, f"triple {i}: B"
        r = l_inverse(ResidueData(0, 2), 1)
        assert r.a == 2 and GaussianRational.coerce(r.alpha) == 1
        fwd = l_forward(LParams(2, 1, 1))
        assert fwd.A == 0 and fwd.B == 2
        a, alpha, lam, big_a, big_b = (_sym(x) for x in (r.a, r.alpha, r.lam, 0, 2))
        assert sympy.simplify(big_a - (a - 2 * sympy.re(lam * sympy.conjugate(alpha)))) == 0
        assert sympy.simplify(big_b - (-lam ** 2 * sympy.conjugate(alpha) + alpha + lam * a)) == 0


# 7 ------------------------------------------------------------------------------------

def test_criterion_07_purity_at_desk_scale():
    with criterion(7, "purity and graded vanishing on the sl2 x sl2 fixtures of dims 4 and 9", 30):
        for a in (2, 3):
            maps, grading = sl2_tensor_fixture(a, a)
            assert maps[0].rows == a * a
            fc = filter_complex(maps)
            ok, where = purity_check(fc)
            assert ok, f"dim {a * a}: purity fails at {where}"
            assert graded_vanishing_check(fc), f"dim {a * a}: some H^a(Gr_k) with a < k is nonzero"
            assert graded_vanishing_check(fc, grading), f"dim {a * a}: graded complex disagrees"


# 8 ------------------------------------------------------------------------------------

def test_criterion_08_degree_drop():
    rng = random.Random(SEED + 8)
    with criterion(8, "degree drop on 100 commuting pairs with a verified-general vector", 60):
        done = 0
        while done < 100:
            maps = random_commuting_tuple(rng, rng.randint(2, 5), 2, density=rng.choice([0.4, 0.7]), spread=2)
            t = CommutingTuple(maps)
            for _ in range(5):
                a = (rng.randint(1, 20), rng.randint(1, 20))
                if is_general(t, a):
                    assert degree_drop_check(t, a), f"pair {done}: N_i W(a)_l not inside W(a)_(l-1)"
                    done += 1
                    break
        e = [[0] * 4 for _ in range(4)]
        e[0][1] = 1
        f = [[0] * 4 for _ in range(4)]
        f[2][3] = 1
        fixture = CommutingTuple([Matrix.rational(e), Matrix.rational(f)])
        assert is_general(fixture, (1, 1))
        assert not is_general(fixture, (1, 0))


# 9 ------------------------------------------------------------------------------------

def test_criterion_09_specialization():
    with criterion(9, "semicontinuity on the s J2 family at s = 0", 5):
        family = Matrix([[Poly(), Poly([0, 1])], [Poly(), Poly()]], 2, 2)
        r = specialization_check(family, 0)
        assert r.l0 == -1, f"first differing weight is {r.l0}"
        assert r.generic_dim > r.special_dim
        assert r.holds


# 10 -----------------------------------------------------------------------------------

def test_criterion_10_birkhoff():
    rng = random.Random(SEED + 10)
    with criterion(10, "Birkhoff factorization of 50 obfuscated bundles, |k| <= 3", 120):
        for i in range(50):
            ks = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
            b = obfuscated_bundle(rng, ks)
            found = splitting_type(b)
            assert found == sorted(ks, reverse=True), f"bundle {i}: {found} != {ks}"
            assert sum(found) == b.degree
            bk = birkhoff(b)
            assert bk.product() == b.gluing, f"bundle {i}: reconstruction"
            lo, hi = splitting_bounds(b)
            for n in range(-hi - 2, -lo + 2):
                assert h0(b, n) == sum(max(0, k + n + 1) for k in ks), f"bundle {i}: h0 at twist {n}"


# 11 -----------------------------------------------------------------------------------

def _fiber_checks(f, out, source, point):
    """Rank at the point equals the generic rank and f(W_l) = Im f & W'_l there."""
    fp = f.at(point)
    assert fp.rank() == out.report["imageRank"]
    tw = source.twist(f.twist)
    image = Subspace.from_matrix(fp)
    for l in out.report["strictWeights"]:
        assert source.step(l).fiber(point).apply(fp) == image & tw.step(l).fiber(point), f"weight {l} at {point}"


def test_criterion_11_morphism_kernel_image_cokernel():
    cases = []
    for p in (Q(2), Q(-7, 3)):
        for l in range(1, 5):
            for k in range(1, l + 1):
                cases.append((p, l, k))
    assert len(cases) == 20
    with criterion(11, "kernel, image and cokernel of 20 model morphisms: rank constancy and strictness", 60):
        for p, l, k in cases:
            n = model_nilpotent(l, p)
            w = morphism_weight_filtration(n, mod_sym_gluing(l, p))
            f = n
            for _ in range(k - 1):
                f = f.compose(n)
            out = morphism_ker_im_coker(f, w)
            assert generic_rank(f.lam) == out.report["imageRank"] == l + 1 - k
            # 0, infinity and a point outside the internal sample set
            for point in (("lambda", 0), ("mu", 0), ("lambda", 5)):
                _fiber_checks(f, out, w, point)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
