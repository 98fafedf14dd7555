"""Model bundles: the rank-one L(a, alpha) residue formulas, the rank-two
gluing Mod(2) with parameter p standing for y + c, its symmetric powers and
their nilpotent morphisms.

Frame order for Sym^l is v1^l, v1^(l-1) v2, ..., v2^l, so position k carries
the monomial with i = l - k copies of v1.  For l = 1 this is (v1, v2).
"""

from dataclasses import dataclass
from math import comb

from .errors import InputError
from .exact.matrix import Matrix
from .exact.poly import LaurentMatrix, LaurentPolynomial, Poly
from .exact.scalars import GaussianRational, Q, abs2, conj, re_part, simplify
from .twistor.bundle import TwistorBundle
from .twistor.morphism import BundleMorphism, kron_morphism, identity_morphism, solve_morphisms, tensor_bundle

UNIQUENESS_CHECK_MAX = 3


@dataclass(frozen=True)
class LParams:
    a: object
    alpha: object
    lam: object


@dataclass(frozen=True)
class ResidueData:
    A: object
    B: object


def _g(x):
    return GaussianRational.coerce(x)


def l_forward(p):
    """Parabolic weight A and residue B of L(a, alpha) at lambda."""
    a, alpha, lam = Q(p.a), _g(p.alpha), _g(p.lam)
    big_a = a - 2 * re_part(lam * conj(alpha))
    big_b = -(lam * lam) * conj(alpha) + alpha + lam * _g(a)
    return ResidueData(simplify(_g(big_a)), simplify(big_b))


def l_inverse(r, lam):
    """(a, alpha) with the given A, B at lambda."""
    big_a, big_b, lam = Q(re_part(r.A)), _g(r.B), _g(lam)
    den = 1 + abs2(lam)
    a = ((1 - abs2(lam)) * big_a + 2 * re_part(conj(lam) * big_b)) / den
    alpha = (big_b - lam * _g(big_a)) * _g(1 / den)
    return LParams(Q(a), simplify(alpha), simplify(lam))


def _lp(k, c=1):
    return LaurentPolynomial.monomial(k, c)


def mod2_gluing(p):
    """[[0, lambda], [-1/lambda, p]]."""
    p = Q(p) if not isinstance(p, GaussianRational) else p
    return TwistorBundle(LaurentMatrix([[0, _lp(1)], [_lp(-1, -1), p]], 2, 2))


def mod2_factors(p):
    """The three factors whose product is the Mod(2) gluing (p must be nonzero)."""
    p = Q(p)
    if not p:
        raise InputError("the factor form needs p != 0")
    inv = 1 / p
    upper = LaurentMatrix([[1, _lp(1, inv)], [0, 1]], 2, 2)
    diag = LaurentMatrix([[inv, 0], [0, p]], 2, 2)
    lower = LaurentMatrix([[1, 0], [_lp(-1, -inv), 1]], 2, 2)
    return upper, diag, lower


def mod_sym_gluing(l, p):
    """Gluing of Sym^l Mod(2) from the closed formula for its entries."""
    if l < 0:
        raise InputError("l must be non-negative")
    p = Q(p)
    rows = []
    for k in range(l + 1):
        row = []
        for q in range(l + 1):
            e = q + k - l
            if e < 0:
                row.append(0)
                continue
            c = (-1) ** (l - q) * comb(q, l - k) * p ** e
            row.append(_lp(q - k, c) if c else 0)
        rows.append(row)
    return TwistorBundle(LaurentMatrix(rows, l + 1, l + 1))


def symmetric_power_rank2(gluing, l):
    """Sym^l of a rank-two gluing by expanding products of the two glued frame vectors."""
    cols = [[gluing[0, j], gluing[1, j]] for j in range(2)]
    out = [[LaurentPolynomial() for _ in range(l + 1)] for _ in range(l + 1)]
    for q in range(l + 1):
        # v†1^(l-q) v†2^q expanded as {power of v1: coefficient}
        poly = {0: LaurentPolynomial.monomial(0)}
        for j, times in ((0, l - q), (1, q)):
            for _ in range(times):
                nxt = {}
                for i, c in poly.items():
                    for shift, g in ((1, cols[j][0]), (0, cols[j][1])):
                        if g:
                            nxt[i + shift] = nxt.get(i + shift, LaurentPolynomial()) + c * g
                poly = nxt
        for i, c in poly.items():
            out[l - i][q] = c
    return LaurentMatrix(out, l + 1, l + 1)


def anti_diagonal_constants(b):
    """c_i in A_{i, l-i} = c_i lambda^(2i - l), keyed by i; raises if an entry is not that monomial."""
    l = b.rank - 1
    out = {}
    for k in range(l + 1):
        i = l - k
        e = b.gluing[k, l - k]
        if not e.is_monomial() or e.min_exp() != 2 * i - l:
            raise AssertionError(f"anti-diagonal entry {k} is {e}, expected a multiple of lambda^{2 * i - l}")
        out[i] = e.coef(2 * i - l)
    return out


def is_anti_triangular(b):
    """Entries strictly above the anti-diagonal vanish."""
    l = b.rank - 1
    return all(not b.gluing[k, q] for k in range(l + 1) for q in range(l + 1) if k + q < l)


def _derivation(l):
    """Sym^l of v1 -> v2 and of v†2 -> -v†1 in the position ordering."""
    lam = [[Poly() for _ in range(l + 1)] for _ in range(l + 1)]
    mu = [[Poly() for _ in range(l + 1)] for _ in range(l + 1)]
    for k in range(l):
        lam[k + 1][k] = Poly([Q(l - k)])
    for q in range(1, l + 1):
        mu[q - 1][q] = Poly([Q(-q)])
    return BundleMorphism(2, Matrix(lam, l + 1, l + 1), Matrix(mu, l + 1, l + 1))


def constant_morphisms(bundle, twist):
    """Morphisms bundle -> bundle(twist) whose two chart matrices are constant."""
    return solve_morphisms(bundle, bundle, twist, caps=(0, 0))


def model_nilpotent(l, p):
    """The nilpotent morphism Sym^l Mod(2) -> Sym^l Mod(2)(2), solved from the gluing equation.

    Among morphisms that are constant in both charts the solution space is a
    line (checked for l <= UNIQUENESS_CHECK_MAX); the generator is normalized
    so that it sends v1^l to l v1^(l-1) v2.
    """
    b = mod_sym_gluing(l, p)
    expected = _derivation(l)
    if l == 0:
        return expected
    sols = constant_morphisms(b, 2)
    if not sols:
        raise AssertionError("no nilpotent solution of the gluing equation")
    if l <= UNIQUENESS_CHECK_MAX and len(sols) != 1:
        raise AssertionError(f"solution space has dimension {len(sols)}, expected 1")
    if len(sols) == 1:
        f = sols[0]
        c = f.lam[1, 0].coef(0)
        if not c:
            raise AssertionError("solution does not lower the top monomial")
        f = f.scale(Q(l) / c)
        if f.lam != expected.lam or f.mu != expected.mu:
            raise AssertionError("normalized solution differs from the symmetric-power derivation")
        return f
    if not expected.is_compatible(b):
        raise AssertionError("derivation does not satisfy the gluing equation")
    return expected


def w_triangle_pattern(l):
    """{h: positions k with 2i - l <= h} where i = l - k."""
    out = {}
    for h in range(-l, l + 1, 2):
        out[h] = [k for k in range(l + 1) if 2 * (l - k) - l <= h]
    return out


def tensor_model(p, q=None):
    """Mod(2) (x) Mod(2) with N (x) 1 and 1 (x) N."""
    q = p if q is None else q
    b1, b2 = mod2_gluing(p), mod2_gluing(q)
    n1, n2 = model_nilpotent(1, p), model_nilpotent(1, q)
    b = tensor_bundle(b1, b2)
    return b, [kron_morphism(n1, identity_morphism(b2)), kron_morphism(identity_morphism(b1), n2)]


def parse_args(pairs):
    """["p=3", "l=2"] -> {"p": "3", "l": "2"}."""
    out = {}
    for item in pairs or []:
        if "=" not in item:
            raise InputError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out
