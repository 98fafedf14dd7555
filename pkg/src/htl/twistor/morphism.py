"""Morphisms V -> W(a) of bundles on the projective line: kernels, images,
cokernels and strictness for morphisms of mixed twistors.

A morphism is a pair of polynomial matrices F_lambda (acting on v-coordinates)
and F_mu (acting on v†-coordinates) with F_lambda A_source = lambda^a A_target F_mu(1/lambda).
"""

from ..errors import InputError, NotNilpotentError, PreconditionError, StrictnessError
from ..exact.matrix import Matrix
from ..exact.poly import LaurentPolynomial, Poly
from ..exact.scalars import Q
from ..exact.subspace import Subspace
from ..nilpotent.compat import is_sequentially_compatible, is_strongly_sequentially_compatible
from ..nilpotent.weights import CommutingTuple, NilpotentEndo, weight_filtration
from .algebra import columns_matrix, evaluate, generic_rank, laurent, poly_matrix, poly_nullspace, ratfunc_matrix
from .bundle import TwistorBundle, _field_matrix
from .subbundle import (SAMPLE_POINTS, FilteredTwistorBundle, induced_on, is_mixed_twistor, quotient,
                        saturate, sub_intersect, whole, zero_sub)


class BundleMorphism:

    def __init__(self, twist, lam, mu):
        self.twist = int(twist)
        self.lam = poly_matrix(lam)
        self.mu = poly_matrix(mu)
        if self.lam.shape != self.mu.shape:
            raise InputError("the two chart representatives have different shapes")

    @property
    def shape(self):
        return self.lam.shape

    def is_compatible(self, source, target=None):
        target = target or source
        if self.lam.shape != (target.rank, source.rank):
            return False
        left = laurent(self.lam) @ source.gluing
        right = target.gluing.scale(LaurentPolynomial.monomial(self.twist)) @ laurent(self.mu, inverted=True)
        return left == right

    def at(self, point):
        chart, x = point
        return evaluate(self.lam if chart == "lambda" else self.mu, x)

    def generic(self):
        return ratfunc_matrix(self.lam)

    def compose(self, other):
        """self after other."""
        return BundleMorphism(self.twist + other.twist, self.lam @ other.lam, self.mu @ other.mu)

    def __add__(self, other):
        if self.twist != other.twist:
            raise InputError("cannot add morphisms with different twists")
        return BundleMorphism(self.twist, self.lam + other.lam, self.mu + other.mu)

    def scale(self, c):
        c = Poly([Q(c) if isinstance(c, int) else c])
        return BundleMorphism(self.twist, self.lam.scale(c), self.mu.scale(c))

    def __repr__(self):
        return f"BundleMorphism(twist={self.twist}, shape={self.shape})"


def kron_morphism(f, g):
    """f (x) g on the tensor product of bundles."""
    return BundleMorphism(f.twist + g.twist, f.lam.kron(g.lam), f.mu.kron(g.mu))


def identity_morphism(b):
    one = poly_matrix(Matrix.identity(b.rank))
    return BundleMorphism(0, one, one)


def degree_caps(source, target, twist):
    """Bounds on the lambda-degree of F_lambda and the mu-degree of F_mu."""
    lam_cap = twist + target.gluing.max_exp() + source.inverse.max_exp()
    mu_cap = twist - target.inverse.min_exp() - source.gluing.min_exp()
    return max(lam_cap, 0), max(mu_cap, 0)


def solve_morphisms(source, target, twist, caps=None):
    """Basis of the morphisms source -> target(twist), by solving the gluing equation.

    ``caps`` bounds the chart degrees; the default bounds admit every morphism.
    """
    r, s = target.rank, source.rank
    dl, dm = caps if caps is not None else degree_caps(source, target, twist)
    nl = (dl + 1) * r * s
    # unknown layout: F_lambda coefficients, then F_mu coefficients
    def lam_index(k, i, j):
        return (k * r + i) * s + j

    def mu_index(k, i, j):
        return nl + (k * r + i) * s + j

    a1, a2 = source.gluing, target.gluing
    lo = min(a1.min_exp(), twist + a2.min_exp() - dm)
    hi = max(dl + a1.max_exp(), twist + a2.max_exp())
    eqs = []
    for e in range(lo, hi + 1):
        for i in range(r):
            for j in range(s):
                row = [Q(0)] * (nl + (dm + 1) * r * s)
                # (F_lambda A1)_{ij} at lambda^e
                for k in range(dl + 1):
                    for c in range(s):
                        x = a1[c, j].coef(e - k)
                        if x:
                            row[lam_index(k, i, c)] += x
                # (lambda^a A2 F_mu(1/lambda))_{ij} at lambda^e
                for k in range(dm + 1):
                    for c in range(r):
                        x = a2[i, c].coef(e - twist + k)
                        if x:
                            row[mu_index(k, c, j)] -= x
                eqs.append(row)
    m = _field_matrix(eqs, len(eqs), nl + (dm + 1) * r * s)
    out = []
    for sol in m.nullspace():
        lam = [[Poly([sol[lam_index(k, i, j)] for k in range(dl + 1)]) for j in range(s)] for i in range(r)]
        mu = [[Poly([sol[mu_index(k, i, j)] for k in range(dm + 1)]) for j in range(s)] for i in range(r)]
        out.append(BundleMorphism(twist, Matrix(lam, r, s), Matrix(mu, r, s)))
    return out


def _jordan(m):
    try:
        return NilpotentEndo(m).jordan_type()
    except NotNilpotentError:
        raise NotNilpotentError("morphism is not nilpotent") from None


def _point_label(point):
    chart, x = point
    return f"{chart}={x}"


def conjugacy_constancy(f, points=SAMPLE_POINTS):
    """(constant?, {"generic": type, "lambda=0": type, ..., "mu=0": type})."""
    types = {"generic": _jordan(f.generic())}
    for p in points:
        types[_point_label(p)] = _jordan(f.at(p))
    return all(t == types["generic"] for t in types.values()), types


def _clear(space):
    from .algebra import clear_denominators
    return [clear_denominators(v) for v in space.vectors()]


def morphism_weight_filtration(f, bundle):
    """W(N) by subbundles, certified fiberwise at the sample points."""
    if f.twist != 2:
        raise PreconditionError(f"nilpotent morphisms must have twist 2, got {f.twist}")
    if not f.is_compatible(bundle):
        raise InputError("morphism does not satisfy the gluing equation")
    ok, types = conjugacy_constancy(f)
    if not ok:
        raise PreconditionError(f"Jordan type is not constant: {types}")
    w = weight_filtration(f.generic())
    r = bundle.rank
    steps = {}
    for l in w.jumps:
        gens = columns_matrix(_clear(w.step(l)), r)
        steps[l] = saturate(bundle, gens)
    out = FilteredTwistorBundle(bundle, steps)
    for p in SAMPLE_POINTS:
        wp = weight_filtration(f.at(p))
        for l in sorted(set(w.grid()) | set(wp.grid())):
            if out.step(l).fiber(p) != wp.step(l):
                raise AssertionError(f"fiber of W_{l} at {_point_label(p)} is not the pointwise weight filtration")
    return out


def _maps_into(f, sub, target_sub):
    if not sub.rank:
        return True
    image = f.lam @ sub.lam_basis
    both = columns_matrix(target_sub.lam_basis.columns() + image.columns(), f.lam.rows)
    return generic_rank(both) == target_sub.rank


def preserves(f, source, target):
    """f(W_l) inside W'_l for the filtrations with target weights moved up by the twist."""
    tw = target.twist(f.twist)
    return all(_maps_into(f, source.step(l), tw.step(l)) for l in sorted(set(source.steps) | set(tw.steps)))


def _rank_at(f, point):
    return f.at(point).rank()


class KerImCoker:

    def __init__(self, kernel, image, cokernel, kernel_sub, image_sub, report):
        self.kernel = kernel
        self.image = image
        self.cokernel = cokernel
        self.kernel_sub = kernel_sub
        self.image_sub = image_sub
        self.report = report


def morphism_ker_im_coker(f, source, target=None):
    """Kernel, image and cokernel of a morphism of mixed twistors as filtered bundles.

    ``target`` is the untwisted target; its filtration is moved up by the
    twist so that f has weight 0.  Raises PreconditionError on a rank jump or
    when a side is not a mixed twistor, StrictnessError when
    f(W_l) = Im f & W_l fails.
    """
    target = target or source
    if not f.is_compatible(source.bundle, target.bundle):
        raise InputError("morphism does not satisfy the gluing equation")
    tw = target.twist(f.twist)
    for name, side in (("source", source), ("target", tw)):
        ok, l = is_mixed_twistor(side)
        if not ok:
            raise PreconditionError(f"{name} is not a mixed twistor (weight {l})")
    if not preserves(f, source, target):
        raise PreconditionError("morphism does not preserve the filtrations")
    generic = generic_rank(f.lam)
    ranks = {"generic": generic}
    for p in SAMPLE_POINTS:
        ranks[_point_label(p)] = _rank_at(f, p)
    if any(v != generic for v in ranks.values()):
        raise PreconditionError(f"rank of the morphism is not constant: {ranks}")

    r1 = source.bundle.rank
    kern = poly_nullspace(f.lam)
    ksub = saturate(source.bundle, columns_matrix(kern, r1)) if kern else zero_sub(source.bundle)
    isub = saturate(tw.bundle, f.lam, allow_rank_drop=True) if generic else zero_sub(tw.bundle)

    for p in SAMPLE_POINTS:
        fp = f.at(p)
        if ksub.fiber(p) != Subspace.span(fp.nullspace(), r1):
            raise AssertionError(f"kernel fiber at {_point_label(p)} differs from the pointwise kernel")
        if ksub.rank + fp.rank() != r1:
            raise AssertionError("rank(ker) + rank(im) differs from the source rank")

    weights = sorted(set(source.steps) | set(tw.steps))
    for l in weights:
        fw = f.lam @ source.step(l).lam_basis
        lhs = saturate(tw.bundle, fw, allow_rank_drop=True) if generic_rank(fw) else zero_sub(tw.bundle)
        rhs = sub_intersect(isub, tw.step(l))
        if lhs.rank != rhs.rank or not lhs.contains(rhs):
            raise StrictnessError(f"f(W_{l}) differs from Im f & W_{l}")
        for p in SAMPLE_POINTS:
            fp = f.at(p)
            pointwise = source.step(l).fiber(p).apply(fp)
            if pointwise != isub.fiber(p) & tw.step(l).fiber(p):
                raise StrictnessError(f"f(W_{l}) differs from Im f & W_{l} at {_point_label(p)}")

    kernel = induced_on(source, ksub) if ksub.rank else None
    image = induced_on(tw, isub) if isub.rank else None
    cokernel = None
    if isub.rank < tw.bundle.rank:
        q = quotient(whole(tw.bundle), isub)
        steps = {}
        for l in weights:
            s = tw.step(l)
            proj = q.project_lam @ s.lam_basis if s.rank else None
            if proj is not None and generic_rank(proj):
                steps[l] = saturate(q.bundle, proj, allow_rank_drop=True)
        top = max(steps) if steps else 0
        if not steps or steps[top].rank != q.bundle.rank:
            steps[max(weights)] = whole(q.bundle)
        cokernel = FilteredTwistorBundle(q.bundle, _dedupe(steps))
    for name, piece in (("kernel", kernel), ("image", image), ("cokernel", cokernel)):
        if piece is not None and not is_mixed_twistor(piece)[0]:
            raise AssertionError(f"{name} is not a mixed twistor")
    report = {"ranks": ranks, "kernelRank": ksub.rank, "imageRank": isub.rank,
              "cokernelRank": tw.bundle.rank - isub.rank, "strictWeights": weights}
    return KerImCoker(kernel, image, cokernel, ksub, isub, report)


def _dedupe(steps):
    out, prev = {}, -1
    for l, s in sorted(steps.items()):
        if s.rank != prev:
            out[l] = s
            prev = s.rank
    return out


def degree_bound_check(f, sub, sub_filtration, shift):
    """(hypotheses, graded injectivity, purity) for a subbundle with its own filtration.

    Hypotheses: W_{L,l} inside W_{l+shift} and deg Gr_l(L) = (l+shift) rank.
    The conclusions are None when the hypotheses fail.
    """
    from .subbundle import push_forward
    from .bundle import is_pure
    pushed = {l: push_forward(sub, s) for l, s in sub_filtration.steps.items()}

    def sub_step(l):
        best = None
        for k, s in pushed.items():
            if k <= l:
                best = s
        return best if best is not None else zero_sub(f.bundle)

    hyp = all(f.step(l + shift).contains(s) for l, s in pushed.items())
    for l in sub_filtration.steps:
        g = sub_filtration.graded(l)
        if g is not None and g.degree != (l + shift) * g.rank:
            hyp = False
    if not hyp:
        return False, None, None
    injective = True
    for l in sub_filtration.steps:
        meet = sub_intersect(sub_step(l), f.step(l + shift - 1))
        lower = sub_step(l - 1)
        if meet.rank != lower.rank:
            injective = False
        for p in SAMPLE_POINTS:
            if sub_step(l).fiber(p) & f.step(l + shift - 1).fiber(p) != lower.fiber(p):
                injective = False
    pure = all(g is None or is_pure(g, l + shift)
               for l, g in ((l, sub_filtration.graded(l)) for l in sub_filtration.steps))
    return True, injective, pure


def _tuple_at(morphisms, point):
    if point == "generic":
        return [m.generic() for m in morphisms]
    return [m.at(point) for m in morphisms]


def _sum(morphisms):
    acc = morphisms[0]
    for m in morphisms[1:]:
        acc = acc + m
    return acc


class StrongViaTwistorReport:

    def __init__(self, hypotheses, conclusion, details):
        self.hypotheses = hypotheses
        self.conclusion = conclusion
        self.details = details

    @property
    def hypotheses_hold(self):
        return all(self.hypotheses.values())

    def __bool__(self):
        return not self.hypotheses_hold or bool(self.conclusion)

    def as_dict(self):
        return {"hypotheses": self.hypotheses, "conclusion": self.conclusion, "details": self.details}


def strong_compat_via_twistor(bundle, morphisms, check_cone=True):
    """Check the four hypotheses of the strong-compatibility propagation and,
    when they hold, the conclusion at every sample point and generically."""
    n = len(morphisms)
    for i, m in enumerate(morphisms):
        if m.twist != 2 or not m.is_compatible(bundle):
            raise InputError(f"morphism {i} is not a morphism V -> V(2)")
    for i in range(n):
        for j in range(i + 1, n):
            if morphisms[i].lam @ morphisms[j].lam != morphisms[j].lam @ morphisms[i].lam:
                raise PreconditionError(f"morphisms {i} and {j} do not commute")
    points = ["generic"] + list(SAMPLE_POINTS)
    hyps, details = {}, {}
    total = _sum(morphisms)
    try:
        wn = morphism_weight_filtration(total, bundle)
        hyps["weightMixed"] = is_mixed_twistor(wn)[0]
    except PreconditionError as exc:
        wn = None
        hyps["weightMixed"] = False
        details["weightMixed"] = str(exc)
    if wn is not None:
        ok = True
        for j in range(1, n + 1):
            partial = _sum(morphisms[:j])
            if not all(_maps_into(partial, wn.step(l), wn.step(l - 2)) for l in wn.steps):
                ok = False
        hyps["partialSumsMorphisms"] = ok
    else:
        hyps["partialSumsMorphisms"] = False

    def check(fn, maps, point):
        cone = check_cone and point != "generic"
        return fn(CommutingTuple(maps), cone)[0]

    hyps["sequential"] = all(check(is_sequentially_compatible, _tuple_at(morphisms, p), p) for p in points)
    hyps["strongPrefix"] = n == 1 or all(
        check(is_strongly_sequentially_compatible, _tuple_at(morphisms[:-1], p), p) for p in points)
    conclusion = None
    if all(hyps.values()):
        conclusion = all(check(is_strongly_sequentially_compatible, _tuple_at(morphisms, p), p) for p in points)
    details["points"] = [p if p == "generic" else _point_label(p) for p in points]
    return StrongViaTwistorReport(hyps, conclusion, details)


def tensor_bundle(a, b):
    return TwistorBundle(a.gluing.kron(b.gluing))


def constant_morphism(m, twist=0):
    """A constant matrix as a morphism on a trivial bundle (twist 0)."""
    pm = poly_matrix(m)
    return BundleMorphism(twist, pm, pm)

