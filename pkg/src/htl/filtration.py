"""Increasing filtrations, induced filtrations on graded pieces, compatible
sequences of filtrations and their splittings.
"""

from itertools import product

from .exact.matrix import Matrix
from .exact.scalars import Q
from .exact.subspace import QuotientChart, Subspace, intersect_all, sum_all


class Filtration:
    """Increasing exhaustive filtration of K^n.

    Only the weights where the filtration jumps are stored.  Below the
    smallest jump the step is zero, at and above the largest it is everything.
    """

    def __init__(self, ambient_dim, steps):
        self.ambient_dim = ambient_dim
        items = sorted(steps.items())
        prev = Subspace.zero(ambient_dim)
        jumps = {}
        for l, s in items:
            if s.ambient_dim != ambient_dim:
                raise ValueError(f"step {l} lives in dimension {s.ambient_dim}, expected {ambient_dim}")
            if not prev <= s:
                raise ValueError(f"filtration is not increasing at weight {l}")
            if s.dim > prev.dim:
                jumps[l] = s
            prev = s
        if prev.dim != ambient_dim:
            raise ValueError("filtration is not exhaustive: largest step is not the whole space")
        self._jumps = jumps
        self._weights = sorted(jumps)

    @classmethod
    def trivial(cls, n, weight=0):
        """Single jump at ``weight``."""
        return cls(n, {weight: Subspace.full(n)})

    @classmethod
    def from_flag(cls, ambient_dim, flag):
        """Build from a dict weight -> list of spanning vectors."""
        return cls(ambient_dim, {l: Subspace.span(v, ambient_dim) for l, v in flag.items()})

    def __getitem__(self, l):
        return self.step(l)

    def step(self, l):
        best = None
        for w in self._weights:
            if w <= l:
                best = w
            else:
                break
        if best is None:
            return Subspace.zero(self.ambient_dim)
        return self._jumps[best]

    @property
    def jumps(self):
        """Weights l with Gr_l nonzero, increasing."""
        return list(self._weights)

    @property
    def bottom(self):
        """Smallest weight with nonzero graded piece."""
        return self._weights[0] if self._weights else None

    @property
    def top(self):
        return self._weights[-1] if self._weights else None

    def gr_dim(self, l):
        return self.step(l).dim - self.step(l - 1).dim

    def gr_dims(self):
        return {l: self.gr_dim(l) for l in self._weights}

    def grid(self):
        """Weights at which every condition needs checking: jumps and one below."""
        if not self._weights:
            return [0]
        return [self._weights[0] - 1] + self._weights

    def degree(self, v):
        """Smallest l with v in W_l."""
        if not any(v):
            raise ValueError("degree of the zero vector is undefined")
        for l in self._weights:
            if v in self._jumps[l]:
                return l
        raise AssertionError("filtration is exhaustive")

    def shifted(self, k):
        """W'_l = W_{l+k}."""
        return Filtration(self.ambient_dim, {l - k: s for l, s in self._jumps.items()})

    def restrict(self, chart):
        """Image of the filtration in the quotient presented by a QuotientChart."""
        return Filtration(chart.dim, {l: chart.project(s) for l, s in self._jumps.items()}) \
            if chart.dim else Filtration(0, {})

    def apply(self, m):
        """Filtration transported by an invertible matrix."""
        return Filtration(self.ambient_dim, {l: s.apply(m) for l, s in self._jumps.items()})

    def is_preserved_by(self, m, shift=0):
        """m(W_l) inside W_{l+shift} for every l."""
        return all(s.apply(m) <= self.step(l + shift) for l, s in self._jumps.items())

    def graded(self):
        return GradedSpace(self)

    def __eq__(self, other):
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._jumps == other._jumps

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self._jumps.items())))

    def __repr__(self):
        return f"Filtration(dim={self.ambient_dim}, gr={self.gr_dims()})"


class GradedSpace:
    """Gr^W as a collection of quotient charts W_l / W_{l-1}."""

    def __init__(self, filtration):
        self.filtration = filtration
        self.pieces = {l: QuotientChart(filtration.step(l), filtration.step(l - 1))
                       for l in filtration.jumps}
        if sum(p.dim for p in self.pieces.values()) != filtration.ambient_dim:
            raise AssertionError("graded dimensions do not add up")

    def __getitem__(self, l):
        return self.pieces[l]

    def dims(self):
        return {l: p.dim for l, p in self.pieces.items()}


def induced_on_gr(base, other, shifted=True):
    """Filtrations induced by ``other`` on each piece Gr_a of ``base``.

    Returns (GradedSpace, {a: Filtration on Gr_a in local coordinates}).  With
    shifted=True the step l on Gr_a is (other_{l+a} & base_a) / base_{a-1};
    otherwise it is (other_l & base_a) / base_{a-1}.
    """
    if base.ambient_dim != other.ambient_dim:
        raise ValueError("filtrations live on different spaces")
    gr = GradedSpace(base)
    out = {}
    for a, chart in gr.pieces.items():
        off = a if shifted else 0
        steps = {l - off: chart.project(other.step(l)) for l in other.grid()}
        out[a] = Filtration(chart.dim, steps)
    return gr, out


def _compatible(seq, n):
    """Recursive compatibility check; returns None or a failure witness."""
    if len(seq) <= 1:
        return None
    w1 = seq[0]
    gr = GradedSpace(w1)
    rest = seq[1:]
    grids = [f.grid() for f in rest]
    for h1, chart in gr.pieces.items():
        top, below = w1.step(h1), w1.step(h1 - 1)
        lifted = {}
        for j, f in enumerate(rest):
            lifted[j] = {l: (f.step(l) & top) + below for l in grids[j]}
        for hs in product(*grids):
            inter = intersect_all([top] + [f.step(l) for f, l in zip(rest, hs)], n)
            left = inter + below
            right = intersect_all([lifted[j][l] for j, l in enumerate(hs)], n)
            if left != right:
                return {"h": (h1,) + tuple(hs), "image": left, "intersection": right, "ambient": "upstairs"}
        local = [f.restrict(chart) for f in rest]
        sub = _compatible(local, chart.dim)
        if sub is not None:
            return {"piece": h1, "inner": sub}
    return None


def is_compatible_sequence(seq):
    """(True, None) if the sequence is compatible, else (False, witness).

    The image condition is compared after lifting to W(1)_{h1}: the preimage
    of Im(pi_h) is (intersection of the W(j)_{h_j}) + W(1)_{h1-1}, the
    preimage of the induced intersection is the intersection over j >= 2 of
    (W(j)_{h_j} & W(1)_{h1}) + W(1)_{h1-1}.
    """
    seq = list(seq)
    if not seq:
        raise ValueError("empty filtration sequence")
    n = seq[0].ambient_dim
    if any(f.ambient_dim != n for f in seq):
        raise ValueError("filtrations live on different spaces")
    w = _compatible(seq, n)
    return w is None, w


class Splitting:
    """Direct sum decomposition V = sum of U_h indexed by integer tuples."""

    def __init__(self, ambient_dim, components):
        self.ambient_dim = ambient_dim
        self.components = {tuple(h): s for h, s in components.items() if s.dim}

    def dims(self):
        return {h: s.dim for h, s in sorted(self.components.items())}

    def is_direct_sum(self):
        total = sum(s.dim for s in self.components.values())
        span = sum_all(self.components.values(), self.ambient_dim)
        return total == self.ambient_dim and span.dim == total

    def below(self, h):
        """Sum of U_k over k <= h componentwise."""
        return sum_all([s for k, s in self.components.items() if all(a <= b for a, b in zip(k, h))],
                       self.ambient_dim)

    def reconstruct(self, j, m):
        """Sum of U_k with k_j <= m; equals W(j)_m for a compatible splitting."""
        return sum_all([s for k, s in self.components.items() if k[j] <= m], self.ambient_dim)

    def basis(self):
        out = []
        for h in sorted(self.components):
            out.extend((h, v) for v in self.components[h].vectors())
        return out


def _splitting(seq, n):
    if len(seq) == 1:
        w = seq[0]
        return {(l,): Subspace.span(QuotientChart(w.step(l), w.step(l - 1)).transversal.columns(), n)
                for l in w.jumps}
    w1 = seq[0]
    rest = seq[1:]
    comps = {}
    for h1 in w1.jumps:
        top = w1.step(h1)
        chart = QuotientChart(top, w1.step(h1 - 1))
        local = [f.restrict(chart) for f in rest]
        inner = _splitting(local, chart.dim)
        for k, u in inner.items():
            source = intersect_all([top] + [f.step(l) for f, l in zip(rest, k)], n)
            src = source.basis
            images = Matrix.from_columns([chart.coords(v) for v in source.vectors()], chart.dim)
            lifts = []
            for target in u.vectors():
                coeff = images.solve(Matrix.from_columns([target], chart.dim))
                lifts.append(src.apply(coeff.col(0)))
            comps[(h1,) + k] = Subspace.span(lifts, n)
    return comps


def _grid_points(seq):
    return product(*[f.grid() for f in seq])


def verify_splitting(seq, splitting):
    """Check the defining identity on the whole support grid; return failing h or None."""
    n = splitting.ambient_dim
    if not splitting.is_direct_sum():
        return "not a direct sum"
    for h in _grid_points(seq):
        left = intersect_all([f.step(l) for f, l in zip(seq, h)], n)
        if left != splitting.below(h):
            return h
    return None


def compatible_splitting(seq):
    """A splitting compatible with a compatible sequence (deterministic choice)."""
    seq = list(seq)
    ok, witness = is_compatible_sequence(seq)
    if not ok:
        raise ValueError(f"sequence is not compatible: {witness}")
    n = seq[0].ambient_dim
    sp = Splitting(n, _splitting(seq, n))
    bad = verify_splitting(seq, sp)
    if bad is not None:
        raise AssertionError(f"constructed splitting violates the defining identity at {bad}")
    return sp


def is_compatible_vector(v, seq):
    """Inductive compatibility of a nonzero vector with a compatible sequence."""
    seq = list(seq)
    if not any(v):
        return False
    if len(seq) == 1:
        return True
    w1 = seq[0]
    d1 = w1.degree(v)
    chart = QuotientChart(w1.step(d1), w1.step(d1 - 1))
    local = [f.restrict(chart) for f in seq[1:]]
    vloc = chart.coords(v)
    for f, g in zip(seq[1:], local):
        if f.degree(v) != g.degree(vloc):
            return False
    return is_compatible_vector(vloc, local)


def compatible_basis(seq):
    """Basis of vectors compatible with the sequence, one sub-basis per U_h."""
    sp = compatible_splitting(seq)
    basis = [v for _, v in sp.basis()]
    for v in basis:
        if not is_compatible_vector(v, seq):
            raise AssertionError("basis vector failed the compatibility check")
    return basis


def is_compatible_basis(basis, seq):
    """Every vector compatible and every step spanned by a subset of the basis."""
    n = seq[0].ambient_dim
    if Subspace.span(basis, n).dim != n or len(basis) != n:
        return False
    if not all(is_compatible_vector(v, seq) for v in basis):
        return False
    for f in seq:
        for l in f.jumps:
            s = f.step(l)
            if sum(1 for v in basis if v in s) != s.dim:
                return False
    # the induced basis on each graded piece must be compatible as well
    if len(seq) > 1:
        w1 = seq[0]
        for a in w1.jumps:
            chart = QuotientChart(w1.step(a), w1.step(a - 1))
            local_basis = [chart.coords(v) for v in basis if w1.degree(v) == a]
            if local_basis and not is_compatible_basis(local_basis, [f.restrict(chart) for f in seq[1:]]):
                return False
    return True


def norm_exponents(v, seq):
    """Half-differences of successive degrees: k_1 = d_1/2, k_j = (d_j - d_{j-1})/2."""
    seq = list(seq)
    if not is_compatible_vector(v, seq):
        raise ValueError("vector is not compatible with the sequence")
    degs = [f.degree(v) for f in seq]
    prev = 0
    out = []
    for d in degs:
        out.append(Q(d - prev, 2))
        prev = d
    return out


def flat_section_exponents(v, seq):
    """Exponent vector (h_1, h_2 - h_1, ...) with h_j the degree under W(j)."""
    seq = list(seq)
    if not is_compatible_vector(v, seq):
        raise ValueError("vector is not compatible with the sequence")
    degs = [f.degree(v) for f in seq]
    return [degs[0]] + [b - a for a, b in zip(degs, degs[1:])]
