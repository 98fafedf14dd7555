"""Weight filtrations of nilpotent maps, primitive decompositions and sl2 data."""

from functools import cached_property

from ..errors import NotCommutingError, NotNilpotentError
from ..exact.matrix import Matrix
from ..exact.scalars import Q
from ..exact.subspace import QuotientChart, Subspace, kernel, sum_all
from ..filtration import Filtration


class NilpotentEndo:
    """A nilpotent square matrix with its nilpotency index."""

    def __init__(self, matrix):
        if not matrix.is_square():
            raise NotNilpotentError("nilpotent map must be square")
        self.matrix = matrix
        self.dim = matrix.rows
        self.nil_index = nilpotency_index(matrix)
        if self.nil_index is None:
            raise NotNilpotentError("matrix is not nilpotent")

    @cached_property
    def powers(self):
        out = [Matrix.identity(self.dim)]
        for _ in range(self.nil_index):
            out.append(out[-1] @ self.matrix)
        return out

    def power(self, k):
        return self.powers[k] if k <= self.nil_index else self.powers[self.nil_index]

    @cached_property
    def kernels(self):
        return [kernel(p) for p in self.powers]

    def kernel_of_power(self, k):
        if k <= 0:
            return Subspace.zero(self.dim)
        return self.kernels[min(k, self.nil_index)]

    def rank_profile(self):
        """Ranks of N^0, N^1, ..., N^nil_index (determines the Jordan type)."""
        return [p.rank() for p in self.powers]

    def jordan_type(self):
        return jordan_type_from_ranks(self.rank_profile())

    def __repr__(self):
        return f"NilpotentEndo(dim={self.dim}, index={self.nil_index})"


def nilpotency_index(m):
    """Smallest k with m^k = 0, or None if m is not nilpotent."""
    n = m.rows
    if n == 0:
        return 0
    p = Matrix.identity(n)
    for k in range(n + 1):
        if p.is_zero():
            return k
        p = p @ m
    return None


def jordan_type_from_ranks(ranks):
    """Block sizes (descending) from ranks r_0 = n, r_1, ... of powers."""
    r = list(ranks) + [0, 0]
    sizes = []
    for k in range(1, len(r) - 1):
        at_least_k = r[k - 1] - r[k]
        at_least_k1 = r[k] - r[k + 1]
        sizes.extend([k] * (at_least_k - at_least_k1))
    return sorted(sizes, reverse=True)


def _as_endo(n):
    return n if isinstance(n, NilpotentEndo) else NilpotentEndo(n)


def weight_filtration(n, verify=True):
    """The weight filtration centered at 0 of a nilpotent map.

    W_l is the sum over j >= max(0, -l) of N^j Ker(N^(l+2j+1)).
    """
    n = _as_endo(n)
    d = n.dim
    k = n.nil_index
    if k <= 1:
        w = Filtration.trivial(d)
    else:
        steps = {}
        for l in range(-k, k):
            parts = []
            for j in range(max(0, -l), k):
                if l + 2 * j + 1 <= 0:
                    continue
                parts.append(n.kernel_of_power(l + 2 * j + 1).apply(n.power(j)))
            steps[l] = sum_all(parts, d)
        w = Filtration(d, steps)
    if verify:
        bad = check_weight_axioms(n, w)
        if bad:
            raise AssertionError(f"weight filtration axioms fail: {bad}")
    return w


def check_weight_axioms(n, w):
    """Return None if w is the weight filtration of n, else a description."""
    n = _as_endo(n)
    m = n.matrix
    for l in range(w.bottom - 2 if w.bottom is not None else 0, (w.top or 0) + 1):
        if not w.step(l).apply(m) <= w.step(l - 2):
            return f"N W_{l} not inside W_{l - 2}"
    span = max(abs(w.bottom or 0), abs(w.top or 0))
    for k in range(0, span + 1):
        if w.gr_dim(k) != w.gr_dim(-k):
            return f"dim Gr_{k} != dim Gr_{-k}"
        if not w.gr_dim(k):
            continue
        img = w.step(k).apply(n.power(k)) + w.step(-k - 1)
        if img != w.step(-k):
            return f"N^{k}: Gr_{k} -> Gr_{-k} not surjective"
    return None


def jordan_chains(n):
    """Chains (v, Nv, ..., N^(s-1) v) forming a basis, longest first.

    Built level by level: at length s take a complement of
    Ker N^(s-1) + N(Ker N^(s+1)) inside Ker N^s.
    """
    n = _as_endo(n)
    d = n.dim
    m = n.matrix
    chains = []
    for s in range(n.nil_index, 0, -1):
        ks = n.kernel_of_power(s)
        lower = n.kernel_of_power(s - 1) + n.kernel_of_power(s + 1).apply(m)
        lower = lower & ks
        current = lower
        for v in ks.vectors():
            if v not in current:
                chain = [v]
                for _ in range(s - 1):
                    chain.append(m.apply(chain[-1]))
                chains.append(chain)
                current = current + Subspace.span([v], d)
    if sum(len(c) for c in chains) != d:
        raise AssertionError("Jordan chains do not form a basis")
    return chains


class Sl2Data:
    """Weight grading and sl2 triple (h, raising e, lowering N) for a nilpotent map."""

    def __init__(self, n, chains):
        self.endo = n
        self.chains = chains
        d = n.dim
        basis, weights = [], []
        for chain in chains:
            s = len(chain)
            for i, v in enumerate(chain):
                basis.append(v)
                weights.append(s - 1 - 2 * i)
        self.basis = Matrix.from_columns(basis, d) if d else Matrix.zeros(0, 0)
        self.weights = weights
        binv = self.basis.inverse() if d else self.basis
        self.h = self.basis @ Matrix.diag([Q(w) for w in weights]) @ binv if d else self.basis
        # raising operator: e N^i v = i (s - i) N^(i-1) v
        cols = []
        k = 0
        for chain in chains:
            s = len(chain)
            for i in range(s):
                c = [0] * d
                if i > 0:
                    c[k + i - 1] = i * (s - i)
                cols.append(c)
            k += s
        e_chain = Matrix([[Q(cols[j][i]) for j in range(d)] for i in range(d)], d, d)
        self.e = self.basis @ e_chain @ binv if d else self.basis
        self.eigenspaces = {}
        for w in sorted(set(weights)):
            self.eigenspaces[w] = Subspace.span([b for b, x in zip(basis, weights) if x == w], d)

    def filtration(self):
        d = self.endo.dim
        if not self.eigenspaces:
            return Filtration(0, {})
        return Filtration(d, {l: sum_all([s for w, s in self.eigenspaces.items() if w <= l], d)
                              for l in self.eigenspaces})

    def multiplicities(self):
        return {w: s.dim for w, s in self.eigenspaces.items()}

    def verify(self):
        n = self.endo.matrix
        if self.endo.dim == 0:
            return True
        hn = self.h @ n - n @ self.h
        he = self.h @ self.e - self.e @ self.h
        en = self.e @ n - n @ self.e
        return hn == n.scale(-2) and he == self.e.scale(2) and en == self.h


def sl2_splitting(n):
    n = _as_endo(n)
    data = Sl2Data(n, jordan_chains(n))
    if not data.verify():
        raise AssertionError("sl2 relations fail")
    if n.dim and data.filtration() != weight_filtration(n):
        raise AssertionError("eigenvalue filtration differs from the weight filtration")
    return data


def weight_filtration_from_sl2(n):
    """Independent route: filtration from the sl2 eigenvalue grading."""
    n = _as_endo(n)
    if n.dim == 0:
        return Filtration(0, {})
    return Sl2Data(n, jordan_chains(n)).filtration()


class PrimitiveDecomposition:
    """P_l Gr_a for l >= 0 and a = l, l-2, ..., -l, in local coordinates of Gr_a."""

    def __init__(self, n, w, charts, parts):
        self.endo = n
        self.filtration = w
        self.charts = charts
        self.parts = parts

    def dims(self):
        return {k: s.dim for k, s in sorted(self.parts.items())}

    def verify(self):
        for a, chart in self.charts.items():
            pieces = [s for (l, b), s in self.parts.items() if b == a]
            total = sum(s.dim for s in pieces)
            if total != chart.dim or sum_all(pieces, chart.dim).dim != chart.dim:
                return False
        return True


def primitive_decomposition(n):
    n = _as_endo(n)
    w = weight_filtration(n)
    d = n.dim
    charts = {a: QuotientChart(w.step(a), w.step(a - 1)) for a in w.jumps}
    parts = {}
    for l in w.jumps:
        if l < 0:
            continue
        # lift of P_l Gr_l: v in W_l with N^(l+1) v in W_(-l-3)
        lift = w.step(-l - 3).preimage(n.power(l + 1), w.step(l))
        for m in range(l + 1):
            a = l - 2 * m
            if a not in charts:
                continue
            parts[(l, a)] = charts[a].project(lift.apply(n.power(m)) + w.step(a - 1))
    pd = PrimitiveDecomposition(n, w, charts, parts)
    if d and not pd.verify():
        raise AssertionError("primitive decomposition does not fill the graded pieces")
    return pd


def check_commuting(maps):
    for i in range(len(maps)):
        for j in range(i + 1, len(maps)):
            if maps[i] @ maps[j] != maps[j] @ maps[i]:
                raise NotCommutingError(f"maps {i} and {j} do not commute")


class CommutingTuple:
    """Pairwise commuting nilpotent maps with the weight filtrations of partial sums."""

    def __init__(self, maps):
        maps = [m.matrix if isinstance(m, NilpotentEndo) else m for m in maps]
        if not maps:
            raise ValueError("empty tuple")
        d = maps[0].rows
        for i, m in enumerate(maps):
            if m.shape != (d, d):
                raise ValueError(f"map {i} has shape {m.shape}, expected {(d, d)}")
        check_commuting(maps)
        self.maps = maps
        self.dim = d
        self.endos = []
        for i, m in enumerate(maps):
            try:
                self.endos.append(NilpotentEndo(m))
            except NotNilpotentError:
                raise NotNilpotentError(f"map {i} is not nilpotent") from None
        sums = []
        acc = Matrix.zeros(d, d)
        for m in maps:
            acc = acc + m
            sums.append(acc)
        self.partial_sums = sums

    def __len__(self):
        return len(self.maps)

    @cached_property
    def filtrations(self):
        """W(1), ..., W(n): weight filtrations of N_1 + ... + N_j."""
        return [weight_filtration(s) for s in self.partial_sums]

    def permuted(self, perm):
        return CommutingTuple([self.maps[i] for i in perm])

    def combination(self, coeffs):
        acc = Matrix.zeros(self.dim, self.dim)
        for c, m in zip(coeffs, self.maps):
            acc = acc + m.scale(c)
        return acc

    def __repr__(self):
        return f"CommutingTuple(n={len(self.maps)}, dim={self.dim})"
