"""Splittings and bases adapted to strongly sequentially compatible tuples.

Index conventions: a component is keyed by (k, kappa) where k >= 0 is the
primitive level and kappa = (q_1, h_2 - h_1, ..., h_n - h_{n-1}) records the
W(j)-degrees h_j through their partial sums rho_j(kappa) = h_j.  Moving down
an N_1-chain lowers every h_j by 2, i.e. subtracts 2 from q_1 only.
"""

from itertools import product

from ..errors import NotCompatibleError
from ..exact.matrix import Matrix
from ..exact.subspace import QuotientChart, Subspace, intersect_all, sum_all
from ..filtration import compatible_splitting, is_compatible_basis
from .compat import InducedTuple, _primitive_lift, is_strongly_sequentially_compatible
from .weights import CommutingTuple


def partial_sums(kappa):
    out, acc = [], 0
    for x in kappa:
        acc += x
        out.append(acc)
    return tuple(out)


def differences(degrees):
    """Inverse of partial_sums."""
    return tuple(b - a for a, b in zip((0,) + tuple(degrees), degrees))


class StrongSplitting:
    """Components P_k U_kappa together with the chain bases generating them."""

    def __init__(self, t, parts, chains):
        self.tuple = t
        self.parts = parts
        self.chains = chains

    def dims(self):
        return {key: s.dim for key, s in sorted(self.parts.items())}

    def component(self, k, kappa):
        return self.parts.get((k, tuple(kappa)), Subspace.zero(self.tuple.dim))

    def below(self, h):
        """Sum of the components whose W(j)-degrees are all at most h_j."""
        return sum_all([s for (_, kappa), s in self.parts.items()
                        if all(a <= b for a, b in zip(partial_sums(kappa), h))], self.tuple.dim)

    def verify(self):
        """Return None when every splitting property holds, else a message."""
        t = self.tuple
        d = t.dim
        n1 = t.maps[0]
        if sum(s.dim for s in self.parts.values()) != d or sum_all(self.parts.values(), d).dim != d:
            return "components do not form a direct sum decomposition"
        for h in product(*[f.grid() for f in t.filtrations]):
            if intersect_all([f.step(l) for f, l in zip(t.filtrations, h)], d) != self.below(h):
                return f"splitting identity fails at {h}"
        for (k, kappa), s in self.parts.items():
            q1 = kappa[0]
            if abs(q1) > k or (k - q1) % 2:
                return f"nonzero component outside the allowed range at {(k, kappa)}"
            if q1 == -k:
                if not s.apply(n1).is_zero():
                    return f"N_1 does not kill the bottom of the chain at {(k, kappa)}"
            else:
                if s.apply(n1) != self.component(k, (q1 - 2,) + kappa[1:]):
                    return f"N_1 does not shift {(k, kappa)} down by two"
        return None


def _inner_splitting(filtrations, pchart):
    """Compatible splitting of the filtrations restricted to the primitive part."""
    if not filtrations:
        return {(): Subspace.full(pchart.dim)}
    restricted = [f.restrict(pchart) for f in filtrations]
    return compatible_splitting(restricted).components


def strong_splitting(t, check_cone=True):
    t = t if isinstance(t, CommutingTuple) else CommutingTuple(t)
    ok, witness = is_strongly_sequentially_compatible(t, check_cone)
    if not ok:
        raise NotCompatibleError(f"tuple is not strongly sequentially compatible: {witness}")
    d = t.dim
    n1 = t.endos[0]
    w1 = t.filtrations[0]
    rest = t.filtrations[1:]
    ind = InducedTuple(t) if len(t) > 1 else None
    parts, chains = {}, {}
    for h1 in w1.jumps:
        if h1 < 0:
            continue
        chart = QuotientChart(w1.step(h1), w1.step(h1 - 1))
        primitive = chart.project(_primitive_lift(t, h1))
        if primitive.is_zero():
            continue
        pchart = QuotientChart(primitive, Subspace.zero(chart.dim))
        local = ind.filtrations[h1] if ind else []
        for rel, u in _inner_splitting(local, pchart).items():
            degrees = (h1,) + tuple(h1 + x for x in rel)
            kappa = differences(degrees)
            source = intersect_all([n1.kernel_of_power(h1 + 1)] + [f.step(l) for f, l in zip(rest, degrees[1:])], d)
            images = Matrix.from_columns([chart.coords(v) for v in source.vectors()], chart.dim)
            tops = []
            for target in u.vectors():
                coeff = images.solve(Matrix.from_columns([pchart.lift(target)], chart.dim))
                tops.append(source.basis.apply(coeff.col(0)))
            chain_rows = []
            for v in tops:
                chain = [v]
                for _ in range(h1):
                    chain.append(n1.matrix.apply(chain[-1]))
                chain_rows.append(chain)
            chains[(h1, kappa)] = chain_rows
            for m in range(h1 + 1):
                key = (h1, (kappa[0] - 2 * m,) + kappa[1:])
                parts[key] = Subspace.span([c[m] for c in chain_rows], d)
    sp = StrongSplitting(t, parts, chains)
    bad = sp.verify()
    if bad:
        raise AssertionError(bad)
    return sp


def strong_basis(t, check_cone=True):
    """Basis [(k, kappa, eta, vector)] with v_{k, kappa - 2 delta_1, eta} = N_1 v_{k, kappa, eta}."""
    sp = strong_splitting(t, check_cone)
    t = sp.tuple
    out = []
    for (k, kappa), rows in sorted(sp.chains.items()):
        for eta, chain in enumerate(rows):
            for m, v in enumerate(chain):
                out.append((k, (kappa[0] - 2 * m,) + kappa[1:], eta, v))
    bad = verify_strong_basis(t, out)
    if bad:
        raise AssertionError(bad)
    return out


def verify_strong_basis(t, basis):
    """Check the basis properties; return None or a message."""
    d = t.dim
    n1 = t.maps[0]
    vectors = [v for *_, v in basis]
    if len(vectors) != d or Subspace.span(vectors, d).dim != d:
        return "not a basis"
    index = {(k, kappa, eta): v for k, kappa, eta, v in basis}
    for (k, kappa, eta), v in index.items():
        image = n1.apply(v)
        if kappa[0] == -k:
            if any(image):
                return f"N_1 does not kill {(k, kappa, eta)}"
        elif image != index.get((k, (kappa[0] - 2,) + kappa[1:], eta)):
            return f"N_1 does not map {(k, kappa, eta)} to the next chain vector"
        for f, rho in zip(t.filtrations, partial_sums(kappa)):
            if f.degree(v) != rho:
                return f"degree mismatch at {(k, kappa, eta)}"
    if not is_compatible_basis(vectors, t.filtrations):
        return "basis is not compatible with the filtration sequence"
    return None


def chain_dims(sp):
    """d(k, kappa) for the top of every chain."""
    return {key: len(rows) for key, rows in sorted(sp.chains.items())}

