"""Multivariate polynomials over Q, just enough for fraction-free ranks."""

from numbers import Integral

from .scalars import Q, is_rational


class MPoly:
    """Sparse polynomial: dict from exponent tuples to nonzero rationals."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent tuple has wrong length")
            c = Q(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if is_rational(other):
            return MPoly.const(self.nvars, other)
        return None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            return NotImplemented
        result = MPoly.const(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other):
        """Quotient of an exact division (lex long division; raises on remainder)."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading()
        rem = MPoly(self.nvars, self.terms)
        quot = {}
        while rem:
            e, c = rem.leading()
            d = tuple(a - b for a, b in zip(e, le))
            if any(x < 0 for x in d):
                raise ArithmeticError("inexact multivariate division")
            f = c / lc
            quot[d] = quot.get(d, 0) + f
            rem = rem - MPoly(self.nvars, {d: f}) * other
        return MPoly(self.nvars, quot)

    def evaluate(self, point):
        acc = Q(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * Q(x) ** k
            acc = acc + t
        return acc

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __repr__(self):
        return f"MPoly({self.nvars}, { {e: str(c) for e, c in sorted(self.terms.items())} })"


def bareiss_rank(rows):
    """Rank over the fraction field of a matrix of MPoly (or rational) entries.

    Fraction-free elimination: every division is exact in the polynomial ring.
    """
    a = [list(r) for r in rows]
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    prev = None
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        piv = next((i for i in range(rank, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for i in range(rank + 1, nr):
            for j in range(c + 1, nc):
                v = p * a[i][j] - a[i][c] * a[rank][j]
                if prev is not None:
                    v = _div(v, prev)
                a[i][j] = v
            a[i][c] = a[i][c] - a[i][c]
        prev = p
        rank += 1
    return rank


def _div(v, d):
    if isinstance(v, MPoly):
        if isinstance(d, MPoly):
            return v.exact_div(d)
        return MPoly(v.nvars, {e: c / d for e, c in v.terms.items()})
    if isinstance(d, MPoly):
        return MPoly.const(d.nvars, v).exact_div(d)
    return v / d


def mat_mul(a, b):
    """Product of two matrices given as row lists of MPoly."""
    nb = len(b[0]) if b else 0
    out = []
    for row in a:
        r = []
        for j in range(nb):
            s = None
            for k, x in enumerate(row):
                if x and b[k][j]:
                    t = x * b[k][j]
                    s = t if s is None else s + t
            r.append(s if s is not None else row[0] - row[0])
        out.append(r)
    return out
