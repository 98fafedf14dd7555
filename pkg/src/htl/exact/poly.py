"""Univariate polynomials, rational functions and Laurent polynomials in one
variable (written lambda throughout) over Q or Q(i).
"""

from numbers import Integral

from .scalars import GaussianRational, Q, is_rational


def _is_scalar(x):
    return is_rational(x) or isinstance(x, GaussianRational)


def _trim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class Poly:
    """Polynomial with coefficients listed from the constant term up."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = tuple(_trim([x if not isinstance(x, Integral) else Q(x) for x in coeffs]))

    @classmethod
    def const(cls, a):
        return cls([a])

    @classmethod
    def monomial(cls, k, coef=1):
        return cls([0] * k + [coef])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def coerce(cls, other):
        if isinstance(other, Poly):
            return other
        if _is_scalar(other):
            return cls([other])
        return None

    def one(self):
        return Poly([1])

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def lc(self):
        return self.c[-1] if self.c else Q(0)

    def coef(self, k):
        return self.c[k] if 0 <= k < len(self.c) else Q(0)

    def is_const(self):
        return len(self.c) <= 1

    def const_value(self):
        return self.c[0] if self.c else Q(0)

    def low_degree(self):
        """Smallest exponent with nonzero coefficient (the lambda-adic valuation)."""
        for k, a in enumerate(self.c):
            if a:
                return k
        raise ValueError("zero polynomial has no valuation")

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        o = Poly.coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0]) if self.c else hash(0)
        return hash(self.c)

    def __add__(self, other):
        o = Poly.coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = out[i] + y
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        o = Poly.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Poly.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = Poly.coerce(other)
        if o is None:
            return NotImplemented
        if not self.c or not o.c:
            return Poly()
        if len(o.c) == 1:
            s = o.c[0]
            return Poly([x * s for x in self.c])
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            return NotImplemented
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        o = Poly.coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dq = len(r) - len(o.c)
        if dq < 0:
            return Poly(), self
        q = [0] * (dq + 1)
        inv = 1 / o.c[-1]
        for k in range(dq, -1, -1):
            f = r[k + len(o.c) - 1]
            if f:
                f = f * inv
                q[k] = f
                for i, y in enumerate(o.c):
                    if y:
                        r[k + i] = r[k + i] - f * y
        return Poly(q), Poly(r[:len(o.c) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, other):
        if _is_scalar(other):
            inv = 1 / other
            return Poly([x * inv for x in self.c])
        if isinstance(other, (Poly, RatFunc)):
            return RatFunc(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return RatFunc(Poly([other]), self)
        return NotImplemented

    def monic(self):
        if not self.c:
            return self
        inv = 1 / self.c[-1]
        return Poly([x * inv for x in self.c])

    def __call__(self, x):
        acc = Q(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def shift(self, k):
        """Multiply by lambda^k (k >= 0)."""
        if k < 0:
            if any(self.c[:-k]):
                raise ArithmeticError("shift would create negative exponents")
            return Poly(self.c[-k:])
        return Poly([0] * k + list(self.c)) if self.c else self

    def reverse(self, d=None):
        """lambda^d * p(1/lambda) with d defaulting to the degree."""
        d = self.degree if d is None else d
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return Poly(list(reversed(list(self.c) + [0] * (d - self.degree)))) if self.c else self

    def map_coeffs(self, f):
        return Poly([f(x) for x in self.c])

    def complexity(self):
        return len(self.c)

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(f"({a})" + ("" if k == 0 else "*x" if k == 1 else f"*x^{k}"))
        return " + ".join(terms)


def poly_gcd(a, b):
    """Monic gcd (0 if both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


class RatFunc:
    """Element of K(lambda): num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        num = Poly.coerce(num)
        den = Poly([1]) if den is None else Poly.coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = Poly([1])
            elif not den.is_const():
                g = poly_gcd(num, den)
                if not g.is_const():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            lc = den.lc()
            if not (lc == 1):
                inv = 1 / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return cls(other, None, True)
        if _is_scalar(other):
            return cls(Poly([other]), None, True)
        return None

    @classmethod
    def x(cls):
        return cls(Poly.x(), None, True)

    def one(self):
        return RatFunc(Poly([1]), None, True)

    def is_poly(self):
        return self.den.is_const()

    def as_poly(self):
        if not self.is_poly():
            raise ArithmeticError("rational function is not a polynomial")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = RatFunc.coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den.is_const():
            return hash(self.num)
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RatFunc.coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, other):
        o = RatFunc.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RatFunc.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = RatFunc.coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc(Poly(), None, True)
        if self.den.is_const() and o.den.is_const():
            return RatFunc(self.num * o.num, None, True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("rational function division by zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = RatFunc.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = RatFunc.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, Integral):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, True)

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("pole of rational function")
        return self.num(x) / d

    def value_at_zero(self):
        return self(Q(0))

    def invert_variable(self):
        """f(1/lambda)."""
        dn, dd = self.num.degree, self.den.degree
        d = max(dn, dd, 0)
        n = self.num.reverse(d) if self.num else Poly()
        return RatFunc(n, self.den.reverse(d))

    def complexity(self):
        return len(self.num.c) + len(self.den.c)

    def __repr__(self):
        if self.den.is_const():
            return f"RatFunc({self.num})"
        return f"RatFunc(({self.num})/({self.den}))"

    __str__ = __repr__


class LaurentPolynomial:
    """Finite sum of c_k * lambda^k with k in Z; zero coefficients are dropped."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        clean = {}
        for k, v in (coeffs or {}).items():
            if isinstance(v, Integral):
                v = Q(v)
            if v:
                clean[int(k)] = v
        self.coeffs = clean
        self._hash = None

    @classmethod
    def monomial(cls, k, coef=1):
        return cls({k: coef})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def lam(cls):
        return cls({1: 1})

    @classmethod
    def from_poly(cls, p, shift=0):
        return cls({k + shift: a for k, a in enumerate(p.c)})

    @classmethod
    def coerce(cls, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, Poly):
            return cls.from_poly(other)
        if _is_scalar(other):
            return cls({0: other})
        return None

    @classmethod
    def from_ratfunc(cls, f):
        """Convert a rational function with monomial denominator."""
        den = f.den
        if len([a for a in den.c if a]) != 1:
            raise ArithmeticError("denominator is not a monomial; not a Laurent polynomial")
        k = den.degree
        inv = 1 / den.lc()
        return cls({i - k: a * inv for i, a in enumerate(f.num.c)})

    def one(self):
        return LaurentPolynomial({0: 1})

    def __bool__(self):
        return bool(self.coeffs)

    def min_exp(self):
        return min(self.coeffs) if self.coeffs else None

    def max_exp(self):
        return max(self.coeffs) if self.coeffs else None

    def coef(self, k):
        return self.coeffs.get(k, Q(0))

    def is_monomial(self):
        return len(self.coeffs) == 1

    def __eq__(self, other):
        o = LaurentPolynomial.coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __add__(self, other):
        o = LaurentPolynomial.coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        o = LaurentPolynomial.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = LaurentPolynomial.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = LaurentPolynomial.coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for i, a in self.coeffs.items():
            for j, b in o.coeffs.items():
                k = i + j
                out[k] = out[k] + a * b if k in out else a * b
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials are invertible Laurent polynomials")
            (e, c), = self.coeffs.items()
            return LaurentPolynomial({e * k: (1 / c) ** (-k)})
        result = LaurentPolynomial({0: 1})
        for _ in range(k):
            result = result * self
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            inv = 1 / other
            return LaurentPolynomial({k: v * inv for k, v in self.coeffs.items()})
        o = LaurentPolynomial.coerce(other)
        if o is None:
            return NotImplemented
        return self * o ** -1

    def invert_variable(self):
        """p(1/lambda)."""
        return LaurentPolynomial({-k: v for k, v in self.coeffs.items()})

    def shift(self, k):
        return LaurentPolynomial({e + k: v for e, v in self.coeffs.items()})

    def to_poly(self, shift=0):
        """Polynomial lambda^shift * self; raises if negative exponents remain."""
        if not self.coeffs:
            return Poly()
        lo = self.min_exp() + shift
        if lo < 0:
            raise ArithmeticError("negative exponent after shift")
        out = [0] * (self.max_exp() + shift + 1)
        for k, v in self.coeffs.items():
            out[k + shift] = v
        return Poly(out)

    def to_ratfunc(self):
        if not self.coeffs:
            return RatFunc(Poly())
        lo = min(self.min_exp(), 0)
        return RatFunc(self.to_poly(-lo), Poly.monomial(-lo))

    def __call__(self, x):
        acc = Q(0)
        for k, v in self.coeffs.items():
            acc = acc + v * x ** k
        return acc

    def map_coeffs(self, f):
        return LaurentPolynomial({k: f(v) for k, v in self.coeffs.items()})

    def __repr__(self):
        return f"LaurentPolynomial({ {k: str(v) for k, v in sorted(self.coeffs.items())} })"

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*l^{k}" if k else f"({v})" for k, v in sorted(self.coeffs.items()))


LAM = LaurentPolynomial.lam()


class LaurentMatrix:
    """Grid of Laurent polynomials in lambda (a gluing matrix when invertible)."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries, rows=None, cols=None):
        data = tuple(tuple(LaurentPolynomial.coerce(x) if not isinstance(x, LaurentPolynomial) else x
                           for x in row) for row in entries)
        if any(x is None for row in data for x in row):
            raise TypeError("Laurent matrix entries must be scalars, Poly or LaurentPolynomial")
        self.rows = len(data) if rows is None else rows
        self.cols = (len(data[0]) if data else 0) if cols is None else cols
        if len(data) != self.rows or any(len(r) != self.cols for r in data):
            raise ValueError("ragged Laurent matrix")
        self._e = data

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag_monomials(cls, exps, coefs=None):
        n = len(exps)
        coefs = coefs or [1] * n
        return cls([[LaurentPolynomial.monomial(exps[i], coefs[i]) if i == j else 0 for j in range(n)]
                    for i in range(n)], n, n)

    @classmethod
    def from_ratfunc_matrix(cls, m):
        return cls([[LaurentPolynomial.from_ratfunc(RatFunc.coerce(x)) for x in row] for row in m.tolist()],
                   m.rows, m.cols)

    @classmethod
    def from_poly_matrix(cls, m, variable_inverted=False):
        out = []
        for row in m.tolist():
            r = []
            for x in row:
                lp = LaurentPolynomial.coerce(x)
                r.append(lp.invert_variable() if variable_inverted else lp)
            out.append(r)
        return cls(out, m.rows, m.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    def tolist(self):
        return [list(r) for r in self._e]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __add__(self, other):
        return LaurentMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)],
                             self.rows, self.cols)

    def __sub__(self, other):
        return LaurentMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)],
                             self.rows, self.cols)

    def __matmul__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for row in self._e:
            r = []
            for j in range(other.cols):
                s = LaurentPolynomial()
                for k, a in enumerate(row):
                    if a:
                        b = other._e[k][j]
                        if b:
                            s = s + a * b
                r.append(s)
            out.append(r)
        return LaurentMatrix(out, self.rows, other.cols)

    def scale(self, c):
        c = LaurentPolynomial.coerce(c)
        return LaurentMatrix([[c * x for x in row] for row in self._e], self.rows, self.cols)

    @property
    def T(self):
        return LaurentMatrix([list(c) for c in zip(*self._e)] if self.rows else [], self.cols, self.rows)

    def invert_variable(self):
        return LaurentMatrix([[x.invert_variable() for x in row] for row in self._e], self.rows, self.cols)

    def map_coeffs(self, f):
        return LaurentMatrix([[x.map_coeffs(f) for x in row] for row in self._e], self.rows, self.cols)

    def min_exp(self):
        exps = [x.min_exp() for row in self._e for x in row if x]
        return min(exps) if exps else 0

    def max_exp(self):
        exps = [x.max_exp() for row in self._e for x in row if x]
        return max(exps) if exps else 0

    def to_ratfunc_matrix(self):
        from .matrix import Matrix
        return Matrix([[x.to_ratfunc() for x in row] for row in self._e], self.rows, self.cols)

    def to_poly_matrix(self, shift=None):
        """Return (shift, polynomial matrix lambda^shift * self); shift defaults to -min exponent."""
        from .matrix import Matrix
        if shift is None:
            shift = max(0, -self.min_exp())
        return shift, Matrix([[x.to_poly(shift) for x in row] for row in self._e], self.rows, self.cols)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("det of non-square Laurent matrix")
        if self.rows == 0:
            return LaurentPolynomial({0: 1})
        return LaurentPolynomial.from_ratfunc(RatFunc.coerce(self.to_ratfunc_matrix().det()))

    def inverse(self):
        """Inverse over the Laurent ring (raises unless det is a monomial)."""
        d = self.det()
        if not d.is_monomial():
            raise ArithmeticError("Laurent matrix is not invertible over the Laurent ring")
        return LaurentMatrix.from_ratfunc_matrix(self.to_ratfunc_matrix().inverse())

    def evaluate(self, x):
        from .matrix import Matrix
        return Matrix([[e(x) for e in row] for row in self._e], self.rows, self.cols)

    def coefficient_matrix(self, k):
        from .matrix import Matrix
        return Matrix([[e.coef(k) for e in row] for row in self._e], self.rows, self.cols)

    def kron(self, other):
        return LaurentMatrix([[a * b for a in r1 for b in r2] for r1 in self._e for r2 in other._e],
                             self.rows * other.rows, self.cols * other.cols)

    def __repr__(self):
        return f"LaurentMatrix({[[str(x) for x in row] for row in self._e]})"
