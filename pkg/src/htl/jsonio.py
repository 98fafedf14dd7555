"""JSON encodings of scalars, matrices, filtrations, tuples and bundles.

Rationals are strings "p/q" or "p"; Gaussian rationals are {"re": .., "im": ..};
a matrix is {"rows": r, "cols": c, "entries": [[..], ..]}; a (Laurent)
polynomial is {"<exponent>": <scalar>}.
"""

from .errors import InputError
from .exact.matrix import Matrix
from .exact.poly import LaurentMatrix, LaurentPolynomial, Poly
from .exact.scalars import GaussianRational, Q, format_rational, is_rational


def encode_scalar(x):
    if isinstance(x, GaussianRational):
        if not x.im:
            return format_rational(x.re)
        return {"re": format_rational(x.re), "im": format_rational(x.im)}
    return format_rational(x)


def decode_scalar(obj, where="scalar"):
    try:
        if isinstance(obj, dict):
            if set(obj) - {"re", "im"}:
                raise InputError(f"{where}: unexpected keys {sorted(set(obj) - {'re', 'im'})}")
            z = GaussianRational(Q(str(obj.get("re", "0"))), Q(str(obj.get("im", "0"))))
            return z if z.im else z.re
        if isinstance(obj, bool):
            raise InputError(f"{where}: booleans are not scalars")
        if isinstance(obj, int):
            return Q(obj)
        if isinstance(obj, str):
            return Q(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{where}: cannot parse {obj!r} as an exact scalar") from None
    raise InputError(f"{where}: expected a rational string or {{re, im}}, got {type(obj).__name__}")


def _shape(obj, where):
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError(f"{where}: expected an object with 'entries'")
    entries = obj["entries"]
    if not isinstance(entries, list) or any(not isinstance(r, list) for r in entries):
        raise InputError(f"{where}: 'entries' must be a list of rows")
    rows = obj.get("rows", len(entries))
    cols = obj.get("cols", len(entries[0]) if entries else 0)
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise InputError(f"{where}: entries do not match the declared shape {rows}x{cols}")
    return rows, cols, entries


def encode_matrix(m):
    return {"rows": m.rows, "cols": m.cols, "entries": [[encode_scalar(x) for x in row] for row in m.tolist()]}


def decode_matrix(obj, where="matrix"):
    rows, cols, entries = _shape(obj, where)
    data = [[decode_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(entries)]
    if any(isinstance(x, GaussianRational) for r in data for x in r):
        data = [[GaussianRational.coerce(x) for x in r] for r in data]
    return Matrix(data, rows, cols)


def encode_laurent(p):
    return {str(k): encode_scalar(c) for k, c in sorted(p.coeffs.items())}


def decode_laurent(obj, where="laurent"):
    if is_rational(obj) or isinstance(obj, str):
        return LaurentPolynomial.const(decode_scalar(obj, where))
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected {{exponent: scalar}}")
    if set(obj) <= {"re", "im"} and obj:
        return LaurentPolynomial.const(decode_scalar(obj, where))
    out = {}
    for k, v in obj.items():
        try:
            e = int(k)
        except ValueError:
            raise InputError(f"{where}: exponent {k!r} is not an integer") from None
        out[e] = decode_scalar(v, f"{where}[{k}]")
    return LaurentPolynomial(out)


def encode_poly(p):
    return {str(k): encode_scalar(c) for k, c in enumerate(p.c) if c}


def decode_poly(obj, where="poly"):
    lp = decode_laurent(obj, where)
    if lp and lp.min_exp() < 0:
        raise InputError(f"{where}: negative exponent in a polynomial")
    return lp.to_poly(0) if lp else Poly()


def encode_laurent_matrix(m):
    return {"rows": m.rows, "cols": m.cols, "entries": [[encode_laurent(x) for x in row] for row in m.tolist()]}


def decode_laurent_matrix(obj, where="gluing"):
    rows, cols, entries = _shape(obj, where)
    return LaurentMatrix([[decode_laurent(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
                          for i, r in enumerate(entries)], rows, cols)


def encode_poly_matrix(m):
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[encode_poly(Poly.coerce(x)) for x in row] for row in m.tolist()]}


def decode_poly_matrix(obj, where="poly matrix"):
    rows, cols, entries = _shape(obj, where)
    return Matrix([[decode_poly(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(entries)],
                  rows, cols)


def encode_filtration(f):
    return {"ambientDim": f.ambient_dim,
            "steps": {str(l): encode_matrix(f.step(l).basis) for l in f.jumps}}


def decode_filtration(obj, where="filtration"):
    from .exact.subspace import Subspace
    from .filtration import Filtration
    if not isinstance(obj, dict) or "ambientDim" not in obj or "steps" not in obj:
        raise InputError(f"{where}: expected {{ambientDim, steps}}")
    n = obj["ambientDim"]
    steps = {}
    for k, v in obj["steps"].items():
        m = decode_matrix(v, f"{where}.steps[{k}]")
        if m.rows != n:
            raise InputError(f"{where}.steps[{k}]: basis has {m.rows} rows, expected {n}")
        steps[int(k)] = Subspace.from_matrix(m)
    try:
        return Filtration(n, steps)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def encode_splitting(sp):
    return {"ambientDim": sp.ambient_dim,
            "components": {",".join(map(str, h)): encode_matrix(s.basis) for h, s in sorted(sp.components.items())}}


def encode_tuple(maps):
    return {"maps": [encode_matrix(m) for m in maps]}


def decode_tuple(obj, where="tuple"):
    """List of matrices; commutation and nilpotency are checked by CommutingTuple."""
    if not isinstance(obj, dict) or not isinstance(obj.get("maps"), list) or not obj["maps"]:
        raise InputError(f"{where}: expected {{maps: [matrix, ...]}} with at least one map")
    return [decode_matrix(m, f"{where}.maps[{i}]") for i, m in enumerate(obj["maps"])]


def encode_bundle(b):
    return {"rank": b.rank, "gluing": encode_laurent_matrix(b.gluing)}


def decode_bundle(obj, where="bundle"):
    from .twistor.bundle import TwistorBundle
    if not isinstance(obj, dict) or "gluing" not in obj:
        raise InputError(f"{where}: expected {{rank, gluing}}")
    g = decode_laurent_matrix(obj["gluing"], f"{where}.gluing")
    if "rank" in obj and obj["rank"] != g.rows:
        raise InputError(f"{where}: rank {obj['rank']} does not match gluing size {g.rows}")
    return TwistorBundle(g)


def encode_morphism(f):
    return {"twist": f.twist, "lambda": encode_poly_matrix(f.lam), "mu": encode_poly_matrix(f.mu)}


def decode_morphism(obj, where="morphism"):
    from .twistor.morphism import BundleMorphism
    if not isinstance(obj, dict) or not {"twist", "lambda", "mu"} <= set(obj):
        raise InputError(f"{where}: expected {{twist, lambda, mu}}")
    return BundleMorphism(int(obj["twist"]), decode_poly_matrix(obj["lambda"], f"{where}.lambda"),
                          decode_poly_matrix(obj["mu"], f"{where}.mu"))


def decode_family(obj, where="family"):
    """Matrix whose entries are polynomials in one parameter, {"<exponent>": scalar}.

    Exponent keys may also be written as one-element tuples such as "(2,)".
    """
    rows, cols, entries = _shape(obj, where)
    out = []
    for i, r in enumerate(entries):
        row = []
        for j, x in enumerate(r):
            if isinstance(x, dict) and not set(x) <= {"re", "im"}:
                x = {k.strip("() ").rstrip(",").strip() or "0": v for k, v in x.items()}
            row.append(decode_poly(x, f"{where}[{i}][{j}]"))
        out.append(row)
    return Matrix(out, rows, cols)
