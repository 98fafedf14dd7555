"""Command-line entry point.

Every report is printed as JSON lines: a header echoing the command, one line
per check sorted by check name, and a summary.  --human prints tables instead.
Exit codes: 0 all checks pass, 1 a check failed, 2 input error, 3 precondition error.
"""

import argparse
import json
import os
import sys
import time
from itertools import permutations

from .errors import InputError, PreconditionError

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3


class Report:

    def __init__(self, command, args, seed):
        self.command = command
        self.args = args
        self.seed = seed
        self.verdicts = []
        self.data = {}
        self.timings = {}

    def check(self, name, passed, witness=None):
        self.verdicts.append((name, bool(passed), witness))

    def timed(self, name, fn):
        t0 = time.perf_counter()
        out = fn()
        self.timings[name] = round(time.perf_counter() - t0, 6)
        return out

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.verdicts)

    def lines(self, timings=False):
        out = [{"command": self.command, "args": self.args, "seed": self.seed}]
        if self.data:
            out.append({"data": self.data})
        for name, ok, witness in sorted(self.verdicts, key=lambda v: v[0]):
            out.append({"check": name, "pass": ok, "witness": witness})
        summary = {"summary": "pass" if self.passed else "fail"}
        if timings:
            summary["timings"] = dict(sorted(self.timings.items()))
        out.append(summary)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    from .jsonio import encode_scalar
    try:
        return encode_scalar(x)
    except (TypeError, ValueError, AttributeError):
        return str(x)


def _emit(report, human, timings, stream):
    if human:
        stream.write(f"{report.command}  seed={report.seed}\n")
        for k, v in report.data.items():
            stream.write(f"  {k}: {_human(v)}\n")
        for name, ok, witness in sorted(report.verdicts, key=lambda v: v[0]):
            line = f"  {'PASS' if ok else 'FAIL'}  {name}"
            if witness is not None:
                line += f"  witness={json.dumps(_jsonable(witness), sort_keys=True)}"
            stream.write(line + "\n")
        stream.write(f"  {'all checks pass' if report.passed else 'some checks failed'}\n")
        if timings:
            for k, v in sorted(report.timings.items()):
                stream.write(f"  time {k}: {v:.3f}s\n")
        return
    for line in report.lines(timings):
        stream.write(json.dumps(_jsonable(line), sort_keys=True) + "\n")


def _human(v):
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_human(x)}" for k, x in v.items()) + "}"
    return json.dumps(_jsonable(v))


def _read_json(path):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if not text.strip():
        raise InputError("empty input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        error = exc
    # JSON-lines input, for example a report: take the first object carrying a payload
    for ln in text.splitlines():
        try:
            obj = json.loads(ln)
        except json.JSONDecodeError:
            continue
        if isinstance(obj, dict) and ({"gluing", "maps", "entries"} & set(obj)):
            return obj
    raise InputError(f"invalid JSON: {error.msg} at line {error.lineno}")


def _decode_matrix_input(obj):
    from .jsonio import decode_matrix
    if isinstance(obj, dict) and "matrix" in obj:
        return decode_matrix(obj["matrix"], "matrix")
    return decode_matrix(obj, "matrix")


def _tuple(obj):
    from .jsonio import decode_tuple
    from .nilpotent.weights import CommutingTuple
    maps = decode_tuple(obj)
    try:
        return CommutingTuple(maps)
    except ValueError as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise InputError(str(exc)) from None


def cmd_wfilt(args, report):
    from .nilpotent.weights import NilpotentEndo, check_weight_axioms, primitive_decomposition, sl2_splitting
    from .nilpotent.weights import weight_filtration
    m = _decode_matrix_input(_read_json(args.input))
    if m.rows != m.cols:
        raise InputError(f"matrix must be square, got {m.rows}x{m.cols}")
    n = NilpotentEndo(m)
    w = report.timed("weightFiltration", lambda: weight_filtration(n))
    report.data["weights"] = w.gr_dims()
    report.data["jordanType"] = n.jordan_type()
    bad = check_weight_axioms(n, w)
    report.check("weightAxioms", bad is None, bad)
    if args.primitive:
        pd = primitive_decomposition(n)
        report.data["primitive"] = {f"{l},{a}": d for (l, a), d in sorted(pd.dims().items())}
        report.check("primitiveDecomposition", pd.verify())
    if args.sl2:
        data = sl2_splitting(n)
        report.data["sl2Weights"] = sorted(data.weights, reverse=True)
        report.check("sl2Relations", data.verify())


def cmd_compat(args, report):
    from .nilpotent import compat
    t = _tuple(_read_json(args.input))
    mode = args.mode
    if mode == "seq":
        if args.level is not None:
            ok = compat.is_sequentially_compatible_at_level(t, args.level)
            report.check(f"sequentialLevel{args.level}", ok)
        else:
            ok, witness = compat.is_sequentially_compatible(t)
            report.check("sequential", ok, witness)
    elif mode == "strong":
        ok, witness = compat.is_strongly_sequentially_compatible(t)
        report.check("strong", ok, witness)
    elif mode == "hodge":
        if len(t) > compat.MAX_HODGE_MAPS:
            raise InputError(f"hodge mode is limited to {compat.MAX_HODGE_MAPS} maps")
        witness = None
        for perm in permutations(range(len(t))):
            ok, inner = compat.is_strongly_sequentially_compatible(t.permuted(perm))
            if not ok:
                witness = {"order": list(perm), "inner": inner}
                break
        report.check("hodgeType", witness is None, witness)
    elif mode == "bottom":
        report.check("bottom", compat.is_bottom_compatible(t))
    report.data["filtrations"] = [f.gr_dims() for f in t.filtrations]


def cmd_purity(args, report):
    from . import koszul
    t = _tuple(_read_json(args.input))
    c = koszul.build_koszul(t)
    fc = koszul.filter_complex(c)
    if args.reindex:
        fc = koszul.reindex_filtration(fc, args.reindex, args.weight or 0)
    report.data["termDims"] = [c.dim(k) for k in range(c.n + 1)]
    report.data["cohomology"] = [koszul.cohomology(c, k)[0] for k in range(c.n + 1)]
    ok, failing = report.timed("purity", lambda: koszul.purity_check(fc))
    report.check("purity", ok, None if ok else {"k": failing[0], "h": failing[1]})
    top = koszul.cohomology(c, c.n)[0]
    report.check(f"H{c.n}Vanishes", top == 0, None if top == 0 else {"dim": top})
    report.check("eulerCharacteristic", koszul.euler_characteristic_check(c))
    report.check("filtrationPreserved", koszul.check_filtration_preserved(fc))
    if args.graded:
        report.check("gradedVanishing", report.timed("gradedVanishing", lambda: koszul.graded_vanishing_check(fc)))
    if args.dump:
        report.data["complex"] = koszul.dump(fc)


def _filtration_from_json(bundle, obj):
    from .jsonio import decode_poly_matrix
    from .twistor.subbundle import FilteredTwistorBundle, saturate
    steps = {}
    for k, v in obj.items():
        steps[int(k)] = saturate(bundle, decode_poly_matrix(v, f"filtration[{k}]"))
    return FilteredTwistorBundle(bundle, steps)


def cmd_twistor(args, report):
    from .jsonio import decode_bundle, decode_morphism, encode_poly_matrix
    from .twistor import bundle as tb
    from .twistor.morphism import morphism_weight_filtration
    from .twistor.subbundle import is_mixed_twistor
    obj = _read_json(args.input)
    b = decode_bundle(obj)
    report.data["degree"] = b.degree
    op = args.op
    if op == "split":
        st = report.timed("splittingType", lambda: tb.splitting_type(b))
        report.data["splittingType"] = st
        report.check("degreeSum", sum(st) == b.degree)
    elif op == "h0":
        n = args.twist or 0
        report.data["h0"] = tb.h0(b, n)
        report.data["twist"] = n
    elif op == "birkhoff":
        bk = report.timed("birkhoff", lambda: tb.birkhoff(b))
        report.data["exponents"] = bk.exponents
        if args.witness:
            report.data["P"] = encode_poly_matrix(bk.p)
            report.data["Q"] = encode_poly_matrix(bk.q)
        report.check("reconstruction", bk.product() == b.gluing, "exact")
    elif op == "mixed":
        if args.morphism:
            f = morphism_weight_filtration(decode_morphism(_read_json(args.morphism)), b)
        elif "morphism" in obj:
            f = morphism_weight_filtration(decode_morphism(obj["morphism"]), b)
        elif "filtration" in obj:
            f = _filtration_from_json(b, obj["filtration"])
        else:
            raise InputError("--op mixed needs a morphism or a filtration")
        report.data["gradedTypes"] = f.graded_types()
        ok, weight = is_mixed_twistor(f)
        report.check("mixedTwistor", ok, None if ok else {"weight": weight})


def cmd_model(args):
    from . import models
    from .jsonio import decode_scalar, encode_bundle, encode_morphism
    params = models.parse_args(args.args)
    name = args.name

    def scalar(key, default=None):
        if key not in params:
            if default is None:
                raise InputError(f"model {name} needs {key}=...")
            return default
        raw = params[key]
        if raw.startswith("{"):
            try:
                return decode_scalar(json.loads(raw), key)
            except json.JSONDecodeError:
                raise InputError(f"{key}: invalid JSON scalar") from None
        return decode_scalar(raw, key)

    if name in ("mod2", "sym"):
        p = scalar("p")
        l = 1 if name == "mod2" else int(params.get("l", "2"))
        b = models.mod2_gluing(p) if name == "mod2" else models.mod_sym_gluing(l, p)
        out = encode_bundle(b)
        out["morphism"] = encode_morphism(models.model_nilpotent(l, p))
        return out
    if name == "lparams":
        lam = scalar("lambda", "0")
        if "A" in params or "B" in params:
            r = models.l_inverse(models.ResidueData(scalar("A"), scalar("B")), lam)
            return {"a": r.a, "alpha": r.alpha, "lambda": r.lam}
        r = models.l_forward(models.LParams(scalar("a"), scalar("alpha"), lam))
        return {"A": r.A, "B": r.B, "lambda": lam}
    raise InputError(f"unknown model {name!r}")


def build_parser():
    p = argparse.ArgumentParser(prog="htl", description="Exact checks for weight filtrations, "
                                "commuting nilpotent tuples, Koszul purity and bundles on the projective line.")
    p.add_argument("--human", action="store_true", help="print tables instead of JSON lines")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized checks (default: $HTL_SEED or 0)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the summary")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("wfilt", help="weight filtration of a nilpotent matrix")
    w.add_argument("--input", default="-")
    w.add_argument("--primitive", action="store_true")
    w.add_argument("--sl2", action="store_true")

    c = sub.add_parser("compat", help="compatibility conditions of a commuting tuple")
    c.add_argument("--input", default="-")
    c.add_argument("--mode", choices=["seq", "strong", "hodge", "bottom"], default="seq")
    c.add_argument("--level", type=int, default=None)

    k = sub.add_parser("purity", help="Koszul complex cohomology and purity")
    k.add_argument("--input", default="-")
    k.add_argument("--graded", action="store_true")
    k.add_argument("--reindex", choices=["cks", "kk"], default=None)
    k.add_argument("--weight", type=int, default=None)
    k.add_argument("--dump", action="store_true")

    t = sub.add_parser("twistor", help="bundles on the projective line")
    t.add_argument("--input", default="-")
    t.add_argument("--op", choices=["split", "h0", "birkhoff", "mixed"], required=True)
    t.add_argument("--twist", type=int, default=None)
    t.add_argument("--morphism", default=None)
    t.add_argument("--witness", action="store_true", help="print the Birkhoff factors")

    m = sub.add_parser("model", help="emit a model bundle or residue data as JSON")
    m.add_argument("--name", choices=["mod2", "sym", "lparams"], required=True)
    m.add_argument("--args", nargs="*", default=[], metavar="KEY=VALUE")
    return p


COMMANDS = {"wfilt": cmd_wfilt, "compat": cmd_compat, "purity": cmd_purity, "twistor": cmd_twistor}


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HTL_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"HTL_SEED must be an integer, got {env!r}") from None


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed = _seed(args)
        from .generality import cone_seed
        if args.command == "model":
            out = cmd_model(args)
            stdout.write(json.dumps(_jsonable(out), sort_keys=True) + "\n")
            return EXIT_PASS
        echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "human", "seed", "timings")}
        report = Report(args.command, echo, seed)
        with cone_seed(seed):
            COMMANDS[args.command](args, report)
    except InputError as exc:
        stderr.write(f"htl: input error: {exc}\n")
        return EXIT_INPUT
    except PreconditionError as exc:
        stderr.write(f"htl: precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    _emit(report, args.human, args.timings, stdout)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
