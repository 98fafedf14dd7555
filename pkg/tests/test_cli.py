import io
import json
import sys

import pytest

from htl.cli import main
from htl.jsonio import encode_matrix, encode_tuple
from htl.koszul import sl2_tensor_fixture
from htl.exact import Matrix

FIXTURES = json.loads(open(__file__.replace("test_cli.py", "fixtures/hierarchy.json")).read())


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out, err)
    lines = [json.loads(x) for x in out.getvalue().splitlines()] if out.getvalue() and "--human" not in argv \
        else out.getvalue()
    return code, lines, err.getvalue()


def checks(lines):
    return {x["check"]: x for x in lines if "check" in x}


def data(lines):
    return next(x["data"] for x in lines if "data" in x)


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return write


def test_wfilt_zero_and_block(files):
    code, lines, _ = run(["wfilt", "--input", files("z.json", encode_matrix(Matrix.zeros(3, 3)))])
    assert code == 0 and data(lines)["weights"] == {"0": 3}
    j2 = encode_matrix(Matrix.rational([[0, 1], [0, 0]]))
    code, lines, _ = run(["wfilt", "--input", files("j.json", j2), "--primitive", "--sl2"])
    assert code == 0 and data(lines)["weights"] == {"-1": 1, "1": 1}
    assert all(c["pass"] for c in checks(lines).values())
    assert lines[-1] == {"summary": "pass"}


def test_wfilt_exit_codes(files, monkeypatch):
    code, _, err = run(["wfilt"], stdin=json.dumps(encode_matrix(Matrix.rational([[1, 0], [0, 0]]))),
                       monkeypatch=monkeypatch)
    assert code == 3 and "nilpotent" in err
    code, _, err = run(["wfilt"], stdin="{oops", monkeypatch=monkeypatch)
    assert code == 2 and "input error" in err
    code, _, _ = run(["wfilt", "--input", "/nonexistent/file.json"])
    assert code == 2


def test_compat_modes_on_tensor_pair(files):
    maps, _ = sl2_tensor_fixture(2, 2)
    path = files("t.json", encode_tuple(maps))
    for mode in ("seq", "strong", "hodge", "bottom"):
        code, lines, _ = run(["compat", "--input", path, "--mode", mode])
        assert code == 0, mode
    code, lines, _ = run(["compat", "--input", path, "--mode", "seq", "--level", "-1"])
    assert code == 0 and "sequentialLevel-1" in checks(lines)


def test_compat_single_map_passes_everything(files):
    path = files("one.json", encode_tuple([Matrix.rational([[0, 1], [0, 0]])]))
    for mode in ("seq", "strong", "hodge", "bottom"):
        assert run(["compat", "--input", path, "--mode", mode])[0] == 0


def test_compat_failing_fixture_reports_witness(files):
    path = files("bad.json", FIXTURES["failing_pair"]["tuple"])
    code, lines, _ = run(["compat", "--input", path])
    assert code == 1
    c = checks(lines)["sequential"]
    assert not c["pass"] and c["witness"]["h"] == FIXTURES["failing_pair"]["witness_h"]
    assert lines[-1] == {"summary": "fail"}


def test_purity_reports(files):
    maps, _ = sl2_tensor_fixture(2, 2)
    path = files("t.json", encode_tuple(maps))
    code, base, _ = run(["purity", "--input", path, "--graded"])
    assert code == 0
    c = checks(base)
    assert c["purity"]["pass"] and c["H2Vanishes"]["pass"] and c["gradedVanishing"]["pass"]
    code, kk, _ = run(["purity", "--input", path, "--reindex", "kk", "--weight", "0"])
    assert code == 0 and checks(kk)["purity"] == c["purity"]
    code, dumped, _ = run(["purity", "--input", path, "--dump"])
    assert data(dumped)["complex"]["dims"] == [4, 4, 1]


def test_purity_failure_exit_code(files):
    path = files("imp.json", FIXTURES["impure_koszul"]["tuple"])
    code, lines, _ = run(["purity", "--input", path])
    assert code == 1 and not checks(lines)["purity"]["pass"]


def test_model_piped_to_twistor(monkeypatch):
    code, lines, _ = run(["model", "--name", "mod2", "--args", "p=0"])
    assert code == 0
    model = json.dumps(lines[0])
    code, rep, _ = run(["twistor", "--op", "split"], stdin=model, monkeypatch=monkeypatch)
    assert code == 0 and data(rep)["splittingType"] == [1, -1]
    code, lines, _ = run(["model", "--name", "mod2", "--args", "p=3"])
    code, rep, _ = run(["twistor", "--op", "split"], stdin=json.dumps(lines[0]), monkeypatch=monkeypatch)
    assert data(rep)["splittingType"] == [0, 0]
    code, rep, _ = run(["twistor", "--op", "birkhoff"], stdin=json.dumps(lines[0]), monkeypatch=monkeypatch)
    assert checks(rep)["reconstruction"] == {"check": "reconstruction", "pass": True, "witness": "exact"}
    code, rep, _ = run(["twistor", "--op", "mixed"], stdin=json.dumps(lines[0]), monkeypatch=monkeypatch)
    assert code == 0 and data(rep)["gradedTypes"] == {"-1": [-1], "1": [1]}


def test_h0_on_trivial_bundle(monkeypatch):
    triv = {"gluing": {"rows": 3, "cols": 3,
                       "entries": [[{"0": "1"} if i == j else {} for j in range(3)] for i in range(3)]}}
    code, rep, _ = run(["twistor", "--op", "h0", "--twist", "0"], stdin=json.dumps(triv), monkeypatch=monkeypatch)
    assert code == 0 and data(rep)["h0"] == 3


def test_lparams_model():
    code, lines, _ = run(["model", "--name", "lparams", "--args", "a=2", "alpha=1", "lambda=1"])
    assert lines[0] == {"A": "0", "B": "2", "lambda": "1"}
    code, lines, _ = run(["model", "--name", "lparams", "--args", "A=0", "B=2", "lambda=1"])
    assert lines[0] == {"a": "2", "alpha": "1", "lambda": "1"}
    code, _, err = run(["model", "--name", "lparams", "--args", "a=2"])
    assert code == 2 and "alpha" in err


def test_reports_are_deterministic_per_seed(files, monkeypatch):
    path = files("bad.json", FIXTURES["strong_not_hodge"]["tuple"])
    first = run(["--seed", "7", "compat", "--input", path, "--mode", "hodge"])
    second = run(["--seed", "7", "compat", "--input", path, "--mode", "hodge"])
    assert first == second
    monkeypatch.setenv("HTL_SEED", "7")
    third = run(["compat", "--input", path, "--mode", "hodge"])
    assert third[1][0]["seed"] == 7 and third[1][1:] == first[1][1:]


def test_human_output(files):
    maps, _ = sl2_tensor_fixture(2, 2)
    code, text, _ = run(["--human", "purity", "--input", files("t.json", encode_tuple(maps))])
    assert code == 0 and "PASS  purity" in text and "termDims: [4, 4, 1]" in text
