import json
import subprocess
import sys

import pytest

from mldrs import formats
from mldrs.cli import main
from mldrs.reduction import MldRsInstance, ThreeDmInstance
from mldrs.rs_code import encode

from reference import brute_matching

YES = [[1, 1, 1], [1, 1, 2], [1, 2, 1], [2, 1, 2], [2, 2, 2]]
NO = [[1, 1, 1], [1, 1, 2], [1, 2, 1], [1, 2, 2]]


def write_3dm(path, t, triples):
    path.write_text(json.dumps({"type": "3dm", "t": t, "triples": triples}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_single_and_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "gen", "--t", "2", "--count", "1", "--seed", "0", "--out", str(a))[0] == 0
    assert run(capsys, "gen", "--t", "2", "--count", "1", "--seed", "0", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    inst = formats.load_path(a)
    assert isinstance(inst, ThreeDmInstance) and len(inst.triples) > 3


def test_gen_dense_and_many(tmp_path, capsys):
    out = tmp_path / "many"
    assert run(capsys, "gen", "--t", "2", "--count", "5", "--density", "0.99", "--seed", "4", "--out", str(out))[0] == 0
    files = sorted(out.iterdir())
    assert len(files) == 5
    sizes = [len(formats.load_path(f).triples) for f in files]
    assert all(s >= 6 for s in sizes)
    assert formats.dumps_3dm(formats.load_path(files[0])) == files[0].read_text()


@pytest.mark.parametrize(
    "argv",
    [
        ["--t", "1"],  # no std-compatible instance exists
        ["--t", "2", "--density", "1.0"],
        ["--t", "0", "--mode", "prep"],
    ],
)
def test_gen_usage_errors(tmp_path, capsys, argv):
    code, _, err = run(capsys, "gen", *argv, "--out", str(tmp_path / "x.json"))
    assert code == 2 and err.startswith("error:")


def test_gen_unwritable(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--t", "2", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and "cannot write" in err


def test_reduce_std_and_prep(tmp_path, capsys):
    src = write_3dm(tmp_path / "in.json", 2, [[1, 1, 1], [2, 2, 2], [1, 2, 1], [2, 1, 2], [1, 1, 2]])
    out = tmp_path / "out.json"
    assert run(capsys, "reduce", "--in", src, "--mode", "std", "--out", str(out))[0] == 0
    doc = json.loads(out.read_text())
    assert (doc["m"], doc["k"], doc["w"], len(doc["target"])) == (6, 2, 2, 5)
    assert "trace" not in doc
    assert run(capsys, "reduce", "--in", src, "--mode", "prep", "--out", str(out), "--emit-trace")[0] == 0
    doc = json.loads(out.read_text())
    assert (doc["m"], doc["k"], doc["w"], len(doc["evaluation_set"])) == (30, 21, 10, 32)
    assert doc["trace"]["mode"] == "prep"


def test_reduce_too_small(tmp_path, capsys):
    src = write_3dm(tmp_path / "in.json", 2, [[1, 1, 1], [2, 2, 2], [1, 2, 1]])
    code, _, err = run(capsys, "reduce", "--in", src, "--out", str(tmp_path / "o.json"))
    assert code == 2 and "|T| > t + 1" in err


def test_solve(tmp_path, capsys):
    assert run(capsys, "solve", "--in", write_3dm(tmp_path / "a.json", 1, [[1, 1, 1]]))[:2] == (0, "YES\n1 1 1\n")
    assert run(capsys, "solve", "--in", write_3dm(tmp_path / "b.json", 2, [[1, 1, 1], [1, 2, 2]]))[:2] == (0, "NO\n")
    triples = [[1, 1, 1], [1, 2, 2], [2, 1, 2], [2, 2, 1], [3, 3, 3], [1, 3, 3], [3, 1, 1], [2, 3, 2], [3, 2, 3]]
    code, out, _ = run(capsys, "solve", "--in", write_3dm(tmp_path / "c.json", 3, triples))
    lines = out.splitlines()
    got = tuple(tuple(int(c) for c in line.split()) for line in lines[1:])
    assert lines[0] == "YES" and got == brute_matching(3, [tuple(t) for t in triples])


def test_solve_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "solve", "--in", str(bad))[0] == 2


def _reduced_file(tmp_path, capsys, triples, name):
    src = write_3dm(tmp_path / f"{name}.3dm.json", 2, triples)
    out = tmp_path / f"{name}.json"
    assert run(capsys, "reduce", "--in", src, "--out", str(out))[0] == 0
    return src, str(out)


def test_decode_yes_no_and_codeword(tmp_path, capsys):
    _, yes = _reduced_file(tmp_path, capsys, YES, "yes")
    code, out, _ = run(capsys, "decode", "--in", yes, "--json")
    res = json.loads(out)
    assert code == 0 and res["found"] and res["distance"] == 2 and not res["deep_hole"]

    _, no = _reduced_file(tmp_path, capsys, NO, "no")
    code, out, _ = run(capsys, "decode", "--in", no)
    assert code == 0
    assert out.splitlines()[0].startswith("found: no (radius 2")
    assert "distance to code: 3; deep hole: yes" in out

    inst, _ = formats.load_path(no)
    c = encode(inst.code, [7])
    cw = tmp_path / "cw.json"
    cw.write_text(formats.dumps_mldrs(MldRsInstance(inst.code, inst.w, tuple(c))))
    code, out, _ = run(capsys, "decode", "--in", str(cw), "--json")
    assert json.loads(out)["distance"] == 0


def test_decode_method_bounds(tmp_path, capsys):
    _, yes = _reduced_file(tmp_path, capsys, YES, "yes")
    assert run(capsys, "decode", "--in", yes, "--radius", "4")[0] == 2
    # q^k = 64^2 is within the enumeration budget.
    code, out, _ = run(capsys, "decode", "--in", yes, "--method", "enumerate", "--json")
    assert code == 0 and json.loads(out)["distance"] == 2
    assert run(capsys, "decode", "--in", write_3dm(tmp_path / "x.json", 2, YES))[0] == 2


def test_verify_std_prep_and_corrupt(tmp_path, capsys):
    src, reduced = _reduced_file(tmp_path, capsys, YES, "yes")
    code, out, _ = run(capsys, "verify", "--in", src, "--mode", "std")
    assert code == 0
    lines = out.splitlines()
    assert all(": PASS — " in line for line in lines[:-1]) and lines[-1] == "OVERALL: PASS"
    assert run(capsys, "verify", "--in", src, "--mode", "prep")[0] == 0
    code, out, _ = run(capsys, "verify", "--in", src, "--instance", reduced, "--json")
    assert code == 0 and json.loads(out)["overall"] == "PASS"

    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "3dm", "t": 2, "triples": [[1,1,9]]}')
    code, _, err = run(capsys, "verify", "--in", str(bad))
    assert code == 2 and "not in" in err
    small = write_3dm(tmp_path / "small.json", 2, YES[:3])
    assert run(capsys, "verify", "--in", small, "--mode", "std")[0] == 2


def test_verify_detects_mutation(tmp_path, capsys):
    src, reduced = _reduced_file(tmp_path, capsys, YES, "yes")
    doc = json.loads(open(reduced).read())
    doc["target"][0] = hex(int(doc["target"][0], 16) ^ 0x10)
    open(reduced, "w").write(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--in", src, "--instance", reduced)
    assert code == 1
    assert "CHECK syndrome-identity: FAIL" in out


@pytest.mark.parametrize(
    "m, lines",
    [
        (2, ["m: 2", "modulus: 0x7", "alpha order: 3", "factors of 2^m - 1: [3]"]),
        (3, ["m: 3", "modulus: 0xb", "alpha order: 7", "factors of 2^m - 1: [7]"]),
    ],
)
def test_field_info(capsys, m, lines):
    code, out, _ = run(capsys, "field-info", "--m", str(m))
    assert code == 0 and out.splitlines() == lines


def test_field_info_m30(capsys):
    code, out, _ = run(capsys, "field-info", "--m", "30")
    lines = out.splitlines()
    assert lines[2] == f"alpha order: {2**30 - 1}"
    factors = [int(p) for p in lines[3].split("[")[1].rstrip("]").split(", ")]
    product = 1
    for p in factors:
        product *= p
    assert product == 2**30 - 1


@pytest.mark.parametrize("m", ["0", "129"])
def test_field_info_range(capsys, m):
    assert run(capsys, "field-info", "--m", m)[0] == 2


def test_argparse_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["reduce"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mldrs", "field-info", "--m", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and "modulus: 0x13" in proc.stdout
