import json
import subprocess
import sys

import pytest

from tropscheme.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tropicalize(capsys):
    code, out, _ = run(capsys, "tropicalize", "--gens", "T1 + T2 + 1")
    assert code == 0
    data = json.loads(out)
    assert len(data["relations"]) == 4 and data["coeff_domain"] == "trop"


def test_tropicalize_padic_and_dedupe(capsys):
    _, out, _ = run(capsys, "tropicalize", "--gens", "T1 + T2 + 3", "--valuation", "padic:3")
    assert '"1/3"' in out
    _, out, _ = run(capsys, "tropicalize", "--gens", "T1 + T2 + 1; T1 + T2 + 1", "--gens", "T1 - T2")
    assert len(json.loads(out)["relations"]) == 7


def test_sample_line(capsys):
    code, out, err = run(capsys, "sample", "--gens", "T1+T2+1", "--box", "0:4", "--step", "1/4")
    data = json.loads(out)
    assert code == 0 and data["count"] == 21 and len(data["points"]) == 21
    assert ["1/1", "1/1"] in data["points"] and ["4/1", "4/1"] in data["points"]
    _, csv, _ = run(capsys, "sample", "--gens", "T1+T2+1", "--format", "csv")
    assert csv.count(",1\n") == 21 and csv.count("\n") == 290
    _, plot, _ = run(capsys, "sample", "--gens", "T1+T2+1", "--format", "plot", "--precision", "2")
    assert plot.splitlines()[0] == "0.00 1.00"


def test_bend(capsys):
    code, out, err = run(capsys, "bend", "--gens", "T1 + T2 + 1")
    data = json.loads(out)
    (cls,) = data["classes"]
    assert code == 0 and len(cls["members"]) == 4 and len(cls["pairs"]) == 6
    assert len(data["bend_relations"]) == 3


def test_analytify(capsys):
    code, out, _ = run(capsys, "analytify-a1", "--r", "1/3")
    rows = json.loads(out)["classification"]
    nontrivial = {r["descriptor"] for r in rows if not r["trivial"] and r["formula"].startswith("r^")}
    assert nontrivial == {"w[T1, 1/3]", "w[T1 + 1, 1/3]", "w[inf, 1/3]"}


@pytest.mark.parametrize("argv", [
    ["tropicalize", "--gens", "T1 + + 1"],
    ["tropicalize", "--gens", "T1", "--valuation", "padic:4"],
    ["tropicalize"],
    ["sample", "--gens", "T1", "--step", "0"],
    ["sample", "--gens", "T1", "--box", "0:1,0:1,0:1"],
    ["analytify-a1", "--r", "2"],
])
def test_errors_exit_nonzero(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_out_file(tmp_path, capsys):
    path = tmp_path / "pres.json"
    assert main(["tropicalize", "--gens", "T1+1", "--vars", "1", "--out", str(path)]) == 0
    assert json.loads(path.read_text())["sig"]["num_vars"] == 1


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "--suites", "1,5")
    data = json.loads(out)
    assert code == 0 and [s["name"] for s in data["suites"]] == ["tropical-line", "berkovich-contraction"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tropscheme", "verify", "--suites", "5"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["passed"]
