import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from signrep.cli import ExperimentConfig, config_argv, parse_config, run
from signrep.records import FunctionSpec, check_record


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_degthr_maj3(tmp_path):
    code, out, _ = call("degthr", "--family", "MAJ", "--n", "3")
    assert code == 0 and out == "1\n"
    target = tmp_path / "maj3.txt"
    code, _, err = call("degthr", "--family", "MAJ", "--n", "3", "--out", str(target))
    assert code == 0 and target.read_text() == "1\n"
    primal = tmp_path / "maj3.primal.json"
    assert check_record(json.loads(primal.read_text()))
    assert str(primal) in err


@pytest.mark.parametrize("argv", [
    ["degthr", "--family", "PARITY", "--n", "2", "--format", "json"],
    ["witness", "--family", "MAJ", "--n", "3", "--emit", "approx", "--d", "1"],
    ["witness", "--family", "PARITY", "--n", "3"],
    ["rbracket", "--family", "OR", "--n", "2", "--d", "1", "--format", "json"],
    ["compose-witness", "--outer-family", "PARITY", "--outer-n", "2",
     "--inner-family", "PARITY", "--inner-n", "2", "--format", "json"],
    ["density", "--family", "AND", "--n", "2", "--format", "json"],
    ["hs-cert", "--n", "1", "--format", "json"],
])
def test_certificate_round_trip(tmp_path, argv):
    path = tmp_path / "cert.json"
    code, _, _ = call(*argv, "--out", str(path))
    assert code == 0
    code, out, _ = call("witness", "--check", str(path))
    assert code == 0 and out.startswith("OK ")


def test_tampered_certificate_fails(tmp_path):
    path = tmp_path / "w.json"
    assert call("witness", "--family", "PARITY", "--n", "2", "--out", str(path))[0] == 0
    rec = json.loads(path.read_text())
    rec["weights"][0][1] = "5"
    path.write_text(json.dumps(rec))
    code, out, _ = call("witness", "--check", str(path))
    assert code == 1 and out.startswith("FAILED")


def test_exit_codes(tmp_path):
    assert call("density", "--family", "MAJ", "--n", "5")[0] == 3
    assert call("bogus")[0] == 2
    assert call("degthr", "--family", "NOPE", "--n", "2")[0] == 2
    assert call("rbracket", "--family", "OR", "--n", "2")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "nothing"}')
    assert call("witness", "--check", str(bad))[0] == 2


def test_maj_table_and_adeg():
    code, out, _ = call("maj-table", "--n", "4", "--d", "1-2")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 3
    code, out, _ = call("adeg", "--family", "OR", "--n", "2", "--eps", "1/3")
    assert code == 0 and out == "2\n"
    assert call("adeg", "--family", "OR", "--n", "2", "--eps", "1/2")[1] == "1\n"
    code, out, _ = call("adeg", "--family", "PARITY", "--n", "2")
    assert out == "d,error\n0,1/1\n1,1/1\n2,0/1\n"


def test_brs_and_density_kp():
    code, out, _ = call("brs", "--family", "MAJ", "--n", "3")
    assert code == 0 and out.startswith("degree ")
    assert call("density", "--family", "PARITY", "--n", "2", "--kp-lower")[1] == "4\n"


def test_deterministic_output():
    argv = ["rbracket", "--family", "MAJ", "--n", "3", "--d", "1,2", "--format", "json"]
    assert call(*argv)[1] == call(*argv)[1]


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "signrep", "degthr", "--family", "PARITY", "--n", "3"],
                       capture_output=True, text=True, check=True)
    assert p.stdout == "3\n"


rationals = st.fractions(min_value=Fraction(1, 1000), max_value=1, max_denominator=1000)
families = st.sampled_from(["MAJ", "OR", "AND", "PARITY"])
specs = st.builds(lambda fam, n, dom: FunctionSpec(fam, (n,), dom), families,
                  st.integers(1, 6), st.sampled_from([None, "cube", "bits"]))


@st.composite
def configs(draw):
    cmd = draw(st.sampled_from(["degthr", "adeg", "rbracket", "density", "brs",
                                "compose-witness", "witness", "maj-table", "suite"]))
    fns, extra = (), {}
    if cmd == "compose-witness":
        fns = (draw(specs), draw(specs))
    elif cmd != "maj-table" and cmd != "suite":
        fns = (draw(specs),)
    if cmd == "brs":
        extra["copies"] = draw(st.integers(1, 4))
    if cmd == "density":
        extra["kp-lower"] = draw(st.booleans())
    if cmd == "witness":
        extra["check"] = None
        extra["emit"] = draw(st.sampled_from(["gordan", "approx"]))
    if cmd == "maj-table":
        extra["n"] = ",".join(map(str, draw(st.lists(st.integers(1, 20), min_size=1, max_size=3))))
    if cmd == "suite":
        extra["name"] = "acceptance"
        extra["only"] = draw(st.sampled_from([None, "1", "3,4"]))
    grid = tuple(draw(st.lists(st.integers(0, 9), max_size=3)))
    eps = draw(st.none() | rationals)
    return ExperimentConfig(cmd, fns, grid, draw(rationals), eps,
                            draw(st.none() | st.just("out.txt")),
                            draw(st.sampled_from(["text", "json", "csv"])), extra)


@given(configs())
def test_config_round_trip(cfg):
    assert parse_config(config_argv(cfg)) == cfg
