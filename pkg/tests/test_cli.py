import json
import shutil
import subprocess

import jsonschema
import pytest

from parahoric.cli import load_schema, main

GL2 = '{"family":"GL","n":2,"ring":"equichar(p=3,m=1,h=2)","f":[1/2]}'
SL2 = '{"family":"SL","n":2,"ring":"unram(p=3,m=1,h=2)"}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def valid(doc, name):
    jsonschema.validate(doc, load_schema(name))


def test_ring_iso(capsys):
    code, doc, _ = run(capsys, "ring", "ram(p=3,e=2,c=1,h=3)", "iso", "ram(p=3,e=2,c=2,h=3)")
    assert code == 0 and doc["isomorphic"] is False
    valid(doc, "ring_iso")
    code, doc, _ = run(capsys, "ring", "ram(p=3,e=2,c=1,h=2)", "iso", "ram(p=3,e=2,c=2,h=2)")
    assert doc["isomorphic"] is True and "generator_images" in doc


def test_ring_info(capsys):
    code, doc, _ = run(capsys, "ring", "equichar(p=3,m=1,h=2)", "info")
    assert code == 0 and doc["order"] == 9 and doc["uniformizer"] == "t"
    valid(doc, "ring_info")


def test_ring_table(capsys):
    code, doc, _ = run(capsys, "ring", "unram(p=3,m=1,h=2)", "table")
    assert code == 0 and doc["mul"][2][5] == 1
    code, doc, _ = run(capsys, "ring", "unram(p=3,m=1,h=5)", "table")
    assert code == 3


@pytest.mark.parametrize("argv", [["ring", "equichar(p=2,m=1,h=2)", "info"],
                                  ["ring", "nonsense", "info"],
                                  ["ring", "unram(p=3,m=1,h=2)", "iso"],
                                  ["roots", "Q7"],
                                  ["group", '{"family":"SL"}']])
def test_input_errors(capsys, argv):
    code, doc, _ = run(capsys, *argv)
    assert code == 2
    valid(doc, "error")


def test_bad_subcommand(capsys):
    assert main(["bogus"]) == 2


@pytest.mark.parametrize("argv", [["verify", "identities", "G2"],
                                  ["verify", "unicity", "B2"],
                                  ["verify", "axioms", GL2],
                                  ["verify", "rank1", SL2],
                                  ["verify", "iwahori",
                                   '{"family":"SL","n":2,"ring":"equichar(p=3,m=1,h=2)","f":"iwahori"}']])
def test_verify_passes(capsys, argv):
    code, doc, _ = run(capsys, *argv)
    assert code == 0
    valid(doc, "report")
    assert all(e["status"] != "fail" for e in doc)


def test_verify_constants(capsys):
    code, doc, _ = run(capsys, "constants", "--group", '{"family":"Sp4","ring":"unram(p=3,m=1,h=2)"}')
    assert code == 0 and doc["rescaling"] is not None
    valid(doc["report"], "report")


def test_constants_system(capsys):
    code, doc, _ = run(capsys, "constants", "B2")
    assert code == 0 and doc["constants"]["(a,b)"] == "1"


def test_roots(capsys):
    code, doc, _ = run(capsys, "roots", "A2", "--point", "1/2,1/2")
    assert code == 0 and sorted(doc["psi"]) == ["-a-b", "a+b"]


def test_group_order(capsys):
    code, doc, _ = run(capsys, "group", SL2, "order")
    assert code == 0 and doc["order"] == 648


def test_counterexample(capsys):
    code, doc, _ = run(capsys, "counterexample", "2")
    assert code == 0
    assert doc["closed"] is True and doc["axioms"] == "pass" and doc["induced_ring_iso"] is False
    valid(doc, "counterexample")
    valid(doc["report"], "report")


def test_counterexample_too_large(capsys):
    code, doc, _ = run(capsys, "counterexample", "3")
    assert code == 3
    valid(doc, "error")


def test_deterministic(capsys):
    outs = {run(capsys, "--seed", "7", "verify", "axioms", GL2)[2] for _ in range(2)}
    assert len(outs) == 1


def test_pretty(capsys):
    main(["--pretty", "ring", "equichar(p=3,m=1,h=2)", "info"])
    assert "\n  " in capsys.readouterr().out


def test_console_script():
    exe = shutil.which("parahoric")
    if exe is None:
        pytest.skip("console script not installed")
    out = subprocess.run([exe, "ring", "equichar(p=3,m=1,h=2)", "info"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["order"] == 9
