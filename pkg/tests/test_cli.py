import json
import os
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from bmfeet import cli

from conftest import first_params


def schema(name):
    return json.loads(resources.files("bmfeet").joinpath(f"schemas/{name}.schema.json").read_text())


def coords(p):
    k = p.key()
    return ",".join(map(str, k["alpha"])), ",".join(map(str, k["beta"]))


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tower(capsys):
    code, out, _ = run(["tower", "--q", "9"], capsys)
    assert code == 0
    jsonschema.validate(json.loads(out), schema("tower"))


@pytest.mark.parametrize("q", ["2", "6", "32"])
def test_bad_q(q, capsys, tmp_path):
    code, _, err = run(["verify", "--q", q, "--suite", "unitals", "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_BAD_Q
    assert json.loads(err)["error"] == "bad q"


def test_suite_parity_is_bad_q(capsys, tmp_path):
    code, _, _ = run(["verify", "--q", "4", "--suite", "theorem19", "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_BAD_Q


def test_bad_params(capsys):
    assert run(["unital", "--q", "4", "--alpha", "1,0,0,0", "--beta", "1,0,0,0"], capsys)[0] == cli.EXIT_BAD_PARAMS
    assert run(["unital", "--q", "3", "--alpha", "7,0", "--beta", "0,1"], capsys)[0] == cli.EXIT_BAD_PARAMS
    assert run(["unital", "--q", "3", "--alpha", "x", "--beta", "0,1"], capsys)[0] == cli.EXIT_BAD_PARAMS


def test_unital_summary(capsys):
    a, b = coords(first_params(3))
    code, out, _ = run(["unital", "--q", "3", "--alpha", a, "--beta", b], capsys)
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, schema("unital"))
    assert d["secant_profile"] == {"1": 28, "4": 63}


def test_pedal_canonical_q4(capsys):
    a, b = coords(first_params(4))
    code, out, _ = run(["pedal", "--q", "4", "--alpha", a, "--beta", b, "--base", "canonical"], capsys)
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, schema("pedal"))
    assert [p["name"] for p in d["pedals"]] == ["R"]
    assert d["pedals"][0]["is_arc"]


def test_seed_required(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "--q", "3", "--suite", "theorem19", "--params", "sample:2"])
    assert e.value.code == 2


def test_verify_writes_reports(capsys, tmp_path):
    code, out, _ = run(["verify", "--q", "3", "--suite", "theorem19", "--params", "all-valid",
                        "--out", str(tmp_path)], capsys)
    assert code == 0
    assert json.loads(out) == {"counterexamples": 0, "q": 3, "suite": "theorem19", "verdict": "pass"}
    rep = json.loads((tmp_path / "theorem19_q3.json").read_text())
    jsonschema.validate(rep, schema("report"))
    csv = (tmp_path / "theorem19_q3.csv").read_text().splitlines()
    assert len(csv) == len(rep["outcomes"]) + 1


def test_failing_suite_exit_code(capsys, tmp_path):
    code, out, _ = run(["verify", "--q", "3", "--suite", "lemma11", "--out", str(tmp_path)], capsys)
    assert code == cli.EXIT_FAIL
    assert json.loads(out)["verdict"] == "fail"


def test_env_outdir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTDIR_ENV, str(tmp_path / "env"))
    code, _, _ = run(["verify", "--q", "3", "--suite", "closedform", "--no-csv"], capsys)
    assert code == 0
    assert (tmp_path / "env" / "closedform_q3.json").exists()
    assert not (tmp_path / "env" / "closedform_q3.csv").exists()


def test_unwritable_output(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(["verify", "--q", "3", "--suite", "closedform", "--out", str(blocker / "sub")], capsys)
    assert code == cli.EXIT_IO
    assert json.loads(err)["error"] == "io"


def test_identical_configs_identical_files(capsys, tmp_path):
    argv = ["sweep", "--q", "3", "5", "--suite", "closedform", "lemma18", "--seed", "1"]
    assert run(argv + ["--out", str(tmp_path / "a")], capsys)[0] == 0
    assert run(argv + ["--out", str(tmp_path / "b"), "--jobs", "2"], capsys)[0] == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert len(names) == 8
    for n in names:
        assert (tmp_path / "a" / n).read_bytes() == (tmp_path / "b" / n).read_bytes()


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "bmfeet", "tower", "--q", "4"], capture_output=True, text=True,
                       env={**os.environ})
    assert r.returncode == 0
    assert json.loads(r.stdout)["basis"] == "delta"
