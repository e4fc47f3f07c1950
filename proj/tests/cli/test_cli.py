import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

ROOT = Path(__file__).resolve().parents[2]
DATA = Path(os.environ.get("AQS_DATA_DIR", ROOT / "data"))
SCHEMA = json.loads((Path(os.environ.get("AQS_SCHEMA_DIR", ROOT / "schemas")) / "report.schema.json").read_text())
AQS = os.environ.get("AQS_BIN", "aqs")


def aqs(*args):
    return subprocess.run([AQS, *args], capture_output=True, text=True)


def report(*args):
    p = aqs("--json", *args)
    doc = json.loads(p.stdout)
    jsonschema.validate(doc, SCHEMA)
    assert doc["exit_code"] == p.returncode
    return p.returncode, doc


STRUCTURES = ["h5_1.json", "h5_1_float.json", "h5_qs_3_1.json", "h9_1_1.json", "h9_1_2.json", "h13_1_2_3.json"]


@pytest.mark.parametrize("name", STRUCTURES)
def test_classify_reports_validate(name):
    rc, doc = report("classify", str(DATA / name))
    assert rc == 0
    assert doc["result"]["normal_form"]["verified"] is True


ALGEBRA_FILES = sorted(p.name for p in DATA.glob("*.json") if "brackets" in json.loads(p.read_text()))


@pytest.mark.parametrize("name", ALGEBRA_FILES)
def test_check_reports_validate(name):
    rc, doc = report("check", str(DATA / name))
    if name == "jacobi_violator.json":
        assert (rc, doc["error"]["code"]) == (2, "JacobiViolation")
    else:
        assert rc == 0


@pytest.mark.parametrize("args,code,name", [
    (["classify", "su2_r2.json"], 3, "NotNilpotent"),
    (["classify", "h5_0.json"], 3, "NotMaximalRank"),
    (["cohomology", "jacobi_violator.json"], 2, "JacobiViolation"),
    (["curvature", "missing.json"], 2, "FileNotFound"),
])
def test_error_reports(args, code, name):
    rc, doc = report(args[0], str(DATA / args[1]))
    assert rc == code
    assert doc["status"] == "error"
    assert doc["error"]["code"] == name


def test_usage_error_exits_one():
    assert aqs("check").returncode == 1
    assert aqs("no-such-command").returncode == 1


def test_construct_classify_round_trip(tmp_path):
    out = tmp_path / "h.json"
    assert aqs("construct", "heisenberg", "--dim-family", "4n1", "--weights", "3,1/2", "-o", str(out)).returncode == 0
    rc, doc = report("classify", str(out))
    assert rc == 0
    assert doc["result"]["normal_form"]["weights"] == ["3", "1/2"]


def test_construct_is_byte_stable(tmp_path):
    a = aqs("construct", "heisenberg", "--dim-family", "2n1", "--weights", "1,2", "--signs", "+,-").stdout
    b = aqs("construct", "heisenberg", "--dim-family", "2n1", "--weights", "1,2", "--signs", "+,-").stdout
    assert a == b and a
    f = tmp_path / "h.json"
    f.write_text(a)
    assert aqs("check", str(f)).returncode == 0


@pytest.mark.parametrize("cocycle,tag", [
    ("cocycle_anti.json", "AntiQuasiSasakian"),
    ("cocycle_zero.json", "Cokahler"),
    ("cocycle_2kahler.json", "Sasakian"),
])
def test_extend_then_classify_tags(tmp_path, cocycle, tag):
    out = tmp_path / "ext.json"
    rc, doc = report("extend", "--kahler", str(DATA / "kahler_r4.json"), "--cocycle", str(DATA / cocycle),
                     "-o", str(out))
    assert rc == 0
    assert tag in doc["result"]["tags"]
    assert report("check", str(out))[0] == 0


def test_seeded_conjugations_are_deterministic():
    args = ["--seed", "7", "classify", str(DATA / "h9_1_2.json"), "--conjugations", "3"]
    a, b = report(*args)[1], report(*args)[1]
    assert a == b
    assert a["result"]["conjugations"]["recovered"] == 3


def test_timing_adds_wall_ms_only_on_request():
    assert "wall_ms" not in report("cohomology", str(DATA / "h3.json"))[1]
    assert report("--timing", "cohomology", str(DATA / "h3.json"))[1]["wall_ms"] >= 0


def test_batch_writes_one_valid_report_per_file(tmp_path):
    src = tmp_path / "in"
    src.mkdir()
    for name in ["h3.json", "h5_1.json", "jacobi_violator.json"]:
        (src / name).write_text((DATA / name).read_text())
    out = tmp_path / "out"
    aqs("--json", "--batch", str(src), "--out-dir", str(out), "cohomology")
    reports = sorted(out.glob("*.json"))
    assert len(reports) == 3
    for r in reports:
        jsonschema.validate(json.loads(r.read_text()), SCHEMA)


def test_input_digest_matches_file_bytes():
    raw = (DATA / "h3.json").read_bytes()
    h = 0xcbf29ce484222325
    for byte in raw:
        h = ((h ^ byte) * 0x100000001b3) & 0xFFFFFFFFFFFFFFFF
    assert report("check", str(DATA / "h3.json"))[1]["input_digest"] == f"{h:016x}"
