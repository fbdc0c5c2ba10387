"""End-to-end command runs: frozen report values on the bundled arrow
workspace, the exit-code contract, and byte determinism."""

import json
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "commacat.cli"]


def run_cli(*args, check_code=None):
    proc = subprocess.run(CMD + list(args), capture_output=True, text=True)
    if check_code is not None:
        assert proc.returncode == check_code, proc.stderr + proc.stdout
    return proc


def run_report(*args, check_code=0):
    proc = run_cli(*args, check_code=check_code)
    return json.loads(proc.stdout)


def test_validate_bundled_arrow():
    doc = run_report("validate")
    assert doc["schema"] == "commacat-report/1"
    assert doc["exit_code"] == 0
    assert doc["spec_digest"].startswith("sha256:")
    functors = doc["results"]["functors"]
    assert {"left_embed", "right_embed"} <= set(functors)
    for report in functors.values():
        assert report["flag_mismatches"] == []


def test_kernel_frozen_values():
    doc = run_report("kernel", "arrow", "into_diagonal")
    res = doc["results"]
    assert res["carrier"]["a"] == {"dim": 1}
    assert res["carrier"]["b"] == {"dim": 0}
    assert res["class"] == [1, 0]
    assert res["universal_property_violations"] == []


def test_cokernel_frozen_values():
    doc = run_report("cokernel", "arrow", "through_sections")
    assert doc["results"]["class"] == [0, 1]


def test_image_factors_through():
    doc = run_report("image", "arrow", "into_diagonal")
    assert doc["exit_code"] == 0


def test_subobjects_count():
    doc = run_report("subobjects", "arrow", "identity_map")
    assert doc["results"]["count"] == 3
    doc = run_report("subobjects", "arrow", "zero_map")
    assert doc["results"]["count"] == 4


def test_kclass_decomposes():
    doc = run_report("kclass", "plane_collapse")
    res = doc["results"]
    assert res["class"] == [2, 1]
    assert res["decomposition"]["left_class"] == [2]
    assert res["decomposition"]["right_class"] == [1]
    assert res["decomposition"]["witness_violations"] == []


def test_hn_frozen_filtration():
    doc = run_report("hn", "Z", "zero_map")
    res = doc["results"]
    assert res["steps"] == [[0, 0], [1, 0], [1, 1]]
    assert res["factor_slopes"] == ["inf", "0"]
    assert res["factors_semistable"] == [True, True]


def test_jh_policy_independent():
    doc = run_report("jh", "identity_map")
    res = doc["results"]
    assert sorted(res["factor_classes"]) == [[0, 1], [1, 0]]
    assert res["policy_independent"] is True


def test_scan_alpha_frozen_wall():
    doc = run_report("scan-alpha", "system", "toy_curve", "1/2:4",
                     "--spec", bundled("coherent_systems"))
    res = doc["results"]
    assert res["walls"] == ["2"]
    assert res["grid_oracle_agrees"] is True
    assert res["candidates"] == ["2/3", "1", "4/3", "2"]


def test_counterexample_command():
    doc = run_report("counterexample")
    assert doc["results"]["right_exactness_witnessed"] is True
    assert doc["exit_code"] == 0


def test_reports_carry_no_float_tokens():
    for args in (("hn", "Z", "zero_map"),
                 ("scan-alpha", "system", "toy_curve", "1/2:4",
                  "--spec", bundled("coherent_systems"))):
        proc = run_cli(*args, check_code=0)
        doc = json.loads(proc.stdout)

        def sweep(node):
            assert not isinstance(node, float)
            if isinstance(node, dict):
                for v in node.values():
                    sweep(v)
            elif isinstance(node, list):
                for v in node:
                    sweep(v)

        sweep(doc)


def test_determinism_byte_identical(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run_cli("hn", "Z", "plane_collapse", "--seed", "3", "--out", str(out1),
            check_code=0)
    run_cli("hn", "Z", "plane_collapse", "--seed", "3", "--out", str(out2),
            check_code=0)
    assert out1.read_bytes() == out2.read_bytes()


def test_wall_clock_stays_off_the_report(tmp_path):
    out = tmp_path / "r.json"
    proc = run_cli("validate", "--out", str(out), check_code=0)
    doc = json.loads(out.read_text())
    assert doc["timing"]["unit"] == "logical-checks"
    assert "wall-clock" in proc.stderr


def test_exit_3_on_missing_spec():
    run_cli("validate", "--spec", "/nonexistent.json", check_code=3)


def test_exit_3_on_usage_error():
    proc = run_cli("no-such-command")
    assert proc.returncode == 3


def test_exit_3_on_unknown_name():
    run_cli("hn", "Z", "no_such_object", check_code=3)


def test_exit_2_on_exhausted_budget():
    run_cli("validate", "--budget", "0", check_code=2)


def test_exit_1_on_false_declaration(tmp_path):
    """A workspace that overstates a functor's exactness must fail
    validation, carrying the witnessed violation in the report."""
    spec = {
        "schema": "commacat-workspace/1",
        "field_modulus": 2,
        "categories": {
            "vect": {"kind": "finvect"},
            "mods": {"kind": "quiver", "vertices": 2, "arrows": [[0, 1]]},
        },
        "functors": {
            "crush": {"kind": "arrow_cokernel", "category": "mods",
                      "target": "vect", "arrow": 0,
                      "declare": {"left_exact": True}},
            "carrier": {"kind": "identity", "category": "vect"},
        },
    }
    path = tmp_path / "faulty.json"
    path.write_text(json.dumps(spec))
    proc = run_cli("validate", "--spec", str(path))
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    assert doc["results"]["functors"]["crush"]["flag_mismatches"]


def bundled(name):
    from commacat.cli import bundled_workspace_path
    return bundled_workspace_path(name)
