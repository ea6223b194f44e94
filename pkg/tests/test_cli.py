"""Command-line interface: subcommand outputs, exit codes, canonical JSON,
and seeded reproducibility."""

import io
import json

from tilinglinks.cli import main


def run_cli(*argv):
    import contextlib
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def test_gram_text():
    code, out = run_cli("gram", "6", "4")
    assert code == 0
    assert "rank 4, signature (3,1)" in out
    assert "angle pi/6" in out and "ultraparallel" in out


def test_gram_json_reference_values_64():
    code, out = run_cli("gram", "6", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    approx = doc["gram_approx"]
    assert abs(approx[0][1] + 3**0.5) < 1e-12
    assert abs(approx[3][5] + 2 * 3**0.5) < 1e-12
    assert abs(approx[4][5] + 2 * 2**0.5) < 1e-12
    assert doc["gram"][0][0]["base"][0] == [2, 1]


def test_gram_domain_error_exit_2():
    code, _ = run_cli("gram", "4", "4")
    assert code == 2


def test_param_guard():
    code, _ = run_cli("gram", "51", "3")
    assert code == 2


def test_arithmetic_json():
    code, out = run_cli("arithmetic", "6", "6", "--format", "json")
    doc = json.loads(out)
    assert doc["arithmetic"] is True
    six = [c for c in doc["cycles"] if len(c["faces"]) == 6][0]
    assert six["rational"] == "72/1"


def test_arithmetic_spherical_53():
    code, out = run_cli("arithmetic", "5", "3", "--spherical", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["arithmetic"] is False
    assert doc["failing_item"]["faces"] == [1, 2]


def test_tracefield():
    code, out = run_cli("tracefield", "6", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["field"] == "Q(i*sqrt(6))"
    assert doc["det"]["approx"] == -3456.0


def test_classify_genus():
    code, out = run_cli("classify", "6", "6", "--genus", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["vertex_count"] == 6
    assert doc["arithmetic"] is True


def test_commensurable_clause():
    code, out = run_cli("commensurable", "3", "3", "6", "6", "--format", "json")
    doc = json.loads(out)
    assert doc["commensurable"] is True
    assert "Q(i)" in doc["reason"]


def test_sweep_json():
    code, out = run_cli("sweep", "--m-max", "8", "--n-max", "8",
                        "--format", "json")
    rows = json.loads(out)
    arithmetic = {(r["m"], r["n"]) for r in rows if r["arithmetic"]}
    assert arithmetic == {(6, 4), (4, 6), (6, 6)}


def test_report_bound_12():
    code, out = run_cli("report", "--bound", "12", "--format", "json")
    doc = json.loads(out)
    assert doc["sweep_arithmetic"] == [[4, 6], [6, 4], [6, 6]]
    arithmetic = [tuple(t) for t in doc["arithmetic_types"]]
    assert arithmetic == [(3, 3), (4, 3), (4, 4), (6, 3), (6, 4), (6, 6)]
    assert doc["trace_fields"]["(6,4)"] == "Q(i*sqrt(6))"


def test_report_bound_6_includes_euclidean():
    _, out = run_cli("report", "--bound", "6", "--format", "json")
    doc = json.loads(out)
    arith = [tuple(t) for t in doc["arithmetic_types"]]
    assert (4, 4) in arith and (6, 3) in arith


def test_report_bound_3():
    _, out = run_cli("report", "--bound", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["classification"] == [
        {"m": 3, "n": 3, "geometry": "Spherical", "arithmetic": True,
         "trace_field": "Q(i)", "min_orbifold_degree": "not_applicable",
         "commensurability_class_id": "C1"}]


def test_json_roundtrip_byte_identical():
    _, out = run_cli("report", "--bound", "8", "--format", "json")
    doc = json.loads(out)
    again = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    assert again == out


def test_geometry_verify_seeded_reproducible():
    code1, out1 = run_cli("geometry-verify", "--cell", "tetrahedron",
                          "--samples", "500", "--seed", "9",
                          "--format", "json")
    code2, out2 = run_cli("geometry-verify", "--cell", "tetrahedron",
                          "--samples", "500", "--seed", "9",
                          "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["reports"][0]["violations"] == 0


def test_geometry_verify_pair():
    code, out = run_cli("geometry-verify", "--m", "6", "--n", "4",
                        "--samples", "400", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["all_pass"] is True
    checks = {r["check"] for r in doc["reports"]}
    assert {"gram_roundtrip", "dihedral_labels", "gluing_angles"} <= checks


def test_geometry_verify_requires_target():
    code, _ = run_cli("geometry-verify")
    assert code == 2


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    code, out = run_cli("report", "--bound", "4", "--format", "json",
                        "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["bound"] == 4


def test_format_env_default(monkeypatch):
    monkeypatch.setenv("TILINGLINKS_FORMAT", "json")
    code, out = run_cli("commensurable", "6", "4", "6", "4")
    assert json.loads(out)["commensurable"] is True
