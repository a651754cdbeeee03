"""End-to-end CLI behavior: exit codes, JSON/CSV payloads, golden documents.

All invocations run in-process through ``main`` so coverage and debuggers
see straight through them; goldens are compared structurally (exact keys
and strings, floats to tight tolerance) rather than byte-for-byte.
"""

import json
import math
import pathlib

import pytest

from urstates.cli import main
from urstates.stateio import load_state

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def _write_state(tmp_path, capsys, name, *argv):
    path = tmp_path / name
    code, _, err = run_cli(capsys, "state", *argv, "--out", str(path))
    assert code == 0, err
    return str(path)


def _profile(tmp_path, doc, name="profile.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def assert_json_matches(actual, expected, path="$"):
    if isinstance(expected, dict):
        assert isinstance(actual, dict), path
        assert set(actual) == set(expected), path
        for key in expected:
            assert_json_matches(actual[key], expected[key], f"{path}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list), path
        assert len(actual) == len(expected), path
        for i, (a, e) in enumerate(zip(actual, expected)):
            assert_json_matches(a, e, f"{path}[{i}]")
    elif isinstance(expected, bool):
        assert actual is expected, path
    elif isinstance(expected, float) or isinstance(actual, float):
        assert actual == pytest.approx(expected, rel=1e-9, abs=1e-12), path
    else:
        assert actual == expected, path


def assert_csv_matches(actual_text, expected_text):
    actual = actual_text.strip().split("\n")
    expected = expected_text.strip().split("\n")
    assert actual[0] == expected[0]
    assert len(actual) == len(expected)
    for row, (a_line, e_line) in enumerate(zip(actual[1:], expected[1:]), 1):
        a_cells = a_line.split(",")
        e_cells = e_line.split(",")
        assert len(a_cells) == len(e_cells), f"row {row}"
        for col, (a, e) in enumerate(zip(a_cells, e_cells)):
            try:
                ev = float(e)
            except ValueError:
                assert a == e, f"row {row} col {col}"
            else:
                assert float(a) == pytest.approx(ev, rel=1e-9, abs=1e-12), \
                    f"row {row} col {col}"


# -- state ------------------------------------------------------------------

def test_state_writes_document(capsys):
    code, out, err = run_cli(capsys, "state", "--family", "glauber",
                             "--alpha", "0.3+0.4j", "--cutoff", "32")
    assert code == 0
    assert err == ""
    doc = json.loads(out)
    assert set(doc) == {"family", "params", "basis", "amplitudes", "tail_mass"}
    assert doc["family"] == "glauber"
    assert doc["params"]["alpha"] == {"re": 0.3, "im": 0.4}
    assert len(doc["amplitudes"]) == 32
    norm = sum(re * re + im * im for re, im in doc["amplitudes"])
    assert norm == pytest.approx(1.0, abs=1e-12)


def test_state_out_file_loads_back(tmp_path, capsys):
    target = tmp_path / "spin.json"
    code, out, _ = run_cli(capsys, "state", "--family", "su2-cs",
                           "--tau", "0.5j", "--j", "1.5",
                           "--out", str(target))
    assert code == 0
    assert out == ""
    st = load_state(target)
    assert st.family == "su2_cs"
    assert st.basis.dim == 4


def test_state_missing_parameter(capsys):
    code, out, err = run_cli(capsys, "state", "--family", "glauber")
    assert code == 2
    assert out == ""
    payload = json.loads(err)
    assert payload["error"] == "InvalidInputError"
    assert "--alpha" in payload["message"]


def test_state_stray_parameter(capsys):
    code, _, err = run_cli(capsys, "state", "--family", "glauber",
                           "--alpha", "1.0", "--k", "0.5")
    assert code == 2
    assert "--k" in json.loads(err)["message"]


def test_state_truncation_gate(capsys):
    code, _, err = run_cli(capsys, "state", "--family", "glauber",
                           "--alpha", "3.0", "--cutoff", "32")
    assert code == 2
    assert json.loads(err)["error"] == "TruncationError"


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["state", "--family", "mystery", "--alpha", "1"],
    ["state", "--family", "glauber", "--alpha", "1", "--wat", "3"],
    ["state", "--family", "glauber", "--alpha", "zed"],
    ["scan", "--suite", "nope"],
])
def test_grammar_errors_exit_64(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 64


# -- report -----------------------------------------------------------------

def test_report_canonical_roundtrip(tmp_path, capsys):
    # (u, v) = (1.25, 0.75) sits exactly on the shell |u|^2 - |v|^2 = 1
    st = _write_state(tmp_path, capsys, "ss.json", "--family", "canonical-ss",
                      "--alpha", "0.4", "--u", "1.25", "--v", "0.75")
    code, out, _ = run_cli(capsys, "report", "--state", st,
                           "--observables", "canonical")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"state", "observables", "moments", "ur"}
    assert doc["state"]["family"] == "canonical_ss"
    assert doc["observables"] == "canonical"
    sigma = doc["moments"]["sigma"]
    assert sigma[0][0] == pytest.approx(0.125, rel=1e-9)
    assert sigma[1][1] == pytest.approx(2.0, rel=1e-9)
    assert doc["ur"]["pairs"]["0,1"]["saturated"]["schr"] is True
    assert set(doc["ur"]["orders"]) == {"1", "2"}


def test_report_orders_filter(tmp_path, capsys):
    st = _write_state(tmp_path, capsys, "g.json", "--family", "glauber",
                      "--alpha", "0.2", "--cutoff", "32")
    code, out, _ = run_cli(capsys, "report", "--state", st,
                           "--observables", "canonical", "--orders", "2")
    assert code == 0
    assert set(json.loads(out)["ur"]["orders"]) == {"2"}
    code2, _, err = run_cli(capsys, "report", "--state", st,
                            "--observables", "canonical", "--orders", "3")
    assert code2 == 2
    assert json.loads(err)["error"] == "InvalidInputError"


def test_report_certificate_block(tmp_path, capsys):
    st = _write_state(tmp_path, capsys, "ss.json", "--family", "canonical-ss",
                      "--alpha", "0.4", "--u", "1.25", "--v", "0.75")
    code, out, _ = run_cli(capsys, "report", "--state", st,
                           "--observables", "canonical", "--certificate")
    assert code == 0
    doc = json.loads(out)
    assert doc["certificate"]["verdict"] == "minimizer"
    assert doc["certificate"]["pairs"]["0,1"]["residual"] < 1e-8


def test_report_basis_mismatch(tmp_path, capsys):
    spin = _write_state(tmp_path, capsys, "spin.json", "--family", "su2-cs",
                        "--tau", "0.3", "--j", "0.5")
    code, _, err = run_cli(capsys, "report", "--state", spin,
                           "--observables", "canonical")
    assert code == 2
    assert json.loads(err)["error"] == "BasisMismatchError"


def test_report_su11_index_must_agree(tmp_path, capsys):
    st = _write_state(tmp_path, capsys, "cs.json", "--family", "su11-cs",
                      "--xi", "0.3", "--k", "1", "--cutoff", "64")
    code, out, _ = run_cli(capsys, "report", "--state", st,
                           "--observables", "su11")
    assert code == 0
    assert json.loads(out)["observables"] == "su11:1"
    code2, _, err = run_cli(capsys, "report", "--state", st,
                            "--observables", "su11:0.5")
    assert code2 == 2
    assert json.loads(err)["error"] == "BasisMismatchError"


def test_report_missing_state_file(tmp_path, capsys):
    code, _, err = run_cli(capsys, "report", "--state",
                           str(tmp_path / "ghost.json"),
                           "--observables", "canonical")
    assert code == 2
    assert json.loads(err)["error"] == "FileNotFoundError"


# -- distance ---------------------------------------------------------------

def test_distance_identity_closed_form(tmp_path, capsys):
    s1 = _write_state(tmp_path, capsys, "a.json", "--family", "glauber",
                      "--alpha", "0.5", "--cutoff", "32")
    # a leading minus must ride in the same token as the flag
    s2 = _write_state(tmp_path, capsys, "b.json", "--family", "glauber",
                      "--alpha=-0.1+0.2j", "--cutoff", "32")
    code, out, _ = run_cli(capsys, "distance", "--state1", s1, "--state2", s2)
    assert code == 0
    doc = json.loads(out)
    assert doc["observable"] == "identity"
    delta = abs(0.5 - (-0.1 + 0.2j))
    assert doc["g"] == pytest.approx(math.exp(-delta * delta / 2.0), rel=1e-9)
    assert doc["D2"] == pytest.approx(2.0 * (1.0 - doc["g"]), abs=1e-14)

    code2, out2, _ = run_cli(capsys, "distance", "--state1", s1,
                             "--state2", s2, "--observable", "n+1")
    assert code2 == 0
    doc2 = json.loads(out2)
    assert doc2["observable"] == "n+1"
    assert abs(doc2["g"] - doc["g"]) > 1e-4


def test_distance_observable_gates(tmp_path, capsys):
    s1 = _write_state(tmp_path, capsys, "a.json", "--family", "glauber",
                      "--alpha", "0.5", "--cutoff", "32")
    s2 = _write_state(tmp_path, capsys, "b.json", "--family", "glauber",
                      "--alpha", "0.1", "--cutoff", "32")
    code, _, err = run_cli(capsys, "distance", "--state1", s1, "--state2", s2,
                           "--observable", "k3")
    assert code == 2
    assert json.loads(err)["error"] == "BasisMismatchError"
    code2, _, err2 = run_cli(capsys, "distance", "--state1", s1,
                             "--state2", s2, "--observable", "banana")
    assert code2 == 2
    assert json.loads(err2)["error"] == "InvalidInputError"


# -- evolve -----------------------------------------------------------------

def test_evolve_constant_profile(tmp_path, capsys):
    prof = _profile(tmp_path, {"kind": "omega", "omega": 2.0, "omega0": 1.0})
    code, out, _ = run_cli(capsys, "evolve", "--profile", prof,
                           "--t0", "0", "--t1", "1", "--samples", "5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,re_eps,im_eps,re_u,im_u,re_v,im_v,dq2,dp2,dpq"
    assert len(lines) == 6
    first = [float(x) for x in lines[1].split(",")]
    assert first[0] == 0.0
    assert first[3] == pytest.approx(1.0, abs=1e-12)   # u(0)
    assert first[4] == pytest.approx(0.0, abs=1e-12)
    assert first[5] == pytest.approx(0.0, abs=1e-12)   # v(0)
    for line in lines[1:]:
        cells = [float(x) for x in line.split(",")]
        dq2, dp2, dpq = cells[7], cells[8], cells[9]
        assert dq2 * dp2 - dpq * dpq == pytest.approx(0.25, rel=1e-8)


def test_evolve_expression_and_sampled_profiles(tmp_path, capsys):
    expr = _profile(tmp_path, {"kind": "omega",
                               "omega": "2.0 + 0.1*sin(t)",
                               "omega0": 2.0}, "expr.json")
    code, out, _ = run_cli(capsys, "evolve", "--profile", expr,
                           "--t0", "0", "--t1", "1", "--samples", "9")
    assert code == 0
    assert len(out.strip().split("\n")) == 10

    sampled = _profile(tmp_path, {
        "kind": "omega",
        "omega": {"t": [0.0, 0.4, 0.8, 1.2, 1.6, 2.0],
                  "values": [2.0, 2.05, 2.1, 2.05, 2.0, 1.95]},
        "omega0": 2.0}, "sampled.json")
    code2, out2, _ = run_cli(capsys, "evolve", "--profile", sampled,
                             "--t0", "0", "--t1", "1", "--samples", "9")
    assert code2 == 0
    assert len(out2.strip().split("\n")) == 10


@pytest.mark.parametrize("doc", [
    {"kind": "banana", "omega": 2.0},
    {"kind": "omega"},
    {"kind": "omega", "omega": "badfn(t)"},
    {"kind": "omega", "omega": {"t": [0.0, 1.0], "values": [2.0, 2.0]}},
    {"kind": "omega", "omega": [2.0]},
    {"kind": "g123", "g1": 0.5, "g2": 0.0, "g3": 0.5},
    {"kind": "g123", "g1": 1.0, "g2": 0.0, "g3": 1.0, "omega0": 1.0},
])
def test_evolve_rejects_bad_profiles(tmp_path, capsys, doc):
    prof = _profile(tmp_path, doc)
    code, _, err = run_cli(capsys, "evolve", "--profile", prof,
                           "--t0", "0", "--t1", "1", "--samples", "5")
    assert code == 2
    assert json.loads(err)["error"] == "InvalidInputError"


def test_evolve_missing_profile_file(tmp_path, capsys):
    code, _, err = run_cli(capsys, "evolve", "--profile",
                           str(tmp_path / "ghost.json"))
    assert code == 2
    assert json.loads(err)["error"] == "FileNotFoundError"


# -- scan -------------------------------------------------------------------

def test_scan_random_psd_parallel_determinism(tmp_path, capsys):
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    code1, _, _ = run_cli(capsys, "scan", "--suite", "random-psd",
                          "--out", str(serial))
    code2, _, _ = run_cli(capsys, "scan", "--suite", "random-psd",
                          "--jobs", "2", "--out", str(parallel))
    assert code1 == 0 and code2 == 0
    assert serial.read_bytes() == parallel.read_bytes()

    lines = serial.read_text().strip().split("\n")
    assert lines[0] == "index,family,trial,sigma_min_eig,robertson_min_eig"
    assert len(lines) == 201
    for line in lines[1:]:
        cells = line.split(",")
        # sigma and sigma + iC stay PSD for arbitrary normalized states
        assert float(cells[3]) > -1e-8
        assert float(cells[4]) > -1e-8


def test_scan_seed_changes_rows(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run_cli(capsys, "scan", "--suite", "random-psd", "--out", str(a))
    run_cli(capsys, "scan", "--suite", "random-psd", "--seed", "7",
            "--out", str(b))
    assert a.read_bytes() != b.read_bytes()


def test_scan_even_odd_suite(tmp_path, capsys):
    out = tmp_path / "eo.csv"
    code, _, _ = run_cli(capsys, "scan", "--suite", "even-odd",
                         "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == ("index,parity,re_alpha,im_alpha,a2_residual,"
                        "covariance,schr_gap")
    assert len(lines) == 33
    rows = [line.split(",") for line in lines[1:]]
    assert {row[1] for row in rows} == {"even", "odd"}
    assert all(float(row[4]) < 1e-8 for row in rows)
    assert all(float(row[6]) > -1e-10 for row in rows)


# -- selftest ---------------------------------------------------------------

def test_selftest_subset(capsys):
    code = main(["selftest", "--criteria", "5,10"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS criterion  5" in out
    assert "PASS criterion 10" in out
    assert out.strip().endswith("2/2 criteria passed")


def test_selftest_unknown_criterion(capsys):
    code = main(["selftest", "--criteria", "99"])
    assert code == 2
    assert json.loads(capsys.readouterr().err)["error"] == "InvalidInputError"


# -- golden documents -------------------------------------------------------

def test_golden_state_document(capsys):
    code, out, _ = run_cli(capsys, "state", "--family", "glauber",
                           "--alpha", "0.3+0.4j", "--cutoff", "32")
    assert code == 0
    expected = json.loads((GOLDEN / "state_glauber.json").read_text())
    assert_json_matches(json.loads(out), expected)


def test_golden_report_document(tmp_path, capsys):
    st = _write_state(tmp_path, capsys, "cs.json", "--family", "su11-cs",
                      "--xi", "0.35j", "--k", "1", "--cutoff", "96")
    code, out, _ = run_cli(capsys, "report", "--state", st,
                           "--observables", "su11", "--certificate")
    assert code == 0
    expected = json.loads((GOLDEN / "report_su11_cs.json").read_text())
    assert_json_matches(json.loads(out), expected)


def test_golden_distance_document(tmp_path, capsys):
    s1 = _write_state(tmp_path, capsys, "a.json", "--family", "glauber",
                      "--alpha", "0.5", "--cutoff", "32")
    s2 = _write_state(tmp_path, capsys, "b.json", "--family", "glauber",
                      "--alpha=-0.1+0.2j", "--cutoff", "32")
    code, out, _ = run_cli(capsys, "distance", "--state1", s1, "--state2", s2,
                           "--observable", "n+1")
    assert code == 0
    expected = json.loads((GOLDEN / "distance_glauber.json").read_text())
    assert_json_matches(json.loads(out), expected)


def test_golden_evolve_table(tmp_path, capsys):
    prof = _profile(tmp_path, {"kind": "omega", "omega": 2.0, "omega0": 1.0})
    code, out, _ = run_cli(capsys, "evolve", "--profile", prof,
                           "--t0", "0", "--t1", "1", "--samples", "5")
    assert code == 0
    assert_csv_matches(out, (GOLDEN / "evolve_const.csv").read_text())
