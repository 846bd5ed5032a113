import io
import json

import pytest

from tdyn.cli import RunConfig, main


def run_capture(argv):
    import contextlib
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run_capture(argv + ["--format", "json"])
    assert code == 0, err
    return json.loads(out)


def test_rseq_table_output():
    code, out, err = run_capture(["rseq", "--builtin", "z_times_d:2", "--n", "5"])
    assert code == 0
    assert out.strip() == "1 3 7 15 31"


def test_rseq_infinite_entries():
    code, out, _ = run_capture(["rseq", "--builtin", "z_times_d:1", "--n", "3"])
    assert code == 0
    assert out.strip() == "infinity infinity infinity"


def test_zeta_json():
    doc = run_json(["zeta", "--builtin", "z_pair:2,1"])
    assert doc["zeta"] == {"num": ["1", "-1"], "den": ["1", "-2"]}
    assert doc["roundtrip_verified"] is True


def test_congruence_all_pass():
    doc = run_json(["congruence", "--builtin", "z_times_d:2", "--n", "12"])
    assert doc["all_passed"] is True
    assert len(doc["congruences"]) == 12


def test_congruence_explicit_moduli():
    doc = run_json(["congruence", "--builtin", "z_pair:2,1", "--n", "10",
                    "--moduli", "6"])
    assert doc["congruences"][0]["combination"] == "54"


def test_growth_json():
    doc = run_json(["growth", "--builtin", "z_times_d:3", "--n", "12"])
    assert doc["growth"]["exact"] == "3"
    assert doc["growth"]["numeric"] == pytest.approx(3.0)


def test_entropy_json():
    doc = run_json(["entropy", "--builtin", "torus_matrix:2,1,1,1", "--n", "12"])
    assert doc["identity_gap"] <= 1e-9


def test_classify_json():
    doc = run_json(["classify", "--builtin", "z_times_d:2", "--n", "12"])
    assert doc["classification"]["kind"] == "periodic"
    assert doc["classification"]["period"] == 1
    assert doc["lambda"] == pytest.approx(2.0)


def test_classify_nielsen():
    doc = run_json(["classify", "--builtin", "z_pair:2,-2", "--n", "12",
                    "--nielsen"])
    assert doc["classification"]["period"] == 2


def test_padic_json():
    doc = run_json(["padic", "--builtin", "s_integer:1/2,2", "--prime", "2"])
    assert doc["growth_factor"]["exponent"] == "1"
    assert doc["newton_polygon_phi"] == [{"slope": "1", "length": 1}]


def test_realize_json():
    doc = run_json(["realize", "--builtin", "z_pair:2,1"])
    assert doc["realization"]["A_e"] == [["2"]]
    assert doc["realization"]["A_o"] == [["1"]]
    assert doc["trace_check_passed"] is True


def test_tame_and_validate():
    doc = run_json(["tame", "--builtin", "z_pair:2,-2"])
    assert doc["tame"] is False and doc["witness_n"] == 2
    doc = run_json(["validate", "--builtin", "heisenberg:2,1,1,1"])
    assert doc["ok"] is True


def test_exit_code_non_tame():
    code, _, err = run_capture(["growth", "--builtin", "z_times_d:1"])
    assert code == 2
    assert "tame" in err
    # zeta needs finite values: infinite entries are a tameness failure too
    code, _, _ = run_capture(["zeta", "--builtin", "z_times_d:1"])
    assert code == 2


def test_realize_nielsen_on_non_tame_system():
    doc = run_json(["realize", "--builtin", "torus_matrix:0,-1,1,0",
                    "--nielsen"])
    assert doc["trace_check_passed"] is True
    code, _, _ = run_capture(["realize", "--builtin", "torus_matrix:0,-1,1,0"])
    assert code == 2  # without --nielsen the sequence has infinite entries


def test_exit_code_unsupported_pairing():
    import tempfile, os
    doc = {"name": "nc", "sections": [{
        "rank": 2, "phi": [["1", "1"], ["0", "2"]],
        "psi": [["3", "0"], ["1", "5"]]}]}
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(doc, fh)
        path = fh.name
    try:
        code, _, err = run_capture(["growth", "--input", path])
        assert code == 3
    finally:
        os.unlink(path)


def test_exit_code_hypothesis_violation():
    import tempfile, os
    doc = {"name": "equal-moduli", "sections": [{
        "rank": 2, "phi": [["3", "-4"], ["1", "0"]],
        "psi": [["2", "0"], ["0", "2"]]}]}
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(doc, fh)
        path = fh.name
    try:
        code, _, err = run_capture(["growth", "--input", path])
        assert code == 4
    finally:
        os.unlink(path)


def test_exit_code_input_errors():
    code, _, _ = run_capture(["rseq", "--builtin", "nope:1"])
    assert code == 1
    code, _, _ = run_capture(["rseq", "--builtin", "z_times_d:2",
                              "--input", "also.json"])
    assert code == 1
    code, _, _ = run_capture(["rseq"])
    assert code == 1
    code, _, _ = run_capture(["nonsense-command"])
    assert code == 1


def test_json_input_file(tmp_path):
    doc = {"name": "file-system", "sections": [
        {"rank": 1, "phi": [["3"]]}]}
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(doc))
    code, out, err = run_capture(["rseq", "--input", str(path), "--n", "3"])
    assert code == 0
    assert out.strip() == "2 8 26"


def test_json_output_reparses_exactly():
    doc = run_json(["rseq", "--builtin", "z_times_d:2", "--n", "64"])
    values = [int(s) for s in doc["sequence"]]
    assert values == [2 ** n - 1 for n in range(1, 65)]
    zdoc = run_json(["zeta", "--builtin", "z_times_d:2"])
    num = [int(s) for s in zdoc["zeta"]["num"]]
    den = [int(s) for s in zdoc["zeta"]["den"]]
    assert (num, den) == ([1, -1], [1, -2])


def test_run_config_validation():
    with pytest.raises(Exception):
        RunConfig(command="rseq", n=0)
    with pytest.raises(Exception):
        RunConfig(command="rseq", precision_bits=32)
    with pytest.raises(Exception):
        RunConfig(command="bogus")


def test_stdout_stderr_separation():
    code, out, err = run_capture(["growth", "--builtin", "z_times_d:1"])
    assert out == ""
    assert err != ""
