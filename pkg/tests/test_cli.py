"""End-to-end command line behavior and exit codes."""

import json

from h1loc.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    main,
)


def write_group(tmp_path, name="group.json", **overrides):
    data = {
        "p": 5,
        "n": 2,
        "generators": [[[7, 0], [0, 1]], [[1, 5], [0, 1]], [[6, 0], [0, 21]]],
        "label": "cyclic-sample",
    }
    data.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_h1loc_reports_nontrivial_order(tmp_path, capsys):
    path = write_group(tmp_path)
    assert main(["h1loc", "--input", path]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["group_label"] == "cyclic-sample"
    assert report["module"] == "V"
    assert report["order"] == 5
    assert report["witness"] is not None


def test_h1_command_and_torsion_module(tmp_path, capsys):
    path = write_group(tmp_path)
    assert main(["h1", "--input", path, "--module", "V[p]"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["module"] == "V[p]"
    assert report["witness"] is None


def test_output_file_and_determinism(tmp_path, capsys):
    path = write_group(tmp_path)
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["h1loc", "--input", path, "--output", str(out1)]) == EXIT_OK
    assert main(["h1loc", "--input", path, "--output", str(out2)]) == EXIT_OK
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_malformed_json_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"p": 5,\n  "n": }')
    assert main(["h1loc", "--input", str(path)]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "line 2" in err and "column" in err


def test_missing_file_is_input_error(tmp_path, capsys):
    assert main(["h1loc", "--input", str(tmp_path / "absent.json")]) == EXIT_INPUT


def test_non_prime_p_is_input_error(tmp_path, capsys):
    path = write_group(tmp_path, p=6)
    assert main(["h1loc", "--input", path]) == EXIT_INPUT
    assert main(["scan", "--p", "9"]) == EXIT_INPUT
    assert main(["verify", "--primes", "6"]) == EXIT_INPUT


def test_cap_exceeded_is_resource_error(tmp_path, capsys):
    path = write_group(tmp_path)
    assert main(["h1loc", "--input", path, "--cap", "10"]) == EXIT_RESOURCE
    assert main(["scan", "--p", "17"]) == EXIT_RESOURCE


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["h1loc"]) == EXIT_USAGE
    assert main(["unknown-command"]) == EXIT_USAGE


def test_scan_p7_empty_s3_inventory(capsys):
    assert main(["scan", "--p", "7"]) == EXIT_OK
    entries = json.loads(capsys.readouterr().out)
    assert entries
    assert all(e["case"] != "s3-type" for e in entries)


def test_scan_p5_inventory_shape(capsys):
    assert main(["scan", "--p", "5"]) == EXIT_OK
    entries = json.loads(capsys.readouterr().out)
    s3_orders = sorted({e["order"] for e in entries if e["case"] == "s3-type"})
    assert s3_orders == [3, 6]
    for e in entries:
        assert set(e) == {"case", "order", "generators", "evidence", "shape_filter"}


def test_verify_p5_passes_and_is_deterministic(capsys):
    assert main(["verify", "--primes", "5"]) == EXIT_OK
    first = capsys.readouterr().out
    reports = json.loads(first)
    assert len(reports) == 5
    assert all(r["status"] == "passed" for r in reports)
    assert main(["verify", "--primes", "5"]) == EXIT_OK
    assert capsys.readouterr().out == first


def test_verify_p7_skips_s3(capsys):
    assert main(["verify", "--primes", "7"]) == EXIT_OK
    reports = json.loads(capsys.readouterr().out)
    by_label = {r["label"]: r for r in reports}
    assert by_label["s3-quotient"]["status"] == "skipped"


def test_verify_failure_exit_code(monkeypatch, capsys):
    from h1loc import cli
    from h1loc.constructions import Check, ConstructionReport

    failing = ConstructionReport(
        label="s3-quotient",
        p=5,
        expected_nontrivial=True,
        checks=(Check("doomed", False),),
    )
    monkeypatch.setattr(cli, "verify_all", lambda primes, cap: [failing])
    assert main(["verify", "--primes", "5"]) == EXIT_VERIFICATION
    assert "doomed" in capsys.readouterr().err


def test_power_identity_command(tmp_path, capsys):
    out = tmp_path / "power.json"
    assert main(["power-identity", "--primes", "5", "--seed", "3", "--output", str(out)]) == EXIT_OK
    results = json.loads(out.read_text())
    assert {(r["p"], r["n"]) for r in results} == {(5, 2), (5, 3)}
    assert all(r["passed"] == r["trials"] == 200 for r in results)
