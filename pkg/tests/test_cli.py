"""Command-line interface: exit codes, formats, warnings, and goldens."""

import json
import subprocess
import sys

import pytest

from fracmirror.cli import JobConfig, main, run

HEXAGON_DOC = {
    "delta": {
        "dim": 2,
        "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1], [1, -1], [-1, 1]],
    },
    "parts": [[0, 1], [2, 4], [3, 5]],
}


@pytest.fixture()
def hexagon_file(tmp_path):
    path = tmp_path / "hexagon.json"
    path.write_text(json.dumps(HEXAGON_DOC))
    return str(path)


def _data(name):
    from conftest import DATA

    return str(DATA / name)


# ------------------------------------------------------------- exit codes


def test_missing_file_is_input_error(capsys):
    assert main(["euler", "no_such_file.json"]) == 2
    err = capsys.readouterr().err
    assert "error: cannot read no_such_file.json" in err


def test_malformed_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"delta": \n  oops}')
    assert main(["euler", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "malformed JSON at line 2 column 3" in err


def test_invalid_partition_is_input_error(tmp_path, capsys):
    doc = {
        "delta": {"dim": 3, "vertices": [[3, -1, -1], [-1, 3, -1], [-1, -1, 3], [-1, -1, -1]]},
        "parts": [[0, 1]],
    }
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(doc))
    assert main(["euler", str(path)]) == 2
    assert "invalid nef-partition input" in capsys.readouterr().err


def test_multiparameter_input_is_computational_failure(hexagon_file, capsys):
    assert main(["mirror-map", hexagon_file]) == 3
    assert "multiparameter moduli unsupported" in capsys.readouterr().err


def test_bad_flags(capsys, monkeypatch):
    assert run(JobConfig(command="nope", input="x")) == 2
    assert "unknown command" in capsys.readouterr().err
    assert run(JobConfig(command="euler", input="x", fmt="xml")) == 2
    assert "unknown format" in capsys.readouterr().err
    assert main(["mirror-map", _data("p3_quartic.json"), "-N", "0"]) == 2
    assert "at least 1" in capsys.readouterr().err
    assert main(["yukawa", _data("p3_quartic.json"), "--normalization", "x/y"]) == 2
    assert "bad normalization" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["frobnicate", "x.json"])


def test_series_order_cap(capsys, monkeypatch):
    monkeypatch.setenv("FRACMIRROR_MAX_N", "5")
    assert main(["mirror-map", _data("p3_quartic.json"), "-N", "8"]) == 2
    assert "exceeds the cap 5" in capsys.readouterr().err
    monkeypatch.setenv("FRACMIRROR_MAX_N", "8")
    assert main(["mirror-map", _data("p3_quartic.json"), "-N", "8"]) == 0


# ------------------------------------------------------------ subcommands


def test_dual_nef_warns_about_smoothness(capsys):
    assert main(["dual-nef", _data("p3_quartic.json")]) == 0
    out = capsys.readouterr()
    assert "smoothness hypothesis" in out.err
    assert "dual partition parts" in out.out


def test_euler_k3(capsys):
    assert main(["euler", _data("p2_k3.json")]) == 0
    out = capsys.readouterr().out
    assert "chi(Y) = 12" in out and "vol(Lambda) = 9" in out


def test_hodge_quartic(capsys):
    assert main(["hodge", _data("p3_quartic.json")]) == 0
    out = capsys.readouterr().out
    assert "h^{1,1} = 1" in out and "h^{2,1} = 31" in out


def test_gkz_table_shows_display_rows(capsys):
    assert main(["gkz", _data("p3_quartic.json")]) == 0
    out = capsys.readouterr().out
    assert "[  1   1   1   1   1]" in out
    assert "kernel vector: [-4, 1, 1, 1, 1]" in out
    assert "beta = (-1/2, 0, 0, 0)" in out


def test_pf_displays_factored_operator(capsys):
    assert main(["pf", _data("p3_eight_hyperplanes.json")]) == 0
    assert "theta^4 - z (theta + 1/2)^4" in capsys.readouterr().out


def test_mirror_map_json_payload(capsys):
    assert main(["mirror-map", _data("p3_quartic.json"), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["scale"] == 256
    assert payload["q_of_z"]["coeffs"][1:4] == ["1/256", "247/1024", "13386541/524288"]
    assert payload["z_of_q"]["coeffs"][1:4] == ["256", "-4046848", "18282602496"]


def test_yukawa_quartic_golden(capsys):
    assert main(["yukawa", _data("p3_quartic.json")]) == 0
    out = capsys.readouterr().out
    assert "38440454795264" in out and "normalization C = 2" in out


def test_yukawa_eight_hyperplanes_golden(capsys):
    assert main(["yukawa", _data("p3_eight_hyperplanes.json")]) == 0
    assert "30593496064" in capsys.readouterr().out


def test_yukawa_normalization_override(capsys):
    assert main(
        ["yukawa", _data("p3_quartic.json"), "--normalization", "3", "--format", "json"]
    ) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["C"] == "3" and payload["K_q"]["coeffs"][0] == "3"


def test_yukawa_skips_k3_surface(capsys):
    assert main(["yukawa", _data("p2_k3.json")]) == 0
    out = capsys.readouterr().out
    assert "skipped: Yukawa ODE defined for threefold operators" in out


def test_ifunction_quartic(capsys):
    assert main(["ifunction", _data("p3_quartic.json"), "-N", "4"]) == 0
    out = capsys.readouterr().out
    assert "weights: numerator [8], denominator [1, 1, 1, 1, 4]" in out
    assert "1680" in out and "15808" in out


def test_bseries_ring_description(capsys):
    assert main(["bseries", _data("p3_quartic.json"), "-N", "4"]) == 0
    out = capsys.readouterr().out
    assert "Q[eps]/(eps^4)" in out and "log-degree = 3" in out


def test_all_sections(capsys):
    assert main(["all", _data("p2_k3.json"), "-N", "4"]) == 0
    out = capsys.readouterr().out
    for name in ("euler", "hodge", "gkz", "pf", "mirror-map", "yukawa"):
        assert f"== {name} ==" in out


def test_json_output_is_byte_stable(capsys):
    argv = ["all", _data("p3_quartic.json"), "-N", "4", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    json.loads(first)  # parses cleanly


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fracmirror.cli", "euler", _data("p3_quartic.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "chi(Y) = -60" in proc.stdout
