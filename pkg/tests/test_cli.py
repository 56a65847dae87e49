import json
import subprocess
import sys

import pytest

from rydsurf import cli


def _run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_constants_default(capsys):
    code, out, _ = _run(capsys, ["constants"])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["Z"] == pytest.approx(0.0069547401, rel=1e-8)
    assert report["results"]["e0_ghz"] == pytest.approx(159.124425, rel=1e-8)


def test_constants_is_deterministic(capsys):
    _, first, _ = _run(capsys, ["constants"])
    _, second, _ = _run(capsys, ["constants"])
    assert first == second


def test_constants_rejects_unit_epsilon(capsys):
    code, _, err = _run(capsys, ["constants", "--epsilon", "1.0"])
    assert code == cli.EXIT_USAGE
    assert "epsilon" in err


def test_spectrum_csv(capsys):
    code, out, _ = _run(capsys, ["spectrum", "--e0-ghz", "158.4",
                                 "--delta", "0.0237", "--nmax", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,n_star,energy_ghz,delta_to_ground_ghz"
    assert len(lines) == 4
    row = lines[1].split(",")
    assert float(row[1]) == pytest.approx(0.9763)
    assert float(row[2]) == pytest.approx(-166.183767, rel=1e-8)
    assert float(lines[2].split(",")[3]) == pytest.approx(125.628297, rel=1e-8)


def test_spectrum_rejects_bad_delta(capsys):
    code, _, _ = _run(capsys, ["spectrum", "--e0-ghz", "158.4",
                               "--delta", "1.5", "--nmax", "3"])
    assert code == cli.EXIT_USAGE


def test_wavefunction_csv(capsys):
    code, out, _ = _run(capsys, ["wavefunction", "--n", "1", "--delta", "0",
                                 "--xmax-x0", "4", "--points", "3"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x_over_x0,value"
    assert float(lines[2].split(",")[1]) == pytest.approx(0.520260095, rel=1e-8)


def test_wavefunction_isospectral_rejects_singular_family(capsys):
    code, _, err = _run(capsys, ["wavefunction", "--n", "2", "--delta", "0",
                                 "--xmax-x0", "4", "--points", "3",
                                 "--isospectral", "--bigr", "1.0"])
    assert code == cli.EXIT_USAGE
    assert "R" in err


def test_fit_round_trip(tmp_path, capsys):
    path = tmp_path / "lines.csv"
    path.write_text("n_upper,n_lower,frequency_ghz\n"
                    "2,1,125.6282970534704\n"
                    "3,1,148.3023564816893\n")
    code, out, _ = _run(capsys, ["fit", "--input", str(path)])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["e0_ghz"] == pytest.approx(158.4, rel=1e-9)
    assert report["results"]["delta"] == pytest.approx(0.0237, abs=1e-9)
    assert report["results"]["asymptotic_shift_ghz"] == pytest.approx(7.78376679,
                                                                      rel=1e-8)


def test_fit_least_squares_flag(tmp_path, capsys):
    path = tmp_path / "lines.csv"
    path.write_text("2,1,125.6282970534704\n"
                    "3,1,148.3023564816893\n"
                    "4,1,156.1654008503391\n")
    code, out, _ = _run(capsys, ["fit", "--input", str(path), "--least-squares"])
    assert code == 0
    report = json.loads(out)
    assert report["inputs"]["method"] == "least_squares"
    assert report["results"]["delta"] == pytest.approx(0.0237, abs=1e-4)


def test_fit_reports_malformed_line(tmp_path, capsys):
    path = tmp_path / "lines.csv"
    path.write_text("2,1,125.63\n3,one,148.30\n")
    code, _, err = _run(capsys, ["fit", "--input", str(path)])
    assert code == cli.EXIT_USAGE
    assert "lines.csv:2" in err


def test_fit_missing_file(capsys):
    code, _, _ = _run(capsys, ["fit", "--input", "/nonexistent/lines.csv"])
    assert code == cli.EXIT_USAGE


def test_verify_quick(capsys):
    code, out, _ = _run(capsys, ["verify", "--delta", "0", "--nmax", "2",
                                 "--points", "8000"])
    assert code == 0
    report = json.loads(out)
    assert report["checks"]
    assert all(c["pass"] for c in report["checks"])


def test_console_script_installed():
    out = subprocess.run([sys.executable, "-m", "rydsurf.cli", "constants"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    json.loads(out.stdout)
