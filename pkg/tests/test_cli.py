"""Tests for the command-line interface."""

import math

import pandas as pd
import pytest

from localamp import __version__
from localamp.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, compare_system, main


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    """Run the CLI with output going to a temporary directory."""
    monkeypatch.setenv("LOCALAMP_OUTPUT_DIR", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out


def test_no_command_is_usage_error(capsys):
    assert main([]) == EXIT_USAGE


def test_scan_singlet_values(workdir):
    """Test the scan CSV at five separations."""
    assert main(["scan", "--system", "singlet", "--points", "5", "--output", "s.csv"]) == EXIT_OK
    frame = pd.read_csv(workdir / "s.csv")
    assert list(frame.columns) == ["x", "u", "p", "p_pp", "p_mm", "p_pm", "p_mp"]
    assert list(frame["x"]) == [0.0, 90.0, 180.0, 270.0, 360.0]
    for x, p in zip(frame["x"], frame["p"]):
        assert p == pytest.approx(-math.cos(math.radians(x)), abs=1e-12)
    assert (frame[["p_pp", "p_mm", "p_pm", "p_mp"]].sum(axis=1) - 1).abs().max() < 1e-12


def test_scan_photon_in_radians(workdir):
    args = ["scan", "--system", "photon", "--radians", "--stop", str(math.pi), "--points", "3"]
    assert main(args + ["-o", "p.csv"]) == EXIT_OK
    frame = pd.read_csv(workdir / "p.csv")
    assert list(frame["p"]) == pytest.approx([-1.0, 1.0, -1.0], abs=1e-12)


def test_scan_interference_with_plot(workdir):
    args = ["scan", "--system", "interference", "--stop", str(2 * math.pi), "--points", "5"]
    assert main(args + ["--plot", "--k", "1", "--alpha", "1", "-o", "i.csv"]) == EXIT_OK
    frame = pd.read_csv(workdir / "i.csv")
    assert list(frame.columns) == ["x1_minus_x2", "prob"]
    assert list(frame["prob"]) == pytest.approx([1.0, 0.5, 0.0, 0.5, 1.0], abs=1e-12)
    assert (workdir / "i.svg").exists()


def test_scan_output_is_byte_stable(workdir):
    assert main(["scan", "--points", "37", "-o", "a.csv"]) == EXIT_OK
    assert main(["scan", "--points", "37", "-o", "b.csv"]) == EXIT_OK
    assert (workdir / "a.csv").read_bytes() == (workdir / "b.csv").read_bytes()


def test_scan_invalid_range_is_usage_error(workdir):
    assert main(["scan", "--start", "10", "--stop", "0"]) == EXIT_USAGE
    assert main(["scan", "--points", "1"]) == EXIT_USAGE


def test_scan_unknown_system_is_usage_error(workdir):
    with pytest.raises(SystemExit) as excinfo:
        main(["scan", "--system", "neutron"])
    assert excinfo.value.code == EXIT_USAGE


def test_scan_unwritable_path(workdir):
    (workdir / "blocker").write_text("not a directory", encoding="utf-8")
    assert main(["scan", "--points", "3", "-o", "blocker/out.csv"]) == EXIT_FAILURE


@pytest.mark.parametrize("system", ["singlet", "photon"])
def test_compare(workdir, capsys, system):
    """Test the model against the oracle over 360 points."""
    assert main(["compare", "--system", system, "--points", "360"]) == EXIT_OK
    assert "max |P_model - P_oracle|" in capsys.readouterr().out
    assert compare_system(system, 360) <= 1e-12


def test_compare_detects_perturbed_model(workdir):
    assert compare_system("singlet", 360, perturb_u=1e-6) > 1e-12
    assert main(["compare", "--perturb-u", "1e-6"]) == EXIT_FAILURE


def test_chsh(workdir, capsys):
    assert main(["chsh", "--chsh-grid", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "2.828427124746" in out
    assert "2.000000000000" in out


def test_ghz(workdir, capsys):
    assert main(["ghz", "-o", "ghz.csv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "3 of 4" in out
    frame = pd.read_csv(workdir / "ghz.csv")
    assert list(frame["outcome"]) == ["+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"]
    assert list(frame["probability"]) == pytest.approx([0, 1, 1, 0, 1, 0, 0, 1], abs=1e-12)
    assert list(frame["normalized"]) == pytest.approx(list(frame["oracle"]), abs=1e-12)


def test_interference(workdir, capsys):
    args = ["interference", "--k", "2", "--alpha", "0.5", "--offset", "1.5"]
    assert main(args + ["-o", "f.csv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "visibility (256 samples): 1.000000000000" in out
    assert len(pd.read_csv(workdir / "f.csv")) == 256


def test_interference_too_few_samples(workdir):
    assert main(["interference", "--samples", "4"]) == EXIT_USAGE


def test_sample_is_reproducible(workdir, capsys):
    """Test byte-identical output for the same seed."""
    args = ["sample", "--seed", "42", "--events", "100000", "--chunk-size", "30000"]
    assert main(args + ["-o", "one.csv"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(args + ["-o", "two.csv", "--workers", "3"]) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    assert (workdir / "one.csv").read_bytes() == (workdir / "two.csv").read_bytes()
    frame = pd.read_csv(workdir / "one.csv")
    assert list(frame.columns) == ["n_pp", "n_mm", "n_pm", "n_mp", "n_total", "p_hat", "p_analytic"]
    assert frame["n_total"][0] == 100000
    assert frame["p_hat"][0] == pytest.approx(-0.5, abs=0.02)


def test_sample_bad_seed(workdir):
    assert main(["sample", "--seed", "-3", "--events", "10"]) == EXIT_USAGE


def test_config_file(workdir, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("points: 4\n", encoding="utf-8")
    assert main(["scan", "-c", str(config), "-o", "c.csv"]) == EXIT_OK
    assert len(pd.read_csv(workdir / "c.csv")) == 4
    assert main(["scan", "-c", str(tmp_path / "nope.yaml")]) == EXIT_USAGE


def test_scan_two_points(workdir):
    assert main(["scan", "--points", "2", "-o", "two.csv"]) == EXIT_OK
    frame = pd.read_csv(workdir / "two.csv")
    assert len(frame) == 2
    assert list(frame["x"]) == [0.0, 360.0]


def test_photon_scan_over_half_range_matches_singlet(workdir):
    """Test that the photon curve is the singlet curve at half the angle."""
    grid = ["--points", "73"]
    assert main(["scan", "--system", "singlet", "--stop", "360", "-o", "s.csv"] + grid) == EXIT_OK
    assert main(["scan", "--system", "photon", "--stop", "180", "-o", "p.csv"] + grid) == EXIT_OK
    singlet = pd.read_csv(workdir / "s.csv")
    photon = pd.read_csv(workdir / "p.csv")
    assert list(photon["p"]) == pytest.approx(list(singlet["p"]), abs=1e-12)


def test_config_with_wrong_interference_type_is_usage_error(workdir, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("interference:\n  k: fast\n", encoding="utf-8")
    assert main(["interference", "-c", str(config)]) == EXIT_USAGE


def test_degrees_flag_overrides_config(workdir, tmp_path):
    config = tmp_path / "radians.yaml"
    config.write_text("radians: true\nplot: true\n", encoding="utf-8")
    args = ["scan", "-c", str(config), "--stop", "90", "--points", "2"]
    assert main(args + ["--degrees", "--no-plot", "-o", "deg.csv"]) == EXIT_OK
    frame = pd.read_csv(workdir / "deg.csv")
    assert frame["p"].iloc[-1] == pytest.approx(0.0, abs=1e-12)
    assert not (workdir / "deg.svg").exists()

    assert main(args + ["-o", "rad.csv"]) == EXIT_OK
    frame = pd.read_csv(workdir / "rad.csv")
    assert frame["p"].iloc[-1] == pytest.approx(-math.cos(90.0), abs=1e-12)
    assert (workdir / "rad.svg").exists()


def test_radians_and_degrees_are_exclusive(workdir):
    with pytest.raises(SystemExit) as excinfo:
        main(["scan", "--radians", "--degrees"])
    assert excinfo.value.code == EXIT_USAGE
