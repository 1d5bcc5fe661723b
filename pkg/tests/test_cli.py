"""
End-to-end tests of the pf-theory command line, run in-process through main().
"""

import io
import json
import math

import numpy as np
import pandas as pd
import pytest

from src.cli import build_parser, main
from src.core.constants import HBAR_SI, SPEED_OF_LIGHT_SI, SolverBackend, TRAJECTORY_COLUMNS, VERIFIER_COLUMNS
from src.core.schemas import TrajectoryRecord
from src.core.units import make_constants
from src.relativity import VerifierSummary, quartic_scaling, read_verifier_document
from src.spectral import (
    SpectralProblem,
    Spectrum,
    nonrel_mass_sweep,
    photon_limit_report,
    read_limit_document,
    solve_problem,
)

ELECTRON_MASS = 9.1093837015e-31


def run(argv):
    return main([str(arg) for arg in argv])


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def test_spectrum_box_table(tmp_path):
    out = tmp_path / "box.csv"
    assert run(["spectrum", "--box", "--a", "pi", "--m0", "1", "--levels", "3", "-o", out]) == 0
    frame = pd.read_csv(out)
    assert list(frame["n"]) == [1, 2, 3]
    np.testing.assert_allclose(frame["E"], [1.4142136, 2.2360680, 3.1622777], rtol=1e-5)
    assert (frame["rel_diff"] <= 1e-5).all()
    assert list(frame["nodes"]) == [0, 1, 2]


def test_spectrum_shooting_backend_json(tmp_path):
    out = tmp_path / "box.json"
    code = run([
        "spectrum", "--box", "--a", "pi", "--m0", "1", "--levels", "2",
        "--backend", "shooting", "--grid-size", "1000", "--format", "json", "-o", out,
    ])
    assert code == 0
    document = json.loads(out.read_text())
    assert document["meta"]["backend"] == "shooting"
    energies = [level["energy"] for level in document["levels"]]
    np.testing.assert_allclose(energies, [math.sqrt(2.0), math.sqrt(5.0)], rtol=1e-8)
    assert document["meta"]["run"]["params"]["m0"] == 1.0

    parsed = Spectrum.from_json(out.read_text())
    expected = solve_problem(
        SpectralProblem.box(math.pi, 1.0), 2, make_constants("natural"), backend=SolverBackend.SHOOTING, grid_size=1000
    )
    np.testing.assert_array_equal(parsed.energies, expected.energies)
    assert [level.nodes for level in parsed.levels] == [0, 1]


def test_spectrum_si_units_with_shooting(tmp_path):
    out = tmp_path / "si.json"
    code = run([
        "spectrum", "--units", "si", "--box", "--a", "1e-9", "--m0", ELECTRON_MASS, "--levels", "3",
        "--backend", "shooting", "--format", "json", "-o", out,
    ])
    assert code == 0
    spectrum = Spectrum.from_json(out.read_text())
    rest = ELECTRON_MASS * SPEED_OF_LIGHT_SI ** 2
    for level in spectrum.levels:
        p_sq = (level.n * math.pi * HBAR_SI / 1e-9) ** 2
        assert level.momentum_sq == pytest.approx(p_sq, rel=1e-8)
        assert level.energy == pytest.approx(math.sqrt(p_sq * SPEED_OF_LIGHT_SI ** 2 + rest ** 2), rel=1e-12)
        assert level.residual <= 1e-10
    assert spectrum.problem["rest_energy"] == pytest.approx(rest, rel=1e-15)
    assert spectrum.meta["natural_units"]["m_ref"] == ELECTRON_MASS


def test_spectrum_writes_eigenfields(tmp_path):
    fields = tmp_path / "fields"
    code = run([
        "spectrum", "--box", "--a", "pi", "--m0", "1", "--levels", "2",
        "--grid-size", "200", "-o", tmp_path / "box.csv", "--eigenfields", fields,
    ])
    assert code == 0
    level = pd.read_csv(fields / "level_1.csv")
    assert list(level.columns) == ["x", "chi"]
    assert level["chi"].iloc[0] == pytest.approx(0.0, abs=1e-12)
    assert level["chi"].iloc[-1] == pytest.approx(0.0, abs=1e-12)
    assert (fields / "level_2.csv").exists()


def test_spectrum_regime_violation_exit_code(tmp_path):
    code = run([
        "spectrum", "--box", "--a", "pi", "--m0", "1", "--form", "mass_dependent",
        "--v-floor", "-2", "-o", tmp_path / "out.csv",
    ])
    assert code == 3


def test_spectrum_config_file(tmp_path):
    config = tmp_path / "run.conf"
    config.write_text("# box run\nm0 = 1\nbox = true\na = pi\nlevels = 2\n")
    out = tmp_path / "out.csv"
    assert run(["spectrum", "--config", config, "-o", out]) == 0
    assert len(pd.read_csv(out)) == 2

    # flags override the file
    assert run(["spectrum", "--config", config, "--levels", "3", "-o", out]) == 0
    assert len(pd.read_csv(out)) == 3


@pytest.mark.parametrize(
    "content",
    ["colour = red\n", "m0 = 1\nbox = maybe\na = pi\n", "just a line\n"],
)
def test_bad_config_file_is_a_usage_error(tmp_path, content):
    config = tmp_path / "bad.conf"
    config.write_text(content)
    assert run(["spectrum", "--config", config]) == 1


def test_usage_errors(tmp_path):
    assert run(["spectrum", "--box", "--a", "pi", "-o", tmp_path / "out.csv"]) == 1
    assert run(["spectrum", "--bogus"]) == 1
    assert run(["spectrum", "--config", tmp_path / "missing.conf"]) == 1
    assert run(["spectrum", "--m0", "1", "-o", tmp_path / "out.csv"]) == 1
    assert run([]) == 1


def test_parser_lists_all_commands():
    help_text = build_parser().format_help()
    for command in ("spectrum", "trajectory", "lorentz-check", "limits"):
        assert command in help_text


# ---------------------------------------------------------------------------
# trajectory
# ---------------------------------------------------------------------------


def test_trajectory_zero_field(tmp_path):
    out = tmp_path / "traj.csv"
    code = run(["trajectory", "--field", "zero", "--v0", "1", "--dt", "0.01", "--steps", "100", "-o", out])
    assert code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns[:5]) == TRAJECTORY_COLUMNS
    assert len(frame) == 101
    np.testing.assert_allclose(frame["q"], frame["x"], atol=1e-12)
    assert frame["x"].iloc[-1] == pytest.approx(1.0, rel=1e-12)


def test_trajectory_leaving_box_field(tmp_path):
    out = tmp_path / "traj.csv"
    code = run(["trajectory", "--field", "box", "--x0", "1.5", "--v0", "10", "-o", out])
    assert code == 3
    frame = pd.read_csv(out)
    assert 1 < len(frame) < 1001
    assert frame["x"].between(0.0, math.pi).all()


def test_trajectory_harmonic_in_box_field_json(tmp_path):
    out = tmp_path / "traj.json"
    code = run([
        "trajectory", "--field", "box", "--force", "harmonic", "--x0", "1.0",
        "--steps", "2000", "--format", "json", "-o", out,
    ])
    assert code == 0
    document = json.loads(out.read_text())
    assert document["metadata"]["max_force_residual"] <= 1e-4
    assert document["metadata"]["run"]["command"] == "trajectory"


def test_trajectory_json_matches_csv(tmp_path):
    args = ["trajectory", "--field", "sine", "--force", "harmonic", "--x0", "0.5", "--steps", "300"]
    assert run(args + ["-o", tmp_path / "traj.csv"]) == 0
    assert run(args + ["--format", "json", "-o", tmp_path / "traj.json"]) == 0

    table = pd.read_csv(tmp_path / "traj.csv")
    text = (tmp_path / "traj.json").read_text()
    record = TrajectoryRecord.from_json(text)
    pd.testing.assert_frame_equal(record.to_frame(), table[TRAJECTORY_COLUMNS])

    samples = json.loads(text)["samples"]
    assert set(samples[0]) == set(table.columns)
    middle = samples[150]
    assert middle["f_pf"] == table["f_pf"].iloc[150]
    assert middle["residual"] == table["residual"].iloc[150]


# ---------------------------------------------------------------------------
# lorentz-check
# ---------------------------------------------------------------------------


def test_lorentz_check_report(tmp_path):
    out = tmp_path / "check.csv"
    assert run(["lorentz-check", "--samples", "200", "--seed", "3", "-o", out]) == 0
    header = out.read_text().splitlines()[0]
    assert header == (
        "seed,v_p,v_p_prime,v_pf,chi_slope,gamma_pf_kinematic,gamma_pf_matching,"
        "residual_a18,delta_truncated,delta_full"
    )
    frame = pd.read_csv(out)
    assert list(frame.columns) == VERIFIER_COLUMNS
    assert len(frame) == 200
    assert (frame["residual_a18"].abs() <= 1e-10).all()


def test_lorentz_check_is_deterministic(tmp_path, monkeypatch):
    first, second, third = (tmp_path / name for name in ("a.csv", "b.csv", "c.csv"))
    assert run(["lorentz-check", "--samples", "100", "--seed", "11", "--workers", "1", "-o", first]) == 0
    assert run(["lorentz-check", "--samples", "100", "--seed", "11", "--workers", "3", "-o", second]) == 0
    assert first.read_bytes() == second.read_bytes()

    monkeypatch.setenv("PF_SEED", "12")
    assert run(["lorentz-check", "--samples", "100", "--seed", "11", "-o", third]) == 0
    assert third.read_bytes() != first.read_bytes()


def test_lorentz_check_json_matches_csv(tmp_path):
    args = ["lorentz-check", "--samples", "150", "--seed", "8"]
    assert run(args + ["-o", tmp_path / "check.csv"]) == 0
    assert run(args + ["--format", "json", "-o", tmp_path / "check.json"]) == 0

    text = (tmp_path / "check.json").read_text()
    report, summary, meta = read_verifier_document(text)
    pd.testing.assert_frame_equal(report, pd.read_csv(tmp_path / "check.csv"))
    assert summary.to_dict() == json.loads(text)["summary"]
    assert summary.n_samples == 150
    assert meta["run"]["seed"] == 8


def test_lorentz_check_scaling_speeds(tmp_path):
    out = tmp_path / "check.json"
    code = run([
        "lorentz-check", "--samples", "50", "--scaling", "--scaling-v-p-prime", "0.4",
        "--scaling-v-pf", "0.2", "--format", "json", "-o", out,
    ])
    assert code == 0
    _, summary, _ = read_verifier_document(out.read_text())
    assert summary.metadata["scaling"]["deltas"] == quartic_scaling(0.4, 0.2)["deltas"]


def test_lorentz_check_flat_field_json(tmp_path):
    out = tmp_path / "check.json"
    code = run(["lorentz-check", "--samples", "200", "--max-slope", "0", "--format", "json", "-o", out])
    assert code == 0
    summary = json.loads(out.read_text())["summary"]
    assert summary["classical_deviation"] <= 1e-12
    assert summary["quartic_constant"] is None
    assert summary["passed"] is True


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------


def test_limits_photon_to_stdout(capsys):
    assert run(["limits", "photon", "--gammas", "10,1000,100000", "--slopes", "0,0.5"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert len(frame) == 6
    assert (frame["deficit"] >= frame["bound"] * (1 - 1e-12)).all()
    assert (frame["deficit"] <= frame["bound"] * (1 + 1 / frame["gamma_pf"] ** 2)).all()
    for _, group in frame.groupby("chi_slope"):
        assert group["deficit"].is_monotonic_decreasing


def test_limits_nonrel(tmp_path):
    out = tmp_path / "nonrel.csv"
    assert run(["limits", "nonrel", "--masses", "100,1000,10000", "--levels", "2", "-o", out]) == 0
    frame = pd.read_csv(out)
    assert len(frame) == 6
    ground = frame[frame["n"] == 1]
    assert ground["rel_deviation"].is_monotonic_decreasing
    assert (frame["rel_deviation"] <= frame["bound"]).all()


def test_limits_photon_default_sweep_is_subluminal(capsys):
    assert run(["limits", "photon"]) == 0
    frame = pd.read_csv(io.StringIO(capsys.readouterr().out))
    assert frame["gamma_p"].max() == 1e9
    assert (frame["q_dot"] < 1.0).all()


def test_limits_json_round_trip(tmp_path):
    nonrel = tmp_path / "nonrel.json"
    assert run(["limits", "nonrel", "--masses", "100,1000", "--levels", "2", "--format", "json", "-o", nonrel]) == 0
    family, frame, meta = read_limit_document(nonrel.read_text())
    assert family.value == "nonrel"
    expected = nonrel_mass_sweep((100.0, 1000.0), math.pi, 2, make_constants("natural"))
    pd.testing.assert_frame_equal(frame, expected)

    photon = tmp_path / "photon.json"
    assert run(["limits", "photon", "--gammas", "10,1e9", "--slopes", "0,2", "--format", "json", "-o", photon]) == 0
    family, frame, meta = read_limit_document(photon.read_text())
    assert family.value == "photon"
    pd.testing.assert_frame_equal(frame, photon_limit_report((10.0, 1e9), (0.0, 2.0)))
    assert meta["run"]["command"] == "limits"


def test_limits_unknown_family():
    assert run(["limits", "ultrarelativistic"]) == 1
