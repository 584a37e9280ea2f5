"""Scenario runner: registry, parameter handling, outputs, determinism."""

import json
from pathlib import Path

import pytest

from univcert import cli


def _summary(out: Path, name: str) -> dict:
    return json.loads((out / name / "summary.json").read_text(encoding="utf-8"))


def test_registry_is_complete():
    assert len(cli.REGISTRY) == 16
    listing = cli.list_scenarios()
    assert all(name in listing for name in cli.REGISTRY)


def test_parse_value_types():
    assert cli._parse_value("3") == 3
    assert cli._parse_value("0.5") == 0.5
    assert cli._parse_value("1+2j") == 1 + 2j
    assert cli._parse_value("both") == "both"


def test_parse_ladder_scalar_and_block():
    assert cli._parse_ladder("64,128,256") == (64, 128, 256)
    assert cli._parse_ladder("4x4, 6x6, 8x8") == ((4, 4), (6, 6), (8, 8))


def test_config_file_parsing(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("scenario = annulus\nparam = r=0.25  # comment\nformat = json\n",
                   encoding="utf-8")
    parsed = cli._read_config(cfg)
    assert parsed["scenario"] == "annulus"
    assert parsed["param"] == ["r=0.25"]
    assert parsed["format"] == "json"
    bad = tmp_path / "bad.cfg"
    bad.write_text("no separator here\n", encoding="utf-8")
    with pytest.raises(ValueError):
        cli._read_config(bad)


def test_validate_catches_bad_parameters():
    assert cli.validate("annulus", {}) == []
    assert cli.validate("nope", {}) == ["unknown scenario 'nope'"]
    assert any("unknown parameter" in p
               for p in cli.validate("annulus", {"bogus": 1}))
    assert cli.validate("annulus", {"r": 2.0}) != []
    assert cli.validate("thm32-adjoint-certify", {"lam": 9.0}) != []
    assert cli.validate("ex25-notC", {"ladder": (8, 16)}) != []


def test_run_scenario_writes_json_and_csv(tmp_path):
    paths = cli.run_scenario("annulus", {"r": 0.5}, tmp_path, fmt="both")
    names = {p.name for p in paths}
    assert names == {"summary.json", "radii.csv"}
    summary = _summary(tmp_path, "annulus")
    assert summary["inner"] == pytest.approx(1.0 / 3.0 ** 0.5)
    assert summary["radius_product"] == pytest.approx(1.0, abs=1e-12)


def test_run_scenario_json_only(tmp_path):
    paths = cli.run_scenario("annulus", {}, tmp_path, fmt="json")
    assert [p.name for p in paths] == ["summary.json"]


def test_run_scenario_rejects_invalid_input(tmp_path):
    with pytest.raises(KeyError):
        cli.run_scenario("nope", {}, tmp_path)
    with pytest.raises(ValueError):
        cli.run_scenario("annulus", {"r": 2.0}, tmp_path)


def test_eigenfield_scenario_is_bitwise_exact(tmp_path):
    cli.run_scenario("thm22-eigenfield", {}, tmp_path, fmt="json")
    summary = _summary(tmp_path, "thm22-eigenfield")
    assert summary["bitwise_exact_interior"] is True
    assert summary["interior_residual_max"] == 0.0


def test_block_spectrum_scenario(tmp_path):
    cli.run_scenario("prop21-block", {"n": 12}, tmp_path, fmt="json")
    summary = _summary(tmp_path, "prop21-block")
    assert summary["eigenvalue_union_gap"] < 1e-10


def test_multiplicativity_scenario(tmp_path):
    cli.run_scenario("multiplicativity-failure", {"n": 8}, tmp_path, fmt="json")
    summary = _summary(tmp_path, "multiplicativity-failure")
    assert summary["norm_U"] == 1.0
    assert summary["norm_V"] == 1.0
    assert summary["norm_UV"] == 0.0


def test_halfplane_scenario(tmp_path):
    cli.run_scenario("prop35-halfplane", {}, tmp_path, fmt="json")
    summary = _summary(tmp_path, "prop35-halfplane")
    assert summary["hardy_radius"] == 0.5
    assert summary["bergman_radii"] == {"0.0": 0.25, "2.0": 0.0625}


def test_mzstar_scenario_reports_agreement_rows(tmp_path):
    cli.run_scenario("mzstar-adjoint-compare", {}, tmp_path, fmt="json")
    summary = _summary(tmp_path, "mzstar-adjoint-compare")
    assert summary["agreement_rows"] == [0, 2]


def test_scenario_outputs_are_deterministic(tmp_path):
    names = ["annulus", "ex25-notC", "prop41-falsifiers"]
    for name in names:
        a = cli.run_scenario(name, {}, tmp_path / "a", fmt="both")
        b = cli.run_scenario(name, {}, tmp_path / "b", fmt="both")
        for pa, pb in zip(sorted(a), sorted(b)):
            assert pa.read_bytes() == pb.read_bytes()


def test_main_list_and_validate(capsys):
    assert cli.main(["--list"]) == 0
    out = capsys.readouterr().out
    assert "annulus" in out
    assert cli.main(["--scenario", "annulus", "--validate"]) == 0
    assert cli.main(["--scenario", "annulus", "--param", "r=2.0",
                     "--validate"]) == 2


def test_main_runs_and_prints_paths(tmp_path, capsys):
    rc = cli.main(["--scenario", "annulus", "--param", "r=0.25",
                   "--out", str(tmp_path), "--format", "json"])
    assert rc == 0
    assert "summary.json" in capsys.readouterr().out
    assert _summary(tmp_path, "annulus")["r"] == 0.25


def test_main_config_and_ladder_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"scenario = ex25-notC\nout = {tmp_path}\nformat = json\n"
                   "ladder = 16,32,64\n", encoding="utf-8")
    assert cli.main(["--config", str(cfg)]) == 0
    summary = _summary(tmp_path, "ex25-notC")
    sizes = [r["size"] for r in summary["check_Cplus"]["ladder"]]
    assert sizes == [16, 32, 64]


def test_main_parallel_jobs(tmp_path):
    rc = cli.main(["--scenario", "annulus", "--scenario", "prop35-halfplane",
                   "--out", str(tmp_path), "--format", "json", "--jobs", "2"])
    assert rc == 0
    assert (tmp_path / "annulus" / "summary.json").exists()
    assert (tmp_path / "prop35-halfplane" / "summary.json").exists()
