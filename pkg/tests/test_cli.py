from __future__ import annotations

import json
from pathlib import Path

from click.testing import CliRunner

from mk3_orbits.cli.main import cli
from mk3_orbits.config.loader import CONFIG_FILENAME


def _invoke(tmp_path: Path, *args: str):
    runner = CliRunner()
    with runner.isolated_filesystem(temp_dir=tmp_path):
        return runner.invoke(cli, list(args))


def test_points_text_and_csv(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "points", "-p", "7", "-k", "1")
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 68
    assert "(0,inf,inf)" in result.output.splitlines()

    result = _invoke(tmp_path, "points", "-p", "3", "-k", "1", "--format", "csv")
    lines = result.output.splitlines()
    assert lines[0] == "x,y,z"
    assert len(lines) == 9


def test_non_prime_is_an_input_error(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "points", "-p", "91", "-k", "1")
    assert result.exit_code == 2


def test_orbits_shorthand(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "orbits", "-p", "53", "-k", "1")
    assert result.exit_code == 0
    assert result.output.strip() == "24^2, 48, 3456"


def test_orbits_sweep_json(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "orbits", "-p", "7", "--json")
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert [r["k"] for r in rows] == [1, 2, 3]
    assert rows[0]["sizes"] == [64]


def test_orbit_of_seed_point(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "orbit", "-p", "7", "-k", "1", "--seed-point", "(0,inf,inf)", "--json")
    assert result.exit_code == 0
    assert json.loads(result.output)["size"] == 3


def test_orbit_word_trace(tmp_path: Path) -> None:
    result = _invoke(
        tmp_path, "orbit", "-p", "53", "-k", "11", "--seed-point", "(15,11,12)", "--word", "s1 s1", "--json"
    )
    assert result.exit_code == 0
    steps = json.loads(result.output)
    assert [s["point"] for s in steps] == ["(15,11,12)", "(0,11,12)", "(15,11,12)"]


def test_orbit_rejects_points_off_the_surface(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "orbit", "-p", "7", "-k", "1", "--seed-point", "(1,1,1)")
    assert result.exit_code == 2


def test_fibral_single_fiber(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "fibral", "-p", "5", "-k", "1", "-t", "0")
    assert result.exit_code == 0
    assert result.output.strip() == "3"


def test_fibral_table_json(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "fibral", "-p", "5", "-k", "1", "--table", "--json")
    assert result.exit_code == 0
    assert json.loads(result.output) == {"inf": 2, "0": 3, "1": 2, "2": 1, "3": 1, "4": 2}


def test_fibral_needs_exactly_one_mode(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "fibral", "-p", "5", "-k", "1", "-t", "0", "--table")
    assert result.exit_code == 2


def test_cage_dot_file(tmp_path: Path) -> None:
    out = tmp_path / "cage.dot"
    result = _invoke(tmp_path, "cage", "-p", "53", "-k", "1", "-o", str(out))
    assert result.exit_code == 0
    assert out.read_text().startswith("graph cage {")


def test_linkcheck_below_the_guarantee_reports_only(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "linkcheck", "-p", "53", "-k", "1", "--restricted", "--json")
    assert result.exit_code == 0
    assert json.loads(result.output)["single_orbit_consistent"] is True


def test_linkcheck_sample_conflicts_with_exhaustive(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "linkcheck", "-p", "7", "-k", "1", "--exhaustive", "--sample", "10")
    assert result.exit_code == 2


def test_linkcurve_json(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "linkcurve", "-p", "53", "-k", "1", "--bases", "3", "5", "--json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert sum(payload["fiber_histogram"].values()) == 54
    assert payload["genus_bound"] == -3 + payload["A"] + 1.5 * payload["B"]


def test_singular_json(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "singular", "-p", "13", "-k", "8", "--json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert len(payload["singular_points"]) == 4
    assert payload["singular_fibers"]["2"] == ["(2,1,1)", "(2,12,12)"]


def test_init_writes_config_once(tmp_path: Path) -> None:
    runner = CliRunner()
    with runner.isolated_filesystem(temp_dir=tmp_path):
        assert runner.invoke(cli, ["init"]).exit_code == 0
        assert Path(CONFIG_FILENAME).is_file()
        assert runner.invoke(cli, ["init"]).exit_code == 2
        assert runner.invoke(cli, ["init", "--force"]).exit_code == 0


def test_census_diff_json(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "census", "--primes", "5..13", "--diff", "--json")
    assert result.exit_code == 0
    # the JSON rows come first, then the match summary
    rows = json.loads(result.output[: result.output.rindex("]") + 1])
    assert {(r["p"], r["k"]) for r in rows} >= {(5, 1), (13, 4)}


def test_census_writes_csv_and_report(tmp_path: Path) -> None:
    out_dir = tmp_path / "results"
    report = tmp_path / "census.md"
    result = _invoke(tmp_path, "census", "--primes", "7,11", "--out", str(out_dir), "--report", str(report))
    assert result.exit_code == 0
    assert (out_dir / "census-p7.csv").read_text().splitlines()[0] == "p,k,sizes"
    assert (out_dir / "census-p11.csv").is_file()
    assert "## p = 11" in report.read_text()


def test_census_diff_requires_full_group(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "census", "--primes", "5", "--diff", "--sigma-only")
    assert result.exit_code == 2


def test_census_uses_config_primes(tmp_path: Path) -> None:
    runner = CliRunner()
    with runner.isolated_filesystem(temp_dir=tmp_path):
        Path(CONFIG_FILENAME).write_text('[census]\nprimes = "5..7"\n')
        result = runner.invoke(cli, ["census", "--json"])
    assert result.exit_code == 0
    assert {r["p"] for r in json.loads(result.output)} == {5, 7}


def test_char0_verify_and_specialize(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "char0", "verify", "--family", "size4", "--family", "size48", "--json")
    assert result.exit_code == 0
    assert [r["ok"] for r in json.loads(result.output)] == [True, True]

    result = _invoke(tmp_path, "char0", "specialize", "-p", "47", "-k", "11", "--point", "3", "6", "11", "--json")
    assert result.exit_code == 0
    assert json.loads(result.output)["size"] == 288


def test_char0_input_errors(tmp_path: Path) -> None:
    assert _invoke(tmp_path, "char0", "verify").exit_code == 2
    result = _invoke(tmp_path, "char0", "reduce", "--family", "size144", "-p", "11", "--assign", "a4")
    assert result.exit_code == 2


def test_golden_census(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "golden", "census", "-p", "5")
    assert result.exit_code == 0
    assert "4, 48" in result.output


def test_version(tmp_path: Path) -> None:
    result = _invoke(tmp_path, "--version")
    assert result.exit_code == 0
    assert "0.1.0" in result.output
