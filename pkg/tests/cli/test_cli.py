import json
import os
import pathlib
import typing

import pandas as pd
import pytest

from renewbound import SolverException
from renewbound.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_SOLVER_ERROR, load_run_config, main
from renewbound.config import REPORTED_VALUES


def write_config(path: pathlib.Path, **values: typing.Any) -> str:
    """
    Write a flat TOML file with the `values`.
    """
    lines = []
    for key, value in values.items():
        if isinstance(value, bool):
            lines.append(f"{key} = {'true' if value else 'false'}")
        elif isinstance(value, str):
            lines.append(f"{key} = {json.dumps(value)}")
        else:
            lines.append(f"{key} = {value!r}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def read_json(path: pathlib.Path) -> typing.Mapping[str, typing.Any]:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture
def simulate_config(tmp_path: pathlib.Path) -> str:
    return write_config(tmp_path / "simulate.toml", zone="CentralNorth", n_paths=20, horizon=2.0, x0=60.0, seed=3)


@pytest.fixture
def compare_config(tmp_path: pathlib.Path, fpath_synthetic_csv: str) -> str:
    return write_config(
        tmp_path / "compare.toml",
        zone="CentralNorth",
        data_path=fpath_synthetic_csv,
        capacity_scale=0.5,
        seed=5,
    )


class TestBoundary:
    def test_constant_boundary(self, tmp_path: pathlib.Path, capsys):
        out = tmp_path / "out"

        code = main(["boundary", "--zone", "CentralNorth", "--out", str(out)])

        assert code == EXIT_OK
        meta = read_json(out / "boundary.json")
        assert meta["kind"] == "constant"
        assert meta["terminal_x"] == pytest.approx(REPORTED_VALUES["CentralNorth"]["terminal_x"], rel=0.1)
        assert meta["variant_tags"]["cost_normalization"] == "c_hat"
        assert meta["seed"] == 42
        assert [row["quantity"] for row in meta["reference_values"]] == ["terminal_x", "f_zero"]

        frame = pd.read_csv(out / "boundary.csv")
        assert list(frame.columns) == ["y_mw", "f_eur_mwh", "fhat_eur_mwh"]
        assert len(frame) == 13_001
        assert "constant boundary" in capsys.readouterr().out

        summary = (out / "summary.md").read_text(encoding="utf-8")
        assert "| terminal_x | rhat_y_coeff=rho_plus_2kappa |" in summary

    def test_curve_is_reported_under_both_variants(self, tmp_path: pathlib.Path):
        config = write_config(tmp_path / "north.toml", zone="North", beta=1e-12, step_h=650.0)
        out = tmp_path / "out"

        code = main(["boundary", "--config", config, "--out", str(out)])

        assert code == EXIT_OK
        meta = read_json(out / "boundary.json")
        assert meta["kind"] == "curve"
        variants = {row["variant"] for row in meta["reference_values"]}
        assert variants == {"rhat_y_coeff=rho_plus_2kappa", "rhat_y_coeff=two_kappa"}
        reported = {row["reported"] for row in meta["reference_values"]}
        assert reported == {REPORTED_VALUES["North"]["terminal_x"], REPORTED_VALUES["North"]["f_zero"]}

    def test_variant_flag(self, tmp_path: pathlib.Path):
        out = tmp_path / "out"

        code = main(["boundary", "--zone", "CentralNorth", "--variant", "rhat_y_coeff=two_kappa", "--out", str(out)])

        assert code == EXIT_OK
        assert read_json(out / "boundary.json")["variant_tags"]["rhat_y_coeff"] == "two_kappa"

    def test_non_positive_step(self, tmp_path: pathlib.Path, capsys):
        config = write_config(tmp_path / "bad.toml", zone="North", step_h=0.0)

        code = main(["boundary", "--config", config, "--out", str(tmp_path / "out")])

        assert code == EXIT_INPUT_ERROR
        assert "step_h" in capsys.readouterr().err

    def test_solver_failure(self, tmp_path: pathlib.Path, monkeypatch, capsys):
        def fail(*args, **kwargs):
            raise SolverException({"y": 6500.0}, "Boundary ODE failed at y=6500.0")

        monkeypatch.setattr("renewbound.cli._commands.integrate_free_boundary", fail)

        code = main(["boundary", "--zone", "North", "--out", str(tmp_path / "out")])

        assert code == EXIT_SOLVER_ERROR
        assert "y=6500.0" in capsys.readouterr().err


class TestSimulate:
    def test_jump_to_the_cap_above_the_boundary(self, tmp_path: pathlib.Path, simulate_config: str):
        out = tmp_path / "out"

        code = main(["simulate", "--config", simulate_config, "--out", str(out)])

        assert code == EXIT_OK
        path = pd.read_csv(out / "simulated_path.csv")
        assert list(path.columns) == ["t_years", "price_eur_mwh", "capacity_mw", "increment_mw"]
        assert path["increment_mw"].iloc[0] == 6500.0
        assert (path["increment_mw"].iloc[1:] == 0.0).all()
        assert (path["capacity_mw"] == 6500.0).all()

        payoff = read_json(out / "payoff.json")
        assert set(payoff["payoffs"]) == {"optimal", "never_install", "install_at_start"}
        assert payoff["payoffs"]["optimal"]["n_paths"] == 20
        assert payoff["seed"] == 3
        assert "value_closed_form" in payoff
        assert (out / "boundary.csv").is_file()

    def test_reuses_boundary_written_by_boundary_command(
        self,
        tmp_path: pathlib.Path,
        simulate_config: str,
        caplog,
    ):
        out = tmp_path / "out"

        assert main(["boundary", "--config", simulate_config, "--out", str(out)]) == EXIT_OK
        written = (out / "boundary.csv").read_bytes()
        caplog.clear()
        with caplog.at_level("INFO", logger="renewbound.cli"):
            code = main(["simulate", "--config", simulate_config, "--out", str(out)])

        assert code == EXIT_OK
        assert "Reusing the boundary" in caplog.text
        assert (out / "boundary.csv").read_bytes() == written

    def test_seed_flag_overrides_file(self, tmp_path: pathlib.Path, simulate_config: str):
        out = tmp_path / "out"

        main(["simulate", "--config", simulate_config, "--seed", "11", "--out", str(out)])

        assert read_json(out / "payoff.json")["payoffs"]["optimal"]["seed"] == 11

    def test_no_paths(self, tmp_path: pathlib.Path):
        config = write_config(tmp_path / "bad.toml", zone="CentralNorth", n_paths=0)

        assert main(["simulate", "--config", config, "--out", str(tmp_path / "out")]) == EXIT_INPUT_ERROR


class TestEstimate:
    def test_synthetic_data(self, tmp_path: pathlib.Path, fpath_synthetic_csv: str):
        config = write_config(tmp_path / "north.toml", zone="North", data_path=fpath_synthetic_csv)
        out = tmp_path / "out"

        code = main(["estimate", "--config", config, "--out", str(out)])

        assert code == EXIT_OK
        report = read_json(out / "estimate.json")
        assert report["zone"] == "North"
        assert "photovoltaic" in report["estimation"]["retained"]
        assert report["estimation"]["full"]["box_pierce"]["lags"] == 10
        assert "## Estimation" in (out / "summary.md").read_text(encoding="utf-8")

    def test_empty_dataset(self, tmp_path: pathlib.Path, fpath_header_only_csv: str, capsys):
        config = write_config(tmp_path / "north.toml", zone="North", data_path=fpath_header_only_csv)

        code = main(["estimate", "--config", config, "--out", str(tmp_path / "out")])

        assert code == EXIT_INPUT_ERROR
        assert "empty dataset" in capsys.readouterr().err

    def test_missing_data_path(self, tmp_path: pathlib.Path):
        assert main(["estimate", "--zone", "North", "--out", str(tmp_path / "out")]) == EXIT_INPUT_ERROR

    def test_missing_config(self, tmp_path: pathlib.Path):
        assert main(["estimate", "--config", str(tmp_path / "absent.toml")]) == EXIT_INPUT_ERROR


class TestCompare:
    def test_prices_above_the_constant_boundary(self, tmp_path: pathlib.Path, compare_config: str, capsys):
        out = tmp_path / "out"

        code = main(["compare", "--config", compare_config, "--out", str(out)])

        assert code == EXIT_OK
        report = read_json(out / "comparison.json")
        assert report["boundary_kind"] == "constant"
        assert report["comparison"]["missed_fraction"] == 1.0
        assert report["comparison"]["n_installing"] == report["comparison"]["n_obs"] == 321
        assert report["comparison"]["emitted_plot_path"] == "realized.csv"
        for name in report["plot_data"]:
            assert (out / name).is_file()

        realized = pd.read_csv(out / "realized.csv")
        assert set(realized["label"]) == {"installing"}
        assert "missed_fraction=1.0000" in capsys.readouterr().out

    def test_capacities_beyond_the_cap(self, tmp_path: pathlib.Path, fpath_synthetic_csv: str, capsys):
        config = write_config(
            tmp_path / "compare.toml", zone="CentralNorth", data_path=fpath_synthetic_csv, capacity_scale=10.0
        )

        code = main(["compare", "--config", config, "--out", str(tmp_path / "out")])

        assert code == EXIT_INPUT_ERROR
        assert "capacity_scale" in capsys.readouterr().err


def test_psi_dump(tmp_path: pathlib.Path):
    out = tmp_path / "out"

    code = main(["psi-dump", "--zone", "Sardinia", "--out", str(out)])

    assert code == EXIT_OK
    grid = pd.read_csv(out / "psi_grid.csv")
    assert len(grid) == 201
    assert grid["residual"].abs().max() <= 1e-6
    assert (grid["psi_ratio_1"] > 0).all()


@pytest.mark.parametrize(
    "command, config_fixture",
    [
        ("estimate", "compare_config"),
        ("boundary", "simulate_config"),
        ("simulate", "simulate_config"),
        ("compare", "compare_config"),
        ("psi-dump", "simulate_config"),
    ],
)
def test_runs_are_byte_identical(
    command: str,
    config_fixture: str,
    tmp_path: pathlib.Path,
    request: pytest.FixtureRequest,
):
    config = request.getfixturevalue(config_fixture)
    first, second = tmp_path / "first", tmp_path / "second"

    assert main([command, "--config", config, "--out", str(first)]) == EXIT_OK
    assert main([command, "--config", config, "--out", str(second)]) == EXIT_OK

    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["install"])


@pytest.mark.parametrize("name", ["north.toml", "central_north.toml", "sardinia.toml"])
def test_bundled_configs(name: str, fpath_configs_dir: str):
    config = load_run_config(os.path.join(fpath_configs_dir, name))

    assert config.zone in REPORTED_VALUES
    assert config.ou_override() is not None
    assert config.data_path is None
