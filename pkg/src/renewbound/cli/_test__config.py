import pathlib

import pytest

from renewbound import InputError
from renewbound.dataio import SourceKind

from ._config import RunConfig, load_run_config, parse_variant, read_config_file


class TestRunConfig:
    def test_from_preset(self):
        config = RunConfig.from_preset("North")

        assert config.econ().theta == 6500.0
        assert config.source_kind == SourceKind.PHOTOVOLTAIC
        ou = config.ou_override()
        assert ou is not None
        assert ou.impact == pytest.approx(0.0091)
        assert config.variants().rhat_y_coeff == "rho_plus_2kappa"

    def test_preset_with_overrides(self):
        config = RunConfig.from_preset("Sardinia", seed=7, n_paths=10)

        assert config.seed == 7
        assert config.source_kind == SourceKind.WIND
        assert config.ou_override().beta == {SourceKind.WIND: pytest.approx(0.0091)}

    def test_unknown_preset(self):
        with pytest.raises(InputError, match="No preset"):
            RunConfig.from_preset("Atlantis")

    def test_ou_from_data(self):
        config = RunConfig.from_preset("North", ou_from_data=True)

        assert config.ou_override() is None

    def test_to_dict_leaves_out_output_dir(self):
        config = RunConfig.from_preset("North", output_dir="somewhere")

        values = config.to_dict()

        assert "output_dir" not in values
        assert values["zone"] == "North"

    @pytest.mark.parametrize(
        "overrides, message",
        [
            ({"step_h": 0.0}, "step_h"),
            ({"step_h": -0.5}, "step_h"),
            ({"n_paths": 0}, "n_paths"),
            ({"n_paths": 3}, "even"),
            ({"rho": -0.1}, "rho"),
            ({"alpha": 1.5}, "alpha"),
            ({"y0": 7000.0}, "y0"),
            ({"scheme": "rk4"}, "scheme"),
            ({"price_scheme": "milstein"}, "price_scheme"),
            ({"rhat_y_coeff": "three_kappa"}, "rhat_y_coeff"),
            ({"source": "hydro"}, "hydro"),
        ],
    )
    def test_invalid_values(self, overrides, message):
        with pytest.raises(InputError, match=message):
            RunConfig.from_preset("North", **overrides)

    def test_odd_paths_without_antithetic(self):
        config = RunConfig.from_preset("North", n_paths=3, antithetic=False)

        assert config.n_paths == 3

    def test_partial_price_parameters(self):
        with pytest.raises(InputError, match="all of"):
            RunConfig.from_mapping(
                dict(zone="Z", rho=0.1, cost_c=1.0, conv_a=1.0, theta=1.0, kappa=1.0, zeta=1.0)
            )

    def test_unknown_key(self):
        with pytest.raises(InputError, match="Unknown configuration key"):
            RunConfig.from_preset("North", stepsize=0.1)

    def test_missing_key(self):
        with pytest.raises(InputError, match="theta"):
            RunConfig.from_mapping(dict(zone="Z", rho=0.1, cost_c=1.0, conv_a=1.0))

    def test_wrong_type(self):
        with pytest.raises(InputError, match="n_paths"):
            RunConfig.from_preset("North", n_paths="many")

    def test_int_is_accepted_as_float(self):
        config = RunConfig.from_preset("North", theta=6000)

        assert isinstance(config.theta, float)


class TestParseVariant:
    def test_unknown_key(self):
        with pytest.raises(InputError, match="Unknown variant"):
            parse_variant("colour=blue")

    def test_malformed(self):
        with pytest.raises(InputError, match="key=value"):
            parse_variant("rhat_y_coeff")


class TestLoadRunConfig:
    def test_file_overrides_preset(self, tmp_path: pathlib.Path):
        path = tmp_path / "run.toml"
        path.write_text('zone = "CentralNorth"\nstep_h = 65.0\ndata_path = "data/zonal.csv"\n', encoding="utf-8")

        config = load_run_config(path)

        assert config.step_h == 65.0
        assert config.kappa == pytest.approx(5.6029)
        assert config.data_path == str(tmp_path / "data" / "zonal.csv")

    def test_flags_override_file(self, tmp_path: pathlib.Path):
        path = tmp_path / "run.toml"
        path.write_text('zone = "North"\nseed = 1\n', encoding="utf-8")

        config = load_run_config(path, zone="Sardinia", overrides={"seed": 2, "rhat_y_coeff": "two_kappa"})

        assert config.zone == "Sardinia"
        assert config.seed == 2
        assert config.rhat_y_coeff == "two_kappa"

    def test_zone_without_preset_needs_econ(self):
        with pytest.raises(InputError, match="Missing configuration key"):
            load_run_config(zone="Sicily")

    def test_no_zone(self):
        with pytest.raises(InputError, match="No zone"):
            load_run_config()


class TestReadConfigFile:
    def test_missing(self, tmp_path: pathlib.Path):
        with pytest.raises(InputError, match="Missing configuration file"):
            read_config_file(tmp_path / "nope.toml")

    def test_malformed(self, tmp_path: pathlib.Path):
        path = tmp_path / "bad.toml"
        path.write_text("zone = \n", encoding="utf-8")

        with pytest.raises(InputError, match="Malformed"):
            read_config_file(path)

    def test_tables_are_rejected(self, tmp_path: pathlib.Path):
        path = tmp_path / "nested.toml"
        path.write_text('zone = "North"\n[solver]\nstep_h = 0.5\n', encoding="utf-8")

        with pytest.raises(InputError, match="flat"):
            read_config_file(path)
