import math
import pathlib

import pytest

from renewbound.config import (
    DEFAULT_OUTPUT_PATH,
    DEFAULT_TAIL_TOL,
    OUTDIR_ENV,
    REPORTED_VALUES,
    ZONE_PRESETS,
    ZONES,
    default_horizon,
    get_output_dir_path,
)


class TestOutputDir:
    def test_default(self, monkeypatch):
        monkeypatch.delenv(OUTDIR_ENV, raising=False)

        out = get_output_dir_path()

        assert out.name == DEFAULT_OUTPUT_PATH.name

    def test_environment_variable(
        self,
        tmp_path: pathlib.Path,
        monkeypatch,
    ):
        target = tmp_path / "runs"
        monkeypatch.setenv(OUTDIR_ENV, str(target))

        out = get_output_dir_path()

        assert out == target
        assert not target.exists()

    def test_argument_wins(
        self,
        tmp_path: pathlib.Path,
        monkeypatch,
    ):
        monkeypatch.setenv(OUTDIR_ENV, str(tmp_path / "ignored"))

        assert get_output_dir_path(str(tmp_path / "used")) == tmp_path / "used"

    def test_bad_type(self):
        with pytest.raises(ValueError):
            get_output_dir_path(42)


def test_presets_are_known_zones():
    assert set(ZONE_PRESETS) <= set(ZONES)
    assert set(REPORTED_VALUES) == set(ZONE_PRESETS)


def test_default_horizon_truncates_the_discount():
    horizon = default_horizon(0.1, 1.0 / 52.0)

    assert math.exp(-0.1 * horizon) <= DEFAULT_TAIL_TOL
    assert math.exp(-0.1 * (horizon - 1.0 / 52.0)) > DEFAULT_TAIL_TOL
