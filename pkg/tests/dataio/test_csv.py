import io
import pathlib

import numpy as np
import pandas as pd
import pytest

from renewbound.config import ZONES
from renewbound.dataio import (
    SourceKind,
    ZonalDataError,
    align,
    load_zonal_csv,
    load_zonal_panel,
    write_zonal_csv,
)


class TestLoadZonalPanel:
    def test_synthetic_file(self, fpath_synthetic_csv: str):
        panel = load_zonal_panel(fpath_synthetic_csv)

        assert panel.zones == ZONES
        assert len(panel.weeks) == 321
        assert panel.dt_years == pytest.approx(1 / 52)

    def test_write_and_read(self, fpath_synthetic_csv: str, tmp_path: pathlib.Path):
        panel = load_zonal_panel(fpath_synthetic_csv)
        path = tmp_path / "copy.csv"

        write_zonal_csv(panel, path)

        assert load_zonal_panel(path) == panel

    def test_national_totals_sum_the_zones(self, fpath_synthetic_csv: str, synthetic_frame: pd.DataFrame):
        dataset = load_zonal_csv(fpath_synthetic_csv, "North")

        first_week = synthetic_frame[synthetic_frame["week_start"] == "2012-05-07"]
        assert dataset.national_pv[0] == pytest.approx(first_week["pv_mwh"].sum())
        assert dataset.national_wind[0] == pytest.approx(first_week["wind_mwh"].sum())
        assert dataset.n_obs == 321

    def test_proxies_are_running_maxima(self, fpath_synthetic_csv: str):
        aligned = align(load_zonal_csv(fpath_synthetic_csv, "Sardinia"))

        pv = aligned.proxy(SourceKind.PHOTOVOLTAIC).to_array()
        assert np.all(np.diff(pv) >= 0)
        assert pv[-1] == pytest.approx(max(load_zonal_csv(fpath_synthetic_csv, "Sardinia").national_pv))

    def test_header_only(self, fpath_header_only_csv: str):
        with pytest.raises(ZonalDataError, match="empty dataset"):
            load_zonal_panel(fpath_header_only_csv)

    def test_missing_file(self, tmp_path: pathlib.Path):
        with pytest.raises(ZonalDataError, match="Missing file"):
            load_zonal_panel(tmp_path / "absent.csv")

    def test_wrong_header(self):
        buf = io.StringIO("week,zone,price\n2012-05-07,North,50.0\n")

        with pytest.raises(ZonalDataError, match="missing column"):
            load_zonal_panel(buf)

    def test_all_issues_are_reported(self):
        buf = io.StringIO(
            "week_start,zone,price_eur_mwh,pv_mwh,wind_mwh\n"
            "2012-05-07,North,50.0,-1.0,10.0\n"
            "2012-05-14,Narnia,51.0,1.0,10.0\n"
            "not-a-date,North,abc,1.0,10.0\n"
        )

        with pytest.raises(ZonalDataError) as e:
            load_zonal_panel(buf)

        message = str(e.value)
        assert "row 2" in message and "pv_mwh" in message
        assert "Narnia" in message
        assert "not-a-date" in message
        assert "'abc' is not a number" in message

    def test_gap_in_weeks(self):
        buf = io.StringIO(
            "week_start,zone,price_eur_mwh,pv_mwh,wind_mwh\n"
            "2012-05-07,North,50.0,1.0,10.0\n"
            "2012-05-14,North,51.0,1.0,10.0\n"
            "2012-05-28,North,52.0,1.0,10.0\n"
        )

        with pytest.raises(ZonalDataError, match="not 7 days apart"):
            load_zonal_panel(buf)

    def test_absent_zone(self, fpath_synthetic_csv: str):
        panel = load_zonal_panel(fpath_synthetic_csv)
        subset = panel.frame
        subset = subset[subset["zone"] == "North"]
        buf = io.StringIO()
        subset.assign(week_start=[d.isoformat() for d in subset["week_start"]]).to_csv(buf, index=False)
        buf.seek(0)

        with pytest.raises(ZonalDataError, match="absent"):
            load_zonal_csv(buf, "Sardinia")
