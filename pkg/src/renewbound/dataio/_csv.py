import datetime
import io
import logging
import math
import os
import typing

import pandas as pd

from stairval.notepad import Notepad, create_notepad

from renewbound._base import InputError
from renewbound.config import DEFAULT_DT_YEARS, ZONES
from renewbound.util import PathOrHandle, closing_if_path, open_text_io_handle_for_writing

from ._model import ZonalDataset, ZonalObservation

COLUMNS = ("week_start", "zone", "price_eur_mwh", "pv_mwh", "wind_mwh")
NUMERIC_COLUMNS = ("price_eur_mwh", "pv_mwh", "wind_mwh")

logger = logging.getLogger(__name__)


class ZonalDataError(InputError):
    """
    Reports an invalid zonal data file.
    """

    pass


class ZonalPanel:
    """
    `ZonalPanel` holds the validated weekly observations of all zones of a data file.

    The frame is in long format with the :data:`COLUMNS` columns, sorted by week and zone.
    """

    def __init__(
        self,
        frame: pd.DataFrame,
        dt_years: float = DEFAULT_DT_YEARS,
    ):
        assert tuple(frame.columns) == COLUMNS
        self._frame = frame.reset_index(drop=True)
        self._dt_years = dt_years

    @property
    def frame(self) -> pd.DataFrame:
        """
        Get a copy of the long-format data frame.
        """
        return self._frame.copy()

    @property
    def zones(self) -> typing.Sequence[str]:
        present = set(self._frame["zone"])
        return tuple(z for z in ZONES if z in present)

    @property
    def weeks(self) -> typing.Sequence[datetime.date]:
        return tuple(sorted(set(self._frame["week_start"])))

    @property
    def dt_years(self) -> float:
        return self._dt_years

    def dataset(self, zone: str) -> ZonalDataset:
        """
        Extract the dataset of a `zone` along with the national totals.

        The national totals are the sums over all zones of the panel.
        """
        if zone not in self.zones:
            raise ZonalDataError(f"Zone `{zone}` is absent from the data. Available zones: {', '.join(self.zones)}")

        totals = self._frame.groupby("week_start", sort=True)[["pv_mwh", "wind_mwh"]].sum()
        rows = self._frame[self._frame["zone"] == zone].sort_values("week_start")
        observations = [
            ZonalObservation(
                week_index=i,
                price=float(row.price_eur_mwh),
                pv_production=float(row.pv_mwh),
                wind_production=float(row.wind_mwh),
            )
            for i, row in enumerate(rows.itertuples(index=False))
        ]
        return ZonalDataset(
            zone_name=zone,
            observations=observations,
            national_pv=totals["pv_mwh"].to_numpy(),
            national_wind=totals["wind_mwh"].to_numpy(),
            dt_years=self._dt_years,
        )

    def __eq__(self, value: object) -> bool:
        return (
            isinstance(value, ZonalPanel)
            and self._dt_years == value._dt_years
            and self._frame.equals(value._frame)
        )

    def __repr__(self) -> str:
        return f"ZonalPanel(zones={self.zones}, n_weeks={len(self.weeks)}, dt_years={self._dt_years})"


def load_zonal_panel(
    path: typing.Union[str, os.PathLike, io.IOBase],
    dt_years: float = DEFAULT_DT_YEARS,
) -> ZonalPanel:
    """
    Load and validate a long-format zonal CSV file.

    All issues found in the file are collected and reported at once in a :class:`ZonalDataError`.

    :param path: path to the CSV file or a file-like object.
    :param dt_years: time between two weeks in years.
    """
    if isinstance(path, (str, os.PathLike)) and not os.path.isfile(path):
        raise ZonalDataError(f"Missing file {path}")

    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise ZonalDataError("Empty file: the header row is missing")
    except pd.errors.ParserError as e:
        raise ZonalDataError(f"Malformed CSV: {e}")

    if tuple(raw.columns) != COLUMNS:
        missing = [c for c in COLUMNS if c not in raw.columns]
        raise ZonalDataError(
            f"Header {','.join(raw.columns)} does not match {','.join(COLUMNS)}"
            + (f" (missing column(s): {', '.join(missing)})" if missing else "")
        )
    if len(raw) == 0:
        raise ZonalDataError("empty dataset")

    notepad = create_notepad(label="Zonal data")
    frame = _parse_rows(raw, notepad)
    if not notepad.has_errors(include_subsections=True):
        _check_week_grid(frame, notepad)

    if notepad.has_errors(include_subsections=True):
        raise ZonalDataError(summarize_issues(notepad))

    zones = set(frame["zone"])
    if len(zones) < len(ZONES):
        logger.warning("National totals are computed from %d zone(s) only: %s", len(zones), sorted(zones))

    frame = frame.sort_values(["week_start", "zone"], key=_zone_sort_key).reset_index(drop=True)
    return ZonalPanel(frame, dt_years=dt_years)


def load_zonal_csv(
    path: typing.Union[str, os.PathLike, io.IOBase],
    zone: str,
    dt_years: float = DEFAULT_DT_YEARS,
) -> ZonalDataset:
    """
    Load the dataset of a single `zone` from a zonal CSV file.

    The national totals are computed as sums over all zones present in the file.
    """
    return load_zonal_panel(path, dt_years=dt_years).dataset(zone)


def write_zonal_csv(
    panel: ZonalPanel,
    file: PathOrHandle,
):
    """
    Write the panel in the long CSV format accepted by :func:`load_zonal_panel`.
    """
    frame = panel.frame
    frame["week_start"] = [d.isoformat() for d in frame["week_start"]]
    fh = open_text_io_handle_for_writing(file)
    with closing_if_path(file, fh):
        frame.to_csv(fh, index=False, float_format="%.17g", lineterminator="\n")


def summarize_issues(notepad: Notepad) -> str:
    """
    Summarize the errors of the `notepad` into a `str`, one issue per line.
    """
    lines = []
    for node in notepad.iter_sections():
        for error in node.errors():
            prefix = f"{node.label}: " if node.level > 0 else ""
            lines.append(prefix + error.message + (f". {error.solution}" if error.solution else ""))
    return os.linesep.join(lines)


def _parse_rows(raw: pd.DataFrame, notepad: Notepad) -> pd.DataFrame:
    records = []
    seen = {}
    for i, row in enumerate(raw.itertuples(index=False)):
        # Line 1 is the header.
        line = i + 2
        sub = notepad.add_subsection(f"row {line}")
        record = {}

        try:
            record["week_start"] = datetime.date.fromisoformat(str(row.week_start).strip())
        except ValueError:
            sub.add_error(f"`week_start` value '{row.week_start}' is not an ISO-8601 date")

        zone = str(row.zone).strip()
        if zone not in ZONES:
            sub.add_error(f"`zone` value '{row.zone}' is not a known zone", f"Use one of {', '.join(ZONES)}")
        record["zone"] = zone

        for column in NUMERIC_COLUMNS:
            value = str(getattr(row, column)).strip()
            try:
                number = float(value)
            except ValueError:
                sub.add_error(f"`{column}` value '{value}' is not a number")
                continue
            if not math.isfinite(number):
                sub.add_error(f"`{column}` value '{value}' is not finite")
            elif column != "price_eur_mwh" and number < 0:
                sub.add_error(f"`{column}` value {value} must not be negative")
            record[column] = number

        key = (record.get("week_start"), zone)
        if key[0] is not None and key in seen:
            sub.add_error(f"duplicate week_index: week {key[0]} of zone {zone} also appears on row {seen[key]}")
        else:
            seen[key] = line
        records.append(record)

    if notepad.has_errors(include_subsections=True):
        return pd.DataFrame(columns=list(COLUMNS))
    return pd.DataFrame.from_records(records, columns=list(COLUMNS))


def _check_week_grid(frame: pd.DataFrame, notepad: Notepad):
    zones = set(frame["zone"])
    weeks = sorted(set(frame["week_start"]))
    if len(weeks) < 2:
        notepad.add_error(f"empty dataset: at least 2 weeks are needed but found {len(weeks)}")
        return

    by_week = frame.groupby("week_start")["zone"].apply(set)
    for week in weeks:
        absent = zones - by_week[week]
        if absent:
            notepad.add_error(
                f"Week {week.isoformat()} lacks zone(s) {', '.join(sorted(absent))}",
                "Rows of every zone must be present for each week to compute national totals",
            )

    for prev, cur in zip(weeks, weeks[1:]):
        if (cur - prev).days != 7:
            notepad.add_error(f"Weeks {prev.isoformat()} and {cur.isoformat()} are not 7 days apart")


def _zone_sort_key(column: pd.Series) -> pd.Series:
    if column.name == "zone":
        return column.map(ZONES.index)
    return column
