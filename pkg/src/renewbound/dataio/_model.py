import dataclasses
import enum
import math
import typing

import numpy as np


class SourceKind(enum.Enum):
    """
    `SourceKind` represents a renewable source whose installed power impacts the price.
    """

    PHOTOVOLTAIC = "photovoltaic"
    """
    Solar photovoltaic production.
    """

    WIND = "wind"
    """
    Wind production.
    """

    @staticmethod
    def from_label(label: typing.Union[str, "SourceKind"]) -> "SourceKind":
        """
        Parse the source kind from a label such as `photovoltaic`, `pv`, or `wind`.

        >>> SourceKind.from_label("PV")
        <SourceKind.PHOTOVOLTAIC: 'photovoltaic'>
        """
        if isinstance(label, SourceKind):
            return label
        normalized = label.strip().lower()
        if normalized in ("photovoltaic", "pv", "solar"):
            return SourceKind.PHOTOVOLTAIC
        elif normalized == "wind":
            return SourceKind.WIND
        raise ValueError(f"Unknown source kind `{label}`")


@dataclasses.dataclass(frozen=True)
class ZonalObservation:
    """
    Weekly average price and renewable production of a single price zone.
    """

    week_index: int
    """
    0-based ordinal of the week.
    """

    price: float
    """
    Average price in €/MWh. The price can be negative.
    """

    pv_production: float
    """
    Photovoltaic production in MWh.
    """

    wind_production: float

    def __post_init__(self):
        if not isinstance(self.week_index, int) or self.week_index < 0:
            raise ValueError(f"`week_index` must be a non-negative `int` but was {self.week_index}")
        if not math.isfinite(self.price):
            raise ValueError(f"`price` must be finite but was {self.price}")
        for name in ("pv_production", "wind_production"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val >= 0):
                raise ValueError(f"`{name}` must be non-negative but was {val}")


@dataclasses.dataclass(frozen=True)
class ZonalDataset:
    """
    `ZonalDataset` includes the weekly observations of one price zone
    along with the national production totals of the same weeks.

    The observations are sorted by the week index and there are no gaps.
    """

    zone_name: str
    observations: typing.Sequence[ZonalObservation]
    national_pv: typing.Sequence[float]
    national_wind: typing.Sequence[float]
    dt_years: float
    """
    Time between two observations in years.
    """

    def __post_init__(self):
        object.__setattr__(self, "observations", tuple(self.observations))
        object.__setattr__(self, "national_pv", tuple(float(v) for v in self.national_pv))
        object.__setattr__(self, "national_wind", tuple(float(v) for v in self.national_wind))

        n = len(self.observations)
        if n < 2:
            raise ValueError(f"Dataset needs at least 2 observations but got {n}")
        if len(self.national_pv) != n or len(self.national_wind) != n:
            raise ValueError(
                f"National totals ({len(self.national_pv)}, {len(self.national_wind)}) "
                f"must be as long as the observations ({n})"
            )
        if not (math.isfinite(self.dt_years) and self.dt_years > 0):
            raise ValueError(f"`dt_years` must be positive but was {self.dt_years}")
        for prev, cur in zip(self.observations, self.observations[1:]):
            if cur.week_index != prev.week_index + 1:
                raise ValueError(f"Week indices must be consecutive but {prev.week_index} is followed by {cur.week_index}")

    @property
    def n_obs(self) -> int:
        return len(self.observations)

    @property
    def prices(self) -> np.ndarray:
        """
        Get the zonal prices as a 1D array.
        """
        return np.array([o.price for o in self.observations], dtype=float)

    def national_production(self, kind: SourceKind) -> typing.Sequence[float]:
        if kind == SourceKind.PHOTOVOLTAIC:
            return self.national_pv
        elif kind == SourceKind.WIND:
            return self.national_wind
        raise ValueError(f"Unsupported source kind {kind}")


@dataclasses.dataclass(frozen=True)
class InstalledPowerProxy:
    """
    Running maximum of the national production of one source kind,
    used as a proxy of the installed power.

    The values are expressed in MW-equivalent of rated production.
    """

    values: typing.Sequence[float]
    source_kind: SourceKind

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) == 0:
            raise ValueError("Proxy must not be empty")
        for i, (prev, cur) in enumerate(zip(self.values, self.values[1:])):
            if cur < prev:
                raise ValueError(f"Proxy must be nondecreasing but value #{i + 1} ({cur}) is below {prev}")

    def to_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def __len__(self) -> int:
        return len(self.values)
