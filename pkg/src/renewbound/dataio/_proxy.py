import typing

import numpy as np

from ._model import InstalledPowerProxy, SourceKind, ZonalDataset


def installed_power_proxy(
    national_production: typing.Sequence[float],
    kind: SourceKind,
    scale: float = 1.0,
) -> InstalledPowerProxy:
    """
    Estimate the installed power as the running maximum of the national production.

    >>> installed_power_proxy([3, 5, 4, 6], SourceKind.WIND).values
    (3.0, 5.0, 5.0, 6.0)

    :param national_production: a sequence of non-negative national production totals.
    :param kind: the source kind of the production.
    :param scale: a positive proportionality constant applied to the running maximum.
    """
    production = np.asarray(national_production, dtype=float)
    if production.ndim != 1 or production.size == 0:
        raise ValueError("National production must be a non-empty sequence")
    if not np.all(np.isfinite(production)):
        raise ValueError("National production must be finite")
    negative = np.flatnonzero(production < 0)
    if negative.size > 0:
        raise ValueError(f"National production must be non-negative but entry #{negative[0]} is {production[negative[0]]}")
    if not scale > 0:
        raise ValueError(f"`scale` must be positive but was {scale}")

    return InstalledPowerProxy(
        values=scale * np.maximum.accumulate(production),
        source_kind=SourceKind.from_label(kind),
    )


class AlignedSeries(typing.NamedTuple):
    """
    Equal-length series ready for the ARX regression.
    """

    prices: np.ndarray
    pv: InstalledPowerProxy
    wind: InstalledPowerProxy

    def exogenous(
        self,
        kinds: typing.Iterable[SourceKind] = (SourceKind.PHOTOVOLTAIC, SourceKind.WIND),
    ) -> typing.Mapping[SourceKind, np.ndarray]:
        """
        Get a mapping from source kind to the proxy values for the requested `kinds`.
        """
        return {kind: self.proxy(kind).to_array() for kind in kinds}

    def proxy(self, kind: SourceKind) -> InstalledPowerProxy:
        return self.pv if kind == SourceKind.PHOTOVOLTAIC else self.wind


def align(
    dataset: ZonalDataset,
    scale: float = 1.0,
) -> AlignedSeries:
    """
    Align the zonal prices with the installed power proxies computed from the national totals.
    """
    prices = dataset.prices
    pv = installed_power_proxy(dataset.national_pv, SourceKind.PHOTOVOLTAIC, scale=scale)
    wind = installed_power_proxy(dataset.national_wind, SourceKind.WIND, scale=scale)
    if not (len(prices) == len(pv) == len(wind)):
        raise ValueError(f"Length mismatch: {len(prices)} prices, {len(pv)} PV and {len(wind)} wind proxy values")

    return AlignedSeries(prices=prices, pv=pv, wind=wind)
