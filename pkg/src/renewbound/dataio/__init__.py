"""
The `renewbound.dataio` package loads the weekly zonal price and production data
and builds the running-maximum proxies of the installed power.
"""

from ._model import SourceKind, ZonalObservation, ZonalDataset, InstalledPowerProxy
from ._proxy import installed_power_proxy, align, AlignedSeries
from ._csv import ZonalDataError, ZonalPanel, load_zonal_panel, load_zonal_csv, write_zonal_csv, COLUMNS

__all__ = [
    "SourceKind",
    "ZonalObservation",
    "ZonalDataset",
    "InstalledPowerProxy",
    "installed_power_proxy",
    "align",
    "AlignedSeries",
    "ZonalDataError",
    "ZonalPanel",
    "load_zonal_panel",
    "load_zonal_csv",
    "write_zonal_csv",
    "COLUMNS",
]
