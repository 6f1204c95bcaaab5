import dataclasses
import math
import os
import pathlib
import sys
import typing

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from renewbound._base import InputError
from renewbound.boundary import SCHEMES as BOUNDARY_SCHEMES
from renewbound.config import (
    DEFAULT_ALPHA,
    DEFAULT_BOX_PIERCE_LAGS,
    DEFAULT_DT_SIM,
    DEFAULT_DT_YEARS,
    DEFAULT_N_PATHS,
    DEFAULT_QUAD_MAX_NODES,
    DEFAULT_QUAD_REL_TOL,
    DEFAULT_ROOT_TOL,
    DEFAULT_SEED,
    ZONE_PRESETS,
)
from renewbound.dataio import SourceKind
from renewbound.estimate import OuParams
from renewbound.oufn import BoundaryVariants, EconParams
from renewbound.policy import SCHEMES as PRICE_SCHEMES

VARIANT_KEYS = ("sign_convention", "cost_normalization", "rhat_y_coeff")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    `RunConfig` holds all parameters of one CLI run.

    The economic parameters are required. The price parameters `kappa`, `zeta`, `sigma` (and `beta`)
    are optional: if they are absent, or if `ou_from_data` is set, they are estimated from `data_path`.
    """

    zone: str
    rho: float
    cost_c: float
    conv_a: float
    theta: float

    data_path: typing.Optional[str] = None
    source: str = SourceKind.PHOTOVOLTAIC.value
    """
    The renewable source that impacts the price of the zone.
    """
    kappa: typing.Optional[float] = None
    zeta: typing.Optional[float] = None
    beta: typing.Optional[float] = None
    sigma: typing.Optional[float] = None
    ou_from_data: bool = False

    dt_years: float = DEFAULT_DT_YEARS
    alpha: float = DEFAULT_ALPHA
    lags: int = DEFAULT_BOX_PIERCE_LAGS

    step_h: float = 0.5
    scheme: str = "explicit"
    stability_guard: bool = True
    root_tol: float = DEFAULT_ROOT_TOL
    quad_rel_tol: float = DEFAULT_QUAD_REL_TOL
    quad_max_nodes: int = DEFAULT_QUAD_MAX_NODES
    compare_variants: bool = True
    """
    Compute the boundary under every `rhat_y_coeff` variant and report all of them next to the published values.
    """

    dt_sim: float = DEFAULT_DT_SIM
    horizon: typing.Optional[float] = None
    n_paths: int = DEFAULT_N_PATHS
    seed: int = DEFAULT_SEED
    antithetic: bool = True
    price_scheme: str = "exact"
    x0: typing.Optional[float] = None
    """
    Initial price of the simulations, `zeta` if absent.
    """
    y0: float = 0.0

    capacity_scale: float = 1.0
    """
    Factor converting the installed power proxy into MW on the capacity axis of the boundary.
    """

    psi_points: int = 201
    psi_half_width: float = 5.0
    """
    Half width of the `psi-dump` grid in units of the stationary standard deviation.
    """

    sign_convention: str = BoundaryVariants().sign_convention
    cost_normalization: str = BoundaryVariants().cost_normalization
    rhat_y_coeff: str = BoundaryVariants().rhat_y_coeff

    output_dir: typing.Optional[str] = None

    def __post_init__(self):
        for name in ("rho", "cost_c", "conv_a", "theta", "dt_years", "step_h", "root_tol", "quad_rel_tol", "dt_sim"):
            _check_positive(name, getattr(self, name))
        for name in ("horizon", "kappa", "sigma", "capacity_scale", "psi_half_width"):
            value = getattr(self, name)
            if value is not None:
                _check_positive(name, value)
        if not 0.0 < self.alpha < 1.0:
            raise InputError(f"`alpha` must be in (0, 1) but was {self.alpha}")
        for name in ("lags", "quad_max_nodes", "n_paths", "psi_points"):
            if getattr(self, name) < 1:
                raise InputError(f"`{name}` must be positive but was {getattr(self, name)}")
        if self.antithetic and (self.n_paths < 2 or self.n_paths % 2 != 0):
            raise InputError(f"Antithetic sampling needs an even `n_paths` of at least 2 but got {self.n_paths}")
        if self.psi_points < 2:
            raise InputError(f"`psi_points` must be at least 2 but was {self.psi_points}")
        if self.seed < 0:
            raise InputError(f"`seed` must be non-negative but was {self.seed}")
        if not 0.0 <= self.y0 <= self.theta:
            raise InputError(f"`y0` must be in [0, theta={self.theta}] but was {self.y0}")

        given = [name for name in ("kappa", "zeta", "sigma") if getattr(self, name) is not None]
        if 0 < len(given) < 3:
            raise InputError(f"Set all of `kappa`, `zeta`, `sigma` or none of them, but only {', '.join(given)} were set")
        if self.beta is not None and self.beta < 0:
            raise InputError(f"`beta` must be non-negative but was {self.beta}")
        if self.scheme not in BOUNDARY_SCHEMES:
            raise InputError(f"`scheme` must be one of {', '.join(BOUNDARY_SCHEMES)} but was {self.scheme}")
        if self.price_scheme not in PRICE_SCHEMES:
            raise InputError(f"`price_scheme` must be one of {', '.join(PRICE_SCHEMES)} but was {self.price_scheme}")

        try:
            SourceKind.from_label(self.source)
            self.variants()
        except ValueError as e:
            raise InputError(str(e))

    @property
    def source_kind(self) -> SourceKind:
        return SourceKind.from_label(self.source)

    def econ(self) -> EconParams:
        return EconParams(rho=self.rho, cost_c=self.cost_c, conv_a=self.conv_a, theta=self.theta)

    def variants(self) -> BoundaryVariants:
        return BoundaryVariants(
            sign_convention=self.sign_convention,
            cost_normalization=self.cost_normalization,
            rhat_y_coeff=self.rhat_y_coeff,
        )

    def ou_override(self) -> typing.Optional[OuParams]:
        """
        Get the price parameters set in the configuration or `None` if they should be estimated.
        """
        if self.ou_from_data or self.kappa is None:
            return None
        return OuParams.single(
            kappa=self.kappa,
            zeta=self.zeta,
            sigma=self.sigma,
            beta=0.0 if self.beta is None else self.beta,
            source=self.source_kind,
        )

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        """
        Get the parameters that determine the results of a run, leaving out the output directory.
        """
        values = dataclasses.asdict(self)
        del values["output_dir"]
        return values

    @staticmethod
    def from_mapping(values: typing.Mapping[str, typing.Any]) -> "RunConfig":
        """
        Create the config from a flat mapping, such as the content of a TOML file.

        :raises InputError: if a key is unknown, a required key is missing, or a value has a wrong type.
        """
        unknown = sorted(set(values) - set(_FIELD_TYPES))
        if unknown:
            raise InputError(f"Unknown configuration key(s): {', '.join(unknown)}")
        missing = [name for name in _REQUIRED if name not in values]
        if missing:
            raise InputError(f"Missing configuration key(s): {', '.join(missing)}")

        return RunConfig(**{name: _coerce(name, value) for name, value in values.items()})

    @staticmethod
    def from_preset(
        zone: str,
        **overrides: typing.Any,
    ) -> "RunConfig":
        """
        Create the config of a zone with tabulated parameters.

        >>> RunConfig.from_preset("Sardinia").theta
        5700.0
        """
        if zone not in ZONE_PRESETS:
            raise InputError(f"No preset for zone `{zone}`. Available presets: {', '.join(ZONE_PRESETS)}")
        values = dict(ZONE_PRESETS[zone]._asdict())
        values["zone"] = zone
        values.update(overrides)
        return RunConfig.from_mapping(values)


_FIELD_TYPES: typing.Mapping[str, typing.Tuple[type, bool]] = {
    "zone": (str, False),
    "rho": (float, False),
    "cost_c": (float, False),
    "conv_a": (float, False),
    "theta": (float, False),
    "data_path": (str, True),
    "source": (str, False),
    "kappa": (float, True),
    "zeta": (float, True),
    "beta": (float, True),
    "sigma": (float, True),
    "ou_from_data": (bool, False),
    "dt_years": (float, False),
    "alpha": (float, False),
    "lags": (int, False),
    "step_h": (float, False),
    "scheme": (str, False),
    "stability_guard": (bool, False),
    "root_tol": (float, False),
    "quad_rel_tol": (float, False),
    "quad_max_nodes": (int, False),
    "compare_variants": (bool, False),
    "dt_sim": (float, False),
    "horizon": (float, True),
    "n_paths": (int, False),
    "seed": (int, False),
    "antithetic": (bool, False),
    "price_scheme": (str, False),
    "x0": (float, True),
    "y0": (float, False),
    "capacity_scale": (float, False),
    "psi_points": (int, False),
    "psi_half_width": (float, False),
    "sign_convention": (str, False),
    "cost_normalization": (str, False),
    "rhat_y_coeff": (str, False),
    "output_dir": (str, True),
}
"""
The expected type of each configuration key and whether the key may be `None`.
"""

_REQUIRED = ("zone", "rho", "cost_c", "conv_a", "theta")


def _coerce(name: str, value: typing.Any) -> typing.Any:
    kind, optional = _FIELD_TYPES[name]
    if value is None and optional:
        return None
    if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if kind is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if kind is bool and isinstance(value, bool):
        return value
    if kind is str and isinstance(value, (str, os.PathLike)):
        return str(value)
    raise InputError(f"`{name}` must be a `{kind.__name__}` but was {value!r}")


def _check_positive(name: str, value: float):
    if not (math.isfinite(value) and value > 0):
        raise InputError(f"`{name}` must be positive but was {value}")


def read_config_file(path: typing.Union[str, os.PathLike]) -> typing.Mapping[str, typing.Any]:
    """
    Read a flat TOML file with configuration keys.

    Relative `data_path` and `output_dir` values are resolved against the directory of the file.
    """
    path = pathlib.Path(path)
    if not path.is_file():
        raise InputError(f"Missing configuration file {path}")
    try:
        with open(path, "rb") as fh:
            values = tomllib.load(fh)
    except tomllib.TOMLDecodeError as e:
        raise InputError(f"Malformed configuration file {path}: {e}")

    tables = [key for key, value in values.items() if isinstance(value, dict)]
    if tables:
        raise InputError(f"Configuration must be flat but {path} has table(s): {', '.join(tables)}")
    for key in ("data_path", "output_dir"):
        if isinstance(values.get(key), str) and not os.path.isabs(values[key]):
            values[key] = str(path.parent / values[key])
    return values


def parse_variant(item: str) -> typing.Tuple[str, str]:
    """
    Parse a `key=value` boundary variant switch.

    >>> parse_variant("rhat_y_coeff=two_kappa")
    ('rhat_y_coeff', 'two_kappa')
    """
    key, sep, value = item.partition("=")
    key, value = key.strip(), value.strip()
    if not sep or not value:
        raise InputError(f"Variant `{item}` must be formatted as `key=value`")
    if key not in VARIANT_KEYS:
        raise InputError(f"Unknown variant `{key}`. Available variants: {', '.join(VARIANT_KEYS)}")
    return key, value


def load_run_config(
    path: typing.Optional[typing.Union[str, os.PathLike]] = None,
    zone: typing.Optional[str] = None,
    overrides: typing.Optional[typing.Mapping[str, typing.Any]] = None,
) -> RunConfig:
    """
    Assemble the config of a run.

    The values are taken from the preset of the zone (if any), then from the config file,
    then from the command-line `overrides`, each source replacing the values of the previous one.
    """
    values: typing.Dict[str, typing.Any] = {}
    if path is not None:
        values.update(read_config_file(path))
    if zone is not None:
        values["zone"] = zone
    if overrides:
        values.update(overrides)
    if "zone" not in values:
        raise InputError("No zone given: set `zone` in the configuration file or pass `--zone`")

    merged: typing.Dict[str, typing.Any] = {}
    if values["zone"] in ZONE_PRESETS:
        merged.update(ZONE_PRESETS[values["zone"]]._asdict())
    merged.update(values)
    return RunConfig.from_mapping(merged)
