import enum
import typing

from json import JSONDecoder, JSONEncoder

import numpy as np

from renewbound.boundary import FreeBoundary, boundary_metadata
from renewbound.dataio import SourceKind
from renewbound.estimate import ArxFit, BoxPierceResult, EstimationReport, FitSummary, OuParams, OuStdErrors, star_code
from renewbound.oufn import BoundaryVariants, EconParams
from renewbound.policy import ComparisonReport, PayoffEstimate


def _by_kind(values: typing.Mapping[SourceKind, float]) -> typing.Dict[str, float]:
    return {kind.value: value for kind, value in values.items()}


def _std_errors(se: typing.Optional[OuStdErrors]) -> typing.Optional[typing.Mapping[str, typing.Any]]:
    if se is None:
        return None
    return {"kappa": se.kappa, "zeta": se.zeta, "beta": _by_kind(se.beta), "sigma": se.sigma}


class RenewboundJSONEncoder(JSONEncoder):
    """
    `RenewboundJSONEncoder` encodes renewbound's types into a JSON message.

    The encoder is supposed to be used along with Python's `json` module via the `cls` parameter of :func:`json.dump`
    or :func:`json.dumps`.
    """

    def default(self, o):
        if isinstance(o, OuParams):
            return {
                "kappa": o.kappa,
                "zeta": o.zeta,
                "beta": _by_kind(o.beta),
                "sigma": o.sigma,
            }
        elif isinstance(o, EconParams):
            return {
                "rho": o.rho,
                "cost_c": o.cost_c,
                "conv_a": o.conv_a,
                "theta": o.theta,
            }
        elif isinstance(o, BoundaryVariants):
            return dict(o.to_dict())
        elif isinstance(o, ArxFit):
            names = o.names
            return {
                "coefficients": {name: o.value_of(name) for name in names},
                "std_errors": {name: o.std_errors[name] for name in names},
                "p_values": {name: o.p_values[name] for name in names},
                "stars": {name: star_code(o.p_values[name]) for name in names},
                "delta": o.delta,
                "n_obs": o.n_obs,
            }
        elif isinstance(o, BoxPierceResult):
            return {
                "statistic": o.statistic,
                "lags": o.lags,
                "p_value": o.p_value,
            }
        elif isinstance(o, FitSummary):
            return {
                "fit": o.fit,
                "box_pierce": o.box_pierce,
                "ou": o.ou,
                "ou_std_errors": _std_errors(o.ou_std_errors),
            }
        elif isinstance(o, EstimationReport):
            return {
                "zone": o.zone,
                "dt_years": o.dt_years,
                "alpha": o.alpha,
                "full": o.full,
                "restricted": o.restricted,
                "retained": list(o.retained),
                "passes_box_pierce": o.passes_box_pierce,
            }
        elif isinstance(o, FreeBoundary):
            return boundary_metadata(o)
        elif isinstance(o, PayoffEstimate):
            return {
                "mean": o.mean,
                "std_error": o.std_error,
                "n_paths": o.n_paths,
                "horizon": o.horizon,
                "tail_bound": o.tail_bound,
                "seed": o.seed,
            }
        elif isinstance(o, ComparisonReport):
            return {
                "n_obs": o.n_obs,
                "n_installing": o.n_installing,
                "missed_fraction": o.missed_fraction,
                "idle_fraction": o.idle_fraction,
                "capacity_scale": o.capacity_scale,
                "emitted_plot_path": o.emitted_plot_path,
            }
        elif isinstance(o, enum.Enum):
            return o.value
        elif isinstance(o, np.ndarray):
            return o.tolist()
        elif isinstance(o, np.generic):
            return o.item()
        else:
            return super().default(o)


_OU_FIELDS = ("kappa", "zeta", "beta", "sigma")
_ECON_FIELDS = ("rho", "cost_c", "conv_a", "theta")
_VARIANT_FIELDS = ("sign_convention", "cost_normalization", "rhat_y_coeff")
_BOX_PIERCE_FIELDS = ("statistic", "lags", "p_value")
_PAYOFF_FIELDS = ("mean", "std_error", "n_paths", "horizon", "tail_bound", "seed")


class RenewboundJSONDecoder(JSONDecoder):
    """
    `RenewboundJSONDecoder` decodes the parameter and result records of renewbound from a JSON message.

    The decoder is supposed to be used along with Python's `json` module via the `cls` parameter of :func:`json.load`
    or :func:`json.loads`.
    """

    def __init__(
        self,
        *args: typing.Any,
        **kwargs: typing.Any,
    ):
        super().__init__(
            *args,
            object_hook=RenewboundJSONDecoder.object_hook,
            **{k: v for k, v in kwargs.items() if k != "object_hook"},
        )

    @staticmethod
    def _has_all_fields(
        obj: typing.Dict[str, typing.Any],
        query: typing.Iterable[str],
    ) -> bool:
        return all(key in obj for key in query)

    @staticmethod
    def object_hook(obj: typing.Dict[typing.Any, typing.Any]) -> typing.Any:
        if RenewboundJSONDecoder._has_all_fields(obj, _OU_FIELDS) and isinstance(obj["beta"], dict):
            return OuParams(
                kappa=obj["kappa"],
                zeta=obj["zeta"],
                beta={SourceKind(k): v for k, v in obj["beta"].items()},
                sigma=obj["sigma"],
            )
        elif RenewboundJSONDecoder._has_all_fields(obj, _ECON_FIELDS):
            return EconParams(
                rho=obj["rho"],
                cost_c=obj["cost_c"],
                conv_a=obj["conv_a"],
                theta=obj["theta"],
            )
        elif RenewboundJSONDecoder._has_all_fields(obj, _VARIANT_FIELDS):
            return BoundaryVariants(
                sign_convention=obj["sign_convention"],
                cost_normalization=obj["cost_normalization"],
                rhat_y_coeff=obj["rhat_y_coeff"],
            )
        elif RenewboundJSONDecoder._has_all_fields(obj, _BOX_PIERCE_FIELDS):
            return BoxPierceResult(
                statistic=obj["statistic"],
                lags=obj["lags"],
                p_value=obj["p_value"],
            )
        elif RenewboundJSONDecoder._has_all_fields(obj, _PAYOFF_FIELDS):
            return PayoffEstimate(
                mean=obj["mean"],
                std_error=obj["std_error"],
                n_paths=obj["n_paths"],
                horizon=obj["horizon"],
                tail_bound=obj["tail_bound"],
                seed=obj["seed"],
            )
        else:
            return obj
