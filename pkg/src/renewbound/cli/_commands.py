import dataclasses
import json
import logging
import os
import pathlib
import typing

import numpy as np
import pandas as pd

from renewbound._base import InputError
from renewbound.boundary import (
    BOUNDARY_CSV,
    BOUNDARY_JSON,
    FreeBoundary,
    integrate_free_boundary,
    read_free_boundary,
    write_free_boundary,
)
from renewbound.config import default_horizon, get_output_dir_path
from renewbound.dataio import AlignedSeries, align, load_zonal_panel
from renewbound.estimate import EstimationReport, OuParams, estimate_zone
from renewbound.io import RenewboundJSONEncoder
from renewbound.oufn import RHAT_Y_COEFFS, BoundaryVariants, EconParams, PsiConfig, log_psi, psi_ratios
from renewbound.policy import (
    BoundaryRule,
    InstallAtStart,
    NeverInstall,
    compare_realized,
    payoff_mc,
    simulate_optimal,
    value_beta0,
    write_strategy_path,
)
from renewbound.util import open_text_io_handle_for_writing
from renewbound.view import ReferenceRow, SummaryViewer, reference_rows

from ._config import RunConfig

ESTIMATE_JSON = "estimate.json"
PAYOFF_JSON = "payoff.json"
COMPARISON_JSON = "comparison.json"
SIMULATED_PATH_CSV = "simulated_path.csv"
REALIZED_CSV = "realized.csv"
PSI_GRID_CSV = "psi_grid.csv"
SUMMARY_MD = "summary.md"

logger = logging.getLogger(__name__)


def cmd_estimate(
    config: RunConfig,
    progress: bool = False,
) -> int:
    """
    Fit the full and the restricted ARX(1) models of the zone and write `estimate.json` and `summary.md`.
    """
    out_dir = _output_dir(config)
    report = _estimate(config)
    if not report.passes_box_pierce:
        logger.warning("The price model of %s is inadequate: the residuals are autocorrelated", config.zone)

    payload = _header(config)
    payload["estimation"] = report
    _dump_json(payload, out_dir / ESTIMATE_JSON)
    _write_summary(config, "estimate", out_dir, estimation=report)

    retained = ", ".join(kind.value for kind in report.retained) or "none"
    print(f"{config.zone}: retained regressors {retained}, Box-Pierce p={report.full.box_pierce.p_value:.4f}")
    return 0


def cmd_boundary(
    config: RunConfig,
    progress: bool = False,
) -> int:
    """
    Compute the free boundary of the zone and write `boundary.csv`, `boundary.json` and `summary.md`.

    For a price impact, the boundary is also computed under the other `rhat_y_coeff` variants
    (unless `compare_variants` is off) and their values are reported next to the published ones.
    """
    out_dir = _output_dir(config)
    ou = _resolve_ou(config)
    fb, references = _boundary_artifacts(config, ou, out_dir, progress)
    _write_summary(config, "boundary", out_dir, references=references)

    print(f"{config.zone}: {fb.kind.value} boundary, terminal price {fb.terminal_x:.4f}, F(0) {fb.f_zero:.4f} €/MWh")
    return 0


def cmd_simulate(
    config: RunConfig,
    progress: bool = False,
) -> int:
    """
    Simulate the optimal strategy and estimate the payoffs of the optimal and of the two baseline strategies.

    Writes `simulated_path.csv`, `payoff.json` and `summary.md`.
    """
    out_dir = _output_dir(config)
    econ = config.econ()
    ou = _resolve_ou(config)
    fb = _ensure_boundary(config, ou, out_dir, progress)

    x0 = ou.zeta if config.x0 is None else config.x0
    y0 = config.y0
    horizon = default_horizon(econ.rho, config.dt_sim) if config.horizon is None else config.horizon

    path = simulate_optimal(
        ou, econ, fb, x0=x0, y0=y0, horizon=horizon, dt_sim=config.dt_sim, seed=config.seed, scheme=config.price_scheme
    )
    write_strategy_path(path, out_dir / SIMULATED_PATH_CSV)

    rules = {
        "optimal": BoundaryRule(fb),
        "never_install": NeverInstall(),
        "install_at_start": InstallAtStart(econ.theta),
    }
    payoffs = {}
    for name, rule in rules.items():
        logger.info("Estimating the payoff of the `%s` strategy", name)
        payoffs[name] = payoff_mc(
            ou,
            econ,
            rule,
            x0=x0,
            y0=y0,
            horizon=horizon,
            n_paths=config.n_paths,
            dt_sim=config.dt_sim,
            seed=config.seed,
            antithetic=config.antithetic,
            scheme=config.price_scheme,
            progress=progress,
        )

    payload = _header(config)
    payload.update({"x0": x0, "y0": y0, "horizon": horizon, "dt_sim": config.dt_sim, "payoffs": payoffs})
    if ou.impact == 0.0:
        psi_config = _psi_config(config, econ, ou, config.variants())
        payload["value_closed_form"] = value_beta0(x0, y0, fb.terminal_x, econ, ou, psi_config)
    payload["total_installed"] = path.total_installed
    _dump_json(payload, out_dir / PAYOFF_JSON)
    _write_summary(config, "simulate", out_dir, payoffs=payoffs)

    optimal = payoffs["optimal"]
    print(f"{config.zone}: optimal payoff {optimal.mean:.2f} ± {optimal.std_error:.2f} over {optimal.n_paths} paths")
    return 0


def cmd_compare(
    config: RunConfig,
    progress: bool = False,
) -> int:
    """
    Compare the realized prices and installed power proxy of the zone with the boundary.

    Writes `comparison.json`, `summary.md` and the plot data: `boundary.csv`, `realized.csv`,
    and `simulated_path.csv` with the optimal strategy simulated from the first realized state
    over the observation period.
    """
    out_dir = _output_dir(config)
    econ = config.econ()
    aligned, dataset_dt = _aligned(config)
    ou = _resolve_ou(config)
    fb = _ensure_boundary(config, ou, out_dir, progress)

    proxy = aligned.proxy(config.source_kind).to_array()
    report = compare_realized(
        aligned.prices, proxy, fb, capacity_scale=config.capacity_scale, plot_path=out_dir / REALIZED_CSV
    )
    report = dataclasses.replace(report, emitted_plot_path=REALIZED_CSV)

    horizon = (report.n_obs - 1) * dataset_dt
    path = simulate_optimal(
        ou,
        econ,
        fb,
        x0=report.prices[0],
        y0=report.capacities[0],
        horizon=horizon,
        dt_sim=dataset_dt,
        seed=config.seed,
        scheme=config.price_scheme,
    )
    write_strategy_path(path, out_dir / SIMULATED_PATH_CSV)

    payload = _header(config)
    payload["boundary_kind"] = fb.kind
    payload["comparison"] = report
    payload["plot_data"] = [BOUNDARY_CSV, REALIZED_CSV, SIMULATED_PATH_CSV]
    _dump_json(payload, out_dir / COMPARISON_JSON)
    _write_summary(config, "compare", out_dir, comparison=report)

    print(
        f"{config.zone}: {report.n_installing} of {report.n_obs} observations in the installation region, "
        f"missed_fraction={report.missed_fraction:.4f}, idle_fraction={report.idle_fraction:.4f}"
    )
    return 0


def cmd_psi_dump(
    config: RunConfig,
    progress: bool = False,
) -> int:
    """
    Tabulate `log psi`, the derivative ratios `psi^(k) / psi` and the relative residual of the resolvent equation
    on a grid around `zeta`, and write `psi_grid.csv`.
    """
    out_dir = _output_dir(config)
    econ = config.econ()
    ou = _resolve_ou(config)
    psi_config = _psi_config(config, econ, ou, config.variants())

    half_width = config.psi_half_width * ou.stationary_std
    xs = np.linspace(ou.zeta - half_width, ou.zeta + half_width, config.psi_points)
    rows = []
    for x in xs:
        _, r1, r2, r3 = psi_ratios(float(x), psi_config, max_order=3)
        residual = (0.5 * ou.sigma**2 * r2 + ou.kappa * (ou.zeta - x) * r1 - econ.rho) / econ.rho
        rows.append((float(x), log_psi(float(x), 0, psi_config), r1, r2, r3, residual))
    frame = pd.DataFrame(rows, columns=["x", "log_psi", "psi_ratio_1", "psi_ratio_2", "psi_ratio_3", "residual"])

    with open_text_io_handle_for_writing(out_dir / PSI_GRID_CSV) as fh:
        frame.to_csv(fh, index=False, float_format="%.17g", lineterminator="\n")

    worst = float(np.max(np.abs(frame["residual"])))
    print(f"{config.zone}: {len(frame)} grid points, max relative residual {worst:.3e}")
    return 0


def _output_dir(config: RunConfig) -> pathlib.Path:
    out_dir = get_output_dir_path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir


def _header(config: RunConfig) -> typing.Dict[str, typing.Any]:
    return {
        "zone": config.zone,
        "seed": config.seed,
        "variant_tags": config.variants().to_dict(),
        "config": config.to_dict(),
    }


def _dump_json(payload: typing.Mapping[str, typing.Any], path: pathlib.Path):
    with open_text_io_handle_for_writing(path) as fh:
        json.dump(payload, fh, cls=RenewboundJSONEncoder, indent=2)
        fh.write("\n")


def _write_summary(config: RunConfig, command: str, out_dir: pathlib.Path, **sections: typing.Any):
    report = SummaryViewer().process(
        config.zone, command, variant_tags=config.variants().to_dict(), seed=config.seed, **sections
    )
    report.write(str(out_dir / SUMMARY_MD))


def _aligned(config: RunConfig) -> typing.Tuple[AlignedSeries, float]:
    if config.data_path is None:
        raise InputError(f"`data_path` is needed to use the data of {config.zone}")
    panel = load_zonal_panel(config.data_path, dt_years=config.dt_years)
    return align(panel.dataset(config.zone)), panel.dt_years


def _estimate(config: RunConfig) -> EstimationReport:
    aligned, dt_years = _aligned(config)
    return estimate_zone(config.zone, aligned, dt_years=dt_years, alpha=config.alpha, lags=config.lags)


def _resolve_ou(config: RunConfig) -> OuParams:
    """
    Get the price parameters from the config or from the restricted fit of the zone data.
    """
    ou = config.ou_override()
    if ou is None:
        if config.data_path is None:
            raise InputError(f"Set `kappa`, `zeta`, `sigma` or `data_path` to get the price parameters of {config.zone}")
        ou = _estimate(config).restricted_ou()
        logger.info("Using the estimated price parameters %s", ou)

    try:
        impact = ou.impact
    except ValueError as e:
        raise InputError(str(e))
    if impact < 0:
        raise InputError(f"The control problem needs a non-negative price impact but beta={impact}")
    return ou


def _psi_config(config: RunConfig, econ: EconParams, ou: OuParams, variants: BoundaryVariants) -> PsiConfig:
    return PsiConfig.of(
        econ, ou, quad_rel_tol=config.quad_rel_tol, quad_max_nodes=config.quad_max_nodes, variants=variants
    )


def _compute_boundary(
    config: RunConfig,
    ou: OuParams,
    variants: BoundaryVariants,
    progress: bool,
) -> FreeBoundary:
    econ = config.econ()
    return integrate_free_boundary(
        econ,
        ou,
        _psi_config(config, econ, ou, variants),
        step_h=config.step_h,
        tol=config.root_tol,
        scheme=config.scheme,
        stability_guard=config.stability_guard,
        progress=progress,
    )


def _boundary_parameters(config: RunConfig, ou: OuParams) -> typing.Mapping[str, typing.Any]:
    """
    Get the parameters that determine the boundary, as plain JSON values.
    """
    params = {
        "econ": config.econ(),
        "ou": ou,
        "step_h": config.step_h,
        "scheme": config.scheme,
        "stability_guard": config.stability_guard,
        "root_tol": config.root_tol,
        "quad_rel_tol": config.quad_rel_tol,
        "quad_max_nodes": config.quad_max_nodes,
        "compare_variants": config.compare_variants,
    }
    return json.loads(json.dumps(params, cls=RenewboundJSONEncoder))


def _boundary_artifacts(
    config: RunConfig,
    ou: OuParams,
    out_dir: pathlib.Path,
    progress: bool,
) -> typing.Tuple[FreeBoundary, typing.Sequence[ReferenceRow]]:
    variants = config.variants()
    fb = _compute_boundary(config, ou, variants, progress)
    boundaries = {f"rhat_y_coeff={variants.rhat_y_coeff}": fb}
    if config.compare_variants and ou.impact > 0:
        for coeff in RHAT_Y_COEFFS:
            if coeff != variants.rhat_y_coeff:
                logger.info("Computing the boundary under `rhat_y_coeff=%s` for comparison", coeff)
                other = _compute_boundary(config, ou, variants.replace(rhat_y_coeff=coeff), progress)
                boundaries[f"rhat_y_coeff={coeff}"] = other

    references = reference_rows(config.zone, boundaries)
    extra = {
        "zone": config.zone,
        "seed": config.seed,
        "parameters": _boundary_parameters(config, ou),
        "reference_values": [row.to_dict() for row in references],
    }
    write_free_boundary(fb, out_dir, extra=extra)
    return fb, references


def _ensure_boundary(
    config: RunConfig,
    ou: OuParams,
    out_dir: pathlib.Path,
    progress: bool,
) -> FreeBoundary:
    """
    Read the boundary from the output directory if it was computed with the same parameters, otherwise compute it.
    """
    csv_path, json_path = out_dir / BOUNDARY_CSV, out_dir / BOUNDARY_JSON
    if os.path.isfile(csv_path) and os.path.isfile(json_path):
        with open(json_path, encoding="utf-8") as fh:
            try:
                meta = json.load(fh)
            except json.JSONDecodeError:
                meta = {}
        if (
            meta.get("parameters") == _boundary_parameters(config, ou)
            and meta.get("variant_tags") == dict(config.variants().to_dict())
        ):
            logger.info("Reusing the boundary at %s", csv_path)
            return read_free_boundary(str(csv_path), str(json_path))
        logger.info("The boundary at %s was computed with other parameters, recomputing", csv_path)

    fb, _ = _boundary_artifacts(config, ou, out_dir, progress)
    return fb


COMMANDS: typing.Mapping[str, typing.Callable[[RunConfig, bool], int]] = {
    "estimate": cmd_estimate,
    "boundary": cmd_boundary,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "psi-dump": cmd_psi_dump,
}
