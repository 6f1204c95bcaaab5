import json

import numpy as np
import pytest

from renewbound.boundary import constant_free_boundary
from renewbound.dataio import SourceKind, align, load_zonal_panel
from renewbound.estimate import BoxPierceResult, OuParams, estimate_zone
from renewbound.io import RenewboundJSONDecoder, RenewboundJSONEncoder
from renewbound.oufn import BoundaryVariants, EconParams
from renewbound.policy import PayoffEstimate


@pytest.mark.parametrize(
    "item",
    [
        OuParams(kappa=6.7, zeta=124.7, beta={SourceKind.PHOTOVOLTAIC: 0.0091, SourceKind.WIND: 0.0}, sigma=47.7),
        EconParams(rho=0.1, cost_c=290_000.0, conv_a=1400.0, theta=6500.0),
        BoundaryVariants(cost_normalization="raw", rhat_y_coeff="two_kappa"),
        BoxPierceResult(statistic=12.5, lags=10, p_value=0.25),
        PayoffEstimate(mean=1.5e9, std_error=2.0e6, n_paths=4000, horizon=92.1, tail_bound=10.0, seed=42),
    ],
)
def test_round_trip(item):
    dumped = json.dumps(item, cls=RenewboundJSONEncoder, indent=2)
    decoded = json.loads(dumped, cls=RenewboundJSONDecoder)

    assert decoded == item


def test_nested_round_trip():
    payload = {
        "econ": EconParams(rho=0.1, cost_c=290_000.0, conv_a=1400.0, theta=6500.0),
        "ou": OuParams.single(kappa=13.213, zeta=115.1565, sigma=68.2889, beta=0.0091, source=SourceKind.WIND),
    }

    decoded = json.loads(json.dumps(payload, cls=RenewboundJSONEncoder), cls=RenewboundJSONDecoder)

    assert decoded == payload


def test_numpy_values():
    dumped = json.dumps({"grid": np.array([0.0, 0.5]), "n": np.int64(3)}, cls=RenewboundJSONEncoder)

    assert json.loads(dumped) == {"grid": [0.0, 0.5], "n": 3}


def test_free_boundary_is_encoded_without_values():
    fb = constant_free_boundary(29.3205, theta=6500.0, step_h=0.5)

    encoded = json.loads(json.dumps(fb, cls=RenewboundJSONEncoder))

    assert encoded["kind"] == "constant"
    assert encoded["terminal_x"] == pytest.approx(29.3205)
    assert encoded["n_points"] == 13001
    assert encoded["variant_tags"] == {
        "sign_convention": "increasing",
        "cost_normalization": "c_hat",
        "rhat_y_coeff": "rho_plus_2kappa",
    }


def test_estimation_report(fpath_synthetic_csv: str):
    panel = load_zonal_panel(fpath_synthetic_csv)
    report = estimate_zone("North", align(panel.dataset("North")))

    encoded = json.loads(json.dumps(report, cls=RenewboundJSONEncoder))

    assert encoded["zone"] == "North"
    assert encoded["full"]["fit"]["n_obs"] == 321
    assert set(encoded["full"]["fit"]["coefficients"]) == {"a", "b", "u_photovoltaic", "u_wind"}
    assert encoded["full"]["fit"]["stars"]["b"] == "***"
    assert "photovoltaic" in encoded["retained"]
    assert set(encoded["restricted"]["ou_std_errors"]) == {"kappa", "zeta", "beta", "sigma"}
