import io
import json

import numpy as np
import pytest

from renewbound._base import InputError
from renewbound.config import ZONE_PRESETS
from renewbound.estimate import OuParams
from renewbound.oufn import BoundaryVariants, EconParams, PsiConfig

from ._integrate import constant_free_boundary, integrate_free_boundary
from ._io import read_free_boundary, write_boundary_csv, write_free_boundary
from ._model import BoundaryKind, FreeBoundary


@pytest.fixture
def curve() -> FreeBoundary:
    y = np.linspace(0.0, 100.0, 5)
    f = np.array([61.25, 70.0, 80.1, 95.7, 140.3])
    beta = 0.0091
    return FreeBoundary(
        kind=BoundaryKind.CURVE,
        y_grid=y,
        f_values=f,
        fhat_values=f + beta * y,
        terminal_x=(f + beta * y)[-1],
        step_h=25.0,
        beta=beta,
        variant_tags=BoundaryVariants(rhat_y_coeff="two_kappa"),
        diagnostics={"root_tol": 1e-6, "quad_rel_tol": 1e-12, "scheme": "explicit"},
    )


class TestFreeBoundaryIo:
    def test_write_and_read(self, tmp_path, curve: FreeBoundary):
        csv_path, json_path = write_free_boundary(curve, tmp_path, extra={"zone": "North"})

        actual = read_free_boundary(csv_path, json_path)

        assert actual == curve
        assert actual.diagnostics["root_tol"] == 1e-6

    def test_sidecar(self, tmp_path, curve: FreeBoundary):
        _, json_path = write_free_boundary(curve, tmp_path, extra={"zone": "North"})

        with open(json_path) as fh:
            meta = json.load(fh)

        assert meta["kind"] == "curve"
        assert meta["terminal_x"] == curve.terminal_x
        assert meta["step_h"] == 25.0
        assert meta["tolerances"] == {"root_tol": 1e-6, "quad_rel_tol": 1e-12}
        assert meta["variant_tags"] == {
            "sign_convention": "increasing",
            "cost_normalization": "c_hat",
            "rhat_y_coeff": "two_kappa",
        }
        assert meta["diagnostics"] == {"scheme": "explicit"}
        assert meta["zone"] == "North"

    def test_csv_layout(self):
        buf = io.StringIO()

        write_boundary_csv(constant_free_boundary(29.5, 2.0, 1.0), buf)

        assert buf.getvalue() == "y_mw,f_eur_mwh,fhat_eur_mwh\n0,29.5,29.5\n1,29.5,29.5\n2,29.5,29.5\n"

    def test_wrong_columns(self, tmp_path, curve: FreeBoundary):
        _, json_path = write_free_boundary(curve, tmp_path)
        bad = tmp_path / "bad.csv"
        bad.write_text("y,f\n0,1\n")

        with pytest.raises(InputError):
            read_free_boundary(bad, json_path)

    def test_inconsistent_sidecar(self, tmp_path, curve: FreeBoundary):
        csv_path, json_path = write_free_boundary(curve, tmp_path)
        with open(json_path) as fh:
            meta = json.load(fh)
        meta["terminal_x"] = 1.0
        with open(json_path, "w") as fh:
            json.dump(meta, fh)

        with pytest.raises(InputError, match="terminal"):
            read_free_boundary(csv_path, json_path)

    @pytest.mark.parametrize("beta", [0.0, 1e-4])
    def test_computed_boundary_is_read_back_exactly(self, tmp_path, beta: float):
        p = ZONE_PRESETS["CentralNorth"]
        econ = EconParams(rho=p.rho, cost_c=p.cost_c, conv_a=p.conv_a, theta=p.theta)
        ou = OuParams.single(kappa=p.kappa, zeta=p.zeta, sigma=p.sigma, beta=beta)
        fb = integrate_free_boundary(econ, ou, PsiConfig.of(econ, ou), step_h=650.0)
        csv_path, json_path = write_free_boundary(fb, tmp_path)

        actual = read_free_boundary(csv_path, json_path)

        assert actual.terminal_x == fb.terminal_x
        assert np.array_equal(actual.fhat_values, fb.fhat_values)
        assert np.array_equal(actual.f_values, fb.f_values)
