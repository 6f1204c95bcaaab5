import math

import numpy as np
import pytest

from renewbound.dataio import SourceKind

from ._model import ArxFit, DiscreteCoefficients, OuParams
from ._ou import MeanReversionException, delta_method_se, to_continuous, to_discrete

DT = 1 / 52


def make_fit(
    b: float,
    se_a: float = 0.5,
    se_b: float = 0.01,
    a: float = 10.0,
) -> ArxFit:
    return ArxFit(
        a=a,
        b=b,
        u={},
        delta=1.0,
        std_errors={"a": se_a, "b": se_b},
        p_values={"a": 0.0, "b": 0.0},
        residuals=[0.1, -0.1, 0.2, -0.2, 0.0],
        n_obs=6,
        covariance=np.diag([se_a**2, se_b**2]),
    )


class TestParameterMaps:
    @pytest.mark.parametrize(
        "ou",
        [
            OuParams(kappa=10.3702, zeta=140.5894, beta={SourceKind.PHOTOVOLTAIC: 0.0172}, sigma=47.6586),
            OuParams(kappa=9.2648, zeta=55.6085, beta={}, sigma=65.9346),
            OuParams(kappa=18.5248, zeta=102.4620, beta={SourceKind.WIND: 0.0123}, sigma=68.2889),
        ],
    )
    def test_round_trip(
        self,
        ou: OuParams,
    ):
        coefs = to_discrete(ou, DT)
        back = to_continuous(coefs, DT)

        assert back.kappa == pytest.approx(ou.kappa, rel=1e-10)
        assert back.zeta == pytest.approx(ou.zeta, rel=1e-10)
        assert back.sigma == pytest.approx(ou.sigma, rel=1e-10)
        for kind, beta in ou.beta.items():
            assert back.beta[kind] == pytest.approx(beta, rel=1e-10)

        again = to_discrete(back, DT)
        assert again.a == pytest.approx(coefs.a, rel=1e-10)
        assert again.b == pytest.approx(coefs.b, rel=1e-10)
        assert again.delta == pytest.approx(coefs.delta, rel=1e-10)

    def test_kappa_from_lag(self):
        ou = to_continuous(DiscreteCoefficients(a=1.0, b=math.exp(-0.1), u={}, delta=1.0), DT)

        assert ou.kappa == pytest.approx(5.2, rel=1e-12)

    @pytest.mark.parametrize(
        "b, message",
        [
            (1.0, "no mean reversion"),
            (1.2, "no mean reversion"),
            (0.0, "oscillatory"),
            (-0.3, "oscillatory"),
        ],
    )
    def test_lag_outside_unit_interval(
        self,
        b: float,
        message: str,
    ):
        with pytest.raises(MeanReversionException) as e:
            to_continuous(DiscreteCoefficients(a=1.0, b=b, u={}, delta=1.0), DT)

        assert message in e.value.args[0]
        assert e.value.data["b"] == b


class TestDeltaMethod:
    def test_zero_lag_error_gives_zero_kappa_error(self):
        fit = make_fit(b=0.8, se_b=0.0)

        se = delta_method_se(fit, DT)

        assert se.kappa == 0.0

    def test_kappa_error_by_hand(self):
        fit = make_fit(b=0.8, se_b=0.02)

        se = delta_method_se(fit, DT)

        assert se.kappa == pytest.approx(0.02 / (0.8 * DT))

    def test_zeta_error_grows_as_lag_approaches_one(self):
        errors = [delta_method_se(make_fit(b=b), DT).zeta for b in (0.9, 0.99, 0.999, 0.9999)]

        assert all(lo < hi for lo, hi in zip(errors, errors[1:]))
        assert errors[-1] > 1e3 * errors[0]

    def test_sigma_error_is_positive(self):
        se = delta_method_se(make_fit(b=0.8), DT)

        assert se.sigma > 0.0
        assert se.beta == {}
