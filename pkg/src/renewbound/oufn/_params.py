import dataclasses
import math
import typing

from renewbound.config import DEFAULT_QUAD_MAX_NODES, DEFAULT_QUAD_REL_TOL
from renewbound.estimate import OuParams

SIGN_CONVENTIONS = ("increasing",)
COST_NORMALIZATIONS = ("c_hat", "raw")
RHAT_Y_COEFFS = ("rho_plus_2kappa", "two_kappa")


@dataclasses.dataclass(frozen=True)
class EconParams:
    """
    Economic parameters of the installation problem.
    """

    rho: float
    """
    Discount rate (1/year).
    """
    cost_c: float
    """
    Installation cost (€ per MW).
    """
    conv_a: float
    """
    Conversion factor (effective MWh per year per MW of rated power).
    """
    theta: float
    """
    Capacity cap (MW).
    """

    def __post_init__(self):
        for name in ("rho", "cost_c", "conv_a", "theta"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ValueError(f"`{name}` must be positive but was {val}")

    @property
    def c_hat(self) -> float:
        """
        Get the normalized cost `cost_c / conv_a`.
        """
        return self.cost_c / self.conv_a


@dataclasses.dataclass(frozen=True)
class BoundaryVariants:
    """
    Choices made where the boundary equations admit more than one reading.

    Every boundary artifact records the variants that produced it.
    """

    sign_convention: str = "increasing"
    """
    Sign of the exponent of the integral representation of the fundamental solution.
    Only the increasing solution defines the boundary.
    """

    cost_normalization: str = "c_hat"
    """
    `c_hat` uses the normalized cost `c / a` in the boundary equations, `raw` uses `c` as is.
    """

    rhat_y_coeff: str = "rho_plus_2kappa"
    """
    Capacity coefficient of the marginal revenue: `rho + 2 kappa` or `2 kappa`.
    """

    def __post_init__(self):
        _check_choice("sign_convention", self.sign_convention, SIGN_CONVENTIONS)
        _check_choice("cost_normalization", self.cost_normalization, COST_NORMALIZATIONS)
        _check_choice("rhat_y_coeff", self.rhat_y_coeff, RHAT_Y_COEFFS)

    def cost(self, econ: EconParams) -> float:
        """
        Get the cost entering the boundary equations.
        """
        return econ.c_hat if self.cost_normalization == "c_hat" else econ.cost_c

    def y_coefficient(self, rho: float, kappa: float) -> float:
        return rho + 2.0 * kappa if self.rhat_y_coeff == "rho_plus_2kappa" else 2.0 * kappa

    def to_dict(self) -> typing.Mapping[str, str]:
        return dataclasses.asdict(self)

    def replace(self, **overrides: str) -> "BoundaryVariants":
        unknown = set(overrides) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise ValueError(f"Unknown variant(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **overrides)


def _check_choice(name: str, value: str, choices: typing.Sequence[str]):
    if value not in choices:
        raise ValueError(f"`{name}` must be one of {', '.join(choices)} but was `{value}`")


@dataclasses.dataclass(frozen=True)
class PsiConfig:
    """
    `PsiConfig` bundles the parameters of the resolvent equation `(sigma^2/2) u'' + kappa (zeta - x) u' - rho u = 0`
    with the quadrature settings and the boundary variants.
    """

    rho: float
    kappa: float
    zeta: float
    sigma: float
    quad_rel_tol: float = DEFAULT_QUAD_REL_TOL
    quad_max_nodes: int = DEFAULT_QUAD_MAX_NODES
    variants: BoundaryVariants = BoundaryVariants()

    def __post_init__(self):
        for name in ("rho", "kappa", "sigma"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ValueError(f"`{name}` must be positive but was {val}")
        if not math.isfinite(self.zeta):
            raise ValueError(f"`zeta` must be finite but was {self.zeta}")
        if not 0 < self.quad_rel_tol <= 1e-3:
            raise ValueError(f"`quad_rel_tol` must be in (0, 1e-3] but was {self.quad_rel_tol}")
        if not isinstance(self.quad_max_nodes, int) or self.quad_max_nodes < 1:
            raise ValueError(f"`quad_max_nodes` must be a positive `int` but was {self.quad_max_nodes}")

    @staticmethod
    def of(
        econ: EconParams,
        ou: OuParams,
        quad_rel_tol: float = DEFAULT_QUAD_REL_TOL,
        quad_max_nodes: int = DEFAULT_QUAD_MAX_NODES,
        variants: BoundaryVariants = BoundaryVariants(),
    ) -> "PsiConfig":
        return PsiConfig(
            rho=econ.rho,
            kappa=ou.kappa,
            zeta=ou.zeta,
            sigma=ou.sigma,
            quad_rel_tol=quad_rel_tol,
            quad_max_nodes=quad_max_nodes,
            variants=variants,
        )

    @property
    def q(self) -> float:
        """
        Get the exponent `rho / kappa`.
        """
        return self.rho / self.kappa

    @property
    def scale(self) -> float:
        """
        Get the scale `sqrt(2 kappa) / sigma`.
        """
        return math.sqrt(2.0 * self.kappa) / self.sigma

    def check_matches(self, econ: EconParams, ou: OuParams):
        """
        Check that the config was created for `econ` and `ou`.
        """
        if (self.rho, self.kappa, self.zeta, self.sigma) != (econ.rho, ou.kappa, ou.zeta, ou.sigma):
            raise ValueError(
                f"PsiConfig (rho={self.rho}, kappa={self.kappa}, zeta={self.zeta}, sigma={self.sigma}) "
                f"does not match the economic and price parameters"
            )
