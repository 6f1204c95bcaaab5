import typing

from renewbound.boundary import FreeBoundary
from renewbound.config import REPORTED_VALUES
from renewbound.estimate import EstimationReport
from renewbound.policy import ComparisonReport, PayoffEstimate

from ._base import BaseViewer, MarkdownReport


class ReferenceRow(typing.NamedTuple):
    """
    A computed boundary value next to the published one.
    """

    quantity: str
    variant: str
    computed: float
    reported: typing.Optional[float]

    @property
    def deviation(self) -> typing.Optional[float]:
        """
        Get the relative deviation `(computed - reported) / |reported|` or `None` if there is nothing to compare to.
        """
        if self.reported is None or self.reported == 0:
            return None
        return (self.computed - self.reported) / abs(self.reported)

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        return {
            "quantity": self.quantity,
            "variant": self.variant,
            "computed": self.computed,
            "reported": self.reported,
            "deviation": self.deviation,
        }


def reference_rows(
    zone: str,
    boundaries: typing.Mapping[str, FreeBoundary],
) -> typing.Sequence[ReferenceRow]:
    """
    Pair the terminal price and the boundary at zero capacity of each boundary with the published values.

    :param zone: the zone name, used to look up the published values.
    :param boundaries: boundaries keyed by the variant label (e.g. `rhat_y_coeff=two_kappa`).
    """
    reported = REPORTED_VALUES.get(zone, {})
    rows = []
    for variant, fb in boundaries.items():
        rows.append(ReferenceRow("terminal_x", variant, fb.terminal_x, reported.get("terminal_x")))
        rows.append(ReferenceRow("f_zero", variant, fb.f_zero, reported.get("f_zero")))
    return tuple(rows)


class SummaryViewer(BaseViewer):
    """
    `SummaryViewer` puts the results of the CLI commands into a Markdown summary.
    """

    def __init__(self):
        super().__init__()
        self._template = self._environment.get_template("summary.md")

    def process(
        self,
        zone: str,
        command: str,
        variant_tags: typing.Optional[typing.Mapping[str, str]] = None,
        seed: typing.Optional[int] = None,
        estimation: typing.Optional[EstimationReport] = None,
        references: typing.Sequence[ReferenceRow] = (),
        payoffs: typing.Optional[typing.Mapping[str, PayoffEstimate]] = None,
        comparison: typing.Optional[ComparisonReport] = None,
    ) -> MarkdownReport:
        context = {
            "zone": zone,
            "command": command,
            "variant_tags": dict(variant_tags) if variant_tags else {},
            "seed": seed,
            "estimation": estimation,
            "references": tuple(references),
            "payoffs": dict(payoffs) if payoffs else {},
            "comparison": comparison,
        }
        return MarkdownReport(text=self._template.render(context))
