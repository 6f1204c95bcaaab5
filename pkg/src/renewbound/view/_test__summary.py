import io

import pytest

from renewbound.boundary import constant_free_boundary
from renewbound.oufn import BoundaryVariants
from renewbound.policy import PayoffEstimate, compare_realized

from ._summary import ReferenceRow, SummaryViewer, reference_rows


@pytest.fixture(scope="module")
def viewer() -> SummaryViewer:
    return SummaryViewer()


@pytest.fixture
def fb():
    return constant_free_boundary(29.5, theta=2.0, step_h=1.0)


class TestReferenceRows:
    def test_published_values(self, fb):
        rows = reference_rows("CentralNorth", {"default": fb})

        assert [r.quantity for r in rows] == ["terminal_x", "f_zero"]
        assert rows[0].reported == pytest.approx(29.3205)
        assert rows[0].deviation == pytest.approx((29.5 - 29.3205) / 29.3205)

    def test_unknown_zone(self, fb):
        rows = reference_rows("Sicily", {"default": fb})

        assert all(r.reported is None and r.deviation is None for r in rows)

    def test_to_dict(self):
        row = ReferenceRow("f_zero", "two_kappa", 60.0, 50.0)

        assert row.to_dict() == {
            "quantity": "f_zero",
            "variant": "two_kappa",
            "computed": 60.0,
            "reported": 50.0,
            "deviation": pytest.approx(0.2),
        }


class TestSummaryViewer:
    def test_boundary_section(self, viewer: SummaryViewer, fb):
        report = viewer.process(
            "CentralNorth",
            "boundary",
            variant_tags=BoundaryVariants().to_dict(),
            references=reference_rows("CentralNorth", {"default": fb}),
        )

        assert report.text.startswith("# CentralNorth: `boundary`\n")
        assert "`sign_convention=increasing`" in report.text
        assert "| terminal_x | default | 29.5000 | 29.3205 | +0.61% |" in report.text
        assert "## Payoff" not in report.text

    def test_payoff_section(self, viewer: SummaryViewer):
        estimate = PayoffEstimate(mean=1234.5, std_error=10.0, n_paths=40, horizon=5.0, tail_bound=0.5)

        report = viewer.process("North", "simulate", seed=13, payoffs={"never": estimate})

        assert "Seed: 13" in report.text
        assert "| never | 1234.50 | 10.00 | 40 | 5.00 | 0.50 |" in report.text

    def test_comparison_section(self, viewer: SummaryViewer, fb):
        comparison = compare_realized([10.0, 40.0], [0.0, 0.0], fb)

        report = viewer.process("CentralNorth", "compare", comparison=comparison)

        assert "1 of 2 observations lie in the installation region." in report.text
        assert "Missed installation fraction: 0.5000." in report.text

    def test_write(self, viewer: SummaryViewer):
        report = viewer.process("North", "simulate")
        buf = io.StringIO()

        report.write(buf)

        assert buf.getvalue() == report.text
        assert not buf.closed
