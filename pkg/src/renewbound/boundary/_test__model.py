import numpy as np
import pytest

from renewbound.oufn import BoundaryVariants

from ._model import BoundaryKind, BracketInterval, FreeBoundary, boundary_inverse


def make_curve(
    f=(10.0, 20.0, 20.0, 30.0),
    beta: float = 1.0,
) -> FreeBoundary:
    y = np.array([0.0, 1.0, 2.0, 3.0])
    f = np.array(f)
    fhat = f + beta * y
    return FreeBoundary(
        kind=BoundaryKind.CURVE,
        y_grid=y,
        f_values=f,
        fhat_values=fhat,
        terminal_x=fhat[-1],
        step_h=1.0,
        beta=beta,
        variant_tags=BoundaryVariants(),
    )


class TestFreeBoundary:
    def test_properties(self):
        fb = make_curve()

        assert fb.kind == BoundaryKind.CURVE
        assert fb.theta == 3.0
        assert fb.terminal_x == 33.0
        assert fb.f_zero == 10.0
        assert fb.is_monotone()
        assert fb.evaluate(0.5) == pytest.approx(15.0)
        assert fb.evaluate(np.array([0.0, 2.5, 3.0])).tolist() == pytest.approx([10.0, 25.0, 30.0])
        assert fb.to_frame().columns.tolist() == ["y_mw", "f_eur_mwh", "fhat_eur_mwh"]

    def test_values_are_read_only(self):
        fb = make_curve()

        with pytest.raises(ValueError):
            fb.f_values[0] = 0.0

    def test_equality(self):
        assert make_curve() == make_curve()
        assert make_curve() != make_curve(f=(10.0, 20.0, 25.0, 30.0))

    def test_decreasing_boundary_is_rejected(self):
        with pytest.raises(ValueError, match="nondecreasing"):
            make_curve(f=(10.0, 20.0, 15.0, 30.0))

    def test_inconsistent_shift_is_rejected(self):
        with pytest.raises(ValueError, match="F_hat - beta y"):
            FreeBoundary(
                kind=BoundaryKind.CURVE,
                y_grid=[0.0, 1.0],
                f_values=[1.0, 2.0],
                fhat_values=[1.0, 2.0],
                terminal_x=2.0,
                step_h=1.0,
                beta=0.5,
                variant_tags=BoundaryVariants(),
            )

    @pytest.mark.parametrize(
        "y_grid, terminal_x",
        [
            ((1.0, 2.0), 2.0),
            ((0.0, 0.0), 2.0),
            ((0.0, 2.0), 3.0),
        ],
    )
    def test_invalid_grid_or_terminal(
        self,
        y_grid,
        terminal_x: float,
    ):
        with pytest.raises(ValueError):
            FreeBoundary(
                kind=BoundaryKind.CURVE,
                y_grid=y_grid,
                f_values=[1.0, 2.0],
                fhat_values=[1.0, 2.0],
                terminal_x=terminal_x,
                step_h=1.0,
                beta=0.0,
                variant_tags=BoundaryVariants(),
            )

    def test_constant_kind_must_be_flat(self):
        with pytest.raises(ValueError, match="constant boundary"):
            FreeBoundary(
                kind=BoundaryKind.CONSTANT,
                y_grid=[0.0, 1.0],
                f_values=[1.0, 2.0],
                fhat_values=[1.0, 2.0],
                terminal_x=2.0,
                step_h=1.0,
                beta=0.0,
                variant_tags=BoundaryVariants(),
            )


class TestBoundaryInverse:
    @pytest.mark.parametrize(
        "price, expected",
        [
            (5.0, 0.0),
            (10.0, 0.0),
            (15.0, 0.5),
            (20.0, 1.0),
            (25.0, 2.5),
            (30.0, 3.0),
            (31.0, 3.0),
        ],
    )
    def test_scalar(
        self,
        price: float,
        expected: float,
    ):
        assert boundary_inverse(make_curve(), price) == pytest.approx(expected)

    def test_vectorized_matches_scalar(self):
        fb = make_curve()
        prices = np.linspace(0.0, 40.0, 81)

        actual = boundary_inverse(fb, prices)

        assert isinstance(actual, np.ndarray)
        assert actual.tolist() == pytest.approx([boundary_inverse(fb, p) for p in prices])
        assert np.all(np.diff(actual) >= 0)

    def test_inverse_is_a_left_inverse_on_the_grid(self):
        fb = make_curve(f=(10.0, 12.0, 20.0, 30.0))

        for y, f in zip(fb.y_grid, fb.f_values):
            assert boundary_inverse(fb, f) == y

    def test_smallest_capacity_reaching_the_price(self):
        fb = make_curve()

        y = boundary_inverse(fb, 21.0)

        assert fb.evaluate(y) == pytest.approx(21.0)
        assert fb.evaluate(y - 1e-6) < 21.0


class TestBracketInterval:
    def test_check(self):
        BracketInterval(lo=0.0, hi=1.0).check()

        with pytest.raises(ValueError):
            BracketInterval(lo=1.0, hi=1.0).check()
        with pytest.raises(ValueError):
            BracketInterval(lo=0.0, hi=float("inf")).check()
