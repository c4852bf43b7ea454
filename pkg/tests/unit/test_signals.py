"""
Time series, finite differences, denoising and reference trajectory unit tests.
"""

import math
import pathlib

import numpy as np
import pytest

from modules.signals import reference_trajectory
from modules.signals import signal_helpers
from modules.signals import time_series


H = 0.01
TIME_CONSTANT = 0.3


# Test functions use test fixture signature names
# pylint: disable=redefined-outer-name


def make_series(values: "list[float] | np.ndarray", h: float = H) -> time_series.TimeSeries:
    """
    Series that must be valid.
    """
    result, series = time_series.TimeSeries.create(h, values)
    assert result
    assert series is not None

    return series


@pytest.fixture
def random_series() -> time_series.TimeSeries:
    """
    Seeded random series of 10000 samples.
    """
    generator = np.random.default_rng(7)
    return make_series(generator.uniform(-1.0, 1.0, 10000))


class TestTimeSeries:
    """
    Test suite for TimeSeries.
    """

    def test_create(self) -> None:
        """
        Valid series keeps its samples read-only.
        """
        result, series = time_series.TimeSeries.create(H, [1.0, 2.0, 3.0], t0=1.0)

        # Assertions
        assert result
        assert series is not None
        assert len(series) == 3
        assert series.times == pytest.approx([1.0, 1.01, 1.02])
        with pytest.raises(ValueError):
            series.values[0] = 5.0

    @pytest.mark.parametrize("h", [0.0, -0.01, math.inf, math.nan])
    def test_create_invalid_h(self, h: float) -> None:
        """
        Sampling interval must be positive and finite.
        """
        result, series = time_series.TimeSeries.create(h, [1.0])

        # Assertions
        assert not result
        assert series is None

    def test_create_non_finite(self) -> None:
        """
        Non-finite samples are only accepted on diverged series.
        """
        result, series = time_series.TimeSeries.create(H, [1.0, math.nan])

        assert not result
        assert series is None

        result, series = time_series.TimeSeries.create(H, [1.0, math.inf], diverged=True)

        assert result
        assert series is not None
        assert series.diverged

    def test_csv_full_precision(self, tmp_path: pathlib.Path) -> None:
        """
        Written samples read back bit-identical.
        """
        series = make_series([0.1, 1.0 / 3.0, -2.0e-17, 12345.678901234567])
        path = pathlib.Path(tmp_path, "series.csv")

        assert series.write_csv(path)
        assert path.read_text(encoding="utf-8").splitlines()[0] == "time,value"

        result, actual = time_series.read_csv(path)

        # Assertions
        assert result
        assert actual is not None
        assert np.array_equal(actual.values, series.values)
        assert actual.h == pytest.approx(H)

    def test_read_csv_missing_column(self, tmp_path: pathlib.Path) -> None:
        """
        Reading a column that is not there fails.
        """
        path = pathlib.Path(tmp_path, "series.csv")
        assert make_series([1.0, 2.0]).write_csv(path, "output")

        result, actual = time_series.read_csv(path, "value")

        assert not result
        assert actual is None

    def test_read_csv_non_uniform(self, tmp_path: pathlib.Path) -> None:
        """
        Non-uniform time stamps are rejected.
        """
        path = pathlib.Path(tmp_path, "series.csv")
        path.write_text("time,value\n0,1\n0.01,2\n0.05,3\n", encoding="utf-8")

        result, actual = time_series.read_csv(path)

        assert not result
        assert actual is None


class TestBackwardDifference:
    """
    Test suite for backward_difference.
    """

    def test_constant(self) -> None:
        """
        Derivative of a constant is zero.
        """
        result, actual = signal_helpers.backward_difference(make_series([5.0] * 4), 1)

        assert result
        assert actual is not None
        assert list(actual.values) == [0.0, 0.0, 0.0, 0.0]

    def test_ramp(self) -> None:
        """
        Unit slope ramp differences to 1 after the first sample.
        """
        ramp = make_series(H * np.arange(20))

        result, actual = signal_helpers.backward_difference(ramp, 1)

        assert result
        assert actual is not None
        assert actual.values[0] == 0.0
        assert actual.values[1:] == pytest.approx(np.ones(19))

    def test_hand_arithmetic(self) -> None:
        """
        (1.03 - 1.0) / 0.01 = 3.
        """
        result, actual = signal_helpers.backward_difference(make_series([1.0, 1.03]), 1)

        assert result
        assert actual is not None
        assert actual.values[-1] == pytest.approx(3.0)

    def test_second_order(self) -> None:
        """
        Second difference of t^2 is 2, first two samples zero filled.
        """
        times = H * np.arange(10)

        result, actual = signal_helpers.backward_difference(make_series(times**2), 2)

        assert result
        assert actual is not None
        assert list(actual.values[:2]) == [0.0, 0.0]
        assert actual.values[2:] == pytest.approx(np.full(8, 2.0))

    def test_too_short(self) -> None:
        """
        Order 2 needs three samples.
        """
        result, actual = signal_helpers.backward_difference(make_series([1.0, 2.0]), 2)

        assert not result
        assert actual is None

    def test_invalid_order(self) -> None:
        """
        Only orders 1 and 2 exist.
        """
        result, actual = signal_helpers.backward_difference(make_series([1.0, 2.0, 3.0, 4.0]), 3)

        assert not result
        assert actual is None

    def test_riemann_sum_recovers_series(self, random_series: time_series.TimeSeries) -> None:
        """
        Summing the first difference gives the series back up to its initial sample.
        """
        result, difference = signal_helpers.backward_difference(random_series, 1)
        assert result
        assert difference is not None

        result, recovered = signal_helpers.riemann_sum(difference, random_series.values[0])

        # Assertions
        assert result
        assert recovered is not None
        scale = np.max(np.abs(random_series.values))
        assert np.max(np.abs(recovered.values - random_series.values)) <= 1e-9 * scale


class TestMovingAverage:
    """
    Test suite for moving_average.
    """

    def test_window_one_is_identity(self, random_series: time_series.TimeSeries) -> None:
        """
        A window of one sample changes nothing.
        """
        result, actual = signal_helpers.moving_average(random_series, 1)

        assert result
        assert actual is not None
        assert np.array_equal(actual.values, random_series.values)

    def test_hand_arithmetic(self) -> None:
        """
        Trailing means over min(k + 1, 2) samples.
        """
        result, actual = signal_helpers.moving_average(make_series([0.0, 0.0, 4.0, 4.0]), 2)

        assert result
        assert actual is not None
        assert list(actual.values) == [0.0, 0.0, 2.0, 4.0]

    @pytest.mark.parametrize("window", [2, 7, 50])
    def test_constant_preserved(self, window: int) -> None:
        """
        Constants come back exactly.
        """
        constant = make_series([0.1] * 100)

        result, actual = signal_helpers.moving_average(constant, window)

        assert result
        assert actual is not None
        assert np.array_equal(actual.values, constant.values)

    def test_within_running_extremes(self, random_series: time_series.TimeSeries) -> None:
        """
        The mean never leaves the range of the samples it averages.
        """
        window = 50
        result, actual = signal_helpers.moving_average(random_series, window)

        assert result
        assert actual is not None
        for k in range(0, len(random_series), 97):
            samples = random_series.values[max(0, k - window + 1) : k + 1]
            assert samples.min() <= actual.values[k] <= samples.max()

    def test_zero_window(self, random_series: time_series.TimeSeries) -> None:
        """
        Window must hold at least one sample.
        """
        result, actual = signal_helpers.moving_average(random_series, 0)

        assert not result
        assert actual is None


class TestMakeReference:
    """
    Test suite for make_reference.
    """

    def test_constant_step(self) -> None:
        """
        A single entry at t = 0 is a constant reference.
        """
        result, actual = reference_trajectory.make_reference([(0.0, 1.0)], H, 1.0)

        assert result
        assert actual is not None
        assert len(actual) == 101
        assert np.all(actual.y_star.values == 1.0)
        assert np.all(actual.d1_y_star.values[1:] == 0.0)

    def test_step_derivative(self) -> None:
        """
        The backward difference is 1 / h at the step sample and 0 elsewhere.
        """
        result, actual = reference_trajectory.make_reference([(0.0, 0.0), (1.0, 1.0)], H, 2.0)

        assert result
        assert actual is not None
        step_index = 100
        assert actual.d1_y_star.values[step_index] == pytest.approx(1.0 / H)
        others = np.delete(actual.d1_y_star.values, step_index)
        assert np.all(others == 0.0)

    def test_step_mode_matches_backward_difference(self) -> None:
        """
        Step mode derivatives are the backward differences of y* sample for sample.
        """
        schedule = [(0.0, 0.5), (0.3, -1.0), (0.7, 2.0)]

        result, actual = reference_trajectory.make_reference(schedule, H, 1.0)

        assert result
        assert actual is not None
        y_star = actual.y_star.values
        for k in range(1, len(actual)):
            assert actual.d1_y_star.values[k] == (y_star[k] - y_star[k - 1]) / H

    def test_smooth_converges(self) -> None:
        """
        Critically damped response rises monotonically to the setpoint.
        The settled band of 1e-6 is reached after 20 time constants, at 10 the gap is
        still about 5e-4.
        """
        horizon = 20.0 * TIME_CONSTANT
        result, actual = reference_trajectory.make_reference(
            [(0.0, 1.0)],
            H,
            horizon,
            reference_trajectory.ReferenceMode.SMOOTH_SECOND_ORDER,
            TIME_CONSTANT,
        )

        assert result
        assert actual is not None
        y_star = actual.y_star.values
        assert np.all(np.diff(y_star) >= 0.0)
        assert y_star[-1] == pytest.approx(1.0, abs=1e-6)
        assert y_star[-1] <= 1.0

    def test_smooth_derivatives(self) -> None:
        """
        Analytic derivatives agree with finite differences of the smooth reference.
        """
        result, actual = reference_trajectory.make_reference(
            [(0.0, 1.0)],
            0.001,
            1.0,
            reference_trajectory.ReferenceMode.SMOOTH_SECOND_ORDER,
            TIME_CONSTANT,
        )

        assert result
        assert actual is not None
        central = (actual.y_star.values[2:] - actual.y_star.values[:-2]) / 0.002
        assert central[10:] == pytest.approx(actual.d1_y_star.values[1:-1][10:], abs=1e-4)

    def test_empty_schedule(self) -> None:
        """
        An empty schedule has nothing to track.
        """
        result, actual = reference_trajectory.make_reference([], H, 1.0)

        assert not result
        assert actual is None

    def test_decreasing_schedule(self) -> None:
        """
        Schedule times must not go backwards.
        """
        result, actual = reference_trajectory.make_reference([(1.0, 1.0), (0.5, 2.0)], H, 2.0)

        assert not result
        assert actual is None
