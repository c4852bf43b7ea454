"""
Output reference trajectory y* with its first two derivatives.
"""

import enum
import math

import numpy as np

from . import signal_helpers
from . import time_series
from ..logger import logger


DEFAULT_TIME_CONSTANT = 0.3  # s
# Schedule entries this close to a sample time, relative to h, take effect at that sample
SCHEDULE_TIME_TOLERANCE = 1e-9

LOGGER = logger.get_logger(__name__)


class ReferenceMode(enum.Enum):
    """
    How setpoint steps become a reference trajectory.
    """

    STEP_BACKWARD_DIFF = "step-backward-diff"
    SMOOTH_SECOND_ORDER = "smooth-second-order"


class ReferenceTrajectory:
    """
    y*, dy*/dt and d2y*/dt2 on a shared time grid.
    """

    __create_key = object()

    @classmethod
    def create(
        cls,
        y_star: time_series.TimeSeries,
        d1_y_star: time_series.TimeSeries,
        d2_y_star: time_series.TimeSeries,
    ) -> "tuple[bool, ReferenceTrajectory | None]":
        """
        All three series must share h, t0 and length.
        """
        for derivative in (d1_y_star, d2_y_star):
            if (
                derivative.h != y_star.h
                or derivative.t0 != y_star.t0
                or len(derivative) != len(y_star)
            ):
                LOGGER.error("Reference series must share sampling interval, start and length")
                return False, None

        return True, ReferenceTrajectory(cls.__create_key, y_star, d1_y_star, d2_y_star)

    def __init__(
        self,
        class_private_create_key: object,
        y_star: time_series.TimeSeries,
        d1_y_star: time_series.TimeSeries,
        d2_y_star: time_series.TimeSeries,
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is ReferenceTrajectory.__create_key, "Use create() method"

        self.y_star = y_star
        self.d1_y_star = d1_y_star
        self.d2_y_star = d2_y_star

    def __len__(self) -> int:
        return len(self.y_star)

    def sample(self, index: int) -> "tuple[float, float, float]":
        """
        (y*, dy*/dt, d2y*/dt2) at one sample.
        """
        return (
            float(self.y_star.values[index]),
            float(self.d1_y_star.values[index]),
            float(self.d2_y_star.values[index]),
        )


def sample_count(horizon: float, h: float) -> int:
    """
    Number of samples covering [0, horizon] inclusive of both ends.
    """
    return int(round(horizon / h)) + 1


def setpoint_sequence(
    schedule: "list[tuple[float, float]]", h: float, horizon: float, t0: float = 0.0
) -> "tuple[bool, np.ndarray | None]":
    """
    Piecewise constant setpoint sampled at t0 + k * h.
    Each (time, setpoint) entry holds until the next one, the setpoint is 0 before the first.

    schedule: Entries with non-decreasing times.
    h: Sampling interval in seconds.
    horizon: Length of the run in seconds.
    t0: Time of the first sample.

    Returns: Success, setpoint per sample.
    """
    if len(schedule) == 0:
        LOGGER.error("Setpoint schedule is empty")
        return False, None

    if not math.isfinite(h) or h <= 0.0:
        LOGGER.error(f"Sampling interval must be positive, got: {h}")
        return False, None

    if not math.isfinite(horizon) or horizon <= 0.0:
        LOGGER.error(f"Horizon must be positive, got: {horizon}")
        return False, None

    entry_times = np.array([entry[0] for entry in schedule], dtype=np.float64)
    entry_values = np.array([entry[1] for entry in schedule], dtype=np.float64)
    if np.any(np.diff(entry_times) < 0.0):
        LOGGER.error("Setpoint schedule times must be non-decreasing")
        return False, None

    if not np.all(np.isfinite(entry_times)) or not np.all(np.isfinite(entry_values)):
        LOGGER.error("Setpoint schedule must be finite")
        return False, None

    times = t0 + h * np.arange(sample_count(horizon, h), dtype=np.float64)
    active = np.searchsorted(entry_times, times + SCHEDULE_TIME_TOLERANCE * h, side="right") - 1

    setpoints = np.where(active >= 0, entry_values[np.maximum(active, 0)], 0.0)
    return True, setpoints


def make_reference(
    schedule: "list[tuple[float, float]]",
    h: float,
    horizon: float,
    mode: ReferenceMode = ReferenceMode.STEP_BACKWARD_DIFF,
    time_constant: float = DEFAULT_TIME_CONSTANT,
    initial_value: float = 0.0,
) -> "tuple[bool, ReferenceTrajectory | None]":
    """
    Builds the reference trajectory for a setpoint schedule.

    schedule: (time, setpoint) entries with non-decreasing times.
    h: Sampling interval in seconds.
    horizon: Length of the run in seconds.
    mode: Step with backward difference derivatives, or critically damped smoothing.
    time_constant: Time constant of the smoothing filter in seconds.
    initial_value: Filter output before the first sample, smoothing mode only.

    Returns: Success, reference trajectory.
    """
    result, setpoints = setpoint_sequence(schedule, h, horizon)
    if not result:
        return False, None

    match mode:
        case ReferenceMode.STEP_BACKWARD_DIFF:
            y_star, d1_y_star, d2_y_star = _step_reference(setpoints, h)
        case ReferenceMode.SMOOTH_SECOND_ORDER:
            if not math.isfinite(time_constant) or time_constant <= 0.0:
                LOGGER.error(f"Smoothing time constant must be positive, got: {time_constant}")
                return False, None
            y_star, d1_y_star, d2_y_star = _smooth_reference(
                setpoints, h, time_constant, initial_value
            )
        case _:
            LOGGER.error(f"Unknown reference mode: {mode}")
            return False, None

    series = []
    for values in (y_star, d1_y_star, d2_y_star):
        result, signal = time_series.TimeSeries.create(h, values)
        if not result:
            return False, None
        series.append(signal)

    return ReferenceTrajectory.create(*series)


def _step_reference(
    setpoints: np.ndarray, h: float
) -> "tuple[np.ndarray, np.ndarray, np.ndarray]":
    result, y_star = time_series.TimeSeries.create(h, setpoints)
    assert result

    derivatives = []
    for order in (1, 2):
        if len(y_star) < order + 1:
            derivatives.append(np.zeros(len(y_star)))
            continue
        result, derivative = signal_helpers.backward_difference(y_star, order)
        assert result
        derivatives.append(derivative.values)

    return setpoints, derivatives[0], derivatives[1]


def _smooth_reference(
    setpoints: np.ndarray, h: float, time_constant: float, initial_value: float
) -> "tuple[np.ndarray, np.ndarray, np.ndarray]":
    """
    Filters the setpoint through 1 / (time_constant * s + 1)^2 exactly between samples.
    """
    count = setpoints.size
    y_star = np.empty(count)
    d1_y_star = np.empty(count)
    d2_y_star = np.empty(count)

    decay = math.exp(-h / time_constant)
    position = initial_value
    velocity = 0.0
    for k in range(count):
        target = setpoints[k]
        y_star[k] = position
        d1_y_star[k] = velocity
        d2_y_star[k] = (target - position - 2.0 * time_constant * velocity) / time_constant**2

        # Closed form of the critically damped response with the setpoint held over h
        offset = position - target
        slope = velocity + offset / time_constant
        position = target + (offset + slope * h) * decay
        velocity = (velocity - slope * h / time_constant) * decay

    return y_star, d1_y_star, d2_y_star
