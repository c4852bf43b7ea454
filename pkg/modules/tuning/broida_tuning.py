"""
Two-point step response identification of a first order plus dead time model,
and the PI rule tuned from it.
"""

import math

import numpy as np

from ..classic import classic_controller
from ..logger import logger
from ..signals import time_series


FIRST_CROSSING_FRACTION = 0.28
SECOND_CROSSING_FRACTION = 0.40
TIME_CONSTANT_FACTOR = 5.5
FIRST_DELAY_FACTOR = 2.8
SECOND_DELAY_FACTOR = 1.8
PI_GAIN_FACTOR = 0.8

# The tail used to decide whether the response has settled
SETTLED_TAIL_FRACTION = 0.05
# Spread allowed over the tail, relative to the span
SETTLED_SPREAD_FRACTION = 1e-3
DEFAULT_DEAD_TIME_FLOOR = 0.001  # s

LOGGER = logger.get_logger(__name__)


class FopdtFit:
    """
    gain * exp(-dead_time s) / (1 + time_constant s)
    """

    __create_key = object()

    @classmethod
    def create(
        cls, gain: float, time_constant: float, dead_time: float
    ) -> "tuple[bool, FopdtFit | None]":
        """
        gain: Static gain.
        time_constant: Seconds, positive.
        dead_time: Seconds, non-negative.
        """
        if not all(math.isfinite(value) for value in (gain, time_constant, dead_time)):
            LOGGER.error("Fit parameters must be finite")
            return False, None

        if time_constant <= 0.0:
            LOGGER.error(f"Time constant must be positive, got: {time_constant}")
            return False, None

        if dead_time < 0.0:
            LOGGER.error(f"Dead time must be non-negative, got: {dead_time}")
            return False, None

        return True, FopdtFit(cls.__create_key, gain, time_constant, dead_time)

    def __init__(
        self, class_private_create_key: object, gain: float, time_constant: float, dead_time: float
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is FopdtFit.__create_key, "Use create() method"

        self.gain = gain
        self.time_constant = time_constant
        self.dead_time = dead_time

    def __repr__(self) -> str:
        return (
            f"FopdtFit(gain={self.gain}, time_constant={self.time_constant}, "
            f"dead_time={self.dead_time})"
        )


def _first_crossing(times: np.ndarray, progress: np.ndarray, fraction: float) -> float:
    """
    Time the normalized response first reaches the fraction, linear between samples.
    """
    index = int(np.argmax(progress >= fraction))
    if index == 0:
        return float(times[0])

    before = progress[index - 1]
    after = progress[index]
    interval = times[index] - times[index - 1]
    return float(times[index - 1] + (fraction - before) / (after - before) * interval)


def identify_broida(
    response: time_series.TimeSeries, u_step: float, y_initial: float
) -> "tuple[bool, FopdtFit | None]":
    """
    Fits a first order plus dead time model to a step response.
    The step is applied at the first sample of the response.

    response: Output following the step, settled by the end.
    u_step: Amplitude of the input step.
    y_initial: Output before the step.

    Returns: Success, fit.
    """
    if not math.isfinite(u_step) or u_step == 0.0:
        LOGGER.error(f"Step amplitude must be nonzero, got: {u_step}")
        return False, None

    if len(response) < 2:
        LOGGER.error("Step response needs at least two samples")
        return False, None

    if response.diverged:
        LOGGER.error("Step response diverged")
        return False, None

    values = response.values
    y_final = float(values[-1])
    span = y_final - y_initial
    if abs(span) <= np.finfo(np.float64).eps * max(1.0, abs(y_initial)):
        LOGGER.error("Step response is degenerate, output did not move")
        return False, None

    tail_count = max(2, math.ceil(SETTLED_TAIL_FRACTION * len(response)))
    tail_spread = float(np.ptp(values[-tail_count:]))
    if tail_spread >= SETTLED_SPREAD_FRACTION * abs(span):
        LOGGER.error(
            f"Step response has not settled, spread {tail_spread} over the last "
            f"{tail_count} samples against span {span}"
        )
        return False, None

    progress = (values - y_initial) / span
    times = response.times - response.t0
    first_crossing = _first_crossing(times, progress, FIRST_CROSSING_FRACTION)
    second_crossing = _first_crossing(times, progress, SECOND_CROSSING_FRACTION)

    time_constant = TIME_CONSTANT_FACTOR * (second_crossing - first_crossing)
    dead_time = max(
        0.0, FIRST_DELAY_FACTOR * first_crossing - SECOND_DELAY_FACTOR * second_crossing
    )
    LOGGER.debug(f"Crossings at {first_crossing} s and {second_crossing} s")

    return FopdtFit.create(span / u_step, time_constant, dead_time)


def tune_pi_broida(
    fit: FopdtFit, dead_time_floor: "float | None" = None
) -> "tuple[bool, classic_controller.ClassicGains | None]":
    """
    kp = 0.8 T / (k tau), Ti = T, ki = kp / Ti.

    fit: Identified model.
    dead_time_floor: Smallest dead time used, None rejects fits without dead time.

    Returns: Success, PI gains.
    """
    dead_time = fit.dead_time
    if dead_time_floor is not None:
        dead_time = max(dead_time, dead_time_floor)

    if dead_time <= 0.0:
        LOGGER.error("Fit has no dead time, the PI gain is infinite. Set a dead time floor")
        return False, None

    if fit.gain == 0.0:
        LOGGER.error("Fit has zero gain")
        return False, None

    kp = PI_GAIN_FACTOR * fit.time_constant / (fit.gain * dead_time)
    return classic_controller.ClassicGains.create(kp=kp, ki=kp / fit.time_constant)
