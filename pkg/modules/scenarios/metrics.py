"""
Tracking quality of a trajectory.
"""

import dataclasses

import numpy as np

from . import trajectory
from ..logger import logger


SETTLING_BAND_FRACTION = 0.02
# Window edges this close to a sample time, relative to h, include that sample
WINDOW_TIME_TOLERANCE = 1e-9

LOGGER = logger.get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class Metrics:
    """
    iae: Integral of |e| over the window, error seconds.
    itae: Integral of (t - t_start) |e| over the window.
    max_overshoot: Largest excursion past the final setpoint, as a fraction of the span.
    settling_time_2pct: Seconds from the window start until the output stays within 2%,
        None when it never does.
    window: (start, end) of the samples used, in seconds.
    """

    iae: float
    itae: float
    max_overshoot: float
    settling_time_2pct: "float | None"
    window: "tuple[float, float]"

    @property
    def settled(self) -> bool:
        """
        Output ended inside the settling band.
        """
        return self.settling_time_2pct is not None

    def as_dict(self) -> "dict[str, float | str]":
        """
        Key value pairs for the metrics summary, unsettled runs read `unsettled`.
        """
        return {
            "iae": self.iae,
            "itae": self.itae,
            "max_overshoot": self.max_overshoot,
            "settling_time_2pct": (
                self.settling_time_2pct if self.settling_time_2pct is not None else "unsettled"
            ),
            "window_start": self.window[0],
            "window_end": self.window[1],
        }


def compute_metrics(
    run: trajectory.Trajectory, window: "tuple[float, float] | None" = None
) -> "tuple[bool, Metrics | None]":
    """
    Riemann sums at step h of the error setpoint - output.
    The span is the final setpoint minus the output at the window start.

    run: Recorded trajectory.
    window: (start, end) in seconds, the whole run if None.

    Returns: Success, metrics.
    """
    times = run.time
    if times.size == 0:
        LOGGER.error("Trajectory is empty")
        return False, None

    tolerance = WINDOW_TIME_TOLERANCE * run.h
    if window is None:
        window = (float(times[0]), float(times[-1]))

    window_start, window_end = window
    if window_start > window_end:
        LOGGER.error(f"Window starts after it ends: {window}")
        return False, None

    if window_start < times[0] - tolerance or window_end > times[-1] + tolerance:
        LOGGER.error(f"Window {window} is outside the trajectory [{times[0]}, {times[-1]}]")
        return False, None

    selected = (times >= window_start - tolerance) & (times <= window_end + tolerance)
    if not np.any(selected):
        LOGGER.error(f"Window {window} holds no samples")
        return False, None

    window_times = times[selected]
    setpoint = run.setpoint.values[selected]
    output = run.output.values[selected]
    absolute_error = np.abs(setpoint - output)

    iae = float(np.sum(run.h * absolute_error))
    itae = float(np.sum(run.h * (window_times - window_start) * absolute_error))

    final_setpoint = float(setpoint[-1])
    span = final_setpoint - float(output[0])
    if span != 0.0:
        excursion = np.max(np.sign(span) * (output - final_setpoint))
        max_overshoot = max(0.0, float(excursion) / abs(span))
    else:
        max_overshoot = 0.0

    # Without a span the band is relative to the setpoint itself
    band = SETTLING_BAND_FRACTION * max(abs(span), abs(final_setpoint))
    outside = np.flatnonzero(np.abs(output - final_setpoint) > band)
    if outside.size == 0:
        settling_time = 0.0
    elif outside[-1] == output.size - 1:
        settling_time = None
    else:
        settling_time = float(window_times[outside[-1] + 1] - window_start)

    return True, Metrics(
        iae=iae,
        itae=itae,
        max_overshoot=max_overshoot,
        settling_time_2pct=settling_time,
        window=(window_start, window_end),
    )
