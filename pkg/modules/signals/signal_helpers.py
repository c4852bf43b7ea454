"""
Finite differences, Riemann sums and denoising of time series.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from . import time_series
from ..logger import logger


DEFAULT_DENOISE_WINDOW = 50

LOGGER = logger.get_logger(__name__)


def backward_difference(
    series: time_series.TimeSeries, order: int
) -> "tuple[bool, time_series.TimeSeries | None]":
    """
    First or second backward difference quotient of a series.
    The first `order` samples are 0 so the output keeps the input's length.

    series: Input series.
    order: 1 for (s[k] - s[k-1]) / h, 2 for (s[k] - 2 s[k-1] + s[k-2]) / h^2.

    Returns: Success, differenced series.
    """
    if order not in (1, 2):
        LOGGER.error(f"Difference order must be 1 or 2, got: {order}")
        return False, None

    if len(series) < order + 1:
        LOGGER.error(f"Series of {len(series)} samples is too short for order {order}")
        return False, None

    differences = np.zeros(len(series), dtype=np.float64)
    differences[order:] = np.diff(series.values, n=order) / series.h**order

    return series.with_values(differences)


def riemann_sum(
    series: time_series.TimeSeries, initial: float = 0.0
) -> "tuple[bool, time_series.TimeSeries | None]":
    """
    Running integral I[k] = I[k-1] + h * s[k] with I[-1] = initial.

    Returns: Success, integrated series.
    """
    if len(series) == 0:
        LOGGER.error("Cannot integrate an empty series")
        return False, None

    return series.with_values(initial + np.cumsum(series.h * series.values))


def moving_average(
    series: time_series.TimeSeries, window: int = DEFAULT_DENOISE_WINDOW
) -> "tuple[bool, time_series.TimeSeries | None]":
    """
    Causal trailing mean over min(k + 1, window) samples.

    series: Input series.
    window: Number of samples averaged, 1 returns the input unchanged.

    Returns: Success, denoised series.
    """
    if window < 1:
        LOGGER.error(f"Averaging window must be at least 1, got: {window}")
        return False, None

    if window == 1 or len(series) == 0:
        return series.with_values(series.values)

    # Pad the start with NaN so early samples average over what exists
    padded = np.concatenate((np.full(window - 1, np.nan), series.values))
    windows = sliding_window_view(padded, window)
    current = series.values

    # Averaging offsets from the current sample keeps constants exact
    averaged = current + np.nanmean(windows - current[:, np.newaxis], axis=1)
    # Rounding must not push the mean outside the samples it came from
    averaged = np.clip(averaged, np.nanmin(windows, axis=1), np.nanmax(windows, axis=1))

    return series.with_values(averaged)
