"""
Uniformly sampled real-valued signal.
"""

import math
import pathlib

import numpy as np

from ..logger import logger


TIME_COLUMN = "time"
# Enough significant digits to round-trip a double
CSV_NUMBER_FORMAT = "%.17g"

LOGGER = logger.get_logger(__name__)


class TimeSeries:
    """
    Samples values[k] taken at time t0 + k * h.
    Values are read-only so that series can be shared freely.
    """

    __create_key = object()

    @classmethod
    def create(
        cls, h: float, values: "np.ndarray | list[float]", t0: float = 0.0, diverged: bool = False
    ) -> "tuple[bool, TimeSeries | None]":
        """
        h: Sampling interval in seconds, positive and finite.
        values: Samples, all finite unless diverged is set.
        t0: Time of the first sample in seconds.
        diverged: The series is the partial record of a simulation that blew up.
        """
        if not math.isfinite(h) or h <= 0.0:
            LOGGER.error(f"Sampling interval must be positive and finite, got: {h}")
            return False, None

        if not math.isfinite(t0):
            LOGGER.error(f"Start time must be finite, got: {t0}")
            return False, None

        samples = np.array(values, dtype=np.float64)
        if samples.ndim != 1:
            LOGGER.error(f"Samples must be one dimensional, got shape: {samples.shape}")
            return False, None

        if not diverged and not np.all(np.isfinite(samples)):
            LOGGER.error("Samples must be finite unless the series is flagged diverged")
            return False, None

        samples.flags.writeable = False

        return True, TimeSeries(cls.__create_key, h, samples, t0, diverged)

    def __init__(
        self,
        class_private_create_key: object,
        h: float,
        values: np.ndarray,
        t0: float,
        diverged: bool,
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is TimeSeries.__create_key, "Use create() method"

        self.h = h
        self.values = values
        self.t0 = t0
        self.diverged = diverged

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return (
            f"TimeSeries(h={self.h}, t0={self.t0}, samples={len(self)}, "
            f"diverged={self.diverged})"
        )

    @property
    def times(self) -> np.ndarray:
        """
        Sample times in seconds.
        """
        return self.t0 + self.h * np.arange(len(self), dtype=np.float64)

    def with_values(self, values: "np.ndarray | list[float]") -> "tuple[bool, TimeSeries | None]":
        """
        New series on the same time grid.
        """
        return TimeSeries.create(self.h, values, self.t0, self.diverged)

    def write_csv(self, file_path: pathlib.Path, value_column: str = "value") -> bool:
        """
        Writes time and value columns at full double precision.

        file_path: Path to the CSV file, overwritten if it exists.
        value_column: Header of the value column.

        Returns: Success.
        """
        data = np.column_stack((self.times, self.values))
        try:
            np.savetxt(
                file_path,
                data,
                fmt=CSV_NUMBER_FORMAT,
                delimiter=",",
                header=f"{TIME_COLUMN},{value_column}",
                comments="",
            )
        except OSError as exception:
            LOGGER.error(f"Failed to write time series to: {file_path}, exception: {exception}")
            return False

        return True


def read_csv(
    file_path: pathlib.Path, value_column: str = "value"
) -> "tuple[bool, TimeSeries | None]":
    """
    Reads a series from a CSV file with a header row and a `time` column.
    The sampling interval is taken from the first two time stamps.

    file_path: Path to the CSV file.
    value_column: Name of the column holding the samples.

    Returns: Success, time series.
    """
    try:
        data = np.genfromtxt(file_path, delimiter=",", names=True, dtype=np.float64)
    except (OSError, ValueError) as exception:
        LOGGER.error(f"Failed to read CSV file: {file_path}, exception: {exception}")
        return False, None

    if data.dtype.names is None or TIME_COLUMN not in data.dtype.names:
        LOGGER.error(f"CSV file has no time column: {file_path}")
        return False, None

    if value_column not in data.dtype.names:
        LOGGER.error(f"CSV file has no {value_column} column: {file_path}")
        return False, None

    times = np.atleast_1d(data[TIME_COLUMN])
    values = np.atleast_1d(data[value_column])
    if times.size < 2:
        LOGGER.error(f"CSV file needs at least two samples: {file_path}")
        return False, None

    h = float(times[1] - times[0])
    steps = np.diff(times)
    # Uniform sampling within rounding of the printed time stamps
    if not np.allclose(steps, h, rtol=1e-6, atol=1e-12):
        LOGGER.error(f"CSV file is not uniformly sampled: {file_path}")
        return False, None

    return TimeSeries.create(h, values, float(times[0]))
