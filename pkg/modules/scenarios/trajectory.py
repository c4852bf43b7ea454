"""
Recorded signals of a run.
"""

import pathlib

import numpy as np

from ..logger import logger
from ..signals import time_series


CSV_COLUMNS = (
    "time",
    "setpoint",
    "reference",
    "output",
    "output_denoised",
    "control_commanded",
    "control_applied",
    "f_estimate",
)
SIGNAL_NAMES = CSV_COLUMNS[1:]

LOGGER = logger.get_logger(__name__)


class Trajectory:
    """
    Aligned series, one per CSV column after time.
    A diverged trajectory ends at the last sample recorded before the blow-up.
    """

    __create_key = object()

    @classmethod
    def create(
        cls, h: float, signals: "dict[str, np.ndarray]", diverged: bool = False
    ) -> "tuple[bool, Trajectory | None]":
        """
        h: Sampling interval in seconds.
        signals: Samples keyed by every name in SIGNAL_NAMES, all of one length.
        diverged: The run blew up.
        """
        missing = [name for name in SIGNAL_NAMES if name not in signals]
        if len(missing) > 0:
            LOGGER.error(f"Trajectory is missing signals: {missing}")
            return False, None

        lengths = {len(signals[name]) for name in SIGNAL_NAMES}
        if len(lengths) != 1:
            LOGGER.error(f"Trajectory signals differ in length: {sorted(lengths)}")
            return False, None

        series = {}
        for name in SIGNAL_NAMES:
            result, signal = time_series.TimeSeries.create(h, signals[name], diverged=diverged)
            if not result:
                LOGGER.error(f"Invalid trajectory signal: {name}")
                return False, None
            series[name] = signal

        return True, Trajectory(cls.__create_key, h, series, diverged)

    def __init__(
        self,
        class_private_create_key: object,
        h: float,
        series: "dict[str, time_series.TimeSeries]",
        diverged: bool,
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is Trajectory.__create_key, "Use create() method"

        self.h = h
        self.diverged = diverged
        self.setpoint = series["setpoint"]
        self.reference = series["reference"]
        self.output = series["output"]
        self.output_denoised = series["output_denoised"]
        self.control_commanded = series["control_commanded"]
        self.control_applied = series["control_applied"]
        self.f_estimate = series["f_estimate"]

    def __len__(self) -> int:
        return len(self.output)

    @property
    def time(self) -> np.ndarray:
        """
        Sample times in seconds.
        """
        return self.output.times

    def signal(self, name: str) -> time_series.TimeSeries:
        """
        Series by CSV column name.
        """
        return getattr(self, name)

    def write_csv(self, file_path: pathlib.Path) -> bool:
        """
        Writes every column at full double precision under one header row.

        Returns: Success.
        """
        columns = [self.time] + [self.signal(name).values for name in SIGNAL_NAMES]
        try:
            np.savetxt(
                file_path,
                np.column_stack(columns),
                fmt=time_series.CSV_NUMBER_FORMAT,
                delimiter=",",
                header=",".join(CSV_COLUMNS),
                comments="",
            )
        except OSError as exception:
            LOGGER.error(f"Failed to write trajectory to: {file_path}, exception: {exception}")
            return False

        return True
