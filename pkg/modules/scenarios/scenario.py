"""
Description of one simulation run.
"""

import enum
import math

from ..classic import classic_controller
from ..intelligent import intelligent_controller
from ..logger import logger
from ..plant import plant_model
from ..plant import plant_simulator
from ..signals import reference_trajectory
from ..signals import signal_helpers


LOGGER = logger.get_logger(__name__)


class ControllerKind(enum.Enum):
    """
    What closes the loop, if anything.
    """

    OPEN_LOOP = "open-loop"
    CLASSIC = "classic"
    INTELLIGENT = "intelligent"


class Scenario:
    """
    Plant, controller, setpoint schedule, fault and noise of a run.
    In open loop the schedule is the plant input and doubles as the setpoint.
    """

    __create_key = object()

    @classmethod
    def create(
        cls,
        name: str,
        plant: plant_model.PlantModel,
        controller_kind: ControllerKind,
        schedule: "list[tuple[float, float]]",
        duration: float,
        h: float,
        classic_kind: "classic_controller.ClassicKind | None" = None,
        classic_gains: "classic_controller.ClassicGains | None" = None,
        intelligent_config: "intelligent_controller.IntelligentConfig | None" = None,
        fault: "plant_model.FaultModel | None" = None,
        noise: "plant_model.NoiseModel | None" = None,
        reference_mode: reference_trajectory.ReferenceMode = (
            reference_trajectory.ReferenceMode.STEP_BACKWARD_DIFF
        ),
        reference_time_constant: float = reference_trajectory.DEFAULT_TIME_CONSTANT,
        substeps: int = plant_simulator.DEFAULT_SUBSTEPS,
        denoise_window: int = signal_helpers.DEFAULT_DENOISE_WINDOW,
        metrics_window: "tuple[float, float] | None" = None,
    ) -> "tuple[bool, Scenario | None]":
        """
        name: Identifier used for output file names.
        plant: Plant model.
        controller_kind: Open loop, classic or intelligent.
        schedule: (time, value) entries, setpoints in closed loop and inputs in open loop.
        duration: Length of the run in seconds.
        h: Sampling interval in seconds.
        classic_kind, classic_gains: Required for classic controllers.
        intelligent_config: Required for intelligent controllers.
        fault: Actuator fault, none if None.
        noise: Measurement noise, none if None.
        reference_mode: How the setpoint becomes a reference in closed loop.
        reference_time_constant: Smoothing time constant in seconds.
        substeps: RK4 steps per sample.
        denoise_window: Samples in the moving average of the output.
        metrics_window: (start, end) in seconds of the comparison window, None for none.
        """
        if name == "":
            LOGGER.error("Scenario name is empty")
            return False, None

        if not math.isfinite(duration) or duration <= 0.0:
            LOGGER.error(f"Duration must be positive, got: {duration}")
            return False, None

        if not math.isfinite(h) or h <= 0.0:
            LOGGER.error(f"Sampling interval must be positive, got: {h}")
            return False, None

        if reference_trajectory.sample_count(duration, h) < 2:
            LOGGER.error(f"Duration {duration} is shorter than one sample of {h}")
            return False, None

        if controller_kind == ControllerKind.CLASSIC and (
            classic_kind is None or classic_gains is None
        ):
            LOGGER.error("Classic scenario needs a controller kind and gains")
            return False, None

        if controller_kind == ControllerKind.INTELLIGENT and intelligent_config is None:
            LOGGER.error("Intelligent scenario needs a controller configuration")
            return False, None

        if substeps < 1 or denoise_window < 1:
            LOGGER.error(
                f"Sub-steps and denoise window must be positive: {substeps}, {denoise_window}"
            )
            return False, None

        if metrics_window is not None:
            window_start, window_end = metrics_window
            if not 0.0 <= window_start < window_end <= duration + 0.5 * h:
                LOGGER.error(f"Metrics window {metrics_window} is outside the run")
                return False, None

        if fault is None:
            result, fault = plant_model.FaultModel.create()
            assert result

        if noise is None:
            result, noise = plant_model.NoiseModel.create()
            assert result

        return True, Scenario(
            cls.__create_key,
            name=name,
            plant=plant,
            controller_kind=controller_kind,
            schedule=list(schedule),
            duration=duration,
            h=h,
            classic_kind=classic_kind,
            classic_gains=classic_gains,
            intelligent_config=intelligent_config,
            fault=fault,
            noise=noise,
            reference_mode=reference_mode,
            reference_time_constant=reference_time_constant,
            substeps=substeps,
            denoise_window=denoise_window,
            metrics_window=metrics_window,
        )

    def __init__(
        self,
        class_private_create_key: object,
        name: str,
        plant: plant_model.PlantModel,
        controller_kind: ControllerKind,
        schedule: "list[tuple[float, float]]",
        duration: float,
        h: float,
        classic_kind: "classic_controller.ClassicKind | None",
        classic_gains: "classic_controller.ClassicGains | None",
        intelligent_config: "intelligent_controller.IntelligentConfig | None",
        fault: plant_model.FaultModel,
        noise: plant_model.NoiseModel,
        reference_mode: reference_trajectory.ReferenceMode,
        reference_time_constant: float,
        substeps: int,
        denoise_window: int,
        metrics_window: "tuple[float, float] | None",
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is Scenario.__create_key, "Use create() method"

        self.name = name
        self.plant = plant
        self.controller_kind = controller_kind
        self.schedule = schedule
        self.duration = duration
        self.h = h
        self.classic_kind = classic_kind
        self.classic_gains = classic_gains
        self.intelligent_config = intelligent_config
        self.fault = fault
        self.noise = noise
        self.reference_mode = reference_mode
        self.reference_time_constant = reference_time_constant
        self.substeps = substeps
        self.denoise_window = denoise_window
        self.metrics_window = metrics_window

    def __repr__(self) -> str:
        return (
            f"Scenario(name={self.name}, controller={self.controller_kind.value}, "
            f"plant={self.plant}, duration={self.duration}, h={self.h})"
        )

    @property
    def sample_count(self) -> int:
        """
        Samples in the run, both ends included.
        """
        return reference_trajectory.sample_count(self.duration, self.h)
