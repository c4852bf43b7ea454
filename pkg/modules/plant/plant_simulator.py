"""
Fixed-step integration of plant models under zero-order hold.
"""

import collections
import math

import numpy as np

from . import plant_model
from ..logger import logger
from ..signals import time_series


DEFAULT_SUBSTEPS = 10
# Absorbs rounding when the delay is a whole number of sub-steps
DELAY_ROUNDING_TOLERANCE = 1e-9

LOGGER = logger.get_logger(__name__)


def rk4_step(
    model: plant_model.PlantModel, state: np.ndarray, u_held: float, dt: float
) -> "tuple[bool, np.ndarray | None]":
    """
    Classical fourth order Runge-Kutta step with the input held constant.

    model: Plant right-hand side.
    state: State at the start of the step.
    u_held: Input over the step, already delayed for fopdt.
    dt: Step length in seconds.

    Returns: Success, state at the end of the step. Fails if the state is not finite.
    """
    k1 = model.derivative(state, u_held)
    k2 = model.derivative(state + 0.5 * dt * k1, u_held)
    k3 = model.derivative(state + 0.5 * dt * k2, u_held)
    k4 = model.derivative(state + dt * k3, u_held)

    next_state = state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(next_state)):
        return False, None

    return True, next_state


def apply_fault(fault: plant_model.FaultModel, u: float, t: float, h: float) -> float:
    """
    Control actually reaching the plant.

    fault: Actuator fault.
    u: Commanded control.
    t: Time of the sample in seconds.
    h: Sampling interval in seconds.
    """
    if fault.kind == plant_model.FaultKind.NONE or t <= fault.onset:
        return u

    return fault.decay ** (t / h) * u


class PlantSimulator:
    """
    Plant state advanced one control interval at a time.
    Each interval holds the input and takes `substeps` RK4 steps.
    """

    __create_key = object()

    @classmethod
    def create(
        cls, model: plant_model.PlantModel, h: float, substeps: int = DEFAULT_SUBSTEPS
    ) -> "tuple[bool, PlantSimulator | None]":
        """
        model: Plant to integrate.
        h: Control interval in seconds.
        substeps: RK4 steps per control interval.
        """
        if not math.isfinite(h) or h <= 0.0:
            LOGGER.error(f"Control interval must be positive, got: {h}")
            return False, None

        if substeps < 1:
            LOGGER.error(f"Sub-step count must be at least 1, got: {substeps}")
            return False, None

        return True, PlantSimulator(cls.__create_key, model, h, substeps)

    def __init__(
        self,
        class_private_create_key: object,
        model: plant_model.PlantModel,
        h: float,
        substeps: int,
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is PlantSimulator.__create_key, "Use create() method"

        self.model = model
        self.h = h
        self.substeps = substeps
        self.dt = h / substeps
        self.state = model.initial_state()
        self.time = 0.0
        self.diverged_at: "float | None" = None

        # Inputs waiting out the dead time, one entry per sub-step
        delay_steps = math.ceil(model.delay / self.dt - DELAY_ROUNDING_TOLERANCE)
        self.__delay_line = collections.deque([0.0] * delay_steps)

    def output(self) -> float:
        """
        Current plant output.
        """
        return float(self.state[0])

    def advance(self, u: float) -> bool:
        """
        Integrates over one control interval with u held.

        Returns: Success, False once the state blows up. The time is kept in diverged_at.
        """
        if self.diverged_at is not None:
            return False

        for substep in range(self.substeps):
            if len(self.__delay_line) > 0:
                self.__delay_line.append(u)
                u_effective = self.__delay_line.popleft()
            else:
                u_effective = u

            result, next_state = rk4_step(self.model, self.state, u_effective, self.dt)
            if not result:
                self.diverged_at = self.time + (substep + 1) * self.dt
                LOGGER.error(f"Plant diverged at t={self.diverged_at}")
                return False

            self.state = next_state

        self.time += self.h
        return True


def simulate_open_loop(
    model: plant_model.PlantModel,
    input_series: time_series.TimeSeries,
    substeps: int,
    noise: plant_model.NoiseModel,
) -> "tuple[bool, time_series.TimeSeries | None]":
    """
    Open loop response sampled at the input's rate.
    Output k is measured before input k is applied. Noise only touches the measurement.

    model: Plant to simulate.
    input_series: Control held over each sampling interval.
    substeps: RK4 steps per sampling interval.
    noise: Measurement noise, restarted from its seed.

    Returns: Success, measured output. On divergence the partial output flagged diverged.
    """
    if len(input_series) == 0:
        LOGGER.error("Input series is empty")
        return False, None

    result, simulator = PlantSimulator.create(model, input_series.h, substeps)
    if not result:
        return False, None

    noise.reset()
    outputs = []
    for k, u in enumerate(input_series.values):
        outputs.append(simulator.output() + noise.sample())

        if k == len(input_series) - 1:
            break

        if not simulator.advance(float(u)):
            result, partial = time_series.TimeSeries.create(
                input_series.h, outputs, input_series.t0, diverged=True
            )
            assert result
            return False, partial

    return time_series.TimeSeries.create(input_series.h, outputs, input_series.t0)
