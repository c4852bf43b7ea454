"""
Runs a scenario sample by sample.
"""

import dataclasses
import math

import numpy as np

from . import metrics
from . import scenario
from . import trajectory
from ..classic import classic_controller
from ..intelligent import intelligent_controller
from ..logger import logger
from ..plant import plant_simulator
from ..signals import reference_trajectory
from ..signals import signal_helpers
from ..signals import time_series


LOGGER = logger.get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class ScenarioResult:
    """
    trajectory: Recorded signals, partial if the run diverged.
    metrics: Over the whole recorded run.
    window_metrics: Over the scenario's metrics window, None without one or if the run
        ended before the window did.
    diverged: The plant or the controller blew up.
    """

    trajectory: trajectory.Trajectory
    metrics: metrics.Metrics
    window_metrics: "metrics.Metrics | None"
    diverged: bool


def run_scenario(run: scenario.Scenario) -> "tuple[bool, ScenarioResult | None]":
    """
    At each sample: measure the output with noise, step the controller, apply the fault
    to the commanded control, then hold it over h while the plant is sub-stepped.
    Identical scenarios give bit-identical results.

    run: Scenario to simulate.

    Returns: Success, result. Divergence is a successful run flagged diverged.
    """
    LOGGER.info(f"Running scenario: {run.name}")

    h = run.h
    sample_count = run.sample_count
    result, setpoints = reference_trajectory.setpoint_sequence(run.schedule, h, run.duration)
    if not result:
        return False, None

    reference = None
    if run.controller_kind != scenario.ControllerKind.OPEN_LOOP:
        result, reference = reference_trajectory.make_reference(
            run.schedule,
            h,
            run.duration,
            run.reference_mode,
            run.reference_time_constant,
            run.plant.y0,
        )
        if not result:
            return False, None

    result, simulator = plant_simulator.PlantSimulator.create(run.plant, h, run.substeps)
    if not result:
        return False, None

    run.noise.reset()
    classic_state = classic_controller.ClassicState()
    intelligent_state = None
    if run.intelligent_config is not None:
        intelligent_state = intelligent_controller.IntelligentState.initial(
            run.intelligent_config, run.plant.y0
        )

    recorded = {name: np.zeros(sample_count) for name in trajectory.SIGNAL_NAMES}
    recorded["setpoint"] = setpoints
    recorded["reference"] = setpoints if reference is None else reference.y_star.values

    diverged = False
    recorded_count = 0
    for k in range(sample_count):
        t = k * h
        y = simulator.output() + run.noise.sample()
        f_value = 0.0

        match run.controller_kind:
            case scenario.ControllerKind.OPEN_LOOP:
                u = float(setpoints[k])
            case scenario.ControllerKind.CLASSIC:
                e = recorded["reference"][k] - y
                u, classic_state = classic_controller.step_classic(
                    run.classic_kind, classic_state, float(e), run.classic_gains, h
                )
            case scenario.ControllerKind.INTELLIGENT:
                result, step = intelligent_controller.step_intelligent(
                    intelligent_state, y, reference.sample(k), run.intelligent_config, h
                )
                if not result:
                    diverged = True
                    break
                u, intelligent_state, f_estimate = step
                f_value = f_estimate.value

        if not math.isfinite(u):
            LOGGER.error(f"Control is not finite at t={t}")
            diverged = True
            break

        u_applied = plant_simulator.apply_fault(run.fault, u, t, h)
        recorded["output"][k] = y
        recorded["control_commanded"][k] = u
        recorded["control_applied"][k] = u_applied
        recorded["f_estimate"][k] = f_value
        recorded_count = k + 1

        if k == sample_count - 1:
            break

        if not simulator.advance(u_applied):
            diverged = True
            break

    if recorded_count == 0:
        LOGGER.error(f"Scenario {run.name} diverged before the first sample")
        return False, None

    signals = {name: values[:recorded_count] for name, values in recorded.items()}
    result, output = time_series.TimeSeries.create(h, signals["output"])
    if not result:
        return False, None

    result, denoised = signal_helpers.moving_average(output, run.denoise_window)
    if not result:
        return False, None
    signals["output_denoised"] = denoised.values

    result, run_trajectory = trajectory.Trajectory.create(h, signals, diverged)
    if not result:
        return False, None

    result, run_metrics = metrics.compute_metrics(run_trajectory)
    if not result:
        return False, None

    window_metrics = None
    if run.metrics_window is not None:
        window_start, window_end = run.metrics_window
        last_time = float(run_trajectory.time[-1])
        if window_end <= last_time + 0.5 * h:
            result, window_metrics = metrics.compute_metrics(
                run_trajectory, (window_start, min(window_end, last_time))
            )
            if not result:
                return False, None

    if diverged:
        LOGGER.warning(f"Scenario {run.name} diverged after {recorded_count} samples")
    else:
        LOGGER.info(f"Scenario {run.name} finished, iae={run_metrics.iae}")

    return True, ScenarioResult(run_trajectory, run_metrics, window_metrics, diverged)
