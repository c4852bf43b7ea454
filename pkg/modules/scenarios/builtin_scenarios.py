"""
Named experiments on the cubic plant dy/dt + y^3 = 2 u: open loop response, then a
Broida-tuned PI against an i-PI at nominal setpoint, at a 5 times larger setpoint,
and under an actuator power loss.
"""

from . import scenario
from ..classic import classic_controller
from ..intelligent import intelligent_controller
from ..logger import logger
from ..plant import plant_model
from ..signals import reference_trajectory


DEFAULT_H = 0.01  # s

PI_KP = 6.350
PI_KI = 15.817
IPI_ALPHA = 1.0
IPI_K_P = 6.0
IPI_K_I = 9.0
# Averaging three raw estimates keeps the loop stable when alpha underestimates the plant
IPI_ESTIMATION_WINDOW = 3
# Closed loop builtins follow a smoothed setpoint, a raw step kicks the i-PI through the
# reference derivative and its IAE leaves the PI band
CLOSED_LOOP_REFERENCE_MODE = reference_trajectory.ReferenceMode.SMOOTH_SECOND_ORDER

NOMINAL_SETPOINT = 1.0
LARGE_SETPOINT = 5.0
OPEN_LOOP_DURATION = 5.0  # s
NOMINAL_DURATION = 6.0  # s
LARGE_SETPOINT_DURATION = 8.0  # s
POWER_LOSS_DURATION = 12.0  # s
POWER_LOSS_ONSET = 4.0  # s
POWER_LOSS_DECAY = 0.996

BUILTIN_NAMES = (
    "open-loop",
    "pi-nominal",
    "ipi-nominal",
    "pi-large-setpoint",
    "ipi-large-setpoint",
    "pi-power-loss",
    "ipi-power-loss",
)

LOGGER = logger.get_logger(__name__)


def _controller_arguments(controller: str) -> dict:
    if controller == "pi":
        result, gains = classic_controller.ClassicGains.create(kp=PI_KP, ki=PI_KI)
        assert result
        return {
            "controller_kind": scenario.ControllerKind.CLASSIC,
            "classic_kind": classic_controller.ClassicKind.PI,
            "classic_gains": gains,
        }

    result, config = intelligent_controller.IntelligentConfig.create(
        nu=1,
        alpha=IPI_ALPHA,
        k_p=IPI_K_P,
        k_i=IPI_K_I,
        estimation_window=IPI_ESTIMATION_WINDOW,
    )
    assert result
    return {
        "controller_kind": scenario.ControllerKind.INTELLIGENT,
        "intelligent_config": config,
    }


def builtin_scenario(
    name: str, h: float = DEFAULT_H, noise: "plant_model.NoiseModel | None" = None
) -> "tuple[bool, scenario.Scenario | None]":
    """
    Builds a named experiment.

    name: One of BUILTIN_NAMES.
    h: Sampling interval in seconds.
    noise: Measurement noise, none if None.

    Returns: Success, scenario.
    """
    if name not in BUILTIN_NAMES:
        LOGGER.error(f"Unknown scenario: {name}, expected one of: {', '.join(BUILTIN_NAMES)}")
        return False, None

    result, plant = plant_model.PlantModel.create_nonlinear_cubic()
    assert result

    if name == "open-loop":
        return scenario.Scenario.create(
            name=name,
            plant=plant,
            controller_kind=scenario.ControllerKind.OPEN_LOOP,
            schedule=[(0.0, 1.0)],
            duration=OPEN_LOOP_DURATION,
            h=h,
            noise=noise,
        )

    controller, case = name.split("-", 1)
    fault = None
    metrics_window = None
    match case:
        case "nominal":
            setpoint = NOMINAL_SETPOINT
            duration = NOMINAL_DURATION
        case "large-setpoint":
            setpoint = LARGE_SETPOINT
            duration = LARGE_SETPOINT_DURATION
        case "power-loss":
            setpoint = NOMINAL_SETPOINT
            duration = POWER_LOSS_DURATION
            result, fault = plant_model.FaultModel.create(
                plant_model.FaultKind.POWER_LOSS, POWER_LOSS_ONSET, POWER_LOSS_DECAY
            )
            assert result
            metrics_window = (POWER_LOSS_ONSET, POWER_LOSS_DURATION)

    return scenario.Scenario.create(
        name=name,
        plant=plant,
        schedule=[(0.0, setpoint)],
        duration=duration,
        h=h,
        fault=fault,
        noise=noise,
        metrics_window=metrics_window,
        reference_mode=CLOSED_LOOP_REFERENCE_MODE,
        **_controller_arguments(controller),
    )
