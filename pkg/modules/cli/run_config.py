"""
Declarative run description read from and written to YAML.
"""

import dataclasses
import pathlib

from ..classic import classic_controller
from ..intelligent import intelligent_controller
from ..logger import logger
from ..plant import plant_model
from ..plant import plant_simulator
from ..read_yaml import read_yaml
from ..scenarios import scenario
from ..signals import reference_trajectory
from ..signals import signal_helpers


TOP_LEVEL_KEYS = {
    "name",
    "h",
    "duration",
    "seed",
    "output_path",
    "plant",
    "controller",
    "reference",
    "fault",
    "noise",
    "simulation",
    "metrics_window",
}
REQUIRED_KEYS = {"name", "duration", "plant", "controller", "reference"}
PLANT_KEYS = {
    plant_model.PlantKind.NONLINEAR_CUBIC: {"kind", "y0"},
    plant_model.PlantKind.FOPDT: {"kind", "y0", "gain", "time_constant", "delay"},
    plant_model.PlantKind.PURE_INTEGRATOR: {"kind", "y0", "order", "offset", "slope"},
}
CONTROLLER_KEYS = {
    scenario.ControllerKind.OPEN_LOOP: {"kind"},
    scenario.ControllerKind.CLASSIC: {"kind", "structure", "kp", "ki", "kii", "kd"},
    scenario.ControllerKind.INTELLIGENT: {
        "kind",
        "nu",
        "alpha",
        "k_p",
        "k_i",
        "k_d",
        "estimation_window",
    },
}
REFERENCE_KEYS = {"schedule", "mode", "time_constant"}
FAULT_KEYS = {"kind", "onset", "decay"}
NOISE_KEYS = {"kind", "std"}
SIMULATION_KEYS = {"substeps", "denoise_window"}

DEFAULT_H = 0.01  # s

LOGGER = logger.get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    Every field of a run with defaults filled in.
    Sections are kept as plain mappings so that writing them back is lossless.
    """

    name: str
    duration: float
    plant: dict
    controller: dict
    schedule: "tuple[tuple[float, float], ...]"
    h: float = DEFAULT_H
    seed: int = 0
    output_path: "str | None" = None
    reference_mode: str = reference_trajectory.ReferenceMode.STEP_BACKWARD_DIFF.value
    reference_time_constant: float = reference_trajectory.DEFAULT_TIME_CONSTANT
    fault: dict = dataclasses.field(default_factory=lambda: {"kind": "none"})
    noise: dict = dataclasses.field(default_factory=lambda: {"kind": "none"})
    substeps: int = plant_simulator.DEFAULT_SUBSTEPS
    denoise_window: int = signal_helpers.DEFAULT_DENOISE_WINDOW
    metrics_window: "tuple[float, float] | None" = None

    def to_dict(self) -> dict:
        """
        Mapping in the file layout, parse_run_config(to_dict()) gives back an equal config.
        """
        return {
            "name": self.name,
            "h": self.h,
            "duration": self.duration,
            "seed": self.seed,
            "output_path": self.output_path,
            "plant": dict(self.plant),
            "controller": dict(self.controller),
            "reference": {
                "schedule": [list(entry) for entry in self.schedule],
                "mode": self.reference_mode,
                "time_constant": self.reference_time_constant,
            },
            "fault": dict(self.fault),
            "noise": dict(self.noise),
            "simulation": {"substeps": self.substeps, "denoise_window": self.denoise_window},
            "metrics_window": (
                list(self.metrics_window) if self.metrics_window is not None else None
            ),
        }


def _check_keys(section: str, mapping: object, allowed: set) -> bool:
    if not isinstance(mapping, dict):
        LOGGER.error(f"Section {section} must be a mapping")
        return False

    unknown = set(mapping) - allowed
    if len(unknown) > 0:
        LOGGER.error(f"Unknown keys in {section}: {sorted(unknown)}")
        return False

    return True


def _enum_value(enum_type: type, value: object, section: str) -> "tuple[bool, object | None]":
    try:
        return True, enum_type(value)
    except ValueError:
        allowed = ", ".join(member.value for member in enum_type)
        LOGGER.error(f"Unknown {section} kind: {value}, expected one of: {allowed}")
        return False, None


def parse_run_config(config: dict) -> "tuple[bool, RunConfig | None]":
    """
    Validates a run description.
    Unknown keys anywhere are rejected.

    config: Mapping as loaded from YAML.

    Returns: Success, run configuration.
    """
    if not _check_keys("run configuration", config, TOP_LEVEL_KEYS):
        return False, None

    missing = REQUIRED_KEYS - set(config)
    if len(missing) > 0:
        LOGGER.error(f"Run configuration is missing keys: {sorted(missing)}")
        return False, None

    plant = config["plant"]
    if not isinstance(plant, dict):
        LOGGER.error("Section plant must be a mapping")
        return False, None
    result, plant_kind = _enum_value(plant_model.PlantKind, plant.get("kind"), "plant")
    if not result or not _check_keys("plant", plant, PLANT_KEYS[plant_kind]):
        return False, None

    controller = config["controller"]
    if not isinstance(controller, dict):
        LOGGER.error("Section controller must be a mapping")
        return False, None
    result, controller_kind = _enum_value(
        scenario.ControllerKind, controller.get("kind"), "controller"
    )
    if not result or not _check_keys("controller", controller, CONTROLLER_KEYS[controller_kind]):
        return False, None

    reference = config["reference"]
    if not _check_keys("reference", reference, REFERENCE_KEYS):
        return False, None
    if "schedule" not in reference:
        LOGGER.error("Section reference is missing the schedule")
        return False, None

    fault = config.get("fault", {"kind": "none"})
    noise = config.get("noise", {"kind": "none"})
    simulation = config.get("simulation", {})
    if not (
        _check_keys("fault", fault, FAULT_KEYS)
        and _check_keys("noise", noise, NOISE_KEYS)
        and _check_keys("simulation", simulation, SIMULATION_KEYS)
    ):
        return False, None

    try:
        schedule = tuple((float(time), float(value)) for time, value in reference["schedule"])
        metrics_window = config.get("metrics_window")
        if metrics_window is not None:
            window_start, window_end = metrics_window
            metrics_window = (float(window_start), float(window_end))

        output_path = config.get("output_path")
        run_config = RunConfig(
            name=str(config["name"]),
            duration=float(config["duration"]),
            plant=dict(plant),
            controller=dict(controller),
            schedule=schedule,
            h=float(config.get("h", DEFAULT_H)),
            seed=int(config.get("seed", 0)),
            output_path=str(output_path) if output_path is not None else None,
            reference_mode=str(
                reference.get("mode", reference_trajectory.ReferenceMode.STEP_BACKWARD_DIFF.value)
            ),
            reference_time_constant=float(
                reference.get("time_constant", reference_trajectory.DEFAULT_TIME_CONSTANT)
            ),
            fault=dict(fault),
            noise=dict(noise),
            substeps=int(simulation.get("substeps", plant_simulator.DEFAULT_SUBSTEPS)),
            denoise_window=int(
                simulation.get("denoise_window", signal_helpers.DEFAULT_DENOISE_WINDOW)
            ),
            metrics_window=metrics_window,
        )
    except (TypeError, ValueError) as exception:
        LOGGER.error(f"Malformed run configuration: {exception}")
        return False, None

    return True, run_config


def load_run_config(file_path: pathlib.Path) -> "tuple[bool, RunConfig | None]":
    """
    Reads and validates a run configuration file.
    """
    result, config = read_yaml.open_config(file_path)
    if not result:
        return False, None

    return parse_run_config(config)


def save_run_config(run_config: RunConfig, file_path: pathlib.Path) -> bool:
    """
    Writes a run configuration file.
    """
    return read_yaml.write_config(run_config.to_dict(), file_path)


def _build_plant(section: dict) -> "tuple[bool, plant_model.PlantModel | None]":
    kind = plant_model.PlantKind(section["kind"])
    y0 = float(section.get("y0", 0.0))
    match kind:
        case plant_model.PlantKind.NONLINEAR_CUBIC:
            return plant_model.PlantModel.create_nonlinear_cubic(y0)
        case plant_model.PlantKind.FOPDT:
            return plant_model.PlantModel.create_fopdt(
                float(section["gain"]),
                float(section["time_constant"]),
                float(section.get("delay", 0.0)),
                y0,
            )
        case plant_model.PlantKind.PURE_INTEGRATOR:
            return plant_model.PlantModel.create_pure_integrator(
                int(section.get("order", 1)),
                float(section.get("offset", 0.0)),
                float(section.get("slope", 1.0)),
                y0,
            )

    return False, None


def _controller_arguments(section: dict) -> "tuple[bool, dict | None]":
    kind = scenario.ControllerKind(section["kind"])
    match kind:
        case scenario.ControllerKind.OPEN_LOOP:
            return True, {"controller_kind": kind}
        case scenario.ControllerKind.CLASSIC:
            result, structure = _enum_value(
                classic_controller.ClassicKind, section.get("structure", "PI"), "classic"
            )
            if not result:
                return False, None
            result, gains = classic_controller.ClassicGains.create(
                kp=float(section.get("kp", 0.0)),
                ki=float(section.get("ki", 0.0)),
                kii=float(section.get("kii", 0.0)),
                kd=float(section.get("kd", 0.0)),
            )
            if not result:
                return False, None
            return True, {
                "controller_kind": kind,
                "classic_kind": structure,
                "classic_gains": gains,
            }
        case scenario.ControllerKind.INTELLIGENT:
            result, config = intelligent_controller.IntelligentConfig.create(
                nu=int(section.get("nu", 1)),
                alpha=float(section["alpha"]),
                k_p=float(section.get("k_p", 0.0)),
                k_i=float(section.get("k_i", 0.0)),
                k_d=float(section.get("k_d", 0.0)),
                estimation_window=int(section.get("estimation_window", 1)),
            )
            if not result:
                return False, None
            return True, {"controller_kind": kind, "intelligent_config": config}

    return False, None


def build_scenario(
    run_config: RunConfig, h: "float | None" = None, seed: "int | None" = None
) -> "tuple[bool, scenario.Scenario | None]":
    """
    Scenario described by the run configuration.

    h: Overrides the configured sampling interval.
    seed: Overrides the configured noise seed.

    Returns: Success, scenario.
    """
    try:
        result, plant = _build_plant(run_config.plant)
        if not result:
            return False, None

        result, controller_arguments = _controller_arguments(run_config.controller)
        if not result:
            return False, None

        result, fault_kind = _enum_value(
            plant_model.FaultKind, run_config.fault.get("kind", "none"), "fault"
        )
        if not result:
            return False, None
        result, fault = plant_model.FaultModel.create(
            fault_kind,
            float(run_config.fault.get("onset", 0.0)),
            float(run_config.fault.get("decay", 1.0)),
        )
        if not result:
            return False, None

        result, noise_kind = _enum_value(
            plant_model.NoiseKind, run_config.noise.get("kind", "none"), "noise"
        )
        if not result:
            return False, None
        result, noise = plant_model.NoiseModel.create(
            noise_kind,
            float(run_config.noise.get("std", plant_model.DEFAULT_NOISE_STD)),
            run_config.seed if seed is None else seed,
        )
        if not result:
            return False, None

        result, reference_mode = _enum_value(
            reference_trajectory.ReferenceMode, run_config.reference_mode, "reference"
        )
        if not result:
            return False, None
    except (KeyError, TypeError, ValueError) as exception:
        LOGGER.error(f"Invalid run configuration: {exception}")
        return False, None

    return scenario.Scenario.create(
        name=run_config.name,
        plant=plant,
        schedule=list(run_config.schedule),
        duration=run_config.duration,
        h=run_config.h if h is None else h,
        fault=fault,
        noise=noise,
        reference_mode=reference_mode,
        reference_time_constant=run_config.reference_time_constant,
        substeps=run_config.substeps,
        denoise_window=run_config.denoise_window,
        metrics_window=run_config.metrics_window,
        **controller_arguments,
    )
