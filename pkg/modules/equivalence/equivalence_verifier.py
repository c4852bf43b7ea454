"""
Drives an intelligent controller and its classic counterpart side by side and
reports how far their controls drift apart.
"""

import dataclasses

import numpy as np

from . import gain_correspondence
from ..classic import classic_controller
from ..intelligent import intelligent_controller
from ..logger import logger
from ..signals import reference_trajectory
from ..signals import signal_helpers
from ..signals import time_series


# Floating point slack, relative to 1 + max |u|
DEFAULT_TOLERANCE = 1e-9

ALPHA_MAGNITUDE_RANGE = (0.1, 10.0)
H_RANGE = (0.001, 0.1)
K_P_RANGE = (0.0, 50.0)
K_I_RANGE = (0.0, 50.0)
K_D_RANGE = (0.0, 20.0)

LOGGER = logger.get_logger(__name__)


@dataclasses.dataclass(frozen=True)
class EquivalenceReport:
    """
    max_abs_diff: Largest |u_classic - u_intelligent| over the run.
    max_abs_u: Largest |u| of either controller.
    sample_count: Samples compared.
    tolerance: Relative tolerance the difference is checked against.
    """

    max_abs_diff: float
    max_abs_u: float
    sample_count: int
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def bound(self) -> float:
        """
        Largest difference still counted as equivalent.
        """
        return self.tolerance * (1.0 + self.max_abs_u)

    @property
    def passed(self) -> bool:
        """
        Difference within the bound.
        """
        return self.max_abs_diff <= self.bound


def random_error_sequence(
    sample_count: int, h: float, seed: int
) -> "tuple[bool, time_series.TimeSeries | None]":
    """
    Uniform errors in [-1, 1] from a seeded generator.
    """
    generator = np.random.default_rng(seed)
    return time_series.TimeSeries.create(h, generator.uniform(-1.0, 1.0, sample_count))


def verify_equivalence(
    kind: intelligent_controller.IntelligentKind,
    config: intelligent_controller.IntelligentConfig,
    h: float,
    e_seq: time_series.TimeSeries,
    tolerance: float = DEFAULT_TOLERANCE,
) -> "tuple[bool, EquivalenceReport | None]":
    """
    Feeds one error sequence to the expanded intelligent recursion and to the classic
    recursion with mapped gains. Both start at rest.

    kind: Intelligent structure.
    config: Its configuration, error taken as y - y*.
    h: Sampling interval in seconds.
    e_seq: Error sequence.
    tolerance: Relative tolerance stored in the report.

    Returns: Success, report.
    """
    if len(e_seq) == 0:
        LOGGER.error("Error sequence is empty")
        return False, None

    result, correspondence = gain_correspondence.map_gains(kind, config, h)
    if not result:
        return False, None

    classic_state = classic_controller.ClassicState()
    intelligent_state = classic_controller.ClassicState()
    max_abs_diff = 0.0
    max_abs_u = 0.0
    for e in e_seq.values:
        u_classic, classic_state = classic_controller.step_classic(
            correspondence.classic_kind, classic_state, float(e), correspondence.mapped, h
        )
        u_intelligent, intelligent_state = intelligent_controller.step_expanded(
            intelligent_state, float(e), kind, config, h
        )
        max_abs_diff = max(max_abs_diff, abs(u_classic - u_intelligent))
        max_abs_u = max(max_abs_u, abs(u_classic), abs(u_intelligent))

    return True, EquivalenceReport(max_abs_diff, max_abs_u, len(e_seq), tolerance)


def verify_closed_loop_equivalence(
    kind: intelligent_controller.IntelligentKind,
    config: intelligent_controller.IntelligentConfig,
    y_seq: time_series.TimeSeries,
    y_star_seq: time_series.TimeSeries,
    tolerance: float = DEFAULT_TOLERANCE,
) -> "tuple[bool, EquivalenceReport | None]":
    """
    Runs the controller used in closed loop, which estimates F from outputs and acts
    on y* - y, against the classic counterpart acting on y - y*.
    The classic gains are mapped from the configuration with its tuning gains negated.

    kind: Intelligent structure.
    config: Its configuration, estimation window 1.
    y_seq: Measured outputs.
    y_star_seq: Reference samples on the same grid, starting with two zeros.
    tolerance: Relative tolerance stored in the report.

    Returns: Success, report.
    """
    if config.estimation_window != 1:
        LOGGER.error("Averaged F estimates have no classic counterpart")
        return False, None

    if len(y_seq) != len(y_star_seq) or y_seq.h != y_star_seq.h:
        LOGGER.error("Output and reference must share sampling interval and length")
        return False, None

    if len(y_star_seq) < 3:
        LOGGER.error("Closed loop comparison needs at least 3 samples")
        return False, None

    # Backward differences of the reference assume it was 0 before the first sample
    if y_star_seq.values[0] != 0.0 or y_star_seq.values[1] != 0.0:
        LOGGER.error("Reference must start with two zero samples")
        return False, None

    h = y_seq.h
    result, correspondence = gain_correspondence.map_gains(kind, config.negated(), h)
    if not result:
        return False, None

    derivatives = []
    for order in (1, 2):
        result, derivative = signal_helpers.backward_difference(y_star_seq, order)
        if not result:
            return False, None
        derivatives.append(derivative)

    result, reference = reference_trajectory.ReferenceTrajectory.create(
        y_star_seq, derivatives[0], derivatives[1]
    )
    if not result:
        return False, None

    classic_state = classic_controller.ClassicState()
    intelligent_state = intelligent_controller.IntelligentState.initial(config)
    max_abs_diff = 0.0
    max_abs_u = 0.0
    for k, y in enumerate(y_seq.values):
        sample = reference.sample(k)

        result, step = intelligent_controller.step_intelligent(
            intelligent_state, float(y), sample, config, h
        )
        if not result:
            return False, None
        u_intelligent, intelligent_state, _ = step

        u_classic, classic_state = classic_controller.step_classic(
            correspondence.classic_kind,
            classic_state,
            float(y) - sample[0],
            correspondence.mapped,
            h,
        )
        max_abs_diff = max(max_abs_diff, abs(u_classic - u_intelligent))
        max_abs_u = max(max_abs_u, abs(u_classic), abs(u_intelligent))

    return True, EquivalenceReport(max_abs_diff, max_abs_u, len(y_seq), tolerance)


def random_config(
    kind: intelligent_controller.IntelligentKind, generator: np.random.Generator
) -> "tuple[intelligent_controller.IntelligentConfig, float]":
    """
    Draws a configuration of the given structure and a sampling interval.
    alpha takes either sign, gains the structure does not use are 0.
    """
    alpha = generator.choice((-1.0, 1.0)) * generator.uniform(*ALPHA_MAGNITUDE_RANGE)
    h = generator.uniform(*H_RANGE)
    k_p = generator.uniform(*K_P_RANGE)
    k_i = generator.uniform(*K_I_RANGE) if kind.has_integral else 0.0
    k_d = generator.uniform(*K_D_RANGE) if kind.nu == 2 else 0.0

    result, config = intelligent_controller.IntelligentConfig.create(
        kind.nu, float(alpha), float(k_p), float(k_i), float(k_d)
    )
    # Ranges keep every draw valid
    assert result

    return config, float(h)


@dataclasses.dataclass(frozen=True)
class GainBatch:
    """
    Classic gains of many configurations, one array entry per configuration.
    """

    kp: np.ndarray
    ki: np.ndarray
    kii: np.ndarray
    kd: np.ndarray


@dataclasses.dataclass(frozen=True)
class ConfigBatch:
    """
    Intelligent tuning of many configurations, one array entry per configuration.
    """

    alpha: np.ndarray
    k_p: np.ndarray
    k_i: np.ndarray
    k_d: np.ndarray


def verify_batch(
    kind: intelligent_controller.IntelligentKind,
    configs: "list[intelligent_controller.IntelligentConfig]",
    h_values: "list[float]",
    errors: np.ndarray,
    tolerance: float = DEFAULT_TOLERANCE,
) -> "tuple[bool, list[EquivalenceReport] | None]":
    """
    verify_equivalence for many configurations at once.
    The step functions are elementwise arithmetic, so array gains, sampling intervals and
    states advance every configuration by one sample per call.

    kind: Intelligent structure shared by every configuration.
    configs: Configurations, error taken as y - y*.
    h_values: Sampling interval of each configuration.
    errors: Error sequences, shape (samples, configurations).

    Returns: Success, one report per configuration.
    """
    if len(configs) == 0 or len(configs) != len(h_values):
        LOGGER.error(
            f"Need matching configurations and sampling intervals, got: "
            f"{len(configs)}, {len(h_values)}"
        )
        return False, None

    if errors.ndim != 2 or errors.shape[0] == 0 or errors.shape[1] != len(configs):
        LOGGER.error(f"Errors must be (samples, {len(configs)}), got: {errors.shape}")
        return False, None

    mapped = []
    for config, h in zip(configs, h_values):
        result, correspondence = gain_correspondence.map_gains(kind, config, h)
        if not result:
            return False, None
        mapped.append(correspondence.mapped)

    classic_kind = gain_correspondence.KIND_PAIRS[kind]
    gains = GainBatch(
        kp=np.array([gain.kp for gain in mapped]),
        ki=np.array([gain.ki for gain in mapped]),
        kii=np.array([gain.kii for gain in mapped]),
        kd=np.array([gain.kd for gain in mapped]),
    )
    tuning = ConfigBatch(
        alpha=np.array([config.alpha for config in configs]),
        k_p=np.array([config.k_p for config in configs]),
        k_i=np.array([config.k_i for config in configs]),
        k_d=np.array([config.k_d for config in configs]),
    )
    h = np.array(h_values, dtype=np.float64)

    zeros = np.zeros(len(configs))
    classic_state = classic_controller.ClassicState(zeros, zeros, zeros, zeros)
    intelligent_state = classic_controller.ClassicState(zeros, zeros, zeros, zeros)
    max_abs_diff = np.zeros(len(configs))
    max_abs_u = np.zeros(len(configs))
    for e in errors:
        u_classic, classic_state = classic_controller.step_classic(
            classic_kind, classic_state, e, gains, h
        )
        u_intelligent, intelligent_state = intelligent_controller.step_expanded(
            intelligent_state, e, kind, tuning, h
        )
        np.maximum(max_abs_diff, np.abs(u_classic - u_intelligent), out=max_abs_diff)
        np.maximum(max_abs_u, np.abs(u_classic), out=max_abs_u)
        np.maximum(max_abs_u, np.abs(u_intelligent), out=max_abs_u)

    sample_count = errors.shape[0]
    return True, [
        EquivalenceReport(float(diff), float(u_max), sample_count, tolerance)
        for diff, u_max in zip(max_abs_diff, max_abs_u)
    ]


def draw_random_batch(
    kind: intelligent_controller.IntelligentKind,
    config_count: int,
    sample_count: int,
    seed: int,
) -> "tuple[list[intelligent_controller.IntelligentConfig], list[float], np.ndarray]":
    """
    Random configurations, then one uniform error sequence per configuration.

    Returns: Configurations, sampling intervals, errors of shape (samples, configurations).
    """
    generator = np.random.default_rng(seed)
    draws = [random_config(kind, generator) for _ in range(config_count)]
    errors = generator.uniform(-1.0, 1.0, (sample_count, config_count))

    return [config for config, _ in draws], [h for _, h in draws], errors


def verify_randomized(
    kind: intelligent_controller.IntelligentKind,
    config_count: int,
    sample_count: int,
    seed: int,
    tolerance: float = DEFAULT_TOLERANCE,
) -> "tuple[bool, list[EquivalenceReport] | None]":
    """
    verify_equivalence over randomly drawn configurations, each with its own
    random error sequence. Draws are reproducible from the seed.

    Returns: Success, one report per configuration.
    """
    if config_count < 1 or sample_count < 1:
        LOGGER.error(
            f"Need at least one configuration and sample, got: {config_count}, {sample_count}"
        )
        return False, None

    configs, h_values, errors = draw_random_batch(kind, config_count, sample_count, seed)

    return verify_batch(kind, configs, h_values, errors, tolerance)
