"""
Correspondence between sampled intelligent controllers and sampled classic controllers.
"""

import math

from ..classic import classic_controller
from ..intelligent import intelligent_controller
from ..logger import logger


KIND_PAIRS = {
    intelligent_controller.IntelligentKind.I_P: classic_controller.ClassicKind.PI,
    intelligent_controller.IntelligentKind.I_PD: classic_controller.ClassicKind.PID,
    intelligent_controller.IntelligentKind.I_PI: classic_controller.ClassicKind.PII2,
    intelligent_controller.IntelligentKind.I_PID: classic_controller.ClassicKind.PII2D,
}

LOGGER = logger.get_logger(__name__)


class GainCorrespondence:
    """
    Classic gains reproducing an intelligent controller sample for sample.
    """

    __create_key = object()

    @classmethod
    def create(
        cls,
        intelligent_kind: intelligent_controller.IntelligentKind,
        mapped: classic_controller.ClassicGains,
    ) -> "tuple[bool, GainCorrespondence | None]":
        """
        The classic structure follows from the intelligent one.
        """
        if intelligent_kind not in KIND_PAIRS:
            LOGGER.error(f"No classic counterpart for: {intelligent_kind}")
            return False, None

        return True, GainCorrespondence(cls.__create_key, intelligent_kind, mapped)

    def __init__(
        self,
        class_private_create_key: object,
        intelligent_kind: intelligent_controller.IntelligentKind,
        mapped: classic_controller.ClassicGains,
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is GainCorrespondence.__create_key, "Use create() method"

        self.intelligent_kind = intelligent_kind
        self.classic_kind = KIND_PAIRS[intelligent_kind]
        self.mapped = mapped

    def __repr__(self) -> str:
        return (
            f"GainCorrespondence({self.intelligent_kind.value} -> "
            f"{self.classic_kind.value}, {self.mapped})"
        )


def map_gains(
    kind: intelligent_controller.IntelligentKind,
    config: intelligent_controller.IntelligentConfig,
    h: float,
) -> "tuple[bool, GainCorrespondence | None]":
    """
    Classic gains of the counterpart structure, with c = 1 / (alpha h):
        i-P   -> PI:    kp = -c,       ki = K_P c
        i-PD  -> PID:   kp = K_D c,    ki = K_P c,                kd = -c
        i-PI  -> PII2:  kp = -c,       ki = K_P c,   kii = K_I c
        i-PID -> PII2D: kp = K_D c,    ki = K_P c,   kii = K_I c,  kd = -c
    The -c always multiplies the error difference of order nu.

    kind: Intelligent structure.
    config: Its configuration, error taken as y - y*.
    h: Sampling interval in seconds.

    Returns: Success, correspondence.
    """
    if not math.isfinite(h) or h <= 0.0:
        LOGGER.error(f"Sampling interval must be positive, got: {h}")
        return False, None

    if not config.is_compatible(kind):
        LOGGER.error(f"Configuration {config} cannot run as {kind.value}")
        return False, None

    scale = 1.0 / (config.alpha * h)
    k_i = config.k_i if kind.has_integral else 0.0

    if kind.nu == 1:
        result, gains = classic_controller.ClassicGains.create(
            kp=-scale, ki=config.k_p * scale, kii=k_i * scale
        )
    else:
        result, gains = classic_controller.ClassicGains.create(
            kp=config.k_d * scale, ki=config.k_p * scale, kii=k_i * scale, kd=-scale
        )

    if not result:
        LOGGER.error(f"Mapped gains overflow for alpha={config.alpha}, h={h}")
        return False, None

    return GainCorrespondence.create(kind, gains)


def invert_gains(
    classic_kind: classic_controller.ClassicKind,
    gains: classic_controller.ClassicGains,
    h: float,
) -> "tuple[bool, tuple[intelligent_controller.IntelligentConfig, float] | None]":
    """
    Recovers the intelligent configuration and alpha h from classic gains.
    The gain in the -1 / (alpha h) slot must be nonzero.

    Returns: Success, (configuration with estimation window 1, alpha h).
    """
    if not math.isfinite(h) or h <= 0.0:
        LOGGER.error(f"Sampling interval must be positive, got: {h}")
        return False, None

    intelligent_kind = next(
        kind for kind, paired_kind in KIND_PAIRS.items() if paired_kind == classic_kind
    )
    inversion_gain = gains.kp if intelligent_kind.nu == 1 else gains.kd
    if inversion_gain == 0.0:
        LOGGER.error(f"{classic_kind.value} gains have no model inversion term")
        return False, None

    if intelligent_kind.nu == 1 and gains.kd != 0.0:
        LOGGER.error(f"{classic_kind.value} gains cannot carry kd={gains.kd}")
        return False, None

    if not intelligent_kind.has_integral and gains.kii != 0.0:
        LOGGER.error(f"{classic_kind.value} gains cannot carry kii={gains.kii}")
        return False, None

    # Every other mapped gain is a tuning gain over alpha h
    alpha_h = -1.0 / inversion_gain
    result, config = intelligent_controller.IntelligentConfig.create(
        nu=intelligent_kind.nu,
        alpha=alpha_h / h,
        k_p=gains.ki * alpha_h,
        k_i=gains.kii * alpha_h,
        k_d=gains.kp * alpha_h if intelligent_kind.nu == 2 else 0.0,
    )
    if not result:
        return False, None

    return True, (config, alpha_h)
