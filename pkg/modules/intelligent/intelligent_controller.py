"""
Intelligent controllers built on the ultra-local model y^(nu) = F + alpha u.
F is re-estimated every sample from the measured output and the last control.
"""

import dataclasses
import enum
import math

import numpy as np

from ..classic import classic_controller
from ..logger import logger


LOGGER = logger.get_logger(__name__)


class IntelligentKind(enum.Enum):
    """
    Intelligent controller structures.
    """

    I_P = "i-P"
    I_PI = "i-PI"
    I_PD = "i-PD"
    I_PID = "i-PID"

    @property
    def nu(self) -> int:
        """
        Derivation order of the ultra-local model.
        """
        if self in (IntelligentKind.I_P, IntelligentKind.I_PI):
            return 1
        return 2

    @property
    def has_integral(self) -> bool:
        """
        Whether K_I enters the control law.
        """
        return self in (IntelligentKind.I_PI, IntelligentKind.I_PID)


class IntelligentConfig:
    """
    nu: Derivation order, 1 or 2.
    alpha: Control effectiveness, nonzero.
    k_p, k_i, k_d: Tuning gains, k_d only with nu = 2.
    estimation_window: Number of raw F estimates averaged, 1 uses the latest only.
    """

    __create_key = object()

    @classmethod
    def create(
        cls,
        nu: int,
        alpha: float,
        k_p: float,
        k_i: float = 0.0,
        k_d: float = 0.0,
        estimation_window: int = 1,
    ) -> "tuple[bool, IntelligentConfig | None]":
        """
        Validates the configuration.
        """
        if nu not in (1, 2):
            LOGGER.error(f"Derivation order must be 1 or 2, got: {nu}")
            return False, None

        if not all(math.isfinite(value) for value in (alpha, k_p, k_i, k_d)):
            LOGGER.error("Control effectiveness and gains must be finite")
            return False, None

        if alpha == 0.0:
            LOGGER.error("Control effectiveness alpha must be nonzero")
            return False, None

        if nu == 1 and k_d != 0.0:
            LOGGER.error(f"K_D requires derivation order 2, got K_D={k_d} with nu=1")
            return False, None

        if estimation_window < 1:
            LOGGER.error(f"Estimation window must be at least 1, got: {estimation_window}")
            return False, None

        return True, IntelligentConfig(
            cls.__create_key, nu, alpha, k_p, k_i, k_d, estimation_window
        )

    def __init__(
        self,
        class_private_create_key: object,
        nu: int,
        alpha: float,
        k_p: float,
        k_i: float,
        k_d: float,
        estimation_window: int,
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is IntelligentConfig.__create_key, "Use create() method"

        self.nu = nu
        self.alpha = alpha
        self.k_p = k_p
        self.k_i = k_i
        self.k_d = k_d
        self.estimation_window = estimation_window

    def __repr__(self) -> str:
        return (
            f"IntelligentConfig(nu={self.nu}, alpha={self.alpha}, k_p={self.k_p}, "
            f"k_i={self.k_i}, k_d={self.k_d}, estimation_window={self.estimation_window})"
        )

    @property
    def kind(self) -> IntelligentKind:
        """
        Structure implied by the derivation order and whether K_I is set.
        """
        if self.nu == 1:
            return IntelligentKind.I_PI if self.k_i != 0.0 else IntelligentKind.I_P

        return IntelligentKind.I_PID if self.k_i != 0.0 else IntelligentKind.I_PD

    def is_compatible(self, kind: IntelligentKind) -> bool:
        """
        The structure can run this configuration without dropping a gain.
        """
        return kind.nu == self.nu and (kind.has_integral or self.k_i == 0.0)

    def negated(self) -> "IntelligentConfig":
        """
        Same configuration with K_P, K_I and K_D sign flipped.
        Maps a law written on y* - y to the same law written on y - y*.
        """
        return IntelligentConfig(
            IntelligentConfig.__create_key,
            self.nu,
            self.alpha,
            -self.k_p,
            -self.k_i,
            -self.k_d,
            self.estimation_window,
        )


@dataclasses.dataclass(frozen=True)
class IntelligentState:
    """
    u_prev: Last commanded control.
    y_hist: Last nu + 1 measured outputs, oldest first.
    i_prev: Riemann sum of the tracking error.
    e_prev: Last tracking error.
    f_hist: Last estimation_window - 1 raw F estimates, oldest first.
    """

    u_prev: float
    y_hist: "tuple[float, ...]"
    i_prev: float
    e_prev: float
    f_hist: "tuple[float, ...]"

    @staticmethod
    def initial(config: IntelligentConfig, y0: float = 0.0) -> "IntelligentState":
        """
        Controller at rest with the output held at y0.
        """
        return IntelligentState(
            u_prev=0.0,
            y_hist=(y0,) * (config.nu + 1),
            i_prev=0.0,
            e_prev=0.0,
            f_hist=(0.0,) * (config.estimation_window - 1),
        )


@dataclasses.dataclass(frozen=True)
class FEstimate:
    """
    Estimated structural term, in units of y^(nu).
    """

    value: float


def estimate_F(  # pylint: disable=invalid-name
    y_hist: "tuple[float, ...] | list[float]",
    u_prev: float,
    config: IntelligentConfig,
    h: float,
) -> "tuple[bool, FEstimate | None]":
    """
    F = y^(nu)(t) - alpha u(t - h), y^(nu) by backward difference.

    y_hist: Last nu + 1 outputs, oldest first, current last.
    u_prev: Control applied over the previous interval.
    config: Controller configuration.
    h: Sampling interval in seconds.

    Returns: Success, estimate.
    """
    if len(y_hist) != config.nu + 1:
        LOGGER.error(f"Output history needs {config.nu + 1} samples, got: {len(y_hist)}")
        return False, None

    if h <= 0.0:
        LOGGER.error(f"Sampling interval must be positive, got: {h}")
        return False, None

    if config.nu == 1:
        derivative = (y_hist[1] - y_hist[0]) / h
    else:
        derivative = (y_hist[2] - 2.0 * y_hist[1] + y_hist[0]) / h**2

    value = derivative - config.alpha * u_prev
    if not math.isfinite(value):
        LOGGER.error(f"F estimate is not finite: {value}")
        return False, None

    return True, FEstimate(value)


def step_intelligent(
    state: IntelligentState,
    y: float,
    reference: "tuple[float, float, float]",
    config: IntelligentConfig,
    h: float,
) -> "tuple[bool, tuple[float, IntelligentState, FEstimate] | None]":
    """
    u = (-F + y*^(nu) + K_P e + K_I I + K_D de/dt) / alpha on the error e = y* - y.
    The error is taken as y* - y so positive gains give a stable loop.
    F is the mean of the last estimation_window raw estimates.

    state: Controller state after the previous sample.
    y: Measured output.
    reference: (y*, dy*/dt, d2y*/dt2) at this sample.
    config: Controller configuration.
    h: Sampling interval in seconds.

    Returns: Success, (control, next state, averaged F estimate).
    """
    y_hist = state.y_hist[1:] + (y,)
    result, raw_estimate = estimate_F(y_hist, state.u_prev, config, h)
    if not result:
        return False, None

    f_window = state.f_hist + (raw_estimate.value,)
    f_estimate = FEstimate(float(np.mean(f_window)))

    y_star, d1_y_star, d2_y_star = reference
    reference_derivative = d1_y_star if config.nu == 1 else d2_y_star

    e = y_star - y
    integral = state.i_prev + h * e
    error_derivative = (e - state.e_prev) / h

    u = (
        -f_estimate.value
        + reference_derivative
        + config.k_p * e
        + config.k_i * integral
        + config.k_d * error_derivative
    ) / config.alpha

    next_state = IntelligentState(
        u_prev=u,
        y_hist=y_hist,
        i_prev=integral,
        e_prev=e,
        f_hist=f_window[1:],
    )
    return True, (u, next_state, f_estimate)


def step_expanded(
    state: classic_controller.ClassicState,
    e: float,
    kind: IntelligentKind,
    config: IntelligentConfig,
    h: float,
) -> "tuple[float, classic_controller.ClassicState]":
    """
    Intelligent recursion written in the error alone, with e = y - y*.
    Substituting the backward difference estimate of F and a step reference into
    the control law leaves, for nu = 1:
        u(t) = u(t-h) - (e(t) - e(t-h)) / (alpha h) + (K_P e + K_I I) / alpha
    and for nu = 2:
        u(t) = u(t-h) - (e(t) - 2 e(t-h) + e(t-2h)) / (alpha h^2)
               + (K_P e + K_I I + K_D (e(t) - e(t-h)) / h) / alpha
    K_I only enters structures with an integral, I(t) = I(t-h) + h e(t).
    """
    integral = state.i_prev + h * e
    k_i = config.k_i if kind.has_integral else 0.0

    if kind.nu == 1:
        model_inversion = -(e - state.e_prev) / (config.alpha * h)
        feedback = config.k_p * e + k_i * integral
    else:
        model_inversion = -(e - 2.0 * state.e_prev + state.e_prev2) / (config.alpha * h**2)
        feedback = config.k_p * e + k_i * integral + config.k_d * (e - state.e_prev) / h

    u = state.u_prev + model_inversion + feedback / config.alpha

    return u, classic_controller.ClassicState(
        u_prev=u, e_prev=e, e_prev2=state.e_prev, i_prev=integral
    )
