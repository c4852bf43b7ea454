"""
Sampled classic controllers in velocity form.
"""

import dataclasses
import enum
import math
import typing

from ..logger import logger


LOGGER = logger.get_logger(__name__)


class ClassicKind(enum.Enum):
    """
    Classic controller structures.
    """

    PI = "PI"
    PID = "PID"
    PII2 = "PII2"
    PII2D = "PII2D"


class ClassicGains:
    """
    kp: Proportional gain.
    ki: Integral gain.
    kii: Double integral gain.
    kd: Derivative gain.
    Gains a structure does not use are 0.
    """

    __create_key = object()

    @classmethod
    def create(
        cls, kp: float, ki: float, kii: float = 0.0, kd: float = 0.0
    ) -> "tuple[bool, ClassicGains | None]":
        """
        All gains must be finite.
        """
        if not all(math.isfinite(gain) for gain in (kp, ki, kii, kd)):
            LOGGER.error(f"Gains must be finite, got: kp={kp}, ki={ki}, kii={kii}, kd={kd}")
            return False, None

        return True, ClassicGains(cls.__create_key, kp, ki, kii, kd)

    def __init__(
        self, class_private_create_key: object, kp: float, ki: float, kii: float, kd: float
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is ClassicGains.__create_key, "Use create() method"

        self.kp = kp
        self.ki = ki
        self.kii = kii
        self.kd = kd

    def __repr__(self) -> str:
        return f"ClassicGains(kp={self.kp}, ki={self.ki}, kii={self.kii}, kd={self.kd})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassicGains):
            return NotImplemented

        return self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash((self.kp, self.ki, self.kii, self.kd))

    def as_dict(self) -> "dict[str, float]":
        """
        Gains keyed by name, in kp, ki, kii, kd order.
        """
        return {"kp": self.kp, "ki": self.ki, "kii": self.kii, "kd": self.kd}


@dataclasses.dataclass(frozen=True)
class ClassicState:
    """
    u_prev: Last control.
    e_prev: Last error.
    e_prev2: Error two samples back.
    i_prev: Running Riemann sum of the error.
    """

    u_prev: float = 0.0
    e_prev: float = 0.0
    e_prev2: float = 0.0
    i_prev: float = 0.0


def step_pi(
    state: ClassicState, e: float, gains: ClassicGains, h: float
) -> "tuple[float, ClassicState]":
    """
    u(t) = u(t-h) + kp (e(t) - e(t-h)) + ki h e(t)
    """
    u = state.u_prev + gains.kp * (e - state.e_prev) + gains.ki * h * e

    return u, dataclasses.replace(state, u_prev=u, e_prev=e, e_prev2=state.e_prev)


def step_pid(
    state: ClassicState, e: float, gains: ClassicGains, h: float
) -> "tuple[float, ClassicState]":
    """
    u(t) = u(t-h) + kp h de/dt + ki h e + kd h d2e/dt2
    Derivatives are backward differences over the last two errors.
    """
    first_difference = (e - state.e_prev) / h
    second_difference = (e - 2.0 * state.e_prev + state.e_prev2) / h**2

    u = (
        state.u_prev
        + gains.kp * h * first_difference
        + gains.ki * h * e
        + gains.kd * h * second_difference
    )

    return u, dataclasses.replace(state, u_prev=u, e_prev=e, e_prev2=state.e_prev)


def step_pii2d(
    state: ClassicState, e: float, gains: ClassicGains, h: float
) -> "tuple[float, ClassicState]":
    """
    PID with an extra kii h I(t) increment, I(t) = I(t-h) + h e(t).
    With kii = kd = 0 this is step_pi.
    """
    integral = state.i_prev + h * e
    first_difference = (e - state.e_prev) / h
    second_difference = (e - 2.0 * state.e_prev + state.e_prev2) / h**2

    u = (
        state.u_prev
        + gains.kp * h * first_difference
        + gains.ki * h * e
        + gains.kii * h * integral
        + gains.kd * h * second_difference
    )

    return u, ClassicState(u_prev=u, e_prev=e, e_prev2=state.e_prev, i_prev=integral)


StepFunction = typing.Callable[
    [ClassicState, float, ClassicGains, float], "tuple[float, ClassicState]"
]

STEP_FUNCTIONS: "dict[ClassicKind, StepFunction]" = {
    ClassicKind.PI: step_pi,
    ClassicKind.PID: step_pid,
    ClassicKind.PII2: step_pii2d,
    ClassicKind.PII2D: step_pii2d,
}


def step_classic(
    kind: ClassicKind, state: ClassicState, e: float, gains: ClassicGains, h: float
) -> "tuple[float, ClassicState]":
    """
    Steps the recursion of the given structure.
    """
    return STEP_FUNCTIONS[kind](state, e, gains, h)
