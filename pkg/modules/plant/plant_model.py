"""
Continuous-time plant models, actuator faults and measurement noise.
"""

import enum
import math

import numpy as np

from ..logger import logger


DEFAULT_NOISE_STD = 0.01

LOGGER = logger.get_logger(__name__)


class PlantKind(enum.Enum):
    """
    Supported plant right-hand sides.
    """

    NONLINEAR_CUBIC = "nonlinear-cubic"
    FOPDT = "fopdt"
    PURE_INTEGRATOR = "pure-integrator"


class PlantModel:
    """
    nonlinear-cubic: dy/dt + y^3 = 2 u.
    fopdt: gain * exp(-delay s) / (1 + time_constant s), delay realized by the simulator.
    pure-integrator: y^(order) = offset + slope * u.
    """

    __create_key = object()

    @classmethod
    def create_nonlinear_cubic(cls, y0: float = 0.0) -> "tuple[bool, PlantModel | None]":
        """
        The cubic plant has no parameters besides its initial output.
        """
        if not math.isfinite(y0):
            LOGGER.error(f"Initial output must be finite, got: {y0}")
            return False, None

        return True, PlantModel(cls.__create_key, PlantKind.NONLINEAR_CUBIC, {}, y0)

    @classmethod
    def create_fopdt(
        cls, gain: float, time_constant: float, delay: float, y0: float = 0.0
    ) -> "tuple[bool, PlantModel | None]":
        """
        gain: Static gain.
        time_constant: Seconds, positive.
        delay: Dead time in seconds, non-negative.
        """
        if not all(math.isfinite(value) for value in (gain, time_constant, delay, y0)):
            LOGGER.error("FOPDT parameters must be finite")
            return False, None

        if time_constant <= 0.0:
            LOGGER.error(f"FOPDT time constant must be positive, got: {time_constant}")
            return False, None

        if delay < 0.0:
            LOGGER.error(f"FOPDT delay must be non-negative, got: {delay}")
            return False, None

        params = {"gain": gain, "time_constant": time_constant, "delay": delay}
        return True, PlantModel(cls.__create_key, PlantKind.FOPDT, params, y0)

    @classmethod
    def create_pure_integrator(
        cls, order: int, offset: float, slope: float, y0: float = 0.0
    ) -> "tuple[bool, PlantModel | None]":
        """
        order: Derivation order, 1 or 2.
        offset: Constant structural term added to the highest derivative.
        slope: Control effectiveness.
        """
        if order not in (1, 2):
            LOGGER.error(f"Integrator order must be 1 or 2, got: {order}")
            return False, None

        if not all(math.isfinite(value) for value in (offset, slope, y0)):
            LOGGER.error("Integrator parameters must be finite")
            return False, None

        params = {"order": order, "offset": offset, "slope": slope}
        return True, PlantModel(cls.__create_key, PlantKind.PURE_INTEGRATOR, params, y0)

    def __init__(
        self, class_private_create_key: object, kind: PlantKind, params: dict, y0: float
    ) -> None:
        """
        Private constructor, use create methods.
        """
        assert class_private_create_key is PlantModel.__create_key, "Use create methods"

        self.kind = kind
        self.params = params
        self.y0 = y0

    def __repr__(self) -> str:
        return f"PlantModel(kind={self.kind.value}, params={self.params}, y0={self.y0})"

    @property
    def state_dimension(self) -> int:
        """
        Length of the state vector, output first.
        """
        if self.kind == PlantKind.PURE_INTEGRATOR:
            return self.params["order"]

        return 1

    @property
    def delay(self) -> float:
        """
        Input dead time in seconds.
        """
        return self.params.get("delay", 0.0)

    def initial_state(self) -> np.ndarray:
        """
        Plant at rest at its initial output.
        """
        state = np.zeros(self.state_dimension, dtype=np.float64)
        state[0] = self.y0
        return state

    def derivative(self, state: np.ndarray, u: float) -> np.ndarray:
        """
        Time derivative of the state with input u, already delayed for fopdt.
        """
        match self.kind:
            case PlantKind.NONLINEAR_CUBIC:
                return np.array([2.0 * u - state[0] ** 3])
            case PlantKind.FOPDT:
                return np.array(
                    [(self.params["gain"] * u - state[0]) / self.params["time_constant"]]
                )
            case PlantKind.PURE_INTEGRATOR:
                highest = self.params["offset"] + self.params["slope"] * u
                if self.params["order"] == 1:
                    return np.array([highest])
                return np.array([state[1], highest])

        raise NotImplementedError(f"No dynamics for plant kind: {self.kind}")


class FaultKind(enum.Enum):
    """
    Actuator fault types.
    """

    NONE = "none"
    POWER_LOSS = "power-loss"


class FaultModel:
    """
    Power loss scales the applied control by decay^(t / h) once t > onset.
    """

    __create_key = object()

    @classmethod
    def create(
        cls, kind: FaultKind = FaultKind.NONE, onset: float = 0.0, decay: float = 1.0
    ) -> "tuple[bool, FaultModel | None]":
        """
        kind: Fault type.
        onset: Time in seconds after which the fault acts.
        decay: Per-sample multiplicative factor in (0, 1].
        """
        if not math.isfinite(onset):
            LOGGER.error(f"Fault onset must be finite, got: {onset}")
            return False, None

        if kind == FaultKind.POWER_LOSS and not 0.0 < decay <= 1.0:
            LOGGER.error(f"Power loss decay must be in (0, 1], got: {decay}")
            return False, None

        return True, FaultModel(cls.__create_key, kind, onset, decay)

    def __init__(
        self, class_private_create_key: object, kind: FaultKind, onset: float, decay: float
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is FaultModel.__create_key, "Use create() method"

        self.kind = kind
        self.onset = onset
        self.decay = decay

    def __repr__(self) -> str:
        return f"FaultModel(kind={self.kind.value}, onset={self.onset}, decay={self.decay})"


class NoiseKind(enum.Enum):
    """
    Measurement noise types.
    """

    NONE = "none"
    GAUSSIAN = "gaussian"


class NoiseModel:
    """
    Additive measurement noise with its own random generator.
    """

    __create_key = object()

    @classmethod
    def create(
        cls, kind: NoiseKind = NoiseKind.NONE, std: float = DEFAULT_NOISE_STD, seed: int = 0
    ) -> "tuple[bool, NoiseModel | None]":
        """
        kind: Noise type.
        std: Standard deviation in output units, non-negative.
        seed: Seed of the generator, identical seeds give identical streams.
        """
        if not math.isfinite(std) or std < 0.0:
            LOGGER.error(f"Noise standard deviation must be non-negative, got: {std}")
            return False, None

        return True, NoiseModel(cls.__create_key, kind, std, seed)

    def __init__(
        self, class_private_create_key: object, kind: NoiseKind, std: float, seed: int
    ) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is NoiseModel.__create_key, "Use create() method"

        self.kind = kind
        self.std = std
        self.seed = seed
        self.__generator = np.random.default_rng(seed)

    def __repr__(self) -> str:
        return f"NoiseModel(kind={self.kind.value}, std={self.std}, seed={self.seed})"

    def reset(self) -> None:
        """
        Restarts the sample stream from the seed.
        """
        self.__generator = np.random.default_rng(self.seed)

    def sample(self) -> float:
        """
        Next noise sample, 0 when there is no noise.
        """
        if self.kind == NoiseKind.NONE or self.std == 0.0:
            return 0.0

        return float(self.__generator.normal(0.0, self.std))
