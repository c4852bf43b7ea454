"""
Velocity form classic controller unit tests.
"""

import dataclasses

import numpy as np
import pytest

from modules.classic import classic_controller


# Test functions use test fixture signature names
# pylint: disable=redefined-outer-name


def make_gains(
    kp: float, ki: float, kii: float = 0.0, kd: float = 0.0
) -> classic_controller.ClassicGains:
    """
    Gains that must be valid.
    """
    result, gains = classic_controller.ClassicGains.create(kp, ki, kii, kd)
    assert result
    assert gains is not None

    return gains


def run_sequence(
    kind: classic_controller.ClassicKind,
    errors: "np.ndarray",
    gains: classic_controller.ClassicGains,
    h: float,
    state: "classic_controller.ClassicState | None" = None,
) -> np.ndarray:
    """
    Controls produced by feeding the error sequence to a fresh controller.
    """
    if state is None:
        state = classic_controller.ClassicState()

    controls = []
    for e in errors:
        u, state = classic_controller.step_classic(kind, state, float(e), gains, h)
        controls.append(u)

    return np.array(controls)


@pytest.fixture
def random_errors() -> np.ndarray:
    """
    Seeded uniform errors in [-1, 1].
    """
    generator = np.random.default_rng(42)
    yield generator.uniform(-1.0, 1.0, 500)


class TestClassicGains:
    """
    Test suite for ClassicGains.
    """

    def test_defaults(self) -> None:
        """
        Unused gains are 0.
        """
        gains = make_gains(1.0, 2.0)

        assert gains.as_dict() == {"kp": 1.0, "ki": 2.0, "kii": 0.0, "kd": 0.0}

    def test_non_finite(self) -> None:
        """
        Infinite gains are rejected.
        """
        result, gains = classic_controller.ClassicGains.create(1.0, float("inf"))

        assert not result
        assert gains is None

    def test_equality(self) -> None:
        """
        Gains compare by value.
        """
        assert make_gains(1.0, 2.0, 3.0, 4.0) == make_gains(1.0, 2.0, 3.0, 4.0)
        assert make_gains(1.0, 2.0) != make_gains(1.0, 2.5)


class TestStepPi:
    """
    Test suite for step_pi.
    """

    def test_zero_error(self) -> None:
        """
        No error, no control.
        """
        u, _ = classic_controller.step_pi(
            classic_controller.ClassicState(), 0.0, make_gains(123.0, 456.0), 0.01
        )

        assert u == 0.0

    def test_constant_error(self) -> None:
        """
        A constant error isolates the integral term.
        """
        state = classic_controller.ClassicState(e_prev=1.0)

        u, _ = classic_controller.step_pi(state, 1.0, make_gains(-77.0, 600.0), 0.01)

        assert u == pytest.approx(6.0)

    def test_hand_arithmetic(self) -> None:
        """
        1 + 6.350 * 0.3 + 15.817 * 0.01 * 0.5 = 2.98409.
        """
        state = classic_controller.ClassicState(u_prev=1.0, e_prev=0.2)

        u, next_state = classic_controller.step_pi(state, 0.5, make_gains(6.350, 15.817), 0.01)

        # Assertions
        assert u == pytest.approx(2.98409, abs=1e-5)
        assert next_state.u_prev == u
        assert next_state.e_prev == 0.5
        assert next_state.e_prev2 == 0.2


class TestStepPid:
    """
    Test suite for step_pid.
    """

    def test_zero_error(self) -> None:
        """
        No error keeps the last control.
        """
        state = classic_controller.ClassicState(u_prev=3.5)

        u, _ = classic_controller.step_pid(state, 0.0, make_gains(2.0, 3.0, kd=0.5), 0.1)

        assert u == 3.5

    @pytest.mark.parametrize("c", [-2.0, 0.25, 7.0])
    def test_constant_error(self, c: float) -> None:
        """
        ki h c with kp = kd = 0.
        """
        state = classic_controller.ClassicState(e_prev=c, e_prev2=c)

        u, _ = classic_controller.step_pid(state, c, make_gains(0.0, 10.0), 0.1)

        assert u == pytest.approx(c)

    def test_hand_arithmetic(self) -> None:
        """
        2 * 0.1 * 10 + 3 * 0.1 * 1 + 0.5 * 0.1 * 100 = 7.3.
        """
        u, _ = classic_controller.step_pid(
            classic_controller.ClassicState(), 1.0, make_gains(2.0, 3.0, kd=0.5), 0.1
        )

        assert u == pytest.approx(7.3)


class TestStepPii2d:
    """
    Test suite for step_pii2d.
    """

    def test_zero_state(self) -> None:
        """
        No error and no integral keeps the last control.
        """
        state = classic_controller.ClassicState(u_prev=-1.25)

        u, next_state = classic_controller.step_pii2d(
            state, 0.0, make_gains(1.0, 2.0, 3.0, 4.0), 0.1
        )

        assert u == -1.25
        assert next_state.i_prev == 0.0

    def test_riemann_recursion(self) -> None:
        """
        Integral grows 0.1, 0.2, 0.3 and the control adds h I each step.
        """
        gains = make_gains(0.0, 0.0, kii=1.0)
        state = classic_controller.ClassicState()
        integrals = []
        for _ in range(3):
            u, state = classic_controller.step_pii2d(state, 1.0, gains, 0.1)
            integrals.append(state.i_prev)

        # Assertions
        assert integrals == pytest.approx([0.1, 0.2, 0.3])
        assert u == pytest.approx(0.06)

    def test_reduces_to_pi(self, random_errors: np.ndarray) -> None:
        """
        With kii = kd = 0 the output is the PI output.
        """
        gains = make_gains(6.350, 15.817)

        expected = run_sequence(classic_controller.ClassicKind.PI, random_errors, gains, 0.01)
        actual = run_sequence(classic_controller.ClassicKind.PII2D, random_errors, gains, 0.01)

        assert actual == pytest.approx(expected, rel=1e-12, abs=1e-12)


class TestClassicProperties:
    """
    Linearity properties shared by every structure.
    """

    @pytest.mark.parametrize("kind", list(classic_controller.ClassicKind))
    def test_bias_shift(
        self, kind: classic_controller.ClassicKind, random_errors: np.ndarray
    ) -> None:
        """
        Adding c to the initial control shifts every later control by c.
        """
        gains = make_gains(2.0, 5.0, 1.5, 0.01)
        shift = 3.25

        base = run_sequence(kind, random_errors, gains, 0.01)
        shifted = run_sequence(
            kind,
            random_errors,
            gains,
            0.01,
            classic_controller.ClassicState(u_prev=shift),
        )

        assert shifted - base == pytest.approx(np.full(len(base), shift), abs=1e-9)

    @pytest.mark.parametrize("kind", list(classic_controller.ClassicKind))
    def test_superposition(self, kind: classic_controller.ClassicKind) -> None:
        """
        One step is linear in the error and the state.
        """
        generator = np.random.default_rng(5)
        gains = make_gains(2.0, 5.0, 1.5, 0.01)
        h = 0.01
        for _ in range(100):
            first = generator.uniform(-1.0, 1.0, 5)
            second = generator.uniform(-1.0, 1.0, 5)
            first_state = classic_controller.ClassicState(*first[:4])
            second_state = classic_controller.ClassicState(*second[:4])
            sum_state = classic_controller.ClassicState(*(first[:4] + second[:4]))

            first_u, _ = classic_controller.step_classic(kind, first_state, first[4], gains, h)
            second_u, _ = classic_controller.step_classic(
                kind, second_state, second[4], gains, h
            )
            sum_u, _ = classic_controller.step_classic(
                kind, sum_state, first[4] + second[4], gains, h
            )

            assert sum_u == pytest.approx(first_u + second_u, abs=1e-12 * max(1.0, abs(sum_u)))

    def test_pid_without_derivative_is_pi(self, random_errors: np.ndarray) -> None:
        """
        PID with kd = 0 reduces to the PI recursion.
        """
        gains = make_gains(6.350, 15.817)

        expected = run_sequence(classic_controller.ClassicKind.PI, random_errors, gains, 0.01)
        actual = run_sequence(classic_controller.ClassicKind.PID, random_errors, gains, 0.01)

        assert actual == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_state_is_immutable(self) -> None:
        """
        Stepping returns a new state and leaves the old one alone.
        """
        state = classic_controller.ClassicState()

        _, next_state = classic_controller.step_pi(state, 1.0, make_gains(1.0, 1.0), 0.01)

        assert state == classic_controller.ClassicState()
        assert next_state != state
        with pytest.raises(dataclasses.FrozenInstanceError):
            state.u_prev = 1.0  # type: ignore[misc]
