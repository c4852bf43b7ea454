"""
Closed loop scenario unit tests: the builtin experiments on the cubic plant.
"""

import pathlib

import numpy as np
import pytest

from modules.plant import plant_model
from modules.plant import plant_simulator
from modules.scenarios import builtin_scenarios
from modules.scenarios import closed_loop
from modules.scenarios import scenario
from modules.scenarios import trajectory
from modules.signals import reference_trajectory


# Test functions use test fixture signature names
# pylint: disable=redefined-outer-name


def run_builtin(
    name: str, noise: "plant_model.NoiseModel | None" = None
) -> closed_loop.ScenarioResult:
    """
    Runs a builtin that must complete without diverging.
    """
    result, run = builtin_scenarios.builtin_scenario(name, noise=noise)
    assert result
    assert run is not None

    result, scenario_result = closed_loop.run_scenario(run)
    assert result
    assert scenario_result is not None
    assert not scenario_result.diverged

    return scenario_result


def error_at(scenario_result: closed_loop.ScenarioResult, t: float) -> float:
    """
    |setpoint - output| at the sample nearest t.
    """
    run = scenario_result.trajectory
    k = int(round(t / run.h))
    return abs(float(run.setpoint.values[k] - run.output.values[k]))


@pytest.fixture(scope="module")
def builtin_results() -> "dict[str, closed_loop.ScenarioResult]":
    """
    Every builtin, run once for the whole module.
    """
    yield {name: run_builtin(name) for name in builtin_scenarios.BUILTIN_NAMES}


class TestBuiltinScenario:
    """
    Test suite for builtin_scenario.
    """

    def test_unknown(self) -> None:
        """
        Only the listed names exist.
        """
        result, run = builtin_scenarios.builtin_scenario("no-such")

        assert not result
        assert run is None

    @pytest.mark.parametrize("name", builtin_scenarios.BUILTIN_NAMES)
    def test_names(self, name: str) -> None:
        """
        Every builtin builds at the default sampling interval.
        """
        result, run = builtin_scenarios.builtin_scenario(name)

        assert result
        assert run.name == name
        assert run.h == builtin_scenarios.DEFAULT_H

    def test_reference_modes(self) -> None:
        """
        Closed loop builtins follow the smoothed setpoint, plain scenarios the raw step.
        """
        result, plant = plant_model.PlantModel.create_nonlinear_cubic()
        assert result
        result, plain = scenario.Scenario.create(
            "plain", plant, scenario.ControllerKind.OPEN_LOOP, [(0.0, 1.0)], 1.0, 0.01
        )
        assert result

        # Assertions
        assert plain.reference_mode == reference_trajectory.ReferenceMode.STEP_BACKWARD_DIFF
        for name in builtin_scenarios.BUILTIN_NAMES:
            if name == "open-loop":
                continue
            _, run = builtin_scenarios.builtin_scenario(name)
            assert run.reference_mode == reference_trajectory.ReferenceMode.SMOOTH_SECOND_ORDER

    @pytest.mark.parametrize("name", ["ipi-nominal", "ipi-large-setpoint", "ipi-power-loss"])
    def test_ipi_configuration(self, name: str) -> None:
        """
        The i-PI builtins average the last 3 raw F estimates.
        """
        result, run = builtin_scenarios.builtin_scenario(name)
        assert result

        config = run.intelligent_config

        # Assertions
        assert config.nu == 1
        assert config.alpha == 1.0
        assert config.k_p == 6.0
        assert config.k_i == 9.0
        assert config.estimation_window == 3


class TestScenario:
    """
    Test suite for Scenario creation.
    """

    def test_classic_needs_gains(self) -> None:
        """
        A classic run without gains is rejected.
        """
        result, plant = plant_model.PlantModel.create_nonlinear_cubic()
        assert result

        result, run = scenario.Scenario.create(
            "bad", plant, scenario.ControllerKind.CLASSIC, [(0.0, 1.0)], 1.0, 0.01
        )

        assert not result
        assert run is None

    @pytest.mark.parametrize("duration, h", [(0.0, 0.01), (1.0, 0.0), (0.001, 0.01)])
    def test_invalid_timing(self, duration: float, h: float) -> None:
        """
        Duration and sampling interval must be positive and hold two samples.
        """
        result, plant = plant_model.PlantModel.create_nonlinear_cubic()
        assert result

        result, run = scenario.Scenario.create(
            "bad", plant, scenario.ControllerKind.OPEN_LOOP, [(0.0, 1.0)], duration, h
        )

        assert not result
        assert run is None


class TestRunScenario:
    """
    Test suite for run_scenario on the builtin experiments.
    """

    def test_open_loop(self, builtin_results: "dict[str, closed_loop.ScenarioResult]") -> None:
        """
        The unit step drives the cubic plant to 2^(1/3).
        """
        run = builtin_results["open-loop"].trajectory

        assert np.all(run.control_commanded.values == 1.0)
        assert np.array_equal(run.setpoint.values, run.control_commanded.values)
        assert run.output.values[-1] == pytest.approx(2.0 ** (1.0 / 3.0), abs=1e-4)

    def test_nominal(self, builtin_results: "dict[str, closed_loop.ScenarioResult]") -> None:
        """
        PI and i-PI track the unit setpoint alike and both settle within 3 s.
        """
        pi_result = builtin_results["pi-nominal"]
        ipi_result = builtin_results["ipi-nominal"]

        # Assertions
        for scenario_result in (pi_result, ipi_result):
            assert scenario_result.metrics.settled
            assert scenario_result.metrics.settling_time_2pct <= 3.0
            assert error_at(scenario_result, 6.0) < 0.02
        assert ipi_result.metrics.iae == pytest.approx(pi_result.metrics.iae, rel=0.25)

    def test_large_setpoint(self, builtin_results: "dict[str, closed_loop.ScenarioResult]") -> None:
        """
        Fixed PI gains degrade at 5 times the setpoint, the i-PI does not.
        """
        scale = builtin_scenarios.LARGE_SETPOINT / builtin_scenarios.NOMINAL_SETPOINT
        pi_nominal = builtin_results["pi-nominal"].metrics.iae
        pi_large = builtin_results["pi-large-setpoint"].metrics.iae / scale
        ipi_nominal = builtin_results["ipi-nominal"].metrics.iae
        ipi_large = builtin_results["ipi-large-setpoint"].metrics.iae / scale

        assert pi_large >= 1.5 * pi_nominal
        assert abs(ipi_large - ipi_nominal) < 0.5 * ipi_nominal

    def test_power_loss(self, builtin_results: "dict[str, closed_loop.ScenarioResult]") -> None:
        """
        After the onset the i-PI beats the PI, yet its error grows late in the run.
        """
        pi_result = builtin_results["pi-power-loss"]
        ipi_result = builtin_results["ipi-power-loss"]

        # Assertions
        assert pi_result.window_metrics is not None
        assert ipi_result.window_metrics is not None
        assert ipi_result.window_metrics.window == (4.0, pytest.approx(12.0))
        assert ipi_result.window_metrics.iae < pi_result.window_metrics.iae
        assert error_at(ipi_result, 12.0) > error_at(ipi_result, 5.0)

    def test_fault_applied(self, builtin_results: "dict[str, closed_loop.ScenarioResult]") -> None:
        """
        The applied control is the commanded control through the fault.
        """
        result, run = builtin_scenarios.builtin_scenario("ipi-power-loss")
        assert result
        recorded = builtin_results["ipi-power-loss"].trajectory

        expected = [
            plant_simulator.apply_fault(run.fault, float(u), float(t), run.h)
            for t, u in zip(recorded.time, recorded.control_commanded.values)
        ]

        assert np.array_equal(recorded.control_applied.values, np.array(expected))
        assert recorded.control_applied.values[-1] < recorded.control_commanded.values[-1]

    def test_signals_aligned(
        self, builtin_results: "dict[str, closed_loop.ScenarioResult]"
    ) -> None:
        """
        Every signal shares the sampling interval and the length.
        """
        run = builtin_results["pi-nominal"].trajectory

        lengths = {len(run.signal(name)) for name in trajectory.SIGNAL_NAMES}
        intervals = {run.signal(name).h for name in trajectory.SIGNAL_NAMES}

        assert lengths == {601}
        assert intervals == {0.01}

    def test_deterministic_with_noise(self) -> None:
        """
        Same seed, bit-identical trajectory.
        """
        signals = []
        for _ in range(2):
            result, noise = plant_model.NoiseModel.create(
                plant_model.NoiseKind.GAUSSIAN, 0.01, 5
            )
            assert result
            run = run_builtin("ipi-nominal", noise).trajectory
            signals.append([run.signal(name).values for name in trajectory.SIGNAL_NAMES])

        for first, second in zip(*signals):
            assert np.array_equal(first, second)

    def test_divergence(self) -> None:
        """
        A blow-up keeps the samples recorded before it.
        """
        result, plant = plant_model.PlantModel.create_nonlinear_cubic()
        assert result
        result, run = scenario.Scenario.create(
            "blow-up", plant, scenario.ControllerKind.OPEN_LOOP, [(0.0, 1e200)], 1.0, 0.01
        )
        assert result

        result, scenario_result = closed_loop.run_scenario(run)

        assert result
        assert scenario_result.diverged
        assert scenario_result.trajectory.diverged
        assert len(scenario_result.trajectory) == 1

    def test_write_csv(
        self,
        builtin_results: "dict[str, closed_loop.ScenarioResult]",
        tmp_path: pathlib.Path,
    ) -> None:
        """
        One header row with the trajectory columns, full precision rows after it.
        """
        run = builtin_results["pi-nominal"].trajectory
        path = pathlib.Path(tmp_path, "pi-nominal.csv")

        assert run.write_csv(path)

        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(trajectory.CSV_COLUMNS)
        assert len(lines) == len(run) + 1
        written = np.loadtxt(path, delimiter=",", skiprows=1)
        assert np.array_equal(written[:, 3], run.output.values)
