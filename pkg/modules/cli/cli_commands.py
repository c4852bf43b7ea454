"""
Subcommand implementations. Each returns a process exit code.
"""

import concurrent.futures
import pathlib

from . import plot_data
from . import run_config
from ..equivalence import equivalence_verifier
from ..equivalence import gain_correspondence
from ..intelligent import intelligent_controller
from ..logger import logger
from ..plant import plant_model
from ..plant import plant_simulator
from ..scenarios import builtin_scenarios
from ..scenarios import closed_loop
from ..scenarios import scenario
from ..signals import reference_trajectory
from ..signals import time_series
from ..tuning import broida_tuning


EXIT_SUCCESS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DIVERGED = 3

RUN_CONFIG_SUFFIXES = {".yaml", ".yml"}
IDENTIFY_COLUMN = "output"
NUMBER_FORMAT = ".17g"
# Metrics echoed per scenario by scenario --all
SUMMARY_KEYS = ("iae", "settling_time_2pct")

LOGGER = logger.get_logger(__name__)


def _format(value: float) -> str:
    return f"{value:{NUMBER_FORMAT}}"


def _make_out_dir(out_dir: pathlib.Path) -> bool:
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exception:
        LOGGER.error(f"Could not create output directory: {out_dir}, exception: {exception}")
        return False

    return True


def _noise(std: float, seed: int) -> "plant_model.NoiseModel | None":
    if std <= 0.0:
        return None

    result, noise = plant_model.NoiseModel.create(plant_model.NoiseKind.GAUSSIAN, std, seed)
    if not result:
        return None

    return noise


def write_scenario_outputs(run: scenario.Scenario, out_dir: pathlib.Path) -> int:
    """
    Runs a scenario and writes its trajectory CSV, metrics summary and plot data.
    Outputs are written for diverged runs too.
    """
    result, scenario_result = closed_loop.run_scenario(run)
    if not result:
        LOGGER.error(f"Scenario {run.name} failed")
        return EXIT_USAGE

    if not _make_out_dir(out_dir):
        return EXIT_USAGE

    csv_path = pathlib.Path(out_dir, f"{run.name}.csv")
    if not scenario_result.trajectory.write_csv(csv_path):
        return EXIT_USAGE

    result, metrics_path = plot_data.write_metrics(scenario_result, run.name, out_dir)
    if not result:
        return EXIT_USAGE

    result, _ = plot_data.write_plot_data(scenario_result, run.name, out_dir)
    if not result:
        return EXIT_USAGE

    print(f"Wrote trajectory to: {csv_path}")
    print(f"Wrote metrics to: {metrics_path}")

    if scenario_result.diverged:
        LOGGER.error(f"Scenario {run.name} diverged, partial trajectory written")
        return EXIT_DIVERGED

    return EXIT_SUCCESS


def run_builtin(name: str, h: float, seed: int, noise_std: float, out_dir: pathlib.Path) -> int:
    """
    Builds and runs one builtin scenario. Module level so worker processes can run it.
    """
    result, run = builtin_scenarios.builtin_scenario(name, h, _noise(noise_std, seed))
    if not result:
        return EXIT_USAGE

    return write_scenario_outputs(run, out_dir)


def cmd_scenario(
    name_or_config: "str | None",
    out_dir: "pathlib.Path | None",
    default_out_dir: pathlib.Path,
    h: float,
    seed: int,
    noise_std: float = 0.0,
    run_all: bool = False,
    jobs: int = 1,
    h_overridden: bool = False,
    seed_overridden: bool = False,
) -> int:
    """
    Runs a builtin scenario by name, a run configuration file, or every builtin.

    name_or_config: Builtin name or path to a YAML run configuration.
    out_dir: Output directory from the command line, None to use the configured one.
    default_out_dir: Output directory when neither the flag nor the file sets one.
    h: Sampling interval in seconds for builtins.
    seed: Noise seed for builtins.
    noise_std: Gaussian measurement noise for builtins, 0 for none.
    run_all: Run every builtin.
    jobs: Worker processes when running every builtin.
    h_overridden, seed_overridden: The flags were given and override the file.
    """
    if run_all:
        target_dir = default_out_dir if out_dir is None else out_dir
        names = builtin_scenarios.BUILTIN_NAMES
        if jobs <= 1:
            codes = [run_builtin(name, h, seed, noise_std, target_dir) for name in names]
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = [
                    executor.submit(run_builtin, name, h, seed, noise_std, target_dir)
                    for name in names
                ]
                codes = [future.result() for future in futures]

        for name, code in zip(names, codes):
            print(f"{name}={code}")
            if code == EXIT_USAGE:
                continue

            # Worker processes only return exit codes, the summaries come back from disk
            result, summary = plot_data.read_metrics(plot_data.metrics_path(target_dir, name))
            if not result:
                return EXIT_USAGE
            for key in SUMMARY_KEYS:
                print(f"{name}_{key}={summary.get(key, 'missing')}")
        return max(codes)

    if name_or_config is None:
        LOGGER.error("Give a scenario name, a run configuration file or --all")
        return EXIT_USAGE

    if name_or_config in builtin_scenarios.BUILTIN_NAMES:
        target_dir = default_out_dir if out_dir is None else out_dir
        return run_builtin(name_or_config, h, seed, noise_std, target_dir)

    config_path = pathlib.Path(name_or_config)
    if config_path.suffix not in RUN_CONFIG_SUFFIXES or not config_path.is_file():
        LOGGER.error(
            f"Unknown scenario: {name_or_config}, expected a run configuration file or one of: "
            f"{', '.join(builtin_scenarios.BUILTIN_NAMES)}"
        )
        return EXIT_USAGE

    result, loaded = run_config.load_run_config(config_path)
    if not result:
        return EXIT_USAGE

    result, run = run_config.build_scenario(
        loaded, h if h_overridden else None, seed if seed_overridden else None
    )
    if not result:
        return EXIT_USAGE

    target_dir = out_dir
    if target_dir is None:
        target_dir = (
            pathlib.Path(loaded.output_path) if loaded.output_path is not None else default_out_dir
        )

    return write_scenario_outputs(run, target_dir)


def _intelligent_config(
    kind: intelligent_controller.IntelligentKind,
    alpha: float,
    k_p: float,
    k_i: float,
    k_d: float,
) -> "tuple[bool, intelligent_controller.IntelligentConfig | None]":
    return intelligent_controller.IntelligentConfig.create(kind.nu, alpha, k_p, k_i, k_d)


def cmd_map_gains(
    kind: intelligent_controller.IntelligentKind,
    alpha: float,
    h: float,
    k_p: float,
    k_i: float = 0.0,
    k_d: float = 0.0,
) -> int:
    """
    Prints the classic counterpart gains as key=value lines.
    """
    result, config = _intelligent_config(kind, alpha, k_p, k_i, k_d)
    if not result:
        return EXIT_USAGE

    result, correspondence = gain_correspondence.map_gains(kind, config, h)
    if not result:
        return EXIT_USAGE

    print(f"structure={correspondence.classic_kind.value}")
    for key, value in correspondence.mapped.as_dict().items():
        print(f"{key}={_format(value)}")

    return EXIT_SUCCESS


def _print_report(report: equivalence_verifier.EquivalenceReport, prefix: str = "") -> None:
    print(f"{prefix}max_abs_diff={_format(report.max_abs_diff)}")
    print(f"{prefix}max_abs_u={_format(report.max_abs_u)}")
    print(f"{prefix}bound={_format(report.bound)}")
    print(f"{prefix}passed={str(report.passed).lower()}")


def cmd_verify(
    kind: intelligent_controller.IntelligentKind,
    alpha: float,
    h: float,
    k_p: float,
    k_i: float,
    k_d: float,
    sample_count: int,
    seed: int,
    tolerance: float = equivalence_verifier.DEFAULT_TOLERANCE,
    random_configs: int = 0,
) -> int:
    """
    Checks the intelligent controller against its classic counterpart on a seeded random
    error sequence, or on that many random configurations when random_configs is set.
    """
    if sample_count < 1:
        LOGGER.error(f"Need at least one sample, got: {sample_count}")
        return EXIT_USAGE

    if random_configs > 0:
        result, reports = equivalence_verifier.verify_randomized(
            kind, random_configs, sample_count, seed, tolerance
        )
        if not result:
            return EXIT_USAGE

        worst = max(reports, key=lambda report: report.max_abs_diff / report.bound)
        failed = sum(1 for report in reports if not report.passed)
        print(f"configurations={len(reports)}")
        print(f"failed={failed}")
        _print_report(worst, "worst_")
        return EXIT_SUCCESS if failed == 0 else EXIT_CHECK_FAILED

    result, config = _intelligent_config(kind, alpha, k_p, k_i, k_d)
    if not result:
        return EXIT_USAGE

    result, e_seq = equivalence_verifier.random_error_sequence(sample_count, h, seed)
    if not result:
        return EXIT_USAGE

    result, report = equivalence_verifier.verify_equivalence(kind, config, h, e_seq, tolerance)
    if not result:
        return EXIT_USAGE

    _print_report(report)
    return EXIT_SUCCESS if report.passed else EXIT_CHECK_FAILED


def cmd_identify(csv_path: pathlib.Path, step_amplitude: float, dead_time_floor: float) -> int:
    """
    Fits a first order plus dead time model to the output column and prints the fit and
    the PI gains tuned from it.
    """
    result, response = time_series.read_csv(csv_path, IDENTIFY_COLUMN)
    if not result:
        return EXIT_USAGE

    result, fit = broida_tuning.identify_broida(
        response, step_amplitude, float(response.values[0])
    )
    if not result:
        return EXIT_CHECK_FAILED

    if fit.dead_time < dead_time_floor:
        LOGGER.warning(
            f"Identified dead time {fit.dead_time} s is below the floor, "
            f"tuning with {dead_time_floor} s"
        )

    result, gains = broida_tuning.tune_pi_broida(fit, dead_time_floor)
    if not result:
        return EXIT_CHECK_FAILED

    print(f"k={_format(fit.gain)}")
    print(f"T={_format(fit.time_constant)}")
    print(f"tau={_format(fit.dead_time)}")
    print(f"kp={_format(gains.kp)}")
    print(f"ki={_format(gains.ki)}")

    return EXIT_SUCCESS


def cmd_simulate(
    config_path: pathlib.Path,
    out_dir: "pathlib.Path | None",
    default_out_dir: pathlib.Path,
    h: "float | None",
    seed: "int | None",
) -> int:
    """
    Open loop response to the schedule of an open-loop run configuration, written as a
    time,output CSV that identify reads directly.
    """
    result, loaded = run_config.load_run_config(config_path)
    if not result:
        return EXIT_USAGE

    result, run = run_config.build_scenario(loaded, h, seed)
    if not result:
        return EXIT_USAGE

    if run.controller_kind != scenario.ControllerKind.OPEN_LOOP:
        LOGGER.error(f"simulate runs open loop, got controller: {run.controller_kind.value}")
        return EXIT_USAGE

    result, inputs = reference_trajectory.setpoint_sequence(run.schedule, run.h, run.duration)
    if not result:
        return EXIT_USAGE

    result, input_series = time_series.TimeSeries.create(run.h, inputs)
    if not result:
        return EXIT_USAGE

    result, output = plant_simulator.simulate_open_loop(
        run.plant, input_series, run.substeps, run.noise
    )
    if output is None:
        return EXIT_USAGE

    target_dir = out_dir
    if target_dir is None:
        target_dir = (
            pathlib.Path(loaded.output_path) if loaded.output_path is not None else default_out_dir
        )
    if not _make_out_dir(target_dir):
        return EXIT_USAGE

    csv_path = pathlib.Path(target_dir, f"{run.name}.csv")
    if not output.write_csv(csv_path, IDENTIFY_COLUMN):
        return EXIT_USAGE

    print(f"Wrote open loop response to: {csv_path}")
    if not result:
        LOGGER.error(f"Open loop simulation of {run.name} diverged, partial output written")
        return EXIT_DIVERGED

    return EXIT_SUCCESS
