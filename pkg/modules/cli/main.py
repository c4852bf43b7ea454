"""
Command line entry point: scenario, map-gains, verify, identify and simulate.
"""

import argparse
import pathlib
import sys

from . import app_config
from . import cli_commands
from ..intelligent import intelligent_controller
from ..logger import logger


CONFIG_FILE_PATH = pathlib.Path(pathlib.Path(__file__).parent.parent.parent, "config.yaml")
KIND_CHOICES = [kind.value for kind in intelligent_controller.IntelligentKind]


def _add_global_flags(parser: argparse.ArgumentParser, suppress_defaults: bool) -> None:
    # Suppressed after the command so it cannot overwrite a value given before it
    defaults = {"h": None, "seed": None, "out_dir": None, "config": CONFIG_FILE_PATH}
    if suppress_defaults:
        defaults = dict.fromkeys(defaults, argparse.SUPPRESS)

    parser.add_argument(
        "--h", type=float, default=defaults["h"], help="sampling interval in seconds"
    )
    parser.add_argument("--seed", type=int, default=defaults["seed"], help="random seed")
    parser.add_argument(
        "--out-dir", type=pathlib.Path, default=defaults["out_dir"], help="output directory"
    )
    parser.add_argument(
        "--config", type=pathlib.Path, default=defaults["config"], help="configuration file"
    )


def _global_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    _add_global_flags(parser, True)
    return parser


def _gain_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("kind", choices=KIND_CHOICES, help="intelligent controller structure")
    parser.add_argument("--alpha", type=float, default=1.0, help="control effectiveness")
    parser.add_argument("--KP", type=float, default=0.0, help="proportional tuning gain")
    parser.add_argument("--KI", type=float, default=0.0, help="integral tuning gain")
    parser.add_argument("--KD", type=float, default=0.0, help="derivative tuning gain")


def build_parser() -> argparse.ArgumentParser:
    """
    Parser with one subparser per command, global flags accepted before or after it.
    """
    global_flags = _global_flags()
    parser = argparse.ArgumentParser(
        description="Classic and intelligent PID controller laboratory"
    )
    _add_global_flags(parser, False)
    subparsers = parser.add_subparsers(dest="command", required=True)

    scenario_parser = subparsers.add_parser(
        "scenario", parents=[global_flags], help="run a builtin scenario or a run configuration"
    )
    scenario_parser.add_argument(
        "name", nargs="?", default=None, help="builtin name or YAML run configuration"
    )
    scenario_parser.add_argument("--all", action="store_true", help="run every builtin")
    scenario_parser.add_argument(
        "--jobs", type=int, default=1, help="worker processes for --all"
    )
    scenario_parser.add_argument(
        "--noise-std", type=float, default=0.0, help="gaussian measurement noise for builtins"
    )

    map_gains_parser = subparsers.add_parser(
        "map-gains", parents=[global_flags], help="print the classic counterpart gains"
    )
    _gain_flags(map_gains_parser)

    verify_parser = subparsers.add_parser(
        "verify", parents=[global_flags], help="check the classic and intelligent recursions agree"
    )
    _gain_flags(verify_parser)
    verify_parser.add_argument(
        "--n-samples", type=int, default=None, help="length of the random error sequence"
    )
    verify_parser.add_argument(
        "--random-configs",
        type=int,
        default=0,
        help="check this many random configurations instead of the given gains",
    )

    identify_parser = subparsers.add_parser(
        "identify", parents=[global_flags], help="fit a step response and tune a PI"
    )
    identify_parser.add_argument("csv", type=pathlib.Path, help="CSV with time and output columns")
    identify_parser.add_argument("--step", type=float, default=1.0, help="input step amplitude")

    simulate_parser = subparsers.add_parser(
        "simulate", parents=[global_flags], help="open loop run of a run configuration"
    )
    simulate_parser.add_argument("run_config", type=pathlib.Path, help="YAML run configuration")

    return parser


def main(argv: "list[str] | None" = None) -> int:
    """
    Main function.
    """
    args = build_parser().parse_args(argv)

    result, config = app_config.read_app_config(args.config)
    if not result:
        print(f"ERROR: Failed to read config file: {args.config}")
        return cli_commands.EXIT_USAGE

    result, main_logger = logger.Logger.create(
        "main", config.enable_log_to_file, config.logger_config
    )
    if not result:
        print("ERROR: Failed to create logger")
        return cli_commands.EXIT_USAGE

    h = config.h if args.h is None else args.h
    seed = config.seed if args.seed is None else args.seed
    main_logger.debug(f"Running {args.command} with h={h}, seed={seed}")

    match args.command:
        case "scenario":
            return cli_commands.cmd_scenario(
                args.name,
                args.out_dir,
                config.out_dir,
                h,
                seed,
                noise_std=args.noise_std,
                run_all=args.all,
                jobs=args.jobs,
                h_overridden=args.h is not None,
                seed_overridden=args.seed is not None,
            )
        case "map-gains":
            return cli_commands.cmd_map_gains(
                intelligent_controller.IntelligentKind(args.kind),
                args.alpha,
                h,
                args.KP,
                args.KI,
                args.KD,
            )
        case "verify":
            sample_count = (
                config.verify_sample_count if args.n_samples is None else args.n_samples
            )
            return cli_commands.cmd_verify(
                intelligent_controller.IntelligentKind(args.kind),
                args.alpha,
                h,
                args.KP,
                args.KI,
                args.KD,
                sample_count,
                seed,
                config.verify_tolerance,
                args.random_configs,
            )
        case "identify":
            return cli_commands.cmd_identify(args.csv, args.step, config.dead_time_floor)
        case "simulate":
            return cli_commands.cmd_simulate(
                args.run_config, args.out_dir, config.out_dir, args.h, args.seed
            )

    return cli_commands.EXIT_USAGE


if __name__ == "__main__":
    result_main = main()
    if result_main != 0:
        print(f"ERROR: Status code: {result_main}")

    print("Done!")

    sys.exit(result_main)
