"""
Application defaults read from config.yaml.
"""

import dataclasses
import pathlib

from ..equivalence import equivalence_verifier
from ..read_yaml import read_yaml
from ..tuning import broida_tuning


@dataclasses.dataclass(frozen=True)
class AppConfig:
    """
    Defaults for command line flags, and the logger section passed to Logger.create().
    """

    h: float
    seed: int
    out_dir: pathlib.Path
    verify_sample_count: int
    verify_tolerance: float
    dead_time_floor: float
    enable_log_to_file: bool
    logger_config: dict


def read_app_config(config_file_path: pathlib.Path) -> "tuple[bool, AppConfig | None]":
    """
    Reads the configuration YAML file.

    config_file_path: Path to the configuration YAML file.

    Returns: Success, configuration.
    """
    result, config = read_yaml.open_config(config_file_path)
    if not result:
        print(f"ERROR: Failed to load configuration file: {config_file_path}")
        return False, None

    try:
        simulation = config["simulation"]
        equivalence = config.get("equivalence", {})
        tuning = config.get("tuning", {})
        logger_config = config["logger"]

        app_config = AppConfig(
            h=float(simulation["h"]),
            seed=int(simulation["seed"]),
            out_dir=pathlib.Path(simulation["out_dir"]),
            verify_sample_count=int(equivalence.get("sample_count", 1000)),
            verify_tolerance=float(
                equivalence.get("tolerance", equivalence_verifier.DEFAULT_TOLERANCE)
            ),
            dead_time_floor=float(
                tuning.get("dead_time_floor", broida_tuning.DEFAULT_DEAD_TIME_FLOOR)
            ),
            enable_log_to_file=bool(logger_config.get("enable_log_to_file", False)),
            logger_config=dict(logger_config),
        )
    except KeyError as exception:
        print(f"ERROR: Config key(s) not found: {exception}")
        return False, None
    except (AttributeError, TypeError, ValueError) as exception:
        print(f"ERROR: Malformed configuration file: {config_file_path}, {exception}")
        return False, None

    if app_config.h <= 0.0:
        print(f"ERROR: Sampling interval must be positive, got: {app_config.h}")
        return False, None

    return True, app_config
