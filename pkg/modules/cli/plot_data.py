"""
Plot data and metrics summaries written next to a trajectory CSV.
"""

import pathlib

from ..logger import logger
from ..scenarios import closed_loop
from ..scenarios import metrics


PLOT_DATA_SUFFIX = ".dat"
METRICS_FILE_SUFFIX = "_metrics.txt"
WINDOW_PREFIX = "window_"

# Panel name to the trajectory signals drawn in it
PANELS = {
    "input": ("control_commanded", "control_applied"),
    "output": ("setpoint", "reference", "output", "output_denoised"),
    "f_estimate": ("f_estimate",),
}

LOGGER = logger.get_logger(__name__)


def plot_data_path(out_dir: pathlib.Path, name: str, panel: str, signal: str) -> pathlib.Path:
    """
    File holding one signal of one panel.
    """
    return pathlib.Path(out_dir, f"{name}_{panel}_{signal}{PLOT_DATA_SUFFIX}")


def write_plot_data(
    result: closed_loop.ScenarioResult, name: str, out_dir: pathlib.Path
) -> "tuple[bool, list[pathlib.Path] | None]":
    """
    Writes one two-column time,value file per signal of each panel.

    Returns: Success, paths written.
    """
    paths = []
    for panel, signals in PANELS.items():
        for signal in signals:
            path = plot_data_path(out_dir, name, panel, signal)
            if not result.trajectory.signal(signal).write_csv(path, signal):
                return False, None
            paths.append(path)

    return True, paths


def format_metrics(
    result: closed_loop.ScenarioResult,
) -> "list[str]":
    """
    key=value lines of the whole run, then of the comparison window if there is one.
    """
    lines = [f"diverged={str(result.diverged).lower()}"]
    lines.extend(_key_value_lines(result.metrics, ""))
    if result.window_metrics is not None:
        lines.extend(_key_value_lines(result.window_metrics, WINDOW_PREFIX))

    return lines


def _key_value_lines(run_metrics: metrics.Metrics, prefix: str) -> "list[str]":
    lines = []
    for key, value in run_metrics.as_dict().items():
        if isinstance(value, float):
            value = f"{value:.17g}"
        lines.append(f"{prefix}{key}={value}")

    return lines


def metrics_path(out_dir: pathlib.Path, name: str) -> pathlib.Path:
    """
    File holding the metrics summary of a scenario.
    """
    return pathlib.Path(out_dir, f"{name}{METRICS_FILE_SUFFIX}")


def write_metrics(
    result: closed_loop.ScenarioResult, name: str, out_dir: pathlib.Path
) -> "tuple[bool, pathlib.Path | None]":
    """
    Writes the metrics summary.

    Returns: Success, path written.
    """
    path = metrics_path(out_dir, name)
    try:
        path.write_text("\n".join(format_metrics(result)) + "\n", encoding="utf-8")
    except OSError as exception:
        LOGGER.error(f"Failed to write metrics to: {path}, exception: {exception}")
        return False, None

    return True, path


def read_metrics(path: pathlib.Path) -> "tuple[bool, dict[str, str] | None]":
    """
    Parses a metrics summary back into key value pairs.
    """
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exception:
        LOGGER.error(f"Failed to read metrics from: {path}, exception: {exception}")
        return False, None

    pairs = {}
    for line in lines:
        if line.strip() == "":
            continue
        key, separator, value = line.partition("=")
        if separator == "":
            LOGGER.error(f"Malformed metrics line: {line}")
            return False, None
        pairs[key] = value

    return True, pairs
