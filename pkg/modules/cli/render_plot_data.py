"""
Renders the plot data files of a scenario to PNG figures, one per panel.
"""

import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")

# Backend must be selected before pyplot is imported
# pylint: disable-next=wrong-import-position
import matplotlib.pyplot as plt  # noqa: E402

# pylint: disable-next=wrong-import-position
from . import plot_data  # noqa: E402

# pylint: disable-next=wrong-import-position
from ..signals import time_series  # noqa: E402


FIGURE_SUFFIX = ".png"
# Drawn dashed, the way the raw signal is drawn solid
DASHED_SIGNALS = {"output_denoised", "reference"}


def render_panels(
    out_dir: pathlib.Path, name: str
) -> "tuple[bool, list[pathlib.Path] | None]":
    """
    Draws every panel whose data files exist.

    out_dir: Directory holding the plot data files.
    name: Scenario name the files are prefixed with.

    Returns: Success, figure paths written.
    """
    figure_paths = []
    for panel, signals in plot_data.PANELS.items():
        figure, axes = plt.subplots()
        drawn = 0
        for signal in signals:
            path = plot_data.plot_data_path(out_dir, name, panel, signal)
            if not path.exists():
                continue

            result, series = time_series.read_csv(path, signal)
            if not result:
                plt.close(figure)
                return False, None

            linestyle = "--" if signal in DASHED_SIGNALS else "-"
            axes.plot(series.times, series.values, linestyle=linestyle, label=signal)
            drawn += 1

        if drawn == 0:
            plt.close(figure)
            continue

        axes.set_xlabel("time [s]")
        axes.set_title(f"{name}: {panel}")
        axes.grid()
        axes.legend()

        figure_path = pathlib.Path(out_dir, f"{name}_{panel}{FIGURE_SUFFIX}")
        try:
            figure.savefig(figure_path)
        except OSError as exception:
            print(f"ERROR: Could not save figure: {figure_path}, exception: {exception}")
            plt.close(figure)
            return False, None

        plt.close(figure)
        figure_paths.append(figure_path)

    return True, figure_paths


def main() -> int:
    """
    Main function.
    """
    parser = argparse.ArgumentParser(description="Render scenario plot data to PNG files")
    parser.add_argument("out_dir", type=pathlib.Path, help="directory holding the .dat files")
    parser.add_argument("name", help="scenario name")
    args = parser.parse_args()

    result, figure_paths = render_panels(args.out_dir, args.name)
    if not result:
        return -1

    if len(figure_paths) == 0:
        print(f"ERROR: No plot data for {args.name} in: {args.out_dir}")
        return -1

    for figure_path in figure_paths:
        print(f"Wrote figure: {figure_path}")

    return 0


if __name__ == "__main__":
    result_main = main()
    if result_main != 0:
        print(f"ERROR: Status code: {result_main}")

    print("Done!")
