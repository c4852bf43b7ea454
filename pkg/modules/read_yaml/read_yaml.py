"""
Reads YAML configuration files.
"""

import pathlib

import yaml


def open_config(file_path: pathlib.Path) -> "tuple[bool, dict | None]":
    """
    Opens a YAML file and returns the configuration as a dictionary.

    file_path: Path to the YAML file.

    Returns: Success, configuration dictionary.
    """
    try:
        with file_path.open("r", encoding="utf-8") as file:
            try:
                config = yaml.safe_load(file)
            except yaml.YAMLError as exception:
                print(f"ERROR: Could not parse YAML file: {file_path}, exception: {exception}")
                return False, None
    except FileNotFoundError:
        print(f"ERROR: YAML file not found: {file_path}")
        return False, None
    except IOError as exception:
        print(f"ERROR: Could not open file: {file_path}, exception: {exception}")
        return False, None

    if not isinstance(config, dict):
        print(f"ERROR: YAML file does not contain a mapping: {file_path}")
        return False, None

    return True, config


def write_config(config: dict, file_path: pathlib.Path) -> bool:
    """
    Writes a configuration dictionary to a YAML file.

    config: Configuration dictionary.
    file_path: Path to the YAML file, overwritten if it exists.

    Returns: Success.
    """
    try:
        with file_path.open("w", encoding="utf-8") as file:
            yaml.safe_dump(config, file, sort_keys=False)
    except IOError as exception:
        print(f"ERROR: Could not write file: {file_path}, exception: {exception}")
        return False

    return True
