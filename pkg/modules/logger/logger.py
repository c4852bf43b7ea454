"""
Logs debug, info, warning, error and critical messages.
"""

import datetime
import logging
import pathlib


DEFAULT_LOG_FORMAT = (
    "%(asctime)s: [%(levelname)s] [%(filename)s | %(funcName)s | %(lineno)d] %(message)s"
)
DEFAULT_LOG_DATETIME_FORMAT = "%H:%M:%S"
DEFAULT_FILE_DATETIME_FORMAT = "%Y-%m-%d_%H-%M-%S"
LOG_FILE_SUFFIX = ".log"

# Root of every logger in this package, so one handler setup covers all modules
ROOT_LOGGER_NAME = "modules"


class Logger:
    """
    Wrapper around a named logger.
    The caller's file, function and line are reported rather than this wrapper's.
    """

    __create_key = object()

    @classmethod
    def create(
        cls, name: str, enable_log_to_file: bool, logger_config: "dict | None" = None
    ) -> "tuple[bool, Logger | None]":
        """
        Creates a logger, optionally with a file handler in a timestamped run directory.

        name: Name of the logger, also used as the log file name.
        enable_log_to_file: Write messages to a file in addition to the console.
        logger_config: The `logger` section of the configuration file, defaults used if None.

        Returns: Success, logger.
        """
        # Module level loggers pass no configuration and keep the console format as it is
        reformat_console = logger_config is not None
        if logger_config is None:
            logger_config = {}

        try:
            log_format = logger_config.get("format", DEFAULT_LOG_FORMAT)
            log_datetime_format = logger_config.get(
                "log_datetime_format", DEFAULT_LOG_DATETIME_FORMAT
            )
            file_datetime_format = logger_config.get(
                "file_datetime_format", DEFAULT_FILE_DATETIME_FORMAT
            )
            directory_path = pathlib.Path(logger_config.get("directory_path", "logs"))
        except AttributeError:
            print("ERROR: Logger configuration must be a mapping")
            return False, None

        formatter = logging.Formatter(fmt=log_format, datefmt=log_datetime_format)

        root_logger = logging.getLogger(ROOT_LOGGER_NAME)
        root_logger.setLevel(logging.DEBUG)
        console_handlers = [
            handler
            for handler in root_logger.handlers
            if isinstance(handler, logging.StreamHandler)
            and not isinstance(handler, logging.FileHandler)
        ]
        if len(console_handlers) == 0:
            stream_handler = logging.StreamHandler()
            stream_handler.setLevel(logging.INFO)
            stream_handler.setFormatter(formatter)
            root_logger.addHandler(stream_handler)
        elif reformat_console:
            for handler in console_handlers:
                handler.setFormatter(formatter)

        if enable_log_to_file:
            run_directory = pathlib.Path(
                directory_path, datetime.datetime.now().strftime(file_datetime_format)
            )
            try:
                run_directory.mkdir(parents=True, exist_ok=True)
                file_handler = logging.FileHandler(
                    pathlib.Path(run_directory, name + LOG_FILE_SUFFIX), encoding="utf-8"
                )
            except OSError as exception:
                print(f"ERROR: Could not create log file in {run_directory}: {exception}")
                return False, None

            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

        return True, Logger(cls.__create_key, _qualified_name(name))

    def __init__(self, class_private_create_key: object, name: str) -> None:
        """
        Private constructor, use create() method.
        """
        assert class_private_create_key is Logger.__create_key, "Use create() method"

        self.logger = logging.getLogger(name)

    # stacklevel=2 reports the caller of these methods in the log line
    def debug(self, message: str) -> None:
        """
        Logs a debug level message.
        """
        self.logger.debug(message, stacklevel=2)

    def info(self, message: str) -> None:
        """
        Logs an info level message.
        """
        self.logger.info(message, stacklevel=2)

    def warning(self, message: str) -> None:
        """
        Logs a warning level message.
        """
        self.logger.warning(message, stacklevel=2)

    def error(self, message: str) -> None:
        """
        Logs an error level message.
        """
        self.logger.error(message, stacklevel=2)

    def critical(self, message: str) -> None:
        """
        Logs a critical level message.
        """
        self.logger.critical(message, stacklevel=2)


def get_logger(name: str) -> Logger:
    """
    Module level logger without handlers of its own.
    Messages reach the console once any Logger has been created with create().
    """
    result, module_logger = Logger.create(name, False)
    # Cannot fail without a file handler
    assert result

    return module_logger


def _qualified_name(name: str) -> str:
    if name == ROOT_LOGGER_NAME or name.startswith(ROOT_LOGGER_NAME + "."):
        return name
    return f"{ROOT_LOGGER_NAME}.{name}"
