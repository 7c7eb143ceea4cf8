"""
Logging utility for the toolkit.
Configures the project logger; library modules log through child loggers.
"""

import logging
import sys

ROOT_LOGGER_NAME = "otm_fluct"


def setup_logger(name: str = ROOT_LOGGER_NAME, level: str = "INFO") -> logging.Logger:
    """
    Setup and configure a logger instance.

    Args:
        name: Logger name
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper()))

    # Don't add handlers if they already exist
    if logger.handlers:
        return logger

    # stdout carries JSON/CSV results, so diagnostics go to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    console_handler.setFormatter(formatter)

    logger.addHandler(console_handler)
    logger.propagate = False

    return logger


def get_logger(module_name: str) -> logging.Logger:
    """Return a child of the project logger for a module."""
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{module_name}")


# Create default logger instance
logger = setup_logger()
