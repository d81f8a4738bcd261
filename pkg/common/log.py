"""
Name: log.py
Description: Logging helpers. Library modules ask for a logger, only the command line configures handlers.
Author: Connor Kasarda
Date: 2025-05-02

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import logging
import sys

ROOT_LOGGER_NAME = 'trendlab'
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

def get_logger(name: str) -> logging.Logger:
    """
    Returns a logger nested under the trendlab root logger.

    Args:
        name (str): Usually the calling module's __name__.

    Returns:
        logging.Logger: The logger for that module.
    """

    return logging.getLogger(f'{ROOT_LOGGER_NAME}.{name}')

def configure_logging(level: int = logging.INFO) -> None:
    """
    Sends trendlab log records to stderr. Safe to call more than once.

    Args:
        level (int): Minimum level to emit. Defaults to logging.INFO.
    """

    root = logging.getLogger(ROOT_LOGGER_NAME)
    root.setLevel(level)
    if not any(getattr(handler, '_trendlab', False) for handler in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._trendlab = True
        root.addHandler(handler)
    root.propagate = False
