"""
Logger utility for the vk toolkit.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def get_logger(name: str, level: Optional[int] = None, log_file: Optional[str] = None) -> logging.Logger:
    """
    Get a configured logger instance.

    Reports go to stdout, so log records are written to stderr.

    Args:
        name: Name for the logger.
        level: Optional logging level.
        log_file: Optional path of a log file to append to.

    Returns:
        logging.Logger: Configured logger instance.
    """
    logger = logging.getLogger(name)

    if not logger.handlers:
        formatter = logging.Formatter(LOG_FORMAT)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

        if log_file:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_path)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

        logger.propagate = False
        if level is None:
            level = logging.INFO

    if level is not None:
        logger.setLevel(level)

    return logger


def set_level(level: int) -> None:
    """Apply a level to every logger created under the ``vk`` namespace."""
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name == "vk" or name.startswith("vk."):
            if isinstance(logger, logging.Logger):
                logger.setLevel(level)
