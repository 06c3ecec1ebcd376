"""Logging setup for the g1 command line."""

import logging

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "genusone-rich"


def configure_logging(verbose: bool = False) -> logging.Logger:
    """
    Attach a rich handler to the package logger.

    Calling this more than once only updates the level.

    Args:
        verbose: Log at INFO instead of WARNING

    Returns:
        The configured ``genusone`` logger
    """
    logger = logging.getLogger("genusone")
    logger.setLevel(logging.INFO if verbose else logging.WARNING)

    if not any(h.get_name() == _HANDLER_NAME for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=False,
        )
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
        logger.propagate = False

    return logger
