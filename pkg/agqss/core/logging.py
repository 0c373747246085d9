from __future__ import annotations

import logging
import sys
from logging.config import fileConfig

from agqss.core.config import Settings, get_settings

LOG_FORMAT = "%(levelname)-5.5s [%(name)s] %(message)s"


def setup_logging(settings: Settings | None = None) -> None:
    settings = settings or get_settings()

    # logging.ini when present, plain stderr handler otherwise
    if settings.logging_config is not None and settings.logging_config.is_file():
        fileConfig(settings.logging_config, disable_existing_loggers=False)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root = logging.getLogger()
        root.handlers[:] = [handler]

    logging.getLogger().setLevel(settings.log_level.upper())
