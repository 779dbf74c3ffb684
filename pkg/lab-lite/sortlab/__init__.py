import logging
import sys

from sortlab import config

LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
    'critical': logging.CRITICAL,
}


def setup_logging(level: str | None = None) -> None:
    ''' stderr only, stdout carries command output '''
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_sortlab', False):
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        '%(asctime)s %(levelname)s %(name)s: %(message)s'))
    handler._sortlab = True
    root.addHandler(handler)
    root.setLevel(LEVELS.get(config.loggingLevel(level), logging.WARNING))


setup_logging()

VERSION = 'v1.0.0'
SCHEMA_VERSION = 1
