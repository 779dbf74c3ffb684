import os
from functools import partial
from .config import root, get, put, var, setting

root = partial(root, os.path.abspath(__file__), '../')
get = partial(get, root=root)
put = partial(put, root=root)

# set by --config; None means config/config.yaml under the lab root
_path: str | None = None


def use(path: str | None):
    ''' points every lookup at an explicit config file '''
    global _path
    _path = path


def current() -> dict:
    return get(path=_path)


setting = partial(setting, get=current)

DEFAULT_PATTERNS = '123,132'
DEFAULT_FORMAT = 'csv'
DEFAULT_LOGGING_LEVEL = 'warning'


def patterns(flag: str = None) -> str:
    return setting('patterns', flag, default=DEFAULT_PATTERNS, cast=str)


def threads(flag: int = None) -> int | None:
    ''' None defers to the engine default (physical cores) '''
    return setting('threads', flag, cast=int)


def ceiling(flag: int = None) -> int | None:
    return setting('ceiling', flag, cast=int)


def reportFormat(flag: str = None) -> str:
    return setting('format', flag, default=DEFAULT_FORMAT, cast=str).lower()


def out(flag: str = None) -> str | None:
    return setting('out', flag, cast=str)


def archive(flag: str = None) -> str | None:
    return setting('archive', flag, cast=str)


def loggingLevel(flag: str = None) -> str:
    return setting('logging level', flag, default=DEFAULT_LOGGING_LEVEL, cast=str).lower()
