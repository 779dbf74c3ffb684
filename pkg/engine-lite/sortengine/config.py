"""
Engine configuration - defaults the lab can override through the environment
"""
import os

import psutil

DEFAULT_CEILING = 11


def var(name: str, default=None):
    ''' reads an engine setting from the environment '''
    return os.environ.get(f'SORTLAB_{name.upper()}', default)


def ceiling() -> int:
    """Largest n for which full S_n scans run without an explicit override"""
    return int(var('ceiling', DEFAULT_CEILING))


def threads() -> int:
    """Worker count for sharded scans, defaults to the physical core count"""
    configured = var('threads')
    if configured:
        return max(1, int(configured))
    return max(1, psutil.cpu_count(logical=False) or psutil.cpu_count() or 1)
