#!/usr/bin/env python3
"""
Stack-sorting lab CLI - sort, orbit, verify, enumerate and families subcommands.
"""

import os
import sys

_here = os.path.dirname(os.path.abspath(__file__))
for _path in (os.path.join(_here, '..', 'engine-lite'), _here):
    if _path not in sys.path:
        sys.path.insert(0, _path)

from sortlab.commands import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
