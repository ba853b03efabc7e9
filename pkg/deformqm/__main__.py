"""Entry point for ``python -m deformqm`` and the console script."""
from __future__ import annotations

from collections.abc import MutableMapping
import json
import os
import sys

from .config import threads_from_env
from .const import THREAD_ENV_VARS
from .exceptions import DeformQMError


def cap_threads(environ: MutableMapping[str, str] = os.environ) -> int | None:
    """Export DEFORMQM_THREADS to the BLAS thread variables."""
    threads = threads_from_env(environ)
    if threads is not None:
        for var in THREAD_ENV_VARS:
            environ[var] = str(threads)
    return threads


def run() -> int:
    """Cap threads before numpy loads, then run the command line."""
    try:
        cap_threads()
    except DeformQMError as err:
        sys.stderr.write(json.dumps(err.as_dict()) + "\n")
        return err.exit_code

    from .cli import main

    return main()


if __name__ == "__main__":
    sys.exit(run())
