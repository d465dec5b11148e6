# Copyright (C) 2022 Anaconda, Inc
# SPDX-License-Identifier: BSD-3-Clause

import os
import sys
from collections.abc import Generator
from contextlib import contextmanager
from pathlib import Path
from typing import Optional, Union

from .exceptions import MonorelError

TOLERANCE_ENV_VAR = "MONOREL_TOL"


@contextmanager
def env_variable(key: str, value: str) -> Generator:
    """Temporarily set environment variable in a context manager."""
    old = os.environ.get(key, None)
    os.environ[key] = value

    yield

    if old is None:
        os.environ.pop(key, None)
    else:
        os.environ[key] = old


def resolve_tolerance(
    flag: Optional[float], spec_tol: Optional[float], default: float
) -> float:
    """Pick the tolerance for a command.

    Precedence is the command-line flag, then the ``tol`` field of the spec
    document, then the ``MONOREL_TOL`` environment variable and finally the
    built-in default.

    Raises:
        MonorelError if the environment variable is not a number or any
        candidate is negative

    """
    if flag is not None:
        tol = flag
    elif spec_tol is not None:
        tol = spec_tol
    elif os.environ.get(TOLERANCE_ENV_VAR):
        raw = os.environ[TOLERANCE_ENV_VAR]
        try:
            tol = float(raw)
        except ValueError:
            raise MonorelError(f"{TOLERANCE_ENV_VAR}={raw!r} is not a number.")
    else:
        tol = default

    if tol < 0:
        raise MonorelError(f"The tolerance must be nonnegative, got {tol}.")
    return tol


def read_text(source: Union[str, Path]) -> str:
    """Read a UTF-8 document from a path, or from stdin when given ``-``."""
    if str(source) == "-":
        return sys.stdin.read()

    path = Path(source)
    if not path.exists():
        raise MonorelError(f"No spec file was found at {path}.")
    return path.read_text(encoding="utf-8")
