"""Jacobi matrices with power asymptotics: classification, spectra and growth."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, parse_descriptor as _parse_descriptor


def descriptor(**fields):
    """Descriptor from keyword fields (beta1, beta2, x0, ..., order)."""
    return _parse_descriptor(_json.dumps(fields))
