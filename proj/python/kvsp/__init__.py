"""Python bindings for the kvsp core library."""

import json as _json

from . import _core
from ._core import (
    Error,
    catalecticant,
    cover_report,
    group_order,
    klein_pair,
    orbit_sizes,
    reconstruct,
    sample_p2,
    sample_p3,
    stabilizer_orders,
    tangent_nullity,
    verify,
)

__all__ = [
    "Error",
    "catalecticant",
    "cover_report",
    "group_order",
    "klein_pair",
    "orbit_sizes",
    "reconstruct",
    "run",
    "sample_p2",
    "sample_p3",
    "stabilizer_orders",
    "tangent_nullity",
    "verify",
]


def run(command, **options):
    """Run a CLI command in-process; returns (exit_code, document)."""
    code, text = _core.run(command, **options)
    return code, _json.loads(text)
