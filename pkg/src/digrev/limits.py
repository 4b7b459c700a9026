"""Size caps for the exponential-time operations.

Defaults can be overridden process-wide through the ``DIGREV_LIMITS``
environment variable, a comma-separated list of ``key=value`` pairs, e.g.
``DIGREV_LIMITS=chi_vertices=24,cert_vertices=10,oracle_edges=12``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import InputError

ENV_VAR = "DIGREV_LIMITS"


@dataclass(frozen=True)
class Limits:
    chi_vertices: int = 20
    cert_vertices: int = 9
    oracle_edges: int = 10


def default_limits() -> Limits:
    """Built-in caps, adjusted by ``DIGREV_LIMITS`` when set."""
    lim = Limits()
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return lim
    known = {f.name for f in fields(Limits)}
    overrides = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in known:
            raise InputError(f"{ENV_VAR}: unknown entry {item!r} (expected key=value with key in {sorted(known)})")
        try:
            parsed = int(value.strip())
        except ValueError:
            raise InputError(f"{ENV_VAR}: value of {key!r} is not an integer") from None
        if parsed < 0:
            raise InputError(f"{ENV_VAR}: {key} must be nonnegative")
        overrides[key] = parsed
    return replace(lim, **overrides)
