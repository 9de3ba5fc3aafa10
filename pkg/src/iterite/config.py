"""Resource caps.

Every construction checks the active caps and raises rather than truncating.
Caps are process-wide; ``using_caps`` swaps them temporarily.
"""

from __future__ import annotations

import os
import threading
from contextlib import contextmanager
from dataclasses import dataclass, replace

ENV_MAX_GROUP_ORDER = "ITERITE_MAX_GROUP_ORDER"


@dataclass(frozen=True)
class Caps:
    max_group_order: int = 10_000
    max_points: int = 1_000
    max_depth: int = 16

    @classmethod
    def from_env(cls, environ=None) -> "Caps":
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_MAX_GROUP_ORDER)
        if raw is None:
            return cls()
        return cls(max_group_order=int(raw))


_lock = threading.Lock()
_current = Caps()


def get_caps() -> Caps:
    return _current


def set_caps(caps: Caps | None = None, **overrides) -> Caps:
    """Install new caps and return the previous ones."""
    global _current
    with _lock:
        previous = _current
        _current = replace(caps or previous, **overrides)
    return previous


@contextmanager
def using_caps(caps: Caps | None = None, **overrides):
    previous = set_caps(caps, **overrides)
    try:
        yield get_caps()
    finally:
        set_caps(previous)
