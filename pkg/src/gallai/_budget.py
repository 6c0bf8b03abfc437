"""Cooperative per-call time budgets.

Exact searches are exponential in the worst case; campaign runners wrap each
graph evaluation in ``time_budget`` so a hard instance yields a distinct
"cap exceeded" verdict instead of a silent stall.  The deadline travels via a
context variable so public signatures stay clean.
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from contextvars import ContextVar

_DEADLINE: ContextVar[float] = ContextVar("gallai_deadline", default=0.0)


def current_deadline() -> float:
    """Monotonic-clock deadline for the current context, 0.0 when unset."""
    return _DEADLINE.get()


@contextmanager
def time_budget(milliseconds: float | None):
    """Run the body under a wall-clock budget (``None`` disables)."""
    if milliseconds is None:
        yield
        return
    token = _DEADLINE.set(time.monotonic() + milliseconds / 1000.0)
    try:
        yield
    finally:
        _DEADLINE.reset(token)
