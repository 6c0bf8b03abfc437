"""Search-kernel backend selection.

The compiled extension is preferred when present; the pure-Python module is a
drop-in fallback with identical results.  Set ``GALLAI_PURE_KERNELS=1`` to
force the fallback (used by the backend benchmark and parity tests).
"""

from __future__ import annotations

import os

from . import pure as _pure

if os.environ.get("GALLAI_PURE_KERNELS") == "1":
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

#: Single-word bitsets in the compiled MIS kernel.
_MIS_WORD_LIMIT = 64


def backend() -> str:
    return _impl.BACKEND


def longest_path_length(adj, n, deadline: float = 0.0) -> int:
    return _impl.longest_path_length(adj, n, deadline)


def longest_path_sets(adj, n, max_sets: int = 1_000_000, deadline: float = 0.0):
    return _impl.longest_path_sets(adj, n, max_sets, deadline)


def longest_cycle_length(adj, n, deadline: float = 0.0) -> int:
    return _impl.longest_cycle_length(adj, n, deadline)


def longest_cycle_sets(adj, n, max_sets: int = 1_000_000, deadline: float = 0.0):
    return _impl.longest_cycle_sets(adj, n, max_sets, deadline)


def longest_cycle_capped(adj, n, cap: int, deadline: float = 0.0):
    return _impl.longest_cycle_capped(adj, n, cap, deadline)


def mis_size(adj, n, deadline: float = 0.0) -> int:
    if n > _MIS_WORD_LIMIT:
        return _pure.mis_size(adj, n, deadline)
    return _impl.mis_size(adj, n, deadline)
