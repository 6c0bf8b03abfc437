"""Pure-Python search kernels.

Same contract as the compiled extension: exact longest-path / longest-cycle
lengths and optimum vertex-set enumeration, plus maximum-independent-set size.
Subset DP handles small instances; beyond the DP cutoff a pruned DFS with a
reachability bound takes over.  Masks are plain Python ints, so any vertex
count the package allows works here, just slower than the compiled kernel.
"""

from __future__ import annotations

import time
from typing import Sequence

from ..errors import CapExceededError

BACKEND = "pure"

_DP_LIMIT = 20
_CHECK_EVERY = 4096


class _Ticker:
    """Periodic deadline check; raising keeps verdicts honest under budgets."""

    __slots__ = ("deadline", "count")

    def __init__(self, deadline: float):
        self.deadline = deadline
        self.count = 0

    def tick(self, amount: int = 1) -> None:
        if not self.deadline:
            return
        self.count += amount
        if self.count >= _CHECK_EVERY:
            self.count = 0
            if time.monotonic() > self.deadline:
                raise CapExceededError("time budget exceeded")


def _reach(adj: Sequence[int], start: int, allowed: int) -> int:
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def _lp_dp(adj, n, want_sets, max_sets, ticker):
    cur = {1 << v: 1 << v for v in range(n)}
    size = 1
    while True:
        nxt: dict[int, int] = {}
        for mask, endpoints in cur.items():
            e = endpoints
            while e:
                low = e & -e
                e ^= low
                ext = adj[low.bit_length() - 1] & ~mask
                while ext:
                    wb = ext & -ext
                    ext ^= wb
                    m2 = mask | wb
                    nxt[m2] = nxt.get(m2, 0) | wb
            ticker.tick()
        if not nxt:
            break
        cur = nxt
        size += 1
    if not want_sets:
        return size, None
    if len(cur) > max_sets:
        raise CapExceededError(f"{len(cur)} optimum sets exceed cap {max_sets}")
    return size, sorted(cur)


def _lp_dfs(adj, n, want_sets, max_sets, ticker):
    full = (1 << n) - 1
    best = 1
    out: set[int] = set()

    def extend(v: int, used: int, depth: int) -> None:
        nonlocal best
        ticker.tick()
        if depth > best:
            best = depth
            out.clear()
        if want_sets and depth == best:
            out.add(used)
            if len(out) > max_sets:
                raise CapExceededError(f"optimum-set count exceeds cap {max_sets}")
        ext = adj[v] & ~used
        while ext:
            wb = ext & -ext
            ext ^= wb
            w = wb.bit_length() - 1
            r = _reach(adj, wb, full & ~used)
            if depth + r.bit_count() >= best:
                extend(w, used | wb, depth + 1)

    for s in range(n):
        if want_sets and best == 1:
            out.add(1 << s)
        extend(s, 1 << s, 1)
    if not want_sets:
        return best, None
    return best, sorted(m for m in out if m.bit_count() == best)


def longest_path_length(adj, n, deadline: float = 0.0) -> int:
    if n == 0:
        return 0
    ticker = _Ticker(deadline)
    fn = _lp_dp if n <= _DP_LIMIT else _lp_dfs
    return fn(adj, n, False, 0, ticker)[0]


def longest_path_sets(adj, n, max_sets: int = 1_000_000, deadline: float = 0.0):
    if n == 0:
        return []
    ticker = _Ticker(deadline)
    fn = _lp_dp if n <= _DP_LIMIT else _lp_dfs
    return fn(adj, n, True, max_sets, ticker)[1]


def _lc_dp_root(adj, r, cap, ticker, emit):
    rb = 1 << r
    above = ~((rb << 1) - 1)
    cur = {rb: rb}
    size = 1
    while cur:
        nxt: dict[int, int] = {}
        extend = size < cap
        for mask, endpoints in cur.items():
            e = endpoints
            while e:
                low = e & -e
                e ^= low
                v = low.bit_length() - 1
                if size >= 3 and adj[v] & rb:
                    emit(size, mask)
                if extend:
                    ext = adj[v] & above & ~mask
                    while ext:
                        wb = ext & -ext
                        ext ^= wb
                        nxt[mask | wb] = nxt.get(mask | wb, 0) | wb
            ticker.tick()
        cur = nxt
        size += 1


def _lc_dfs_root(adj, r, cap, ticker, emit):
    rb = 1 << r
    allowed = ~((rb << 1) - 1)

    def extend(v: int, used: int, depth: int) -> None:
        ticker.tick()
        if depth >= 3 and adj[v] & rb:
            emit(depth, used)
        if depth >= cap:
            return
        ext = adj[v] & allowed & ~used
        while ext:
            wb = ext & -ext
            ext ^= wb
            w = wb.bit_length() - 1
            reach = _reach(adj, wb, (allowed & ~used) | rb)
            if reach & rb:
                extend(w, used | wb, depth + 1)

    extend(r, rb, 1)


def _for_each_cycle(adj, n, cap, ticker, emit):
    """Feed every cycle (size, vertex mask) with size <= cap to ``emit``.

    Cycles are rooted at their minimum vertex; one cycle may be emitted via
    several traversal orders, so ``emit`` must tolerate duplicates.
    """
    root_fn = _lc_dp_root if n <= _DP_LIMIT else _lc_dfs_root
    for r in range(n):
        root_fn(adj, r, cap, ticker, emit)


def longest_cycle_length(adj, n, deadline: float = 0.0) -> int:
    ticker = _Ticker(deadline)
    best = 0

    def emit(size, _mask):
        nonlocal best
        if size > best:
            best = size

    _for_each_cycle(adj, n, n, ticker, emit)
    return best


def longest_cycle_sets(adj, n, max_sets: int = 1_000_000, deadline: float = 0.0):
    ticker = _Ticker(deadline)
    best = 0
    out: set[int] = set()

    def emit(size, mask):
        nonlocal best
        if size > best:
            best = size
            out.clear()
        if size == best:
            out.add(mask)
            if len(out) > max_sets:
                raise CapExceededError(f"optimum-set count exceeds cap {max_sets}")

    _for_each_cycle(adj, n, n, ticker, emit)
    return sorted(out)


def longest_cycle_capped(adj, n, cap: int, deadline: float = 0.0):
    """Largest cycle with at most ``cap`` vertices: (size, least witness mask)."""
    if cap < 3:
        return 0, 0
    ticker = _Ticker(deadline)
    best = 0
    witness = 0

    def emit(size, mask):
        nonlocal best, witness
        if size > best or (size == best and mask < witness):
            best, witness = size, mask

    _for_each_cycle(adj, n, cap, ticker, emit)
    return best, witness


def mis_size(adj, n, deadline: float = 0.0) -> int:
    if n == 0:
        return 0
    ticker = _Ticker(deadline)
    best = 0
    # Greedy lower bound, ascending labels.
    free = (1 << n) - 1
    while free:
        low = free & -free
        best += 1
        free &= ~(adj[low.bit_length() - 1] | low)

    def cover_bound(cand: int) -> int:
        cover = 0
        c = cand
        while c:
            low = c & -c
            clique = low
            pool = c & adj[low.bit_length() - 1]
            while pool:
                u = pool & -pool
                clique |= u
                pool &= adj[u.bit_length() - 1]
            c &= ~clique
            cover += 1
        return cover

    def expand(cand: int, size: int) -> None:
        nonlocal best
        ticker.tick()
        if not cand:
            if size > best:
                best = size
            return
        if size + cover_bound(cand) <= best:
            return
        # Branch on the vertex with most candidate neighbors, lowest label first.
        v, vdeg = -1, -1
        c = cand
        while c:
            low = c & -c
            u = low.bit_length() - 1
            d = (adj[u] & cand).bit_count()
            if d > vdeg:
                v, vdeg = u, d
            c ^= low
        vb = 1 << v
        expand(cand & ~(adj[v] | vb), size + 1)
        expand(cand & ~vb, size)

    expand((1 << n) - 1, 0)
    return best
