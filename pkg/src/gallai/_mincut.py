"""Unit-capacity vertex flow on the split digraph.

Every vertex v becomes an arc v_in -> v_out of capacity 1; undirected edges
become arcs of effectively unlimited capacity between the splits.  Sources
attach to v_in (so terminals may be cut) or to v_out (so they may not), and
symmetrically for sinks.  Max flow then equals the maximum number of fully
vertex-disjoint terminal-to-terminal paths, and the saturated split arcs
crossing the residual cut give a matching minimum vertex separator.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .graphs import bits


class _FlowNet:
    def __init__(self, num_nodes: int):
        self.head: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def bfs_augment(self, s: int, t: int) -> bool:
        prev_arc = [-1] * len(self.head)
        prev_arc[s] = -2
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and prev_arc[v] == -1:
                    prev_arc[v] = a
                    queue.append(v)
        if prev_arc[t] == -1:
            return False
        v = t
        while v != s:
            a = prev_arc[v]
            self.cap[a] -= 1
            self.cap[a ^ 1] += 1
            v = self.to[a ^ 1]
        return True

    def residual_reachable(self, s: int) -> list[bool]:
        seen = [False] * len(self.head)
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.head[u]:
                v = self.to[a]
                if self.cap[a] > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return seen


def _build(
    adj: Sequence[int],
    n: int,
    sources: Iterable[int],
    sinks: Iterable[int],
    cut_terminals: bool,
    alive: int,
) -> tuple[_FlowNet, int, int]:
    # node ids: 2v = v_in, 2v+1 = v_out, then source, sink
    s, t = 2 * n, 2 * n + 1
    net = _FlowNet(2 * n + 2)
    big = n + 2
    for v in range(n):
        if alive & (1 << v):
            net.add(2 * v, 2 * v + 1, 1)
    for u in range(n):
        if not alive & (1 << u):
            continue
        for v in bits(adj[u] & alive):
            if v > u:
                net.add(2 * u + 1, 2 * v, big)
                net.add(2 * v + 1, 2 * u, big)
    for x in sources:
        if alive & (1 << x):
            net.add(s, 2 * x if cut_terminals else 2 * x + 1, big)
    for y in sinks:
        if alive & (1 << y):
            net.add(2 * y + 1 if cut_terminals else 2 * y, t, big)
    return net, s, t


def max_flow_value(
    adj: Sequence[int],
    n: int,
    sources: Iterable[int],
    sinks: Iterable[int],
    cut_terminals: bool,
    alive: int | None = None,
) -> int:
    if alive is None:
        alive = (1 << n) - 1
    net, s, t = _build(adj, n, sources, sinks, cut_terminals, alive)
    flow = 0
    while net.bfs_augment(s, t):
        flow += 1
    return flow


def local_vertex_connectivity(adj: Sequence[int], n: int, u: int, w: int) -> int:
    """Maximum number of internally disjoint u-w paths (u, w nonadjacent)."""
    return max_flow_value(adj, n, (u,), (w,), cut_terminals=False)


def separator_and_connector(
    adj: Sequence[int],
    n: int,
    sources: Sequence[int],
    sinks: Sequence[int],
) -> tuple[int, list[int], list[tuple[int, ...]]]:
    """Minimum separator (allowed to use terminal vertices) and a maximum
    family of fully vertex-disjoint source-to-sink paths, of equal size.

    The separator returned is the lexicographically least minimum one; the
    connector paths are trimmed so interiors avoid both terminal sets.
    """
    full = (1 << n) - 1
    net, s, t = _build(adj, n, sources, sinks, True, full)
    size = 0
    while net.bfs_augment(s, t):
        size += 1

    # Lexicographically least minimum separator, by greedy inclusion tests.
    src_set = set(sources)
    snk_set = set(sinks)
    separator: list[int] = []
    alive = full
    need = size
    for v in range(n):
        if need == 0:
            break
        if not alive & (1 << v):
            continue
        rest = alive & ~(1 << v)
        if max_flow_value(adj, n, sources, sinks, True, rest) == need - 1:
            separator.append(v)
            alive = rest
            need -= 1
    assert need == 0 and len(separator) == size

    # Flow decomposition into unit paths, then trim each to its last source
    # vertex / first sink vertex so interiors avoid the terminal sets.
    used_arc = [False] * len(net.to)
    paths: list[tuple[int, ...]] = []
    for a0 in net.head[s]:
        if a0 % 2 or net.cap[a0 ^ 1] == 0:
            continue  # skip reverse arcs and unused source arcs
        node = net.to[a0]
        verts: list[int] = []
        while node != t:
            if node % 2 == 0:
                verts.append(node // 2)
            nxt = -1
            for a in net.head[node]:
                if a % 2 == 0 and not used_arc[a] and net.cap[a ^ 1] > 0:
                    nxt = a
                    break
            assert nxt >= 0, "flow decomposition ran out of arcs"
            used_arc[nxt] = True
            node = net.to[nxt]
        last_src = max(i for i, v in enumerate(verts) if v in src_set)
        first_snk = min(
            i for i, v in enumerate(verts) if v in snk_set and i >= last_src
        )
        paths.append(tuple(verts[last_src : first_snk + 1]))
    assert len(paths) == size
    return size, separator, paths
