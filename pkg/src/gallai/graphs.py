"""Simple undirected graphs on dense integer labels, plus classical invariants.

Adjacency is stored as one Python-int bitmask per vertex, which keeps
membership O(1), makes induced subgraphs and set algebra cheap, and feeds the
search kernels directly.  Everything here is immutable and safe to share
across worker processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from ._budget import current_deadline
from ._kernel import mis_size
from .errors import PreconditionError

#: Hard cap on vertex count.  Every algorithm in this package is an exact
#: exponential search; the cap keeps instance sizes in the regime the fixtures
#: and corpora actually exercise (the largest stock construction has 132
#: vertices).
MAX_VERTICES = 256


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph with vertices ``0..n-1``.

    ``adj[v]`` is the neighbor bitmask of ``v``.  No self-loops; adjacency is
    symmetric by construction.
    """

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0 or n > MAX_VERTICES:
            raise PreconditionError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        n = len(adj)
        if n > MAX_VERTICES:
            raise PreconditionError(f"vertex count {n} exceeds {MAX_VERTICES}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & (1 << v):
                raise PreconditionError(f"self-loop at vertex {v}")
            if row & ~full:
                raise PreconditionError(f"adjacency row {v} references vertices >= {n}")
        for v, row in enumerate(adj):
            for w in bits(row):
                if not adj[w] & (1 << v):
                    raise PreconditionError(f"asymmetric adjacency between {v} and {w}")
        g.n = n
        g.adj = tuple(adj)
        return g

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                yield (u, u + 1 + v)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices`` plus the dense-relabeling map.

    Returns ``(h, labels)`` where ``labels[i]`` is the original label of the
    subgraph vertex ``i`` (labels are sorted ascending).
    """
    labels = sorted(set(vertices))
    index = {v: i for i, v in enumerate(labels)}
    adj = [0] * len(labels)
    for i, v in enumerate(labels):
        for w in bits(g.adj[v]):
            j = index.get(w)
            if j is not None:
                adj[i] |= 1 << j
    return Graph.from_adjacency(adj), labels


def remove_vertices(g: Graph, drop: Iterable[int]) -> tuple[Graph, list[int]]:
    dropped = set(drop)
    return induced_subgraph(g, (v for v in range(g.n) if v not in dropped))


def _reach_mask(adj: Sequence[int], start_mask: int, allowed: int) -> int:
    seen = start_mask & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components ordered by their minimum vertex."""
    out = []
    remaining = g.vertex_mask
    while remaining:
        start = remaining & -remaining
        comp = _reach_mask(g.adj, start, remaining)
        out.append(frozenset(bits(comp)))
        remaining &= ~comp
    return out


def component_masks(g: Graph, allowed: int | None = None) -> list[int]:
    """Component bitmasks of the subgraph induced on ``allowed`` (default all)."""
    remaining = g.vertex_mask if allowed is None else allowed
    out = []
    while remaining:
        start = remaining & -remaining
        comp = _reach_mask(g.adj, start, remaining)
        out.append(comp)
        remaining &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return _reach_mask(g.adj, 1, g.vertex_mask) == g.vertex_mask


def alpha(g: Graph) -> int:
    """Independence number, by exact branch and bound."""
    return mis_size(g.adj, g.n, deadline=current_deadline())


def _alpha_within(g: Graph, allowed: int) -> int:
    sub, _ = induced_subgraph(g, bits(allowed))
    return mis_size(sub.adj, sub.n, deadline=current_deadline())


def max_independent_set(g: Graph) -> frozenset[int]:
    """Lexicographically least maximum independent set."""
    target = alpha(g)
    chosen: list[int] = []
    candidates = g.vertex_mask
    need = target
    for v in range(g.n):
        if need == 0:
            break
        if not candidates & (1 << v):
            continue
        rest = candidates & ~g.adj[v] & ~((1 << (v + 1)) - 1)
        if 1 + _alpha_within(g, rest) >= need:
            chosen.append(v)
            candidates = rest
            need -= 1
        else:
            candidates &= ~(1 << v)
    assert len(chosen) == target
    return frozenset(chosen)


def kappa(g: Graph) -> int:
    """Exact vertex connectivity.

    Complete graphs give n-1; disconnected graphs and single vertices give 0.
    Otherwise the minimum over nonadjacent pairs of the local vertex cut,
    computed by unit-capacity flow with vertex splitting.
    """
    from ._mincut import local_vertex_connectivity

    if g.n <= 1 or not is_connected(g):
        return 0
    if g.is_complete():
        return g.n - 1
    best = g.n - 1
    for u in range(g.n):
        others = g.vertex_mask & ~g.adj[u] & ~((1 << (u + 1)) - 1)
        for w in bits(others):
            best = min(best, local_vertex_connectivity(g.adj, g.n, u, w))
    return best


def is_biconnected(g: Graph) -> bool:
    """True iff g is 2-connected (n >= 3, connected, no cut vertex)."""
    if g.n < 3 or not is_connected(g):
        return False
    return not blocks(g).cut_vertices


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; ``math.inf`` for forests."""
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        dist[root] = 0
        frontier = [root]
        while frontier and 2 * dist[frontier[0]] < best - 1:
            nxt = []
            for u in frontier:
                for w in bits(g.adj[u]):
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
                    elif dist[w] >= dist[u]:
                        # Non-tree edge closes a cycle through the BFS root.
                        best = min(best, dist[u] + dist[w] + 1)
            frontier = nxt
    return best


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal 2-connected subgraphs, bridges, or isolated vertices),
    cut vertices, and the block/cut-vertex incidences of the block tree."""

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    tree_edges: tuple[tuple[int, int], ...]  # (block index, cut vertex)


def blocks(g: Graph) -> BlockDecomposition:
    n = g.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    block_sets: list[set[int]] = []
    cut: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    for root in range(n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            block_sets.append({root})
            continue
        root_children = 0
        stack = [(root, iter(bits(g.adj[root])))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    if v == root:
                        root_children += 1
                    parent[w] = v
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(bits(g.adj[w]))))
                    advanced = True
                    break
                if w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    # u closes a block; pop edges through the tree edge (u, v).
                    blk: set[int] = set()
                    while True:
                        a, b = edge_stack.pop()
                        blk.add(a)
                        blk.add(b)
                        if (a, b) == (u, v):
                            break
                    block_sets.append(blk)
                    if u != root or root_children > 1:
                        cut.add(u)

    order = sorted(range(len(block_sets)), key=lambda i: sorted(block_sets[i]))
    ordered = tuple(frozenset(block_sets[i]) for i in order)
    tree = tuple(
        (bi, c) for bi, blk in enumerate(ordered) for c in sorted(blk & cut)
    )
    return BlockDecomposition(ordered, frozenset(cut), tree)


#: Backtracking-size cap for induced-subgraph containment tests.
PATTERN_CAP = 12


def induced_contains(g: Graph, h: Graph) -> bool:
    """True iff some injection of V(h) into V(g) preserves edges and non-edges."""
    if h.n > PATTERN_CAP:
        raise PreconditionError(f"pattern on {h.n} vertices exceeds cap {PATTERN_CAP}")
    if h.n > g.n:
        return False
    order = sorted(range(h.n), key=lambda v: (-h.degree(v), v))
    # prior[i] = pattern vertices already placed when order[i] is placed
    prior = [[j for j in order[:i]] for i in range(h.n)]
    image = [0] * h.n  # pattern vertex -> host vertex

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        dv = h.degree(v)
        for c in range(g.n):
            cb = 1 << c
            if used & cb or g.adj[c].bit_count() < dv:
                continue
            ok = True
            for p in prior[i]:
                if bool(g.adj[c] & (1 << image[p])) != h.has_edge(v, p):
                    ok = False
                    break
            if ok:
                image[v] = c
                if place(i + 1, used | cb):
                    return True
        return False

    return place(0, 0)


def is_linear_forest(h: Graph) -> bool:
    """True iff every component of h is a path (acyclic, max degree <= 2)."""
    if h.max_degree() > 2:
        return False
    return h.edge_count == h.n - len(components(h))


def linear_forest_profile(h: Graph) -> tuple[int, ...]:
    """Component sizes of a linear forest, sorted descending."""
    if not is_linear_forest(h):
        raise PreconditionError("not a linear forest")
    return tuple(sorted((len(c) for c in components(h)), reverse=True))


def subdivide_edges(g: Graph, lengths: Mapping[tuple[int, int], int]) -> Graph:
    """Replace each edge by a path of the mapped length through fresh vertices.

    Edges absent from ``lengths`` keep length 1.  Fresh labels are assigned in
    sorted edge order, so the construction is deterministic.
    """
    norm: dict[tuple[int, int], int] = {}
    for (u, v), length in lengths.items():
        a, b = min(u, v), max(u, v)
        if not (0 <= a < g.n and b < g.n) or not g.adj[a] & (1 << b):
            raise PreconditionError(f"({u},{v}) is not an edge of the graph")
        if length < 1:
            raise PreconditionError(f"length {length} for edge ({u},{v}) must be >= 1")
        norm[(a, b)] = length
    edges: list[tuple[int, int]] = []
    fresh = g.n
    for u, v in sorted(g.edges()):
        length = norm.get((u, v), 1)
        chain = [u] + list(range(fresh, fresh + length - 1)) + [v]
        fresh += length - 1
        edges.extend(zip(chain, chain[1:]))
    return Graph(fresh, edges)


def replace_cubic_with_triangles(g: Graph, cubic: Iterable[int]) -> Graph:
    """Expand each listed degree-3 vertex into a triangle, its three former
    edges landing on distinct triangle corners."""
    chosen = sorted(set(cubic))
    for w in chosen:
        if g.degree(w) != 3:
            raise PreconditionError(f"vertex {w} has degree {g.degree(w)}, not 3")
    keep = [v for v in range(g.n) if v not in set(chosen)]
    new_label = {v: i for i, v in enumerate(keep)}
    corner_base = {}
    next_label = len(keep)
    for w in chosen:
        corner_base[w] = next_label
        next_label += 3

    def endpoint(v: int, other: int) -> int:
        """Label of v's end of the former edge (v, other)."""
        if v in corner_base:
            idx = sorted(bits(g.adj[v])).index(other)
            return corner_base[v] + idx
        return new_label[v]

    edges = [(endpoint(u, v), endpoint(v, u)) for u, v in g.edges()]
    for w in chosen:
        b = corner_base[w]
        edges += [(b, b + 1), (b, b + 2), (b + 1, b + 2)]
    return Graph(next_label, edges)
