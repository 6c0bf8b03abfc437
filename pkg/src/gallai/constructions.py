"""Deterministic generators for the stock graph families.

Every generator fixes one labeling, so repeated calls produce byte-identical
graph6 encodings and the test fixtures stay stable.
"""

from __future__ import annotations

from itertools import combinations

from .errors import PreconditionError
from .graphs import Graph, bits

#: Edge count of the split-Petersen graph; governs the legal stretch ratios.
SPLIT_PETERSEN_EDGES = 15


def petersen() -> Graph:
    """Petersen graph with Kneser labels: vertex i is the i-th 2-subset of
    {0..4} in lexicographic order, adjacent when the subsets are disjoint."""
    pairs = list(combinations(range(5), 2))
    edges = [
        (i, j)
        for i in range(10)
        for j in range(i + 1, 10)
        if not set(pairs[i]) & set(pairs[j])
    ]
    return Graph(10, edges)


def split_petersen() -> tuple[Graph, frozenset[int]]:
    """The 12-vertex graph obtained from the Petersen graph by splitting one
    vertex into three pendant vertices, plus that pendant triple.

    Vertex 0 (the subset {0,1}) is the split vertex; its three former
    neighbors keep their (shifted) labels and each gains one fresh leaf.
    """
    p = petersen()
    old_neighbors = sorted(bits(p.adj[0]))
    edges = [(u - 1, v - 1) for u, v in p.edges() if u != 0 and v != 0]
    leaves = []
    for i, w in enumerate(old_neighbors):
        leaf = 9 + i
        leaves.append(leaf)
        edges.append((w - 1, leaf))
    return Graph(12, edges), frozenset(leaves)


def _pendant_edges(g: Graph, pendants: frozenset[int]) -> set[tuple[int, int]]:
    out = set()
    for v in pendants:
        (w,) = bits(g.adj[v])
        out.add((min(v, w), max(v, w)))
    return out


def stretched_split_petersen(p: int, q: int) -> Graph:
    """Split-Petersen with every pendant edge subdivided into a path of
    length ``q`` and every other edge into one of length ``p``.

    Requires ``p >= 2`` and ``q > 15*p`` so the long pendant arms dominate:
    the longest paths are then exactly the stretched copies of the longest
    paths joining two pendant vertices, and the girth grows to ``5*p``.
    """
    if p < 2:
        raise PreconditionError("stretch p must be at least 2")
    if q <= SPLIT_PETERSEN_EDGES * p:
        raise PreconditionError(f"stretch q must exceed {SPLIT_PETERSEN_EDGES}*p")
    from .graphs import subdivide_edges

    base, pendants = split_petersen()
    long_edges = _pendant_edges(base, pendants)
    lengths = {
        (u, v): (q if (u, v) in long_edges else p) for u, v in base.edges()
    }
    return subdivide_edges(base, lengths)


def clawfree_stretched_split_petersen(p: int, q: int) -> Graph:
    """Stretched split-Petersen with every cubic vertex expanded into a
    triangle, which removes all induced claws while keeping the family's
    longest-path structure."""
    from .graphs import replace_cubic_with_triangles

    g = stretched_split_petersen(p, q)
    cubic = [v for v in range(g.n) if g.degree(v) == 3]
    return replace_cubic_with_triangles(g, cubic)


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}, small side labeled 0..a-1."""
    if a < 1 or b < 1:
        raise PreconditionError("both sides need at least one vertex")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def bipartite_minus_matching(t: int) -> Graph:
    """K_{t,t+2} minus a matching saturating the side of size t."""
    if t < 1:
        raise PreconditionError("t must be at least 1")
    g = complete_bipartite(t, t + 2)
    drop = {(i, t + i) for i in range(t)}
    return Graph(g.n, [e for e in g.edges() if e not in drop])


def clique_star(k: int, t: int) -> tuple[Graph, frozenset[int]]:
    """Star of cliques: a hub k-clique joined to k distinguished vertices in
    each of k+2 leaf t-cliques.  Returns the graph and the hub.

    The hub is a cutset, so connectivity is exactly k; the longest paths
    traverse the hub and omit one whole leaf clique, making the hub exactly
    the set of vertices common to all of them.
    """
    if k < 1 or t < k:
        raise PreconditionError("need k >= 1 and t >= k")
    hub = list(range(k))
    edges = [(u, v) for u, v in combinations(hub, 2)]
    for i in range(k + 2):
        base = k + i * t
        leaf = list(range(base, base + t))
        edges += [(u, v) for u, v in combinations(leaf, 2)]
        for y in leaf[:k]:
            edges += [(s, y) for s in hub]
    return Graph(k + (k + 2) * t, edges), frozenset(hub)


def disjoint_triangles(t: int) -> Graph:
    """t disjoint triangles."""
    if t < 1:
        raise PreconditionError("t must be at least 1")
    edges = []
    for i in range(t):
        a = 3 * i
        edges += [(a, a + 1), (a, a + 2), (a + 1, a + 2)]
    return Graph(3 * t, edges)


def triangle_star(t: int) -> Graph:
    """Star whose t leaves are replaced by triangles, each attached to the
    center through a single corner; 3t+1 vertices."""
    if t < 1:
        raise PreconditionError("t must be at least 1")
    edges = []
    for i in range(t):
        a = 1 + 3 * i
        edges += [(a, a + 1), (a, a + 2), (a + 1, a + 2), (0, a)]
    return Graph(3 * t + 1, edges)


def linear_forest(sizes) -> Graph:
    """Disjoint union of paths with the given vertex counts."""
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise PreconditionError("component sizes must be positive")
    edges = []
    base = 0
    for s in sizes:
        edges += [(base + i, base + i + 1) for i in range(s - 1)]
        base += s
    return Graph(base, edges)


def path_graph(n: int) -> Graph:
    return linear_forest([n])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, list(combinations(range(n), 2)))
