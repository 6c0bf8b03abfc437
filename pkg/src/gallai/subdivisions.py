"""Patterns (small multigraphs) and maximum subdivision search.

A subdivision of a pattern places its vertices injectively in the host and
routes every pattern edge as a host path, all routes internally disjoint from
each other and from the placed vertices.  A maximum subdivision maximizes the
total number of host vertices used.  The single-edge pattern recovers longest
paths and the doubled edge recovers longest cycles; those two cases are
delegated to the search kernels, while general patterns use an exact
backtracking embedder.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import CapExceededError, PreconditionError
from .graphs import Graph, bits, mask_of
from .paths import (
    DEFAULT_SET_CAP,
    lexmin_longest_path,
    longest_cycle_length,
    longest_path_length,
    enumerate_longest_cycles,
    enumerate_longest_paths,
)

#: Host-size cap for the generic embedder (exact, exponential).
GENERIC_HOST_CAP = 24


@dataclass(frozen=True)
class MultigraphPattern:
    """Connected multigraph whose subdivisions are sought.

    ``edges`` may repeat a pair (parallel edges) and may contain loops
    ``(v, v)``.  Vertex labels are ``0..num_vertices-1``.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 1 or not self.edges:
            raise PreconditionError("pattern needs >= 1 vertex and >= 1 edge")
        norm = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        object.__setattr__(self, "edges", norm)
        for u, v in norm:
            if not (0 <= u < self.num_vertices and v < self.num_vertices):
                raise PreconditionError(f"pattern edge ({u},{v}) out of range")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w in self.edges)

    def is_connected(self) -> bool:
        seen = {0}
        grew = True
        while grew:
            grew = False
            for u, v in self.edges:
                if (u in seen) != (v in seen):
                    seen.update((u, v))
                    grew = True
        return len(seen) == self.num_vertices


PATH_PATTERN = MultigraphPattern(2, ((0, 1),))
CYCLE_PATTERN = MultigraphPattern(2, ((0, 1), (0, 1)))


def resolve_pattern(pattern) -> MultigraphPattern:
    """Accept a pattern object or the names ``path`` / ``cycle``."""
    if isinstance(pattern, MultigraphPattern):
        return pattern
    if pattern == "path":
        return PATH_PATTERN
    if pattern == "cycle":
        return CYCLE_PATTERN
    raise PreconditionError(f"unknown pattern {pattern!r}")


@dataclass(frozen=True)
class SubdivisionEmbedding:
    """Branch placement plus one host route per pattern edge.

    Routes run between the placed endpoints; loop routes start and end at the
    same placed vertex.
    """

    pattern: MultigraphPattern
    branch_map: tuple[int, ...]
    edge_routes: tuple[tuple[int, ...], ...]

    def vertex_set(self) -> frozenset[int]:
        out = set(self.branch_map)
        for route in self.edge_routes:
            out.update(route)
        return frozenset(out)

    @property
    def size(self) -> int:
        return len(self.vertex_set())


def validate_embedding(g: Graph, emb: SubdivisionEmbedding) -> None:
    """Raise unless the embedding is a valid subdivision in ``g``."""
    pat = emb.pattern
    if len(set(emb.branch_map)) != pat.num_vertices:
        raise PreconditionError("branch map is not injective")
    seen_interior: set[int] = set()
    length_one: set[tuple[int, int]] = set()
    for (u, v), route in zip(pat.edges, emb.edge_routes):
        a, b = emb.branch_map[u], emb.branch_map[v]
        if u == v:
            if len(route) < 4 or route[0] != a or route[-1] != a:
                raise PreconditionError("loop route must be a closed walk of length >= 3")
            interior = route[1:-1]
        else:
            if route[0] != a or route[-1] != b:
                raise PreconditionError("route endpoints disagree with branch map")
            interior = route[1:-1]
            if len(route) == 2:
                if (u, v) in length_one:
                    raise PreconditionError("two parallel routes share one host edge")
                length_one.add((u, v))
        walk = route if len(set(route)) == len(route) else route[:-1]
        if len(set(walk)) != len(walk):
            raise PreconditionError("route repeats a vertex")
        for x, y in zip(route, route[1:]):
            if not g.has_edge(x, y):
                raise PreconditionError(f"route uses the non-edge ({x},{y})")
        for x in interior:
            if x in seen_interior or x in set(emb.branch_map):
                raise PreconditionError("route interiors are not disjoint")
            seen_interior.add(x)


def _generic_search(g: Graph, pat: MultigraphPattern, want_sets: bool, max_sets: int):
    """Exact embedder: best size, one best embedding, all best vertex sets."""
    if g.n > GENERIC_HOST_CAP:
        raise CapExceededError(
            f"generic subdivision search capped at {GENERIC_HOST_CAP} host vertices"
        )
    # Route high-degree pattern edges first: long routes get placed while the
    # host is still empty, which tightens the free-vertex bound sooner.
    edge_order = sorted(
        range(pat.num_edges),
        key=lambda i: -(pat.degree(pat.edges[i][0]) + pat.degree(pat.edges[i][1])),
    )
    best = 0
    best_emb: SubdivisionEmbedding | None = None
    best_sets: set[frozenset[int]] = set()
    routes: dict[int, tuple[int, ...]] = {}

    def routes_done(used: int, branch: tuple[int, ...]):
        nonlocal best, best_emb, best_sets
        size = used.bit_count()
        if size > best:
            best = size
            best_emb = None
            best_sets.clear()
        if size == best:
            if best_emb is None:
                best_emb = SubdivisionEmbedding(
                    pat, branch, tuple(routes[i] for i in range(pat.num_edges))
                )
            if want_sets:
                best_sets.add(frozenset(bits(used)))
                if len(best_sets) > max_sets:
                    raise CapExceededError(
                        f"optimum-set count exceeds cap {max_sets}"
                    )

    def route_edge(idx: int, used: int, branch: tuple[int, ...], ones: set):
        if idx == len(edge_order):
            routes_done(used, branch)
            return
        ei = edge_order[idx]
        u, v = pat.edges[ei]
        a, b = branch[u], branch[v]
        is_loop = u == v

        def walk(cur: int, interior: list[int], occ: int):
            # close the route?
            if is_loop:
                if len(interior) >= 2 and g.has_edge(cur, a):
                    routes[ei] = (a, *interior, a)
                    route_edge(idx + 1, occ, branch, ones)
                    del routes[ei]
            else:
                if g.has_edge(cur, b):
                    if interior or (u, v) not in ones:
                        if not interior:
                            ones.add((u, v))
                        routes[ei] = (a, *interior, b)
                        route_edge(idx + 1, occ, branch, ones)
                        del routes[ei]
                        if not interior:
                            ones.discard((u, v))
            for w in bits(g.adj[cur] & ~occ):
                if w == b and not is_loop:
                    continue  # handled by the closing test above
                interior.append(w)
                walk(w, interior, occ | (1 << w))
                interior.pop()

        walk(a, [], used)

    branch_mask = 0
    candidates = [
        [c for c in range(g.n) if g.degree(c) >= pat.degree(p)]
        for p in range(pat.num_vertices)
    ]
    for assignment in permutations(range(g.n), pat.num_vertices):
        if any(assignment[p] not in candidates[p] for p in range(pat.num_vertices)):
            continue
        branch_mask = mask_of(assignment)
        route_edge(0, branch_mask, tuple(assignment), set())
    return best, best_emb, frozenset(best_sets)


def _cycle_sequence(g: Graph, vset: frozenset[int]) -> tuple[int, ...]:
    """Spanning cycle sequence of a vertex set known to carry one."""
    verts = sorted(vset)
    start = verts[0]
    allowed = mask_of(verts)

    def extend(v: int, used: int, seq: list[int]):
        if len(seq) == len(verts):
            return seq if g.has_edge(v, start) else None
        for w in bits(g.adj[v] & allowed & ~used):
            seq.append(w)
            got = extend(w, used | (1 << w), seq)
            if got:
                return got
            seq.pop()
        return None

    out = extend(start, 1 << start, [start])
    assert out is not None, "vertex set does not carry a spanning cycle"
    return tuple(out)


def maximum_subdivision(g: Graph, pattern, *, generic: bool = False):
    """A maximum subdivision embedding of the pattern, or None if there is
    no subdivision at all."""
    pat = resolve_pattern(pattern)
    if not generic and pat == PATH_PATTERN:
        if longest_path_length(g) < 2:
            return None
        seq = lexmin_longest_path(g)
        return SubdivisionEmbedding(pat, (seq[0], seq[-1]), (seq,))
    if not generic and pat == CYCLE_PATTERN:
        sets = enumerate_longest_cycles(g, max_sets=DEFAULT_SET_CAP)
        if not sets:
            return None
        seq = _cycle_sequence(g, min(sets, key=sorted))
        route_a = seq[:2]
        route_b = (seq[0],) + tuple(reversed(seq[2:])) + (seq[1],)
        return SubdivisionEmbedding(pat, (seq[0], seq[1]), (route_a, route_b))
    _best, emb, _sets = _generic_search(g, pat, want_sets=False, max_sets=0)
    return emb


def maximum_subdivision_size(g: Graph, pattern) -> int | None:
    pat = resolve_pattern(pattern)
    if pat == PATH_PATTERN:
        size = longest_path_length(g)
        return size if size >= 2 else None
    if pat == CYCLE_PATTERN:
        return longest_cycle_length(g)
    best, emb, _ = _generic_search(g, pat, want_sets=False, max_sets=0)
    return best if emb is not None else None


def enumerate_maximum_subdivision_sets(
    g: Graph, pattern, max_sets: int = DEFAULT_SET_CAP
) -> tuple[int | None, frozenset[frozenset[int]]]:
    """(optimum size, all optimum vertex sets); (None, empty) if none exist."""
    pat = resolve_pattern(pattern)
    if pat == PATH_PATTERN:
        if longest_path_length(g) < 2:
            return None, frozenset()
        sets = enumerate_longest_paths(g, max_sets=max_sets)
        return len(next(iter(sets))), sets
    if pat == CYCLE_PATTERN:
        sets = enumerate_longest_cycles(g, max_sets=max_sets)
        if not sets:
            return None, frozenset()
        return len(next(iter(sets))), sets
    best, emb, sets = _generic_search(g, pat, want_sets=True, max_sets=max_sets)
    if emb is None:
        return None, frozenset()
    return best, sets