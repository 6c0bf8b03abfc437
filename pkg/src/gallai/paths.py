"""Exact longest-path and longest-cycle machinery.

Lengths are counted in vertices throughout.  Enumerations return vertex sets
(two orientations of one path are a single set), which is what transversal
computations consume.  Fibers are longest paths under endpoint constraints,
with a lexicographic tie-break so downstream behavior is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernel
from ._budget import current_deadline
from .errors import PreconditionError
from .graphs import Graph, bits, component_masks, mask_of

DEFAULT_SET_CAP = 1_000_000


def _sets_from_masks(masks) -> frozenset[frozenset[int]]:
    return frozenset(frozenset(bits(m)) for m in masks)


def longest_path_length(g: Graph) -> int:
    """Number of vertices in a longest path."""
    return _kernel.longest_path_length(g.adj, g.n, deadline=current_deadline())


def enumerate_longest_paths(
    g: Graph, max_sets: int = DEFAULT_SET_CAP
) -> frozenset[frozenset[int]]:
    """Vertex sets of all longest paths, deduplicated."""
    masks = _kernel.longest_path_sets(
        g.adj, g.n, max_sets=max_sets, deadline=current_deadline()
    )
    return _sets_from_masks(masks)


def longest_path_masks(g: Graph, max_sets: int = DEFAULT_SET_CAP) -> list[int]:
    """Same as :func:`enumerate_longest_paths` but as sorted bitmasks."""
    return _kernel.longest_path_sets(
        g.adj, g.n, max_sets=max_sets, deadline=current_deadline()
    )


def longest_cycle_length(g: Graph) -> int | None:
    """Number of vertices in a longest cycle; ``None`` when acyclic."""
    size = _kernel.longest_cycle_length(g.adj, g.n, deadline=current_deadline())
    return size if size else None


def enumerate_longest_cycles(
    g: Graph, max_sets: int = DEFAULT_SET_CAP
) -> frozenset[frozenset[int]]:
    """Vertex sets of all longest cycles; empty when acyclic."""
    masks = _kernel.longest_cycle_sets(
        g.adj, g.n, max_sets=max_sets, deadline=current_deadline()
    )
    return _sets_from_masks(masks)


def constrained_longest_cycle(g: Graph, cap: int) -> frozenset[int] | None:
    """Vertex set of a largest cycle with at most ``cap`` vertices."""
    size, mask = _kernel.longest_cycle_capped(
        g.adj, g.n, cap, deadline=current_deadline()
    )
    return frozenset(bits(mask)) if size else None


# ---------------------------------------------------------------------------
# Path and cycle sequences


def is_path_in(g: Graph, seq) -> bool:
    """True iff ``seq`` lists distinct vertices consecutively adjacent in g."""
    if len(seq) == 0 or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= v < g.n for v in seq):
        return False
    return all(g.has_edge(u, v) for u, v in zip(seq, seq[1:]))


def check_path(g: Graph, seq) -> tuple[int, ...]:
    if not is_path_in(g, seq):
        raise PreconditionError(f"{seq!r} is not a path in the graph")
    return tuple(seq)


def canonical_cycle(g: Graph, seq) -> tuple[int, ...]:
    """Canonical rotation/reflection of a cycle sequence: minimum vertex
    first, then its smaller cycle-neighbor."""
    seq = tuple(seq)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        raise PreconditionError("a cycle needs at least 3 distinct vertices")
    closed = all(
        g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))
    )
    if not closed:
        raise PreconditionError(f"{seq!r} is not a cycle in the graph")
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[1] > rot[-1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


# ---------------------------------------------------------------------------
# Fibers: longest paths under endpoint constraints.  Two-phase exact search:
# first the constrained optimum length, then the lexicographically least
# sequence realizing it (a DFS in ascending vertex order returns optima in
# lexicographic order, so the first hit wins).


def _reach_count(g: Graph, v: int, blocked: int) -> int:
    seen = 1 << v
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & ~blocked & ~seen
        seen |= frontier
    return seen.bit_count()


def _constrained_best(g: Graph, start: int, end: int | None) -> int:
    """Max vertices over paths from ``start`` (ending at ``end`` if given)."""
    best = 0

    def extend(v: int, used: int, depth: int) -> None:
        nonlocal best
        if end is not None and v == end:
            if depth > best:
                best = depth
            return
        if end is None and depth > best:
            best = depth
        ext = g.adj[v] & ~used
        while ext:
            wb = ext & -ext
            ext ^= wb
            w = wb.bit_length() - 1
            bound = depth + _reach_count(g, w, used)
            if bound > best:
                extend(w, used | wb, depth + 1)

    extend(start, 1 << start, 1)
    return best


def _lex_first(g: Graph, start: int, end: int | None, target: int):
    """Lexicographically least path of exactly ``target`` vertices from
    ``start`` (to ``end`` when given), or None."""
    path = [start]

    def extend(v: int, used: int, depth: int) -> bool:
        if depth == target:
            return end is None or v == end
        if end is not None and v == end:
            return False
        ext = g.adj[v] & ~used
        while ext:
            wb = ext & -ext
            ext ^= wb
            w = wb.bit_length() - 1
            if depth + _reach_count(g, w, used) >= target:
                path.append(w)
                if extend(w, used | wb, depth + 1):
                    return True
                path.pop()
        return False

    if extend(start, 1 << start, 1):
        return tuple(path)
    return None


def fiber_from(g: Graph, x: int) -> tuple[int, ...]:
    """Longest path with endpoint ``x``; least sequence among optima."""
    if not 0 <= x < g.n:
        raise PreconditionError(f"vertex {x} out of range")
    best = _constrained_best(g, x, None)
    seq = _lex_first(g, x, None, best)
    assert seq is not None
    return seq


def fiber_between(g: Graph, x: int, y: int) -> tuple[int, ...] | None:
    """Longest path with endpoints ``x`` and ``y``; None if no such path."""
    for v in (x, y):
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} out of range")
    if x == y:
        return (x,)
    best = _constrained_best(g, x, y)
    if best == 0:
        return None
    return _lex_first(g, x, y, best)


def lexmin_longest_path(g: Graph) -> tuple[int, ...]:
    """Lexicographically least longest-path sequence of the whole graph."""
    target = longest_path_length(g)
    for start in range(g.n):
        seq = _lex_first(g, start, None, target)
        if seq is not None:
            return seq
    raise AssertionError("unreachable: no path realized the optimum length")


# ---------------------------------------------------------------------------
# Attachment structure of a path against an off-path component.


@dataclass(frozen=True)
class AttachmentAnalysis:
    """Attachment points of one off-path component, in path order, plus the
    rank of every non-attachment path vertex (length of the longest subpath
    ending at that vertex that stays clear of attachment points)."""

    path: tuple[int, ...]
    component: frozenset[int]
    attachment_points: tuple[int, ...]
    ranks: dict[int, int]


def attachment_points(g: Graph, path, component) -> tuple[int, ...]:
    comp_mask = mask_of(component)
    return tuple(v for v in path if g.adj[v] & comp_mask)


def attachment_analysis(g: Graph, path, component) -> AttachmentAnalysis:
    path = check_path(g, path)
    comp = frozenset(component)
    off = g.vertex_mask & ~mask_of(path)
    if mask_of(comp) & ~off or mask_of(comp) not in component_masks(g, off):
        raise PreconditionError("not a component of the graph minus the path")
    points = attachment_points(g, path, comp)
    point_set = set(points)
    ranks: dict[int, int] = {}
    run = 0
    for v in path:
        if v in point_set:
            run = 0
        else:
            ranks[v] = run
            run += 1
    return AttachmentAnalysis(path, comp, points, ranks)


def attachment_follower_set(
    g: Graph, path, component, mode: str = "free"
) -> frozenset[int]:
    """Independent non-attachment witness set built from a fiber's attachment
    points: the vertex immediately after each attachment point, dropping the
    last one for two-endpoint fibers, adding the start for free fibers."""
    analysis = attachment_analysis(g, path, component)
    pos = {v: i for i, v in enumerate(path)}
    points = analysis.attachment_points
    if mode == "xy":
        chosen = points[:-1]
    elif mode in ("x", "free"):
        chosen = points
    else:
        raise PreconditionError(f"unknown fiber mode {mode!r}")
    followers = set()
    for s in chosen:
        i = pos[s]
        if i + 1 >= len(path):
            raise PreconditionError("attachment point at the far endpoint")
        followers.add(path[i + 1])
    if mode == "free":
        followers.add(path[0])
    return frozenset(followers)


# ---------------------------------------------------------------------------
# Path improvement: repeatedly apply end extensions, splices, and detours
# against every off-path component until none applies.  Every accepted rewrite
# is validated and strictly longer, so the loop terminates.


def _bfs_path_inside(g: Graph, comp_mask: int, src_mask: int, dst_mask: int):
    """Shortest path within ``comp_mask`` from some src to some dst vertex."""
    prev: dict[int, int | None] = {}
    queue = []
    for v in bits(src_mask & comp_mask):
        prev[v] = None
        queue.append(v)
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        if dst_mask & (1 << v):
            out = []
            node: int | None = v
            while node is not None:
                out.append(node)
                node = prev[node]
            return list(reversed(out))
        for w in bits(g.adj[v] & comp_mask):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def _clique_path(comp: list[int], first: int, last: int | None = None) -> list[int]:
    """Spanning sequence of a clique starting at ``first`` (ending at ``last``)."""
    rest = [v for v in comp if v != first and v != last]
    out = [first] + rest
    if last is not None:
        out.append(last)
    return out


def _distinct_pair(a_mask: int, b_mask: int) -> tuple[int, int] | None:
    """Distinct (za, zb) with za from a_mask and zb from b_mask, if possible."""
    if not a_mask or not b_mask:
        return None
    za = (a_mask & -a_mask).bit_length() - 1
    rest = b_mask & ~(1 << za)
    if rest:
        return za, (rest & -rest).bit_length() - 1
    other = a_mask & ~b_mask  # b_mask is the single vertex za here
    if other:
        return (other & -other).bit_length() - 1, za
    return None


def _end_extension(g: Graph, path, off_mask):
    for flip in (False, True):
        p = tuple(reversed(path)) if flip else path
        tail = p[-1]
        ext = g.adj[tail] & off_mask
        if ext:
            z = (ext & -ext).bit_length() - 1
            return p + (z,)
    return None


def _rotation_extension(g: Graph, path, off_mask):
    # If some v_i has an off-path neighbor and v_{i-1} sees the far endpoint,
    # rerouting through the far end frees v_i to step off the path.
    for flip in (False, True):
        p = tuple(reversed(path)) if flip else path
        last = p[-1]
        for i in range(1, len(p) - 1):
            nbrs = g.adj[p[i]] & off_mask
            if nbrs and g.has_edge(p[i - 1], last):
                z = (nbrs & -nbrs).bit_length() - 1
                return p[:i] + tuple(reversed(p[i:])) + (z,)
    return None


def _consecutive_attachment_splice(g: Graph, path, comp_mask):
    pos = {v: i for i, v in enumerate(path)}
    pts = [v for v in path if g.adj[v] & comp_mask]
    for s, s2 in zip(pts, pts[1:]):
        if pos[s2] - pos[s] == 1:
            bridge = _bfs_path_inside(
                g, comp_mask, g.adj[s] & comp_mask, g.adj[s2] & comp_mask
            )
            if bridge:
                i = pos[s]
                return path[: i + 1] + tuple(bridge) + path[i + 1 :]
    return None


def _neighbor_pair_detour(g: Graph, path, comp_mask):
    # Attachment points s, s2 with adjacent followers w, w2: route x..s,
    # through the component to s2, back down to w, jump w-w2, then onward.
    for flip in (False, True):
        p = tuple(reversed(path)) if flip else path
        pos = {v: i for i, v in enumerate(p)}
        pts = [v for v in p if g.adj[v] & comp_mask]
        for ai in range(len(pts)):
            for bi in range(ai + 1, len(pts)):
                i, j = pos[pts[ai]], pos[pts[bi]]
                if j - i < 2 or j + 1 >= len(p):
                    continue
                w, w2 = p[i + 1], p[j + 1]
                if not g.has_edge(w, w2):
                    continue
                bridge = _bfs_path_inside(
                    g, comp_mask, g.adj[p[i]] & comp_mask, g.adj[p[j]] & comp_mask
                )
                if bridge:
                    return (
                        p[: i + 1]
                        + tuple(bridge)
                        + tuple(reversed(p[i + 1 : j + 1]))
                        + p[j + 1 :]
                    )
    return None


def _clique_rules(g: Graph, path, comp_mask):
    """Splices and detours available when the off-path component is a clique."""
    comp = list(bits(comp_mask))
    if any(g.adj[v] & comp_mask != comp_mask & ~(1 << v) for v in comp):
        return None
    t = len(comp)
    for flip in (False, True):
        p = tuple(reversed(path)) if flip else path
        pos = {v: i for i, v in enumerate(p)}
        pts = [v for v in p if g.adj[v] & comp_mask]
        if not pts:
            return None
        pts_pos = [pos[s] for s in pts]

        # Prepend a spanning clique path when the near endpoint attaches.
        if pts_pos[0] == 0:
            z = ((g.adj[p[0]] & comp_mask) & -(g.adj[p[0]] & comp_mask)).bit_length() - 1
            return tuple(reversed(_clique_path(comp, z))) + p

        # Replace a short gap between consecutive attachment points (or a
        # short end segment) by a spanning clique path.
        head = pts_pos[0]
        if 0 < head < t:
            z = ((g.adj[pts[0]] & comp_mask) & -(g.adj[pts[0]] & comp_mask)).bit_length() - 1
            return tuple(reversed(_clique_path(comp, z))) + p[head:]
        for a, b in zip(pts_pos, pts_pos[1:]):
            gap = b - a - 1
            if 0 < gap < t:
                pair = _distinct_pair(g.adj[p[a]] & comp_mask, g.adj[p[b]] & comp_mask)
                if pair is None:
                    continue  # needs two distinct clique contacts
                z1, z2 = pair
                return p[: a + 1] + tuple(_clique_path(comp, z1, z2)) + p[b:]

        # Rank-bounded detours between different gaps.
        ranks: dict[int, int] = {}
        run = 0
        pts_set = set(pts)
        seg: dict[int, int] = {}
        seg_id = 0
        for v in p:
            if v in pts_set:
                run = 0
                seg_id += 1
            else:
                ranks[v] = run
                run += 1
                seg[v] = seg_id
        for i in range(len(p)):
            w = p[i]
            if w in pts_set or ranks[w] >= t:
                continue
            for j in range(i + 2, len(p)):
                w2 = p[j]
                if w2 in pts_set or ranks[w2] >= t:
                    continue
                if seg[w] == seg[w2] or ranks[w] + ranks[w2] >= t:
                    continue
                if not g.has_edge(w, w2):
                    continue
                if seg[w] > 0:
                    # Detour keeping both endpoints: jump into the clique at
                    # the attachment before w, come back at the one before w2.
                    if t == 1:
                        continue  # single-vertex case is the follower detour
                    si = max(k for k in pts_pos if k < i)
                    sj = max(k for k in pts_pos if k < j)
                    pair = _distinct_pair(
                        g.adj[p[si]] & comp_mask, g.adj[p[sj]] & comp_mask
                    )
                    if pair is None:
                        continue
                    z1, z2 = pair
                    bridge = _clique_path(comp, z1, z2)
                    return (
                        p[: si + 1]
                        + tuple(bridge)
                        + tuple(reversed(p[i : sj + 1]))
                        + p[j:]
                    )
                # w sits before the first attachment point: re-root at the
                # far endpoint and absorb the clique at the end.
                sj = max(k for k in pts_pos if k < j)
                zb = g.adj[p[sj]] & comp_mask
                z1 = (zb & -zb).bit_length() - 1
                return (
                    tuple(reversed(p[j:]))
                    + p[i : sj + 1]
                    + tuple(_clique_path(comp, z1))
                )
    return None


def improve_path(g: Graph, path) -> tuple[int, ...]:
    """Iterate augmenting extensions, splices, and detours to a fixpoint.

    The output is a valid path at least as long as the input.  Rules are
    scanned in a fixed order and the scan restarts after every success, so the
    result is deterministic.
    """
    p = check_path(g, path)
    improved = True
    while improved:
        improved = False
        off = g.vertex_mask & ~mask_of(p)
        candidates = []
        new = _end_extension(g, p, off)
        if new is None:
            new = _rotation_extension(g, p, off)
        if new is None:
            for comp_mask in component_masks(g, off):
                for rule in (
                    _consecutive_attachment_splice,
                    _neighbor_pair_detour,
                    _clique_rules,
                ):
                    candidate = rule(g, p, comp_mask)
                    if candidate is not None:
                        candidates.append(candidate)
                        break
                if candidates:
                    break
            if candidates:
                new = candidates[0]
        if new is not None:
            assert is_path_in(g, new) and len(new) > len(p), (
                "augmentation produced an invalid or non-longer path"
            )
            p = tuple(new)
            improved = True
    return p
