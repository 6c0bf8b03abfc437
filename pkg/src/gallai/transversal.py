"""Gallai vertices, exact transversal numbers, Menger separators, and the
constructive sublinear transversal iteration.

A transversal here is a vertex set meeting every maximum subdivision of a
pattern: every longest path for the single-edge pattern, every longest cycle
for the doubled edge.  Exact minima come from a branch-and-bound hitting-set
solver over the enumerated optimum vertex sets; the constructive route builds
a valid (not necessarily minimum) transversal by repeatedly shrinking the
region that still contains untouched optima.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import _mincut
from .errors import PreconditionError
from .graphs import Graph, bits, component_masks, induced_subgraph, is_biconnected, is_connected, mask_of
from .paths import (
    DEFAULT_SET_CAP,
    constrained_longest_cycle,
    lexmin_longest_path,
    longest_cycle_length,
    longest_path_length,
    longest_path_masks,
    enumerate_longest_cycles,
)
from .subdivisions import (
    CYCLE_PATTERN,
    PATH_PATTERN,
    enumerate_maximum_subdivision_sets,
    resolve_pattern,
)

# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class HypergraphOfOptima:
    """Vertex sets of the maximum subdivisions of one pattern in one graph."""

    universe: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        sizes = {len(e) for e in self.edges}
        if any(len(e) == 0 for e in self.edges):
            raise PreconditionError("optimum sets must be nonempty")
        if len(sizes) > 1:
            raise PreconditionError("optima of one objective must share a size")
        for e in self.edges:
            if any(not 0 <= v < self.universe for v in e):
                raise PreconditionError("edge leaves the universe")


@dataclass(frozen=True)
class PartialTransversal:
    """State of the shrinking iteration: the untouched region ``h``, its
    complement ``x_set``, and the partial transversal ``y_set`` inside it."""

    h: frozenset[int]
    x_set: frozenset[int]
    y_set: frozenset[int]

    def check(self, n: int) -> None:
        if self.h & self.x_set:
            raise PreconditionError("region and complement overlap")
        if self.h | self.x_set != frozenset(range(n)):
            raise PreconditionError("region and complement do not cover")
        if not self.y_set <= self.x_set:
            raise PreconditionError("partial transversal must avoid the region")


@dataclass(frozen=True)
class SeparatorConnectorResult:
    """Minimum separator and maximum disjoint-path connector, equal in size."""

    separator: frozenset[int]
    connector: tuple[tuple[int, ...], ...]
    size: int


# ---------------------------------------------------------------------------
# Menger separators and connectors


def menger(g: Graph, x_set, y_set) -> SeparatorConnectorResult:
    """Minimum (X, Y)-separator (may use X and Y vertices) and a maximum
    family of fully vertex-disjoint X-Y paths.

    The separator is the lexicographically least minimum one; connector path
    interiors avoid both terminal sets.
    """
    xs = sorted(set(x_set))
    ys = sorted(set(y_set))
    if not xs or not ys:
        raise PreconditionError("terminal sets must be nonempty")
    for v in xs + ys:
        if not 0 <= v < g.n:
            raise PreconditionError(f"vertex {v} out of range")
    size, sep, paths = _mincut.separator_and_connector(g.adj, g.n, xs, ys)
    return SeparatorConnectorResult(frozenset(sep), tuple(paths), size)


# ---------------------------------------------------------------------------
# Exact minimum hitting sets


def minimum_hitting_set(n: int, edge_masks) -> tuple[int, frozenset[int]]:
    """Exact minimum hitting set of bitmask edges, lexicographically least
    witness.  Branch and bound: branch on the vertices of a smallest uncovered
    edge, lower-bound by a greedy disjoint-edge packing."""
    edges = sorted(set(edge_masks))
    if any(e == 0 for e in edges):
        raise PreconditionError("cannot hit an empty edge")
    # Supersets of another edge are hit whenever the subset is.
    edges = [e for e in edges if not any(f != e and e & f == f for f in edges)]
    if not edges:
        return 0, frozenset()

    def solve(edge_list, allowed: int) -> int | None:
        """Minimum hits using only ``allowed`` vertices, None if infeasible."""
        pending = [e & allowed for e in edge_list]
        if any(e == 0 for e in pending):
            return None

        def packing(uncovered) -> int:
            taken = 0
            blocked = 0
            for e in uncovered:
                if not e & blocked:
                    taken += 1
                    blocked |= e
            return taken

        # Greedy cover for the initial upper bound.
        uncovered = list(pending)
        greedy = 0
        while uncovered:
            counts: dict[int, int] = {}
            for e in uncovered:
                for v in bits(e):
                    counts[v] = counts.get(v, 0) + 1
            v = max(sorted(counts), key=lambda u: counts[u])
            uncovered = [e for e in uncovered if not e & (1 << v)]
            greedy += 1
        best = greedy

        def rec(uncovered, count: int) -> None:
            nonlocal best
            if count + packing(uncovered) >= best:
                return
            if not uncovered:
                best = count
                return
            pivot = min(uncovered, key=lambda e: (e.bit_count(), e))
            for v in bits(pivot):
                rec([e for e in uncovered if not e & (1 << v)], count + 1)

        rec(pending, 0)
        return best

    full = (1 << n) - 1
    opt = solve(edges, full)
    assert opt is not None

    witness: list[int] = []
    remaining = edges
    for v in range(n):
        if not remaining:
            break
        after = [e for e in remaining if not e & (1 << v)]
        tail_allowed = full & ~((1 << (v + 1)) - 1)
        rest = solve(after, tail_allowed) if after else 0
        if rest is not None and 1 + len(witness) + rest <= opt:
            witness.append(v)
            remaining = after
    assert len(witness) == opt and not remaining
    return opt, frozenset(witness)


# ---------------------------------------------------------------------------
# Gallai vertices and exact transversal numbers


def gallai_vertices(g: Graph) -> frozenset[int]:
    """Vertices on every longest path; empty means none."""
    if not is_connected(g):
        raise PreconditionError("Gallai vertices are defined for connected graphs")
    masks = longest_path_masks(g)
    common = g.vertex_mask
    for m in masks:
        common &= m
        if not common:
            break
    return frozenset(bits(common))


def lpt_exact(g: Graph, max_sets: int = DEFAULT_SET_CAP) -> tuple[int, frozenset[int]]:
    """Minimum size of a set meeting every longest path, with a witness."""
    masks = longest_path_masks(g, max_sets=max_sets)
    return minimum_hitting_set(g.n, masks)


def lct_exact(g: Graph, max_sets: int = DEFAULT_SET_CAP) -> tuple[int, frozenset[int]]:
    """Minimum size of a set meeting every longest cycle, with a witness."""
    sets = enumerate_longest_cycles(g, max_sets=max_sets)
    if not sets:
        raise PreconditionError("graph has no cycle")
    return minimum_hitting_set(g.n, [mask_of(s) for s in sets])


def optima_hypergraph(g: Graph, pattern, max_sets: int = DEFAULT_SET_CAP) -> HypergraphOfOptima:
    _, sets = enumerate_maximum_subdivision_sets(g, pattern, max_sets=max_sets)
    return HypergraphOfOptima(g.n, tuple(sorted(sets, key=sorted)))


def pairwise_intersecting(g: Graph, pattern, max_sets: int = DEFAULT_SET_CAP) -> bool:
    """Do all maximum subdivisions of the pattern pairwise intersect?"""
    _, sets = enumerate_maximum_subdivision_sets(g, pattern, max_sets=max_sets)
    masks = [mask_of(s) for s in sets]
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if not a & b:
                return False
    return True


def is_transversal(g: Graph, pattern, vertices) -> bool:
    """Does ``vertices`` meet every maximum subdivision of the pattern?"""
    m = mask_of(vertices)
    _, sets = enumerate_maximum_subdivision_sets(g, pattern)
    return all(m & mask_of(s) for s in sets)


# ---------------------------------------------------------------------------
# Special blocks


def find_special_block(g: Graph) -> frozenset[int] | None:
    """A block containing an edge of every longest path, if one exists.

    Tests blocks in lexicographic order by deleting each block's edges and
    asking whether the optimum drops, so the least special block is returned.
    """
    from .graphs import blocks as block_decomposition

    if not is_connected(g):
        raise PreconditionError("special blocks are defined for connected graphs")
    target = longest_path_length(g)
    for blk in block_decomposition(g).blocks:
        if len(blk) < 2:
            continue
        pruned = Graph(
            g.n,
            [(u, v) for u, v in g.edges() if not (u in blk and v in blk)],
        )
        if longest_path_length(pruned) < target:
            return blk
    return None


# ---------------------------------------------------------------------------
# Exact threshold arithmetic for the shrinking iteration.
#
# The default scale factor is eps = 2*(m/n)^(1/4).  All comparisons against
# eps-derived thresholds reduce to integer or rational inequalities (fourth
# powers for the default, plain fractions for a rational override), so no
# floating point is involved anywhere.


def _ceil_fourth_root(x: int) -> int:
    t = isqrt(isqrt(x))
    return t if t**4 == x else t + 1


class _EpsRules:
    def __init__(self, m: int, n: int, override: Fraction | None):
        self.m = m
        self.n = n
        self.override = override
        if override is not None and override <= 0:
            raise PreconditionError("epsilon override must be positive")

    def ceil_eps_n(self) -> int:
        if self.override is not None:
            x = self.override * self.n
            return -((-x.numerator) // x.denominator)
        return _ceil_fourth_root(16 * self.m * self.n**3)

    def separator_small(self, size: int) -> bool:
        if self.override is not None:
            return size <= self.override**2 * self.n
        return size * size <= 16 * self.m * self.n

    def cycle_cap(self) -> int:
        """floor(2*eps*n + 4/eps^2), clamped to the vertex count."""

        def fits(k: int) -> bool:
            if self.override is not None:
                e = self.override
                return k <= 2 * e * self.n + 4 / (e * e)
            if self.m * k * k <= self.n:
                return True
            lhs = Fraction(k * k) + Fraction(self.n, self.m)
            rhs = Fraction((2 * k + 16 * self.n * self.m) ** 2) * Fraction(
                self.n, self.m
            )
            return lhs * lhs <= rhs

        lo, hi = 0, self.n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if fits(mid):
                lo = mid
            else:
                hi = mid - 1
        return lo

    def cycle_separator_small(self, size: int, cycle_size: int) -> bool:
        if self.override is not None:
            return size <= self.override * cycle_size
        return self.n * size**4 <= 16 * self.m * cycle_size**4

    def size_bound(self) -> int:
        """min(n, ceil(8 * m^(5/4) * n^(3/4)))."""
        return min(self.n, _ceil_fourth_root(4096 * self.m**5 * self.n**3))


# ---------------------------------------------------------------------------
# The constructive sublinear transversal


@dataclass(frozen=True)
class TransversalRun:
    """Output of the shrinking iteration plus its decision trace."""

    transversal: frozenset[int]
    steps: tuple[str, ...]
    diagnostics: tuple[str, ...]
    iterations: int
    pattern_name: str
    epsilon: str


def _pattern_meta(pattern):
    pat = resolve_pattern(pattern)
    if pat == PATH_PATTERN:
        return pat, "path", 1
    if pat == CYCLE_PATTERN:
        return pat, "cycle", 2
    raise PreconditionError("the iteration supports the path and cycle patterns")


def run_sublinear_transversal(g: Graph, pattern, epsilon=None) -> TransversalRun:
    """Build a valid transversal by the shrinking iteration, with a trace.

    Requires connectedness for the path pattern and 2-connectedness for the
    cycle pattern (which is what guarantees the optima pairwise intersect).
    With the default scale factor the contradiction branch is unreachable when
    the subroutines are exact; a rational ``epsilon`` override can steer the
    iteration through its other branches on small instances, at the price that
    the fallback branches may fire.  Every exit returns a valid transversal.
    """
    pat, name, m = _pattern_meta(pattern)
    if name == "path" and not is_connected(g):
        raise PreconditionError("path-pattern transversal needs a connected graph")
    if name == "cycle" and not is_biconnected(g):
        raise PreconditionError("cycle-pattern transversal needs a 2-connected graph")
    if epsilon is not None and not isinstance(epsilon, Fraction):
        epsilon = Fraction(epsilon)
    eps_label = "default" if epsilon is None else str(epsilon)
    steps: list[str] = []
    diagnostics: list[str] = []

    def finish(mask: int, iterations: int) -> TransversalRun:
        return TransversalRun(
            frozenset(bits(mask)),
            tuple(steps),
            tuple(diagnostics),
            iterations,
            name,
            eps_label,
        )

    n = g.n
    rules = _EpsRules(m, n, epsilon)

    def size_within(mask: int) -> int | None:
        if not mask:
            return None
        sub, _ = induced_subgraph(g, bits(mask))
        if name == "path":
            size = longest_path_length(sub)
            return size if size >= 2 else None
        return longest_cycle_length(sub)

    def witness_within(mask: int) -> int:
        """One maximum-subdivision vertex set inside ``mask`` (global mask)."""
        sub, labels = induced_subgraph(g, bits(mask))
        if name == "path":
            seq = lexmin_longest_path(sub)
            return mask_of(labels[v] for v in seq)
        cyc = constrained_longest_cycle(sub, sub.n)
        assert cyc is not None
        return mask_of(labels[v] for v in cyc)

    global_best = size_within(g.vertex_mask)
    if global_best is None:
        steps.append("no-subdivision")
        return finish(0, 0)
    if m > n:
        steps.append("pattern-larger-than-graph")
        return finish(g.vertex_mask, 0)

    def locate_survivor(h_mask: int, removed: int, tag: str, y_mask: int, it: int):
        """Shrink to the unique surviving component, or finish with the cut."""
        comps = component_masks(g, h_mask & ~removed)
        survivors = [c for c in comps if size_within(c) == global_best]
        if len(survivors) > 1:
            raise PreconditionError(
                "two components contain optima: the optima do not pairwise intersect"
            )
        if not survivors:
            steps.append(f"{tag}-exhausted")
            return finish(y_mask | removed, it), None
        steps.append(f"{tag}-shrink")
        return None, survivors[0]

    h_mask = g.vertex_mask
    y_mask = 0
    iterations = 0
    while True:
        iterations += 1
        assert iterations <= n + 2, "shrinking iteration failed to terminate"
        sub, labels = induced_subgraph(g, bits(h_mask))
        half = rules.ceil_eps_n()
        if longest_path_length(sub) >= 2 * half:
            steps.append("split")
            seq = lexmin_longest_path(sub)
            size, sep_local, _paths = _mincut.separator_and_connector(
                sub.adj, sub.n, sorted(seq[:half]), sorted(seq[half : 2 * half])
            )
            separator = mask_of(labels[v] for v in sep_local)
            if rules.separator_small(size):
                done, new_h = locate_survivor(
                    h_mask, separator, "separator", y_mask, iterations
                )
                if done is not None:
                    return done
                h_mask = new_h
                y_mask |= separator
                continue
            cap = rules.cycle_cap()
            cyc_local = constrained_longest_cycle(sub, cap)
            if cyc_local is None:
                diagnostics.append(
                    "no cycle under the cap: outside the default-scale regime"
                )
                steps.append("no-cycle-fallback")
                return finish(y_mask | witness_within(h_mask), iterations)
            cycle_mask = mask_of(labels[v] for v in cyc_local)
            ell = len(cyc_local)
            remainder = h_mask & ~cycle_mask
            if size_within(remainder) != global_best:
                steps.append("cycle-hits-all")
                return finish(y_mask | cycle_mask, iterations)
            disjoint_best = witness_within(remainder)
            if global_best < ell:
                steps.append("optimum-smaller-than-cycle")
                return finish(y_mask | disjoint_best, iterations)
            size_t, sep_t_local, _ = _mincut.separator_and_connector(
                sub.adj,
                sub.n,
                sorted(v for v in range(sub.n) if cycle_mask & (1 << labels[v])),
                sorted(v for v in range(sub.n) if disjoint_best & (1 << labels[v])),
            )
            separator_t = mask_of(labels[v] for v in sep_t_local)
            if rules.cycle_separator_small(size_t, ell):
                done, new_h = locate_survivor(
                    h_mask, separator_t, "cycle-separator", y_mask, iterations
                )
                if done is not None:
                    return done
                h_mask = new_h
                y_mask |= separator_t
                continue
            message = (
                "cycle/optimum separator exceeds its bound; with the default "
                "scale factor this indicates a subroutine defect"
            )
            diagnostics.append(message)
            warnings.warn(message, RuntimeWarning, stacklevel=2)
            steps.append("contradiction-fallback")
            return finish(y_mask | disjoint_best, iterations)
        if size_within(h_mask) != global_best:
            steps.append("terminal-no-survivor")
            return finish(y_mask, iterations)
        steps.append("terminal-optimum")
        return finish(y_mask | witness_within(h_mask), iterations)


def sublinear_transversal(g: Graph, pattern, epsilon=None) -> frozenset[int]:
    """Valid pattern transversal of size at most min(n, the sublinear bound)."""
    return run_sublinear_transversal(g, pattern, epsilon).transversal
