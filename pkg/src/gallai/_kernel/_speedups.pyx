# cython: language_level=3
"""Compiled search kernels.

Same contract as the pure module: exact longest paths / cycles with optimum
vertex-set enumeration and maximum-independent-set size.  Subset DP covers
instances up to 24 vertices; larger instances run a pruned DFS over 256-bit
bitsets whose upper bound walks the block tree of the untouched region, which
is what keeps subdivision-style graphs (long induced chains) tractable.
"""

import time as _time

from libc.stdlib cimport calloc, free, malloc

from gallai.errors import CapExceededError

ctypedef unsigned long long u64
ctypedef unsigned int u32

cdef extern from *:
    """
    #define POPCLL(x) __builtin_popcountll((unsigned long long)(x))
    #define CTZLL(x) __builtin_ctzll((unsigned long long)(x))
    """
    int POPCLL(u64 x) nogil
    int CTZLL(u64 x) nogil

BACKEND = "compiled"

DEF DP_LIMIT = 24
DEF NW = 4          # bitset words: up to 256 vertices
DEF CHECK_MASK = 0x1FFF


cdef inline void _check_deadline(double deadline) except *:
    if deadline != 0.0 and _time.monotonic() > deadline:
        raise CapExceededError("time budget exceeded")


# ---------------------------------------------------------------------------
# Subset DP (n <= 24)


cdef u32* _adj32(adj, int n) except NULL:
    cdef u32* out = <u32*> malloc(n * sizeof(u32))
    if out == NULL:
        raise MemoryError()
    cdef int v
    for v in range(n):
        out[v] = <u32> adj[v]
    return out


cdef int _lp_dp(adj, int n, bint want_sets, int max_sets, double deadline,
                list out) except -1:
    cdef u64 size = (<u64>1) << n
    cdef u32* a = _adj32(adj, n)
    cdef u32* dp = <u32*> calloc(size, sizeof(u32))
    cdef u64 mask, wb
    cdef u32 ep, ext, m32
    cdef int v, w, best = 1, count = 0
    if dp == NULL:
        free(a)
        raise MemoryError()
    try:
        for v in range(n):
            dp[(<u64>1) << v] = (<u32>1) << v
        for mask in range(1, size):
            ep = dp[mask]
            if ep == 0:
                continue
            if (mask & CHECK_MASK) == 0:
                _check_deadline(deadline)
            if POPCLL(mask) > best:
                best = POPCLL(mask)
            m32 = <u32> mask
            while ep:
                v = CTZLL(ep)
                ep &= ep - 1
                ext = a[v] & ~m32
                while ext:
                    w = CTZLL(ext)
                    ext &= ext - 1
                    dp[mask | ((<u64>1) << w)] |= (<u32>1) << w
        if want_sets:
            for mask in range(1, size):
                if dp[mask] != 0 and POPCLL(mask) == best:
                    count += 1
                    if count > max_sets:
                        raise CapExceededError(
                            "optimum-set count exceeds cap %d" % max_sets)
                    out.append(<object> mask)
        return best
    finally:
        free(dp)
        free(a)


cdef int _lc_dp(adj, int n, int cap, double deadline, object emit) except -1:
    """Feed (size, mask) for every cycle of size <= cap to ``emit``."""
    cdef int r, m, v, w, size, best = 0
    cdef u64 smallsize, mask, hi
    cdef u32 ep, ext, m32
    cdef u32* sadj
    cdef u32* dp
    for r in range(n - 2):
        m = n - r
        sadj = <u32*> malloc(m * sizeof(u32))
        if sadj == NULL:
            raise MemoryError()
        for v in range(m):
            sadj[v] = <u32> ((adj[r + v] >> r) & ((1 << m) - 1))
        smallsize = (<u64>1) << m
        dp = <u32*> calloc(smallsize, sizeof(u32))
        if dp == NULL:
            free(sadj)
            raise MemoryError()
        try:
            dp[1] = 1
            for mask in range(1, smallsize, 2):  # root bit always set
                ep = dp[mask]
                if ep == 0:
                    continue
                if (mask & CHECK_MASK) == 0:
                    _check_deadline(deadline)
                size = POPCLL(mask)
                m32 = <u32> mask
                while ep:
                    v = CTZLL(ep)
                    ep &= ep - 1
                    if size >= 3 and (sadj[v] & 1):
                        emit(size, <object> (mask << r))
                    if size < cap:
                        ext = sadj[v] & ~m32 & ~<u32>1
                        while ext:
                            w = CTZLL(ext)
                            ext &= ext - 1
                            dp[mask | ((<u64>1) << w)] |= (<u32>1) << w
        finally:
            free(dp)
            free(sadj)
    return 0


# ---------------------------------------------------------------------------
# DFS with block-tree bound (24 < n <= 256)


cdef class _Search:
    cdef int n
    cdef u64* adj            # n * NW words
    cdef u64 used[NW]
    cdef u64 reach[NW]
    cdef u64 frontier[NW]
    cdef u64 nxt[NW]
    cdef int best
    cdef bint want_sets
    cdef bint cycles         # cycle mode
    cdef int cap             # max depth in cycle mode
    cdef int root            # cycle root
    cdef u64 root_word
    cdef int root_wi
    cdef int max_sets
    cdef double deadline
    cdef u64 nodes
    cdef set out
    cdef object capped       # (size, mask) best under cap, cycle mode
    # block-tree bound scratch
    cdef int* disc
    cdef int* low
    cdef int* parent
    cdef int* down
    cdef int* fr_v           # DFS frames
    cdef int* fr_wi
    cdef u64* fr_rem
    cdef int* est_u          # edge stack
    cdef int* est_v
    cdef int* bstamp
    cdef int stamp

    def __cinit__(self, adj, int n):
        cdef int v, wi
        self.n = n
        self.adj = <u64*> calloc(n * NW, sizeof(u64))
        self.disc = <int*> malloc(n * sizeof(int))
        self.low = <int*> malloc(n * sizeof(int))
        self.parent = <int*> malloc(n * sizeof(int))
        self.down = <int*> malloc(n * sizeof(int))
        self.fr_v = <int*> malloc((n + 1) * sizeof(int))
        self.fr_wi = <int*> malloc((n + 1) * sizeof(int))
        self.fr_rem = <u64*> malloc((n + 1) * sizeof(u64))
        self.est_u = <int*> malloc((n * n // 2 + n + 1) * sizeof(int))
        self.est_v = <int*> malloc((n * n // 2 + n + 1) * sizeof(int))
        self.bstamp = <int*> calloc(n, sizeof(int))
        if (self.adj == NULL or self.disc == NULL or self.low == NULL
                or self.parent == NULL or self.down == NULL
                or self.fr_v == NULL or self.fr_wi == NULL
                or self.fr_rem == NULL or self.est_u == NULL
                or self.est_v == NULL or self.bstamp == NULL):
            raise MemoryError()
        self.stamp = 0
        for v in range(n):
            row = adj[v]
            for wi in range(NW):
                self.adj[v * NW + wi] = <u64> ((row >> (64 * wi)) & 0xFFFFFFFFFFFFFFFF)
        self.out = set()

    def __dealloc__(self):
        free(self.adj)
        free(self.disc)
        free(self.low)
        free(self.parent)
        free(self.down)
        free(self.fr_v)
        free(self.fr_wi)
        free(self.fr_rem)
        free(self.est_u)
        free(self.est_v)
        free(self.bstamp)

    cdef object _mask_obj(self):
        cdef object m = 0
        cdef int wi
        for wi in range(NW - 1, -1, -1):
            m = (m << 64) | self.used[wi]
        return m

    cdef int _reach_count(self, int start, bint to_root) except -1:
        """Count vertices reachable from ``start`` avoiding ``used``.

        In cycle mode (``to_root``) the root is traversable; the count
        excludes it and the result is negative if the root is unreachable.
        """
        cdef int wi, v, cnt
        cdef u64 w, avoid
        for wi in range(NW):
            avoid = self.used[wi]
            if to_root and wi == self.root_wi:
                avoid &= ~self.root_word
            self.reach[wi] = 0
            self.frontier[wi] = 0
            self.nxt[wi] = ~avoid
        self.reach[start >> 6] |= (<u64>1) << (start & 63)
        self.frontier[start >> 6] = self.reach[start >> 6]
        cdef bint grew = True
        while grew:
            grew = False
            for wi in range(NW):
                w = self.frontier[wi]
                while w:
                    v = (wi << 6) + CTZLL(w)
                    w &= w - 1
                    self.frontier[wi] &= ~((<u64>1) << (v & 63))
                    for 0 <= cnt < NW:
                        pass
                    self._or_adj(v)
            for wi in range(NW):
                w = self.nxt_or[wi] & self.nxt[wi] & ~self.reach[wi]
                if w:
                    grew = True
                self.reach[wi] |= w
                self.frontier[wi] |= w
                self.nxt_or[wi] = 0
        cnt = 0
        for wi in range(NW):
            cnt += POPCLL(self.reach[wi])
        if to_root:
            if not (self.reach[self.root_wi] & self.root_word):
                return -1
            cnt -= 1
        return cnt

    cdef u64 nxt_or[NW]

    cdef inline void _or_adj(self, int v):
        cdef int wi
        for wi in range(NW):
            self.nxt_or[wi] |= self.adj[v * NW + wi]

    cdef int _block_bound(self, int root) except -1:
        """Max vertices of a path starting at ``root`` in the graph minus
        ``used``: walk the block tree, each block contributing its size past
        the entry cut vertex."""
        cdef int top = 0, etop = 0, timer = 0
        cdef int v, w, wi, u, x, bsize, bbest, cand
        cdef u64 rem, avoid
        self.disc[root] = -1
        # frame push
        self.fr_v[0] = root
        self.fr_wi[0] = 0
        self.fr_rem[0] = self.adj[root * NW] & ~self.used[0]
        self.parent[root] = -1
        self.disc[root] = timer
        self.low[root] = timer
        self.down[root] = 0
        timer += 1
        top = 1
        while top > 0:
            v = self.fr_v[top - 1]
            wi = self.fr_wi[top - 1]
            rem = self.fr_rem[top - 1]
            if rem == 0:
                if wi + 1 < NW:
                    self.fr_wi[top - 1] = wi + 1
                    self.fr_rem[top - 1] = (self.adj[v * NW + wi + 1]
                                            & ~self.used[wi + 1])
                    continue
                # frame done
                top -= 1
                if top == 0:
                    break
                u = self.fr_v[top - 1]
                if self.low[v] < self.low[u]:
                    self.low[u] = self.low[v]
                if self.low[v] >= self.disc[u]:
                    # pop the block closing at u through tree edge (u, v)
                    self.stamp += 1
                    bsize = 0
                    bbest = 0
                    while True:
                        etop -= 1
                        x = self.est_u[etop]
                        if self.bstamp[x] != self.stamp:
                            self.bstamp[x] = self.stamp
                            bsize += 1
                            if x != u and self.down[x] > bbest:
                                bbest = self.down[x]
                        x = self.est_v[etop]
                        if self.bstamp[x] != self.stamp:
                            self.bstamp[x] = self.stamp
                            bsize += 1
                            if x != u and self.down[x] > bbest:
                                bbest = self.down[x]
                        if self.est_u[etop] == u and self.est_v[etop] == v:
                            break
                    cand = bsize - 1 + bbest
                    if cand > self.down[u]:
                        self.down[u] = cand
                continue
            w = (wi << 6) + CTZLL(rem)
            self.fr_rem[top - 1] = rem & (rem - 1)
            if self.disc[w] == -2:
                # tree edge
                self.parent[w] = v
                self.disc[w] = timer
                self.low[w] = timer
                self.down[w] = 0
                timer += 1
                self.est_u[etop] = v
                self.est_v[etop] = w
                etop += 1
                self.fr_v[top] = w
                self.fr_wi[top] = 0
                self.fr_rem[top] = self.adj[w * NW] & ~self.used[0]
                top += 1
            elif w != self.parent[v] and self.disc[w] < self.disc[v]:
                self.est_u[etop] = v
                self.est_v[etop] = w
                etop += 1
                if self.disc[w] < self.low[v]:
                    self.low[v] = self.disc[w]
        return 1 + self.down[root]

    cdef int _prepare_block_bound(self) except -1:
        # disc = -2 marks "unvisited and untouched"; reach limits the sweep
        cdef int wi, v
        cdef u64 w
        for wi in range(NW):
            w = self.reach[wi]
            while w:
                v = (wi << 6) + CTZLL(w)
                w &= w - 1
                self.disc[v] = -2
        return 0

    cdef int _extend_path(self, int v, int depth) except -1:
        cdef int wi, w, cnt, bound
        cdef u64 ext, wb
        self.nodes += 1
        if (self.nodes & CHECK_MASK) == 0:
            _check_deadline(self.deadline)
        if depth > self.best:
            self.best = depth
            if self.want_sets:
                self.out.clear()
        if self.want_sets and depth == self.best:
            self.out.add(self._mask_obj())
            if len(self.out) > self.max_sets:
                raise CapExceededError(
                    "optimum-set count exceeds cap %d" % self.max_sets)
        for wi in range(NW):
            ext = self.adj[v * NW + wi] & ~self.used[wi]
            while ext:
                w = (wi << 6) + CTZLL(ext)
                wb = ext & (~ext + 1)
                ext &= ext - 1
                cnt = self._reach_count(w, False)
                bound = depth + cnt
                if bound < self.best or (bound == self.best and not self.want_sets):
                    continue
                self._prepare_block_bound()
                bound = depth + self._block_bound(w)
                if bound < self.best or (bound == self.best and not self.want_sets):
                    continue
                self.used[wi] |= wb
                self._extend_path(w, depth + 1)
                self.used[wi] &= ~wb
        return 0

    cdef int _extend_cycle(self, int v, int depth) except -1:
        cdef int wi, w, cnt, bound
        cdef u64 ext, wb
        self.nodes += 1
        if (self.nodes & CHECK_MASK) == 0:
            _check_deadline(self.deadline)
        if depth >= 3 and (self.adj[v * NW + self.root_wi] & self.root_word):
            self._emit_cycle(depth)
        if depth >= self.cap:
            return 0
        for wi in range(NW):
            ext = self.adj[v * NW + wi] & ~self.used[wi]
            if wi == self.root_wi:
                ext &= ~self.root_word
            while ext:
                w = (wi << 6) + CTZLL(ext)
                wb = ext & (~ext + 1)
                ext &= ext - 1
                cnt = self._reach_count(w, True)
                if cnt < 0:
                    continue
                bound = depth + cnt
                if bound < self.best:
                    continue
                self.used[wi] |= wb
                self._extend_cycle(w, depth + 1)
                self.used[wi] &= ~wb
        return 0

    cdef int _emit_cycle(self, int size) except -1:
        cdef object mask
        if self.want_sets:
            if size > self.best:
                self.best = size
                self.out.clear()
            if size == self.best:
                self.out.add(self._mask_obj())
                if len(self.out) > self.max_sets:
                    raise CapExceededError(
                        "optimum-set count exceeds cap %d" % self.max_sets)
        else:
            if size > self.best:
                self.best = size
            mask = self._mask_obj()
            if self.capped is None or size > self.capped[0] or (
                    size == self.capped[0] and mask < self.capped[1]):
                self.capped = (size, mask)
        return 0

    def run_paths(self, bint want_sets, int max_sets, double deadline):
        cdef int s, wi
        self.want_sets = want_sets
        self.cycles = False
        self.max_sets = max_sets
        self.deadline = deadline
        self.best = 1
        for s in range(self.n):
            for wi in range(NW):
                self.used[wi] = 0
            self.used[s >> 6] = (<u64>1) << (s & 63)
            self._extend_path(s, 1)
        if want_sets:
            return self.best, sorted(
                m for m in self.out if bin(m).count("1") == self.best)
        return self.best, None

    def run_cycles(self, int cap, bint want_sets, int max_sets, double deadline):
        """want_sets: enumerate optimum cycle sets; else best (size, mask)."""
        cdef int r, wi
        self.want_sets = want_sets
        self.cycles = True
        self.cap = cap
        self.max_sets = max_sets
        self.deadline = deadline
        self.best = 0
        self.capped = None
        for r in range(self.n - 2):
            self.root = r
            self.root_wi = r >> 6
            self.root_word = (<u64>1) << (r & 63)
            for wi in range(NW):
                self.used[wi] = 0
            # vertices below the root never join its cycles
            for wi in range(self.root_wi):
                self.used[wi] = 0xFFFFFFFFFFFFFFFF
            self.used[self.root_wi] = ((<u64>1) << (r & 63)) - 1
            self.used[self.root_wi] |= self.root_word
            self._extend_cycle(r, 1)
        if want_sets:
            return self.best, sorted(
                m for m in self.out if bin(m).count("1") == self.best)
        if self.capped is None:
            return 0, 0
        return self.capped


# ---------------------------------------------------------------------------
# Public entry points (same signatures as the pure module)


def longest_path_length(adj, n, double deadline=0.0):
    if n == 0:
        return 0
    if n <= DP_LIMIT:
        return _lp_dp(adj, n, False, 0, deadline, [])
    return _Search(adj, n).run_paths(False, 0, deadline)[0]


def longest_path_sets(adj, n, max_sets=1_000_000, double deadline=0.0):
    if n == 0:
        return []
    cdef list out = []
    if n <= DP_LIMIT:
        _lp_dp(adj, n, True, max_sets, deadline, out)
        return out
    return _Search(adj, n).run_paths(True, max_sets, deadline)[1]


def longest_cycle_length(adj, n, double deadline=0.0):
    best = 0

    def emit(size, mask):
        nonlocal best
        if size > best:
            best = size

    if n <= DP_LIMIT:
        _lc_dp(adj, n, n, deadline, emit)
        return best
    return _Search(adj, n).run_cycles(n, False, 0, deadline)[0]


def longest_cycle_sets(adj, n, max_sets=1_000_000, double deadline=0.0):
    if n <= DP_LIMIT:
        best = 0
        out = set()

        def emit(size, mask):
            nonlocal best
            if size > best:
                best = size
                out.clear()
            if size == best:
                out.add(mask)
                if len(out) > max_sets:
                    raise CapExceededError(
                        "optimum-set count exceeds cap %d" % max_sets)

        _lc_dp(adj, n, n, deadline, emit)
        return sorted(out)
    return _Search(adj, n).run_cycles(n, True, max_sets, deadline)[1]


def longest_cycle_capped(adj, n, cap, double deadline=0.0):
    if cap < 3:
        return 0, 0
    if n <= DP_LIMIT:
        best = 0
        witness = 0

        def emit(size, mask):
            nonlocal best, witness
            if size > best or (size == best and mask < witness):
                best = size
                witness = mask

        _lc_dp(adj, n, int(cap), deadline, emit)
        return best, witness
    return _Search(adj, n).run_cycles(int(cap), False, 0, deadline)


def mis_size(adj, n, double deadline=0.0):
    if n == 0:
        return 0
    if n > 64:
        raise CapExceededError("compiled MIS kernel is limited to 64 vertices")
    return _mis64(adj, n, deadline)


cdef u64 _MIS_ADJ[64]
# scratch shared within one call; module is effectively single-threaded per
# interpreter because every entry point holds the GIL throughout


cdef int _mis_expand(u64 cand, int size, int best, u64* a,
                     double deadline, u64* nodes) except -1:
    cdef u64 c, pool, clique, low
    cdef int cover, v, u, d, vdeg
    nodes[0] += 1
    if (nodes[0] & CHECK_MASK) == 0:
        _check_deadline(deadline)
    if cand == 0:
        return size if size > best else best
    # greedy clique-cover bound
    cover = 0
    c = cand
    while c:
        low = c & (~c + 1)
        u = CTZLL(low)
        clique = low
        pool = c & a[u]
        while pool:
            low = pool & (~pool + 1)
            u = CTZLL(low)
            clique |= low
            pool &= a[u]
        c &= ~clique
        cover += 1
    if size + cover <= best:
        return best
    # branch on the vertex with most candidate neighbors
    vdeg = -1
    v = -1
    c = cand
    while c:
        low = c & (~c + 1)
        u = CTZLL(low)
        d = POPCLL(a[u] & cand)
        if d > vdeg:
            vdeg = d
            v = u
        c &= c - 1
    best = _mis_expand(cand & ~(a[v] | ((<u64>1) << v)), size + 1, best,
                       a, deadline, nodes)
    best = _mis_expand(cand & ~((<u64>1) << v), size, best, a, deadline, nodes)
    return best


cdef int _mis64(adj, int n, double deadline) except -1:
    cdef u64 a[64]
    cdef u64 free_mask, low, nodes = 0
    cdef int v, best = 0
    for v in range(n):
        a[v] = <u64> adj[v]
    free_mask = (((<u64>1) << (n - 1)) << 1) - 1 if n == 64 else ((<u64>1) << n) - 1
    while free_mask:
        low = free_mask & (~free_mask + 1)
        best += 1
        free_mask &= ~(a[CTZLL(low)] | low)
    return _mis_expand(
        (((<u64>1) << (n - 1)) << 1) - 1 if n == 64 else ((<u64>1) << n) - 1,
        0, best, a, deadline, &nodes)
