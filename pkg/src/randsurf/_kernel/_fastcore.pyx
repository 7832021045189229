# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-graph kernel; same contract and values as ``_pycore``.

The depth-first circuit walk dominates Monte Carlo runtime, so it runs on
C integers here; closures are rare and assemble Python objects.  Walk
order (start vertex ascending, start half-edge ascending, left turn
first) matches the pure kernel exactly.
"""

import numpy as np

LANE = "compiled"
MAX_SEARCH_LEN = 64


cdef inline int _rho(int h) nogil:
    return h - h % 3 + (h % 3 + 1) % 3


def rho(int h):
    return _rho(h)


cdef int[::1] _sig_view(object sig, object keep):
    arr = np.ascontiguousarray(sig, dtype=np.int32)
    keep.append(arr)
    return arr


def check_involution(sig):
    arr = np.ascontiguousarray(sig, dtype=np.int32)
    cdef int[::1] s = arr
    cdef Py_ssize_t m = s.shape[0]
    cdef Py_ssize_t h
    if m == 0 or m % 6:
        raise ValueError("half-edge count must be a positive multiple of 6")
    for h in range(m):
        if not 0 <= s[h] < m or s[h] == h or s[s[h]] != h:
            raise ValueError(f"not a fixed-point-free involution at half-edge {h}")


def faces(sig):
    """Orbits of h -> rho(sig[h]), each from its smallest half-edge."""
    keep = []
    cdef int[::1] s = _sig_view(sig, keep)
    cdef Py_ssize_t m = s.shape[0]
    seen_arr = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef Py_ssize_t h0
    cdef int h
    out = []
    for h0 in range(m):
        if seen[h0]:
            continue
        orbit = []
        h = <int> h0
        while not seen[h]:
            seen[h] = 1
            orbit.append(h)
            h = _rho(s[h])
        out.append(orbit)
    return out


cdef int _find(int[::1] parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def genus_info(sig):
    """(genus per component, total genus, component count, face count)."""
    keep = []
    cdef int[::1] s = _sig_view(sig, keep)
    cdef Py_ssize_t m = s.shape[0]
    cdef int nv = <int> (m // 3)
    parent_arr = np.arange(nv, dtype=np.int32)
    cdef int[::1] parent = parent_arr
    cdef int h, a, b
    for h in range(<int> m):
        a = _find(parent, h // 3)
        b = _find(parent, s[h] // 3)
        if a != b:
            if a < b:
                a, b = b, a
            parent[a] = b
    comp_arr = np.empty(nv, dtype=np.int32)
    cdef int[::1] comp = comp_arr
    ids = {}
    cdef int v, r
    for v in range(nv):
        r = _find(parent, v)
        if r not in ids:
            ids[r] = len(ids)
        comp[v] = ids[r]
    cdef int ncomp = len(ids)
    V_arr = np.zeros(ncomp, dtype=np.int64)
    E_arr = np.zeros(ncomp, dtype=np.int64)
    F_arr = np.zeros(ncomp, dtype=np.int64)
    cdef long long[::1] V = V_arr, E = E_arr, F = F_arr
    for v in range(nv):
        V[comp[v]] += 1
    for h in range(<int> m):
        if h < s[h]:
            E[comp[h // 3]] += 1
    face_list = faces(keep[0])
    for orbit in face_list:
        F[comp[(<int> orbit[0]) // 3]] += 1
    genus = []
    cdef long long chi
    cdef long long total = 0
    cdef int c
    for c in range(ncomp):
        chi = V[c] - E[c] + F[c]
        if chi % 2:
            raise AssertionError("odd Euler characteristic on a closed surface")
        genus.append(int((2 - chi) // 2))
        total += (2 - chi) // 2
    return genus, int(total), ncomp, len(face_list)


cdef class _Walker:
    """Depth-first circuit walk with C-level state.

    Emits each circuit once, in canonical orientation: start vertex
    minimal, first departure smaller than final arrival.
    """
    cdef int[::1] sig
    cdef unsigned char[::1] visited
    cdef int[::1] deps
    cdef unsigned char[::1] letters
    cdef int nv, max_len, exact_len, v0
    cdef bint want_items
    cdef list items          # (deps tuple, word str) when want_items
    cdef object counts       # python list of ints indexed by length-1
    # scratch kept alive
    cdef object _k1, _k2, _k3

    def __init__(self, sig, int max_len, bint want_items, int exact_len=0):
        arr = np.ascontiguousarray(sig, dtype=np.int32)
        self._k1 = arr
        self.sig = arr
        self.nv = <int> (arr.shape[0] // 3)
        self.max_len = max_len
        self.exact_len = exact_len
        self.want_items = want_items
        vis = np.zeros(self.nv, dtype=np.uint8)
        self._k2 = vis
        self.visited = vis
        buf = np.zeros((max_len + 1, ), dtype=np.int32)
        self._k3 = (buf, np.zeros(max_len + 2, dtype=np.uint8))
        self.deps = buf
        self.letters = self._k3[1]
        self.items = []
        self.counts = [0] * max_len

    cdef void _emit(self, int depth, int a):
        cdef int d0 = self.deps[0]
        cdef int i
        if self.exact_len and depth != self.exact_len:
            return
        self.counts[depth - 1] = self.counts[depth - 1] + 1
        if self.want_items:
            w0 = "L" if d0 == _rho(a) else "R"
            chars = [w0]
            for i in range(1, depth):
                chars.append("L" if self.letters[i] else "R")
            self.items.append((tuple([self.deps[i] for i in range(depth)]),
                               "".join(chars)))

    cdef void _extend(self, int d, int depth):
        cdef int a = self.sig[d]
        cdef int u = a // 3
        cdef int r, nd
        if u == self.v0:
            if self.deps[0] < a:
                self._emit(depth, a)
            return
        if u < self.v0 or self.visited[u] or depth == self.max_len:
            return
        self.visited[u] = 1
        r = _rho(a)
        self.deps[depth] = r
        self.letters[depth] = 1
        self._extend(r, depth + 1)
        nd = _rho(r)
        self.deps[depth] = nd
        self.letters[depth] = 0
        self._extend(nd, depth + 1)
        self.visited[u] = 0

    def run(self):
        cdef int v0, d0
        if self.max_len < 1:
            return self.items, self.counts
        for v0 in range(self.nv):
            self.v0 = v0
            self.visited[v0] = 1
            for d0 in range(3 * v0, 3 * v0 + 3):
                self.deps[0] = d0
                self._extend(d0, 1)
            self.visited[v0] = 0
        return self.items, self.counts


_SWAP = str.maketrans("LR", "RL")


def canonical_word(word):
    """Smallest representative under rotation and reverse-swap (L < R)."""
    swapped = word[::-1].translate(_SWAP)
    best = word
    for variant in (word, swapped):
        for i in range(len(variant)):
            rot = variant[i:] + variant[:i]
            if rot < best:
                best = rot
    return best


def enumerate_cycles(sig, int max_len):
    """All circuits with at most ``max_len`` edges, canonical and sorted."""
    items, _ = _Walker(sig, max_len, True).run()
    items.sort(key=lambda t: (len(t[0]), t[0]))
    return items


def count_cycles(sig, int max_len):
    """Circuit counts by edge count: result[k-1] = number of k-circuits."""
    _, counts = _Walker(sig, max_len, False).run()
    return counts


def count_word_classes(sig, int max_len):
    """Circuit counts keyed by canonical word class, lengths <= max_len."""
    items, _ = _Walker(sig, max_len, True).run()
    counts = {}
    for _, word in items:
        key = canonical_word(word)
        counts[key] = counts.get(key, 0) + 1
    return counts


def face_edge_rows(sig):
    """(bitset per face over edge ids, edge count)."""
    keep = []
    cdef int[::1] s = _sig_view(sig, keep)
    cdef Py_ssize_t m = s.shape[0]
    eid_arr = np.empty(m, dtype=np.int32)
    cdef int[::1] eid = eid_arr
    cdef int h, nxt = 0
    for h in range(<int> m):
        if h < s[h]:
            eid[h] = nxt
            eid[s[h]] = nxt
            nxt += 1
    cdef int nbytes = (nxt + 7) // 8
    rows = []
    cdef int e
    for orbit in faces(keep[0]):
        buf = bytearray(nbytes)
        for h_obj in orbit:
            e = eid[<int> h_obj]
            buf[e >> 3] ^= 1 << (e & 7)
        rows.append(int.from_bytes(bytes(buf), "little"))
    return rows, int(m // 2)


def gf2_reduce(vec, basis):
    for b in basis:
        if vec ^ b < vec:
            vec ^= b
    return vec


def gf2_basis(rows):
    basis = []
    for row in rows:
        row = gf2_reduce(row, basis)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    return basis


def gf2_in_span(vec, basis):
    return gf2_reduce(vec, basis) == 0


def _word_trace(word):
    a, b, c, d = 1, 0, 0, 1
    for ch in word:
        if ch == "L":
            a, b, c, d = a, a + b, c, c + d
        else:
            a, b, c, d = a + b, b, c + d, d
    return a + d


def essential_search(sig, bint want_trace):
    """(m_ell, minimal essential trace, proxy skips, capped flag).

    Deepens one circuit length at a time; each level's circuits come from
    the compiled walker and are filtered in Python (few per graph).
    """
    keep = []
    cdef int[::1] s = _sig_view(sig, keep)
    arr = keep[0]
    _, total_genus, _, _ = genus_info(arr)
    if total_genus == 0:
        return 0, 0, 0, False
    eid_arr = np.empty(s.shape[0], dtype=np.int64)
    cdef long long[::1] eid = eid_arr
    cdef int h, nxt = 0
    for h in range(<int> s.shape[0]):
        if h < s[h]:
            eid[h] = nxt
            eid[s[h]] = nxt
            nxt += 1
    rows, _ = face_edge_rows(arr)
    basis = gf2_basis(rows)
    cdef int cap = min(<int> (s.shape[0] // 3), MAX_SEARCH_LEN)
    cdef int mell = 0, j = 1
    best = 0
    skips = 0
    while j <= cap:
        if mell and not want_trace:
            break
        if best and j + 1 >= best:
            break
        items, _ = _Walker(arr, j, True, exact_len=j).run()
        for deps, word in items:
            if word.count(word[0]) == len(word):
                continue
            vec = 0
            for d in deps:
                vec ^= 1 << <int> eid[<int> d]
            if gf2_in_span(vec, basis):
                skips += 1
                continue
            if mell == 0:
                mell = j
            if not want_trace:
                break
            t = _word_trace(word)
            if best == 0 or t < best:
                best = t
        j += 1
    capped = mell == 0 or (want_trace and best > cap + 2)
    return mell, best, skips, capped


def has_short_separating(sig, int bound):
    """True iff some circuit with 2..bound edges disconnects its component."""
    if bound < 2:
        return False
    keep = []
    cdef int[::1] s = _sig_view(sig, keep)
    arr = keep[0]
    cdef Py_ssize_t m = s.shape[0]
    cdef int nv = <int> (m // 3)
    eid_arr = np.empty(m, dtype=np.int32)
    cdef int[::1] eid = eid_arr
    cdef int h, nxt = 0
    for h in range(<int> m):
        if h < s[h]:
            eid[h] = nxt
            eid[s[h]] = nxt
            nxt += 1
    # component sizes via union-find
    parent_arr = np.arange(nv, dtype=np.int32)
    cdef int[::1] parent = parent_arr
    cdef int a, b
    for h in range(<int> m):
        a = _find(parent, h // 3)
        b = _find(parent, s[h] // 3)
        if a != b:
            if a < b:
                a, b = b, a
            parent[a] = b
    size_arr = np.zeros(nv, dtype=np.int32)
    cdef int[::1] csize = size_arr
    cdef int v
    for v in range(nv):
        csize[_find(parent, v)] += 1
    cdef int real_bound = min(bound, nv, MAX_SEARCH_LEN)
    items, _ = _Walker(arr, real_bound, True).run()
    removed_arr = np.zeros(m // 2, dtype=np.uint8)
    cdef unsigned char[::1] removed = removed_arr
    queue_arr = np.empty(nv, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    seen_arr = np.zeros(nv, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef int qlen, reached, start, u, target, d
    for deps, _ in items:
        if len(deps) < 2:
            continue
        for d_obj in deps:
            removed[eid[<int> d_obj]] = 1
        start = (<int> deps[0]) // 3
        target = csize[_find(parent, start)]
        seen_arr[:] = 0
        seen[start] = 1
        queue[0] = start
        qlen = 1
        reached = 1
        while qlen:
            qlen -= 1
            v = queue[qlen]
            for h in range(3 * v, 3 * v + 3):
                if removed[eid[h]]:
                    continue
                u = s[h] // 3
                if not seen[u]:
                    seen[u] = 1
                    reached += 1
                    queue[qlen] = u
                    qlen += 1
        for d_obj in deps:
            removed[eid[<int> d_obj]] = 0
        if reached < target:
            return True
    return False


def graph_stats(sig, int xk_max=0, int word_max=0,
                bint want_mell=False, bint want_trace=False,
                int sep_bound=0):
    """One-stop per-sample statistics used by the Monte Carlo harness."""
    arr = np.ascontiguousarray(sig, dtype=np.int32)
    genus_list, total_genus, ncomp, nfaces = genus_info(arr)
    out = {
        "genus": total_genus,
        "components": ncomp,
        "faces": nfaces,
    }
    if xk_max:
        out["xk"] = count_cycles(arr, xk_max)
    if word_max:
        out["words"] = count_word_classes(arr, word_max)
    if want_mell or want_trace:
        mell, trace, skips, capped = essential_search(arr, want_trace)
        out["mell"] = mell
        out["min_trace"] = trace
        out["proxy_skips"] = skips
        out["capped"] = capped
    if sep_bound:
        out["separating"] = has_short_separating(arr, sep_bound)
    return out
