"""Pure-Python per-graph kernel: faces, genus, cycles, words, homology.

Half-edges are 0-based: vertex v owns {3v, 3v+1, 3v+2} with rotation
3v -> 3v+1 -> 3v+2 -> 3v.  A graph is an involution array ``sig`` pairing
half-edges (sig[sig[h]] == h, sig[h] != h); vertices number 2N and edges
3N for len(sig) == 6N.

This module is the fallback and the reference: the compiled kernel in
``_fastcore.pyx`` implements the same contract and must agree value for
value (see tests/test_kernel_parity.py).  Cycle enumeration order is part
of the contract: start vertices ascending, start half-edges ascending,
then depth-first trying the left turn before the right turn.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

LANE = "pure"

# Search depth above which traces no longer fit in the compiled kernel's
# 64-bit matrices (max trace at length j is < phi^(j+1)).  Both lanes cap
# at the same depth so results stay identical.
MAX_SEARCH_LEN = 64


def _as_list(sig) -> List[int]:
    return sig.tolist() if hasattr(sig, "tolist") else list(sig)


def rho(h: int) -> int:
    """Next half-edge counterclockwise at the same vertex."""
    return h - h % 3 + (h % 3 + 1) % 3


def check_involution(sig: Sequence[int]) -> None:
    m = len(sig)
    if m == 0 or m % 6:
        raise ValueError("half-edge count must be a positive multiple of 6")
    for h, s in enumerate(sig):
        if not 0 <= s < m or s == h or sig[s] != h:
            raise ValueError(f"not a fixed-point-free involution at half-edge {h}")


def faces(sig) -> List[List[int]]:
    """Orbits of h -> rho(sig[h]); the left-hand-turn circuits.

    Each orbit is listed from its smallest half-edge; orbits are sorted by
    that representative.  The orbits partition the half-edges, so the face
    lengths add up to 6N.
    """
    sig = _as_list(sig)
    seen = bytearray(len(sig))
    out: List[List[int]] = []
    for h0 in range(len(sig)):
        if seen[h0]:
            continue
        orbit = []
        h = h0
        while not seen[h]:
            seen[h] = 1
            orbit.append(h)
            h = rho(sig[h])
        out.append(orbit)
    return out


def _vertex_components(sig: List[int]) -> Tuple[List[int], int]:
    """Union-find over vertices; returns (component id per vertex, count).

    Component ids are dense and ordered by smallest member vertex.
    """
    nv = len(sig) // 3
    parent = list(range(nv))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h, s in enumerate(sig):
        a, b = find(h // 3), find(s // 3)
        if a != b:
            if a < b:
                a, b = b, a
            parent[a] = b
    ids: Dict[int, int] = {}
    comp = [0] * nv
    for v in range(nv):
        r = find(v)
        if r not in ids:
            ids[r] = len(ids)
        comp[v] = ids[r]
    return comp, len(ids)


def genus_info(sig) -> Tuple[List[int], int, int, int]:
    """Per-component genus from the Euler characteristic.

    Returns (genus per component ordered by smallest vertex, total genus,
    component count, face count).  A component with V vertices, E edges
    and F faces is a closed orientable surface piece of genus
    (2 - V + E - F) / 2.
    """
    sig = _as_list(sig)
    comp, ncomp = _vertex_components(sig)
    V = [0] * ncomp
    E = [0] * ncomp
    F = [0] * ncomp
    for v in range(len(sig) // 3):
        V[comp[v]] += 1
    for h, s in enumerate(sig):
        if h < s:
            E[comp[h // 3]] += 1
    face_list = faces(sig)
    for orbit in face_list:
        F[comp[orbit[0] // 3]] += 1
    genus = []
    for c in range(ncomp):
        chi = V[c] - E[c] + F[c]
        if chi % 2:
            raise AssertionError("odd Euler characteristic on a closed surface")
        genus.append((2 - chi) // 2)
    return genus, sum(genus), ncomp, len(face_list)


def _edge_ids(sig: List[int]) -> List[int]:
    eid = [0] * len(sig)
    nxt = 0
    for h, s in enumerate(sig):
        if h < s:
            eid[h] = eid[s] = nxt
            nxt += 1
    return eid


# ---------------------------------------------------------------------------
# cycle walks
#
# A circuit is a vertex-simple closed path.  Canonical form: the start
# vertex is the smallest on the circuit and, of the two traversal
# directions, the one whose first departure half-edge is smaller than the
# final arrival half-edge.  Every circuit is emitted exactly once.
# ---------------------------------------------------------------------------

_MAT_L = (1, 1, 0, 1)
_MAT_R = (1, 0, 1, 1)


def _mul(m, g):
    a, b, c, d = m
    e, f, g2, h = g
    return (a * e + b * g2, a * f + b * h, c * e + d * g2, c * f + d * h)


def _walk(sig: List[int], max_len: int):
    """Yield (length, departures tuple, word string) for every circuit."""
    if max_len < 1:
        return
    nv = len(sig) // 3
    visited = bytearray(nv)
    deps = [0] * max_len
    letters = [""] * (max_len + 1)

    def extend(d: int, depth: int):
        a = sig[d]
        u = a // 3
        if u == v0:
            d0 = deps[0]
            if d0 < a:
                w0 = "L" if d0 == rho(a) else "R"
                yield (depth, tuple(deps[:depth]),
                       w0 + "".join(letters[1:depth]))
            return
        if u < v0 or visited[u] or depth == max_len:
            return
        visited[u] = 1
        r = rho(a)
        for nd, ch in ((r, "L"), (rho(r), "R")):
            deps[depth] = nd
            letters[depth] = ch
            yield from extend(nd, depth + 1)
        visited[u] = 0

    for v0 in range(nv):
        visited[v0] = 1
        base = 3 * v0
        for d0 in (base, base + 1, base + 2):
            deps[0] = d0
            yield from extend(d0, 1)
        visited[v0] = 0


def _word_trace(word: str) -> int:
    a, b, c, d = 1, 0, 0, 1
    for ch in word:
        if ch == "L":
            a, b, c, d = a, a + b, c, c + d
        else:
            a, b, c, d = a + b, b, c + d, d
    return a + d


def canonical_word(word: str) -> str:
    """Smallest representative under rotation and reverse-swap (L < R)."""
    swapped = word[::-1].translate(_SWAP)
    best = word
    for variant in (word, swapped):
        for i in range(len(variant)):
            rot = variant[i:] + variant[:i]
            if rot < best:
                best = rot
    return best


_SWAP = str.maketrans("LR", "RL")


def enumerate_cycles(sig, max_len: int) -> List[Tuple[Tuple[int, ...], str]]:
    """All circuits with at most ``max_len`` edges, canonical and sorted.

    Returns (departure half-edges, turn word) pairs sorted by length then
    by the departure tuple.
    """
    sig = _as_list(sig)
    out = [(deps, word) for _, deps, word in _walk(sig, max_len)]
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def count_cycles(sig, max_len: int) -> List[int]:
    """Circuit counts by edge count: result[k-1] = number of k-circuits."""
    sig = _as_list(sig)
    counts = [0] * max_len
    for k, _, _ in _walk(sig, max_len):
        counts[k - 1] += 1
    return counts


def count_word_classes(sig, max_len: int) -> Dict[str, int]:
    """Circuit counts keyed by canonical word class, lengths <= max_len."""
    sig = _as_list(sig)
    counts: Dict[str, int] = {}
    for _, _, word in _walk(sig, max_len):
        key = canonical_word(word)
        counts[key] = counts.get(key, 0) + 1
    return counts


# ---------------------------------------------------------------------------
# GF(2) homology of the embedded graph
#
# Rows of the face-edge matrix are bitsets (python ints) over edge ids;
# a circuit is null-homologous on the glued surface iff its edge vector
# lies in the row span.
# ---------------------------------------------------------------------------

def face_edge_rows(sig) -> Tuple[List[int], int]:
    """(bitset per face over edge ids, edge count)."""
    sig = _as_list(sig)
    eid = _edge_ids(sig)
    rows = []
    for orbit in faces(sig):
        row = 0
        for h in orbit:
            row ^= 1 << eid[h]
        rows.append(row)
    return rows, len(sig) // 2


def gf2_basis(rows: List[int]) -> List[int]:
    """Row-reduce to an independent basis, each row keyed by its top bit."""
    basis: List[int] = []
    for row in rows:
        row = gf2_reduce(row, basis)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    return basis


def gf2_reduce(vec: int, basis: List[int]) -> int:
    for b in basis:
        if vec ^ b < vec:
            vec ^= b
    return vec


def gf2_in_span(vec: int, basis: List[int]) -> bool:
    return gf2_reduce(vec, basis) == 0


def _cycle_edge_vec(deps: Tuple[int, ...], eid: List[int]) -> int:
    vec = 0
    for d in deps:
        vec ^= 1 << eid[d]
    return vec


def essential_search(sig, want_trace: bool) -> Tuple[int, int, int, bool]:
    """Shortest essential circuit data: (m_ell, min trace, skips, capped).

    A circuit counts as essential when its word is mixed (not a power of a
    single letter) and its edge vector is not null-homologous over GF(2);
    null-homologous mixed circuits are skipped and counted in ``skips`` so
    the contractibility proxy stays observable.  m_ell is the edge count
    of the first essential circuit (0 on genus-0 surfaces); the minimal
    trace search keeps deepening while a shorter geodesic is still
    possible, i.e. while length+1 < best trace.  ``capped`` flags the
    (never yet observed) event that the depth cap ended the search early.
    """
    sig = _as_list(sig)
    _, total_genus, _, _ = genus_info(sig)
    if total_genus == 0:
        return 0, 0, 0, False
    eid = _edge_ids(sig)
    rows, _ = face_edge_rows(sig)
    basis = gf2_basis(rows)
    cap = min(len(sig) // 3, MAX_SEARCH_LEN)
    mell = 0
    best = 0
    skips = 0
    j = 1
    while j <= cap:
        if mell and not want_trace:
            break
        if best and j + 1 >= best:
            break
        for k, deps, word in _walk(sig, j):
            if k != j:
                continue
            if word.count(word[0]) == k:   # all-L or all-R: a face
                continue
            if gf2_in_span(_cycle_edge_vec(deps, eid), basis):
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


def has_short_separating(sig, bound: int) -> bool:
    """True iff some circuit with 2..bound edges disconnects its component.

    Disconnection counts isolated vertices: the component splits iff not
    every vertex of it is reachable once the circuit's edges are removed.
    """
    if bound < 2:
        return False
    sig = _as_list(sig)
    eid = _edge_ids(sig)
    comp, _ = _vertex_components(sig)
    comp_size: Dict[int, int] = {}
    for v in range(len(sig) // 3):
        comp_size[comp[v]] = comp_size.get(comp[v], 0) + 1
    bound = min(bound, len(sig) // 3, MAX_SEARCH_LEN)
    for k, deps, _ in _walk(sig, bound):
        if k < 2:
            continue
        removed = {eid[d] for d in deps}
        start = deps[0] // 3
        target = comp_size[comp[start]]
        seen = {start}
        queue = [start]
        while queue:
            v = queue.pop()
            for h in (3 * v, 3 * v + 1, 3 * v + 2):
                if eid[h] in removed:
                    continue
                u = sig[h] // 3
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) < target:
            return True
    return False


def graph_stats(sig, xk_max: int = 0, word_max: int = 0,
                want_mell: bool = False, want_trace: bool = False,
                sep_bound: int = 0) -> Dict[str, object]:
    """One-stop per-sample statistics used by the Monte Carlo harness."""
    sig = _as_list(sig)
    genus_list, total_genus, ncomp, nfaces = genus_info(sig)
    out: Dict[str, object] = {
        "genus": total_genus,
        "components": ncomp,
        "faces": nfaces,
    }
    if xk_max:
        out["xk"] = count_cycles(sig, xk_max)
    if word_max:
        out["words"] = count_word_classes(sig, word_max)
    if want_mell or want_trace:
        mell, trace, skips, capped = essential_search(sig, want_trace)
        out["mell"] = mell
        out["min_trace"] = trace
        out["proxy_skips"] = skips
        out["capped"] = capped
    if sep_bound:
        out["separating"] = has_short_separating(sig, sep_bound)
    return out
