"""Shared fixtures: hand-built graphs and independent naive oracles.

The oracles here deliberately avoid the package's kernel: faces are
traced with a dict-based corner walk, cycles are counted from ordered
vertex tuples, and separation is tested with a fresh adjacency DFS.
"""

from itertools import permutations

import pytest

from randsurf.ribbon import Pairing, RibbonGraph, pairing_from_pairs


@pytest.fixture
def theta_torus() -> RibbonGraph:
    """Two vertices, three parallel edges, one face: genus 1."""
    return RibbonGraph(pairing_from_pairs(1, [(1, 4), (2, 5), (3, 6)]))


@pytest.fixture
def theta_sphere() -> RibbonGraph:
    """Two vertices, three parallel edges, three faces: genus 0."""
    return RibbonGraph(pairing_from_pairs(1, [(1, 4), (2, 6), (3, 5)]))


@pytest.fixture
def dumbbell() -> RibbonGraph:
    """Two loops joined by a bridge: genus 0."""
    return RibbonGraph(pairing_from_pairs(1, [(1, 2), (3, 4), (5, 6)]))


@pytest.fixture
def two_tori() -> RibbonGraph:
    """Disconnected: two genus-1 theta components (N=2)."""
    return RibbonGraph(pairing_from_pairs(
        2, [(1, 4), (2, 5), (3, 6), (7, 10), (8, 11), (9, 12)]))


# N=4 dumbbell: two blobs joined by a doubled edge between vertices 4 and 5
# (1-based); the bridge 2-circuit separates, the doubled edge inside the
# left blob does not.
DUMBBELL4_PAIRS = [
    (1, 4), (2, 5),        # vertices 1=2 doubled edge
    (3, 7),                # 1-3
    (6, 8),                # 2-3
    (9, 10),               # 3-4
    (11, 13), (12, 14),    # bridge: 4=5 doubled edge
    (15, 16),              # 5-6
    (17, 19),              # 6-7
    (18, 22),              # 6-8
    (20, 23), (21, 24),    # 7=8 doubled edge
]


@pytest.fixture
def dumbbell4() -> RibbonGraph:
    return RibbonGraph(pairing_from_pairs(4, DUMBBELL4_PAIRS))


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def naive_faces(pairing: Pairing):
    """Face orbits traced on a dict representation of the corner map."""
    n6 = 6 * pairing.n
    sigma = {h + 1: s + 1 for h, s in enumerate(pairing.sigma)}

    def rot(lab):
        v = (lab - 1) // 3
        return 3 * v + ((lab - 1) % 3 + 1) % 3 + 1

    remaining = set(range(1, n6 + 1))
    orbits = []
    while remaining:
        start = min(remaining)
        orbit = []
        h = start
        while h in remaining:
            remaining.discard(h)
            orbit.append(h)
            h = rot(sigma[h])
        orbits.append(orbit)
    return orbits


def naive_components(pairing: Pairing):
    """Vertex sets of connected components, via adjacency-dict DFS."""
    nv = 2 * pairing.n
    adj = {v: set() for v in range(nv)}
    for h, s in enumerate(pairing.sigma):
        adj[h // 3].add(s // 3)
        adj[s // 3].add(h // 3)
    seen = set()
    comps = []
    for v in range(nv):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def naive_cycle_count(pairing: Pairing, k: int) -> int:
    """Number of k-circuits, counted from ordered distinct-vertex tuples.

    A directed rooted circuit is a vertex tuple plus one connecting
    half-edge pair per step; dividing the count by 2k removes root and
    direction.  Slow and only for tiny graphs.
    """
    sigma = pairing.sigma
    nv = 2 * pairing.n

    def half_edges_between(u, v):
        return [(h, sigma[h]) for h in range(3 * u, 3 * u + 3) if sigma[h] // 3 == v]

    total = 0
    for verts in permutations(range(nv), k):
        # connect verts[i] -> verts[i+1] cyclically; each step picks a
        # half-edge pair, and consecutive steps must not reuse a half-edge
        # at the shared vertex.
        choices = [half_edges_between(verts[i], verts[(i + 1) % k])
                   for i in range(k)]
        if any(not c for c in choices):
            continue

        def count_from(i, first_dep, prev_arr):
            if i == k:
                return 1 if prev_arr != first_dep else 0
            acc = 0
            for dep, arr in choices[i]:
                if dep == prev_arr:
                    continue
                acc += count_from(i + 1, first_dep, arr)
            return acc

        if k == 1:
            total += sum(1 for dep, arr in choices[0] if dep != arr)
        else:
            for dep, arr in choices[0]:
                total += count_from(1, dep, arr)
    return total // (2 * k)


def naive_is_separating(pairing: Pairing, edge_pairs) -> bool:
    """Does deleting the given edges split the component of their ends?"""
    nv = 2 * pairing.n
    removed = {frozenset(e) for e in edge_pairs}
    adj = {v: [] for v in range(nv)}
    adj_full = {v: [] for v in range(nv)}
    for h, s in enumerate(pairing.sigma):
        if h < s:
            adj_full[h // 3].append(s // 3)
            adj_full[s // 3].append(h // 3)
            if frozenset((h, s)) not in removed:
                adj[h // 3].append(s // 3)
                adj[s // 3].append(h // 3)

    def reach(adjacency, start):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    start = next(iter(removed))
    v0 = min(start) // 3
    return len(reach(adj, v0)) < len(reach(adj_full, v0))
