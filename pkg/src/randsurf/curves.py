"""Circuits on a ribbon graph: words, homology, systole and separation.

A circuit is a vertex-simple closed path; its turn word determines the
hyperbolic length of the corresponding geodesic, and its GF(2) class
relative to the face boundaries decides whether it separates the glued
surface.  Null-homologous circuits (and the all-same-letter circuits
that bound cusps) stand in for contractible ones: that proxy can only
overestimate triviality, so searches expose a counter for how often it
fired.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import _kernel
from .ribbon import RibbonGraph
from .series import geodesic_length
from .words import Word, canonicalize

_SWAP = str.maketrans("LR", "RL")


@dataclass(frozen=True)
class Cycle:
    """A vertex-simple circuit in canonical orientation.

    ``steps`` lists (departure, arrival) half-edge labels, 1-based; the
    start vertex is the smallest on the circuit and the direction is fixed
    by departure < final arrival, so equal circuits compare equal.
    """

    steps: Tuple[Tuple[int, int], ...]
    word: Word

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def canonical_key(self) -> Tuple[int, ...]:
        return tuple(d for d, _ in self.steps)

    def vertices(self) -> List[int]:
        """1-based vertices in traversal order."""
        return [(d - 1) // 3 + 1 for d, _ in self.steps]

    def edge_labels(self) -> List[int]:
        """Each edge named by its smaller half-edge label."""
        return [min(d, a) for d, a in self.steps]


def _cycle_from_raw(g: RibbonGraph, deps: Tuple[int, ...], word: str) -> Cycle:
    sigma = g.pairing.sigma
    steps = tuple((d + 1, sigma[d] + 1) for d in deps)
    return Cycle(steps=steps, word=Word(word))


def enumerate_cycles(g: RibbonGraph, max_len: int) -> List[Cycle]:
    """Every circuit with at most ``max_len`` edges, exactly once.

    Loops and parallel-edge 2-circuits are included; parallel edges are
    distinguished by half-edge identity.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    raw = _kernel.enumerate_cycles(g.pairing.sigma_array(), max_len)
    return [_cycle_from_raw(g, deps, word) for deps, word in raw]


def cycle_word(c: Cycle) -> Word:
    """Turn word picked up along the circuit (one letter per vertex)."""
    return c.word


def walk_word(g: RibbonGraph, departures: List[int]) -> Word:
    """Turn word of an arbitrary closed walk given by 1-based departures.

    Each consecutive pair must be linked by the pairing; the walk need not
    be vertex-simple (faces, for instance, may repeat vertices).
    """
    sigma = g.pairing.sigma
    k = len(departures)
    letters = []
    for i, dep in enumerate(departures):
        arr = sigma[departures[i - 1] - 1] + 1
        if (arr - 1) // 3 != (dep - 1) // 3:
            raise ValueError("consecutive steps not linked by the pairing")
        letters.append("L" if _kernel.rho(arr - 1) == dep - 1 else "R")
    if k == 0:
        raise ValueError("empty walk")
    return Word("".join(letters))


@dataclass(frozen=True)
class HomologyBasis:
    """GF(2) face-edge data of a graph; rows are bitsets over edge ids."""

    rows: Tuple[int, ...]
    basis: Tuple[int, ...]
    num_edges: int

    @property
    def rank(self) -> int:
        return len(self.basis)


def homology_basis(g: RibbonGraph) -> HomologyBasis:
    rows, m = _kernel.face_edge_rows(g.pairing.sigma_array())
    return HomologyBasis(rows=tuple(rows), basis=tuple(_kernel.gf2_basis(rows)),
                         num_edges=m)


def _edge_vec(g: RibbonGraph, c: Cycle) -> int:
    sigma = g.pairing.sigma
    eid = {}
    nxt = 0
    for h, s in enumerate(sigma):
        if h < s:
            eid[h] = nxt
            eid[s] = nxt
            nxt += 1
    vec = 0
    for d, _ in c.steps:
        vec ^= 1 << eid[d - 1]
    return vec


def is_null_homologous(basis: HomologyBasis, g: RibbonGraph, c: Cycle) -> bool:
    """True iff the circuit's edge vector lies in the span of the faces.

    On the closed surface a simple circuit separates iff it is
    null-homologous mod 2.
    """
    if basis.num_edges != g.num_edges:
        raise ValueError("basis built from a different graph")
    return _kernel.gf2_in_span(_edge_vec(g, c), list(basis.basis))


def is_graph_separating(g: RibbonGraph, c: Cycle) -> bool:
    """True iff deleting the circuit's edges disconnects its component.

    Vertices left without edges count as components of their own.
    """
    sigma = g.pairing.sigma
    removed = {min(d - 1, a - 1) for d, a in c.steps}
    start = (c.steps[0][0] - 1) // 3
    # component of the start vertex in the intact graph
    comp = {start}
    queue = [start]
    while queue:
        v = queue.pop()
        for h in (3 * v, 3 * v + 1, 3 * v + 2):
            u = sigma[h] // 3
            if u not in comp:
                comp.add(u)
                queue.append(u)
    # reachability once the circuit's edges are gone
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop()
        for h in (3 * v, 3 * v + 1, 3 * v + 2):
            if min(h, sigma[h]) in removed:
                continue
            u = sigma[h] // 3
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) < len(comp)


def m_ell(g: RibbonGraph) -> int:
    """Edge count of the shortest essential circuit; 0 on genus 0.

    Essential means: mixed turn word and not null-homologous.  The search
    deepens one edge at a time and terminates because positive genus
    guarantees a circuit outside the face span.
    """
    mell, _, _, capped = _kernel.essential_search(g.pairing.sigma_array(), False)
    if capped and g.total_genus > 0:
        raise RuntimeError("essential circuit search hit the depth cap")
    return mell


def systole_estimate(g: RibbonGraph) -> Optional[float]:
    """Length of the shortest essential geodesic, None on genus 0.

    Minimizes 2*acosh(trace/2) over essential circuits, deepening the
    circuit length while a smaller trace is still possible (a mixed word
    of length j has trace at least j+1).
    """
    mell, trace, _, capped = _kernel.essential_search(g.pairing.sigma_array(), True)
    if mell == 0:
        return None
    if capped:
        raise RuntimeError("essential circuit search hit the depth cap")
    return geodesic_length(trace)


def essential_circuit_stats(g: RibbonGraph) -> Tuple[int, int, int, bool]:
    """(m_ell, minimal essential trace, proxy skip count, capped flag)."""
    return _kernel.essential_search(g.pairing.sigma_array(), True)


def has_short_separating_cycle(g: RibbonGraph, bound: int) -> bool:
    """True iff some circuit with 2..bound edges separates the graph."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    return _kernel.has_short_separating(g.pairing.sigma_array(), bound)


def word_class_of_cycle(c: Cycle):
    """Equivalence class of the circuit's word (direction-independent)."""
    return canonicalize(c.word)
