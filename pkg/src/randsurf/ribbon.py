"""Random cubic ribbon graphs from pairings of labeled half-edges.

A surface glued from 2N triangles is encoded by a perfect matching on the
6N labeled triangle sides; dually, the matching pairs the 6N half-edges
of a cubic graph on 2N vertices whose rotation at vertex i is the fixed
cyclic order (3i-2, 3i-1, 3i).  Faces of the embedding are the
left-hand-turn circuits and the genus follows from the Euler
characteristic, component by component.

Labels are 1-based in every public interface; internal arrays are
0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, List, Sequence, Tuple

import numpy as np

from . import _kernel


class PairingError(ValueError):
    """Invalid half-edge pairing."""


class LabelRangeError(PairingError):
    pass


class SelfPairError(PairingError):
    pass


class DuplicateLabelError(PairingError):
    pass


class MissingLabelError(PairingError):
    pass


@dataclass(frozen=True)
class Pairing:
    """A fixed-point-free involution on {1, ..., 6n}; one random surface.

    ``sigma`` is the 0-based involution array; build instances with
    :func:`pairing_from_pairs` or :func:`sample_uniform`.
    """

    n: int
    sigma: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.sigma) != 6 * self.n:
            raise PairingError(f"need 6n = {6 * self.n} half-edges, got {len(self.sigma)}")
        _kernel.check_involution(self.sigma)

    def pairs(self) -> List[Tuple[int, int]]:
        """1-based pairs (a, b) with a < b, sorted by a."""
        return [(h + 1, s + 1) for h, s in enumerate(self.sigma) if h < s]

    def partner(self, label: int) -> int:
        """1-based partner of a 1-based half-edge label."""
        if not 1 <= label <= 6 * self.n:
            raise LabelRangeError(f"label {label} outside 1..{6 * self.n}")
        return self.sigma[label - 1] + 1

    def sigma_array(self) -> np.ndarray:
        return np.asarray(self.sigma, dtype=np.int32)


def pairing_from_pairs(n: int, pairs: Iterable[Tuple[int, int]]) -> Pairing:
    """Validated pairing from 1-based label pairs covering {1, ..., 6n}."""
    if n < 1:
        raise PairingError("n must be positive")
    m = 6 * n
    sigma = [-1] * m
    for a, b in pairs:
        for lab in (a, b):
            if not 1 <= lab <= m:
                raise LabelRangeError(f"label {lab} outside 1..{m}")
        if a == b:
            raise SelfPairError(f"label {a} paired with itself")
        if sigma[a - 1] != -1 or sigma[b - 1] != -1:
            dup = a if sigma[a - 1] != -1 else b
            raise DuplicateLabelError(f"label {dup} appears in more than one pair")
        sigma[a - 1] = b - 1
        sigma[b - 1] = a - 1
    missing = [h + 1 for h, s in enumerate(sigma) if s == -1]
    if missing:
        raise MissingLabelError(f"labels never paired: {missing[:8]}"
                                + ("..." if len(missing) > 8 else ""))
    return Pairing(n=n, sigma=tuple(sigma))


def rotation(label: int) -> int:
    """Cyclic successor of a 1-based half-edge at its vertex."""
    return _kernel.rho(label - 1) + 1


@dataclass(frozen=True)
class RibbonGraph:
    """A pairing together with the fixed rotation system; immutable.

    Derived data (faces, components, genus) is computed once on first use
    and cached, so instances are cheap to share between threads.
    """

    pairing: Pairing
    _sigma: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_sigma", self.pairing.sigma_array())

    @property
    def n(self) -> int:
        return self.pairing.n

    @property
    def num_vertices(self) -> int:
        return 2 * self.pairing.n

    @property
    def num_edges(self) -> int:
        return 3 * self.pairing.n

    @cached_property
    def faces(self) -> List[List[int]]:
        """Left-hand-turn orbits, 1-based half-edge labels."""
        return [[h + 1 for h in orbit] for orbit in _kernel.faces(self._sigma)]

    @cached_property
    def _genus_info(self):
        return _kernel.genus_info(self._sigma)

    @property
    def genus_per_component(self) -> List[int]:
        return list(self._genus_info[0])

    @property
    def total_genus(self) -> int:
        return self._genus_info[1]

    @property
    def num_components(self) -> int:
        return self._genus_info[2]

    @property
    def num_faces(self) -> int:
        return self._genus_info[3]


def faces(g: RibbonGraph) -> List[List[int]]:
    return g.faces


def genus(g: RibbonGraph) -> Tuple[List[int], int]:
    """(genus per component, total genus)."""
    return g.genus_per_component, g.total_genus


def sample_sigma(n: int, seed: int, stream: int = 0) -> np.ndarray:
    """Uniform involution as a raw 0-based array (hot path for the harness).

    A seeded permutation of the 6n labels is split into consecutive
    pairs; every pairing has probability 1/(6n-1)!!.  The (seed, stream)
    pair fully determines the result; distinct streams are statistically
    independent.
    """
    if n < 1:
        raise ValueError("n must be positive")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    rng = np.random.Generator(np.random.PCG64(ss))
    perm = rng.permutation(6 * n)
    sigma = np.empty(6 * n, dtype=np.int32)
    sigma[perm[0::2]] = perm[1::2]
    sigma[perm[1::2]] = perm[0::2]
    return sigma


def sample_uniform(n: int, seed: int, stream: int = 0) -> Pairing:
    """Uniform random pairing, reproducible from (seed, stream)."""
    return Pairing(n=n, sigma=tuple(int(x) for x in sample_sigma(n, seed, stream)))


def save_pairing(p: Pairing, fp: IO[str]) -> None:
    """Text format: first line n, then 3n lines "a b" with a < b, sorted."""
    fp.write(f"{p.n}\n")
    for a, b in p.pairs():
        fp.write(f"{a} {b}\n")


def load_pairing(fp: IO[str]) -> Pairing:
    lines = [ln.strip() for ln in fp if ln.strip()]
    if not lines:
        raise PairingError("empty pairing file")
    try:
        n = int(lines[0])
    except ValueError:
        raise PairingError(f"first line must be n, got {lines[0]!r}") from None
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise PairingError(f"malformed pair line {ln!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    return pairing_from_pairs(n, pairs)
