"""Closed-form expectations over pairings, in exact rational arithmetic.

Everything here evaluates an explicit product or sum of factorials and
binomials; floats appear only at the reporting boundary.  The companion
oracle :func:`enumerate_all_pairings` streams every pairing for tiny N so
the formulas can be checked against full enumeration with zero tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterator

from .ribbon import Pairing
from .words import WordClass


def omega_count(n: int) -> int:
    """Number of pairings of 6n labels: (6n-1)!! = (6n-1)(6n-3)...3.1."""
    if n < 1:
        raise ValueError("n must be positive")
    out = 1
    for i in range(1, 6 * n, 2):
        out *= i
    return out


def omega_ordered_count(n: int) -> int:
    """Ordered pairings (a sequence of 3n unordered pairs): (6n)!/2^(3n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return factorial(6 * n) // 2 ** (3 * n)


def _falling(x: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= x - i
    return out


def _odd_falling(x: int, k: int) -> int:
    """(x-1)(x-3)...(x-2k+1)."""
    out = 1
    for i in range(1, k + 1):
        out *= x - 2 * i + 1
    return out


def expected_xk(n: int, k: int) -> Fraction:
    """Exact expected number of k-circuits on a random graph of 2n vertices.

    (6^k / 2k) * 2n(2n-1)...(2n-k+1) / ((6n-1)(6n-3)...(6n-2k+1)).
    Increasing in n for k >= 3 with limit 2^k/(2k); for k <= 2 the limit
    is approached from above instead.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > 2 * n:
        raise ValueError(f"no {k}-circuits on {2 * n} vertices")
    return Fraction(6 ** k * _falling(2 * n, k), 2 * k * _odd_falling(6 * n, k))


def expected_z_class(n: int, cls: WordClass) -> Fraction:
    """Exact expected number of circuits carrying the given word class.

    (|class| / 2|w|) * 3^|w| * 2n...(2n-|w|+1) / ((6n-1)...(6n-2|w|+1)),
    with limit |class|/(2|w|) as n grows.
    """
    k = cls.length
    if k > 2 * n:
        raise ValueError(f"no {k}-circuits on {2 * n} vertices")
    return Fraction(cls.size * 3 ** k * _falling(2 * n, k),
                    2 * k * _odd_falling(6 * n, k))


def _comb0(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def omega_nk_count(n: int, k: int) -> Fraction:
    """Ordered configurations on 2n vertices with k of degree 1, rest cubic.

    6^k * C(2n, k) * (6n-2k)! / 2^(3n); the k degree-1 vertices each keep
    one of their three half-edges and the remaining 6n-2k half-edges are
    matched in an ordered list of pairs.
    """
    if not 0 <= k <= 2 * n:
        raise ValueError(f"k must lie in 0..{2 * n}")
    return Fraction(6 ** k * comb(2 * n, k) * factorial(6 * n - 2 * k),
                    2 ** (3 * n))


def dnk_count(n: int, k: int) -> Fraction:
    """Ordered cut-open configurations split into two parts.

    (6^k / 2^(3n+1)) * sum over part sizes (2L vertices, l of degree 1)
    of C(2n,k) C(k,l) C(2n-k, 2L-l) C(3n-k, 3L-l)
    (6L-2l)! (6(n-L)-2(k-l))!; out-of-range binomials vanish.
    """
    if n < 2 or k < 2:
        raise ValueError("need n >= 2 and k >= 2")
    total = 0
    c_nk = comb(2 * n, k)
    for l in range(1, k):
        c_kl = comb(k, l)
        for L in range(1, n):
            b1 = _comb0(2 * n - k, 2 * L - l)
            if b1 == 0:
                continue
            b2 = _comb0(3 * n - k, 3 * L - l)
            if b2 == 0:
                continue
            total += (c_nk * c_kl * b1 * b2
                      * factorial(6 * L - 2 * l)
                      * factorial(6 * (n - L) - 2 * (k - l)))
    return Fraction(6 ** k * total, 2 ** (3 * n + 1))


def dnk_probability(n: int, k: int) -> Fraction:
    """P of landing in the cut-open set: dnk_count / |ordered pairings|."""
    return dnk_count(n, k) / omega_ordered_count(n)


def dnk_probability_direct(n: int, k: int) -> Fraction:
    """Same probability via the reduced binomial form (independent route).

    (6^k / 2) * sum_l sum_L C(2n,k) C(k,l) C(2n-k,2L-l) C(3n-k,3L-l)
    / C(6n-2k, 6L-2l) / (6n(6n-1)...(6n-2k+1)).  Must agree exactly with
    :func:`dnk_probability`; the agreement is a transcription self-test.
    """
    if n < 2 or k < 2:
        raise ValueError("need n >= 2 and k >= 2")
    total = Fraction(0)
    c_nk = comb(2 * n, k)
    for l in range(1, k):
        c_kl = comb(k, l)
        lo = (l + 1) // 2
        hi = n - (k - l + 1) // 2
        for L in range(lo, hi + 1):
            b1 = _comb0(2 * n - k, 2 * L - l)
            b2 = _comb0(3 * n - k, 3 * L - l)
            b3 = _comb0(6 * n - 2 * k, 6 * L - 2 * l)
            if b1 == 0 or b2 == 0 or b3 == 0:
                continue
            total += Fraction(c_nk * c_kl * b1 * b2, b3)
    return Fraction(6 ** k, 2) * total / _falling(6 * n, 2 * k)


def gnk_probability_upper(n: int, k: int) -> float:
    """Upper bound on P[some separating k-circuit], via cut-open counts.

    min(1, 2^k (k-1)! (3n)!/(3n-k)! * P[cut-open set]): every graph with a
    separating k-circuit maps to a cut-open configuration, and at most
    2^k (k-1)! (3n)!/(3n-k)! graphs share an image.
    """
    if not 2 <= k <= 3 * n:
        raise ValueError(f"k must lie in 2..{3 * n}")
    if n == 1:
        return 0.0  # a 2-vertex graph admits no two-component split
    bound = 2 ** k * factorial(k - 1) * _falling(3 * n, k) * dnk_probability(n, k)
    return float(min(Fraction(1), bound))


def enumerate_all_pairings(n: int) -> Iterator[Pairing]:
    """Every pairing of {1..6n} exactly once, smallest-label-first order.

    Guarded at n <= 3; the stream holds (6n-1)!! pairings, already 10395
    at n=2 and 34459425 at n=3.
    """
    if n > 3:
        raise ValueError("full enumeration is capped at n = 3")
    if n < 1:
        raise ValueError("n must be positive")
    m = 6 * n
    sigma = [-1] * m

    def rec(h: int) -> Iterator[Pairing]:
        while h < m and sigma[h] != -1:
            h += 1
        if h == m:
            yield Pairing(n=n, sigma=tuple(sigma))
            return
        for p in range(h + 1, m):
            if sigma[p] == -1:
                sigma[h] = p
                sigma[p] = h
                yield from rec(h + 1)
                sigma[h] = -1
                sigma[p] = -1

    return rec(0)
