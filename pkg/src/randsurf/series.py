"""Limiting systole expectation series, short-curve law and metric bounds.

The expected systole of a large random surface glued from ideal hyperbolic
triangles converges to

    sum_{k>=3}  p_k * 2*acosh(k/2),

where p_k is the limiting probability that the smallest trace realized by
an essential circuit equals k.  Each p_k is an elementary expression in
the Poisson means Lambda_k aggregated over the trace classes of
:mod:`randsurf.words`.  Partial sums come with a rigorous remainder, so
the limit is bracketed to any desired accuracy.

Independently, the number of edges of the shortest essential circuit has
an explicit limit law, whose mean controls the systole of any Riemannian
triangle model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .words import TraceClassTable, enumerate_trace_classes


def acosh(x: float) -> float:
    """log(x + sqrt(x^2 - 1)); stable for the arguments used here (x >= 1.5)."""
    return math.log(x + math.sqrt(x * x - 1.0))


def geodesic_length(trace: int) -> float:
    """Hyperbolic length of the geodesic carrying a word of this trace."""
    if trace < 3:
        raise ValueError("essential circuits have trace >= 3")
    return 2.0 * acosh(trace / 2.0)


def p_term(k: int, table: TraceClassTable) -> float:
    """Limit probability that the minimal essential trace equals ``k``.

    exp(-sum_{i<k} Lambda_i) * (1 - exp(-Lambda_k)), with the empty prefix
    product equal to 1 at k=3.  The Lambda values stay exact rationals
    until the final exponentiation.
    """
    if k < 3:
        raise ValueError("traces of essential circuits start at 3")
    if table.max_trace < k:
        raise ValueError(f"table holds traces up to {table.max_trace}, need {k}")
    prefix = sum((table.lambda_sum[i] for i in range(3, k)), Fraction(0))
    lam_k = table.lambda_sum[k]
    return math.exp(-float(prefix)) * -math.expm1(-float(lam_k))


@dataclass
class SeriesTable:
    """Partial sums of the systole series with remainder brackets."""

    n_terms: int
    p: Dict[int, float] = field(default_factory=dict)
    S: Dict[int, float] = field(default_factory=dict)
    remainder: float = 0.0
    bracket: Tuple[float, float] = (0.0, 0.0)


def _remainder(n: int, p_n: float, lambda_n: Fraction) -> float:
    """Upper bound for the tail sum_{k>n} p_k * 2*acosh(k/2).

    Derivation: p_k <= p_n * e^(n-k) / (1 - exp(-Lambda_n)) for k >= n >= 4,
    2*acosh(k/2) <= 2*log(k), and log(k) <= (log(n+1))^(k/(n+1)) turns the
    tail into a geometric series with ratio x = (log(n+1))^(1/(n+1)) / e:

        2 * e^n * p_n / (1 - exp(-Lambda_n)) * x^(n+1) / (1 - x)

    The e^n factor is written out here because the two e-powers only
    partially cancel; dropping it would give a "bound" smaller than later
    partial sums.
    """
    x = math.log(n + 1) ** (1.0 / (n + 1)) / math.e
    scale = 2.0 * math.exp(n) * p_n / -math.expm1(-float(lambda_n))
    return scale * x ** (n + 1) / (1.0 - x)


def series_table(n: int, table: TraceClassTable | None = None) -> SeriesTable:
    """Partial sums S_3..S_n of the systole series plus the bracket at n."""
    if n < 4:
        raise ValueError("need at least 4 terms for the remainder bound")
    if table is None:
        table = enumerate_trace_classes(n)
    out = SeriesTable(n_terms=n)
    running = 0.0
    for k in range(3, n + 1):
        pk = p_term(k, table)
        out.p[k] = pk
        running += pk * geodesic_length(k)
        out.S[k] = running
    out.remainder = _remainder(n, out.p[n], table.lambda_sum[n])
    out.bracket = (out.S[n], out.S[n] + out.remainder)
    return out


def systole_limit_bracket(n: int) -> Tuple[float, float]:
    """Rigorous two-sided bracket [S_n, S_n + R_n] for the limit.

    >>> lo, hi = systole_limit_bracket(7)
    >>> lo < 2.4844 < hi
    True
    """
    t = series_table(n)
    return t.bracket


def mell_limit_pmf(k: int) -> float:
    """Limit law of the edge count of the shortest essential circuit.

    P[m = k] = exp(-A_{k-1}) - exp(-A_k) with A_k = sum_{j<=k} (2^(j-1)-1)/j.
    The value at k=1 is 0 and the law sums to 1 over k >= 1.
    """
    if k < 1:
        raise ValueError("circuit lengths start at 1")
    a_prev = sum((Fraction(2 ** (j - 1) - 1, j) for j in range(1, k)), Fraction(0))
    a_k = a_prev + Fraction(2 ** (k - 1) - 1, k)
    return math.exp(-float(a_prev)) - math.exp(-float(a_k))


def riemannian_bound_coefficient(tolerance: float = 1e-9) -> float:
    """Mean of the shortest-essential-circuit law: sum_{k>=2} k * P[m = k].

    Terms decay like exp(-2^k/k), so truncating once a term drops below
    ``tolerance`` loses far less than the tolerance itself.  Evaluates to
    2.87038 to five decimals.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    total = 0.0
    k = 2
    while True:
        term = k * mell_limit_pmf(k)
        total += term
        if term < tolerance:
            return total
        k += 1


def riemannian_bounds(m1: float, m2: float) -> Tuple[float, float]:
    """Bracket for the limiting expected systole of a Riemannian model.

    ``m1`` is the least cost of crossing a glued quadrilateral between
    opposite sides and ``m2`` the largest midpoint-to-midpoint distance in
    a triangle; the limit lies in [m1, m2 * coefficient].

    >>> lo, hi = riemannian_bounds(1.0, 0.5)
    >>> lo, round(hi, 5)
    (1.0, 1.43519)
    """
    if m1 <= 0 or m2 <= 0:
        raise ValueError("metric constants must be positive")
    return m1, m2 * riemannian_bound_coefficient(1e-9)
