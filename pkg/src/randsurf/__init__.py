"""Systoles of random surfaces built from randomly glued triangles.

Exact evaluation of the limiting expected systole with a rigorous
remainder bracket, exact finite-size expectation formulas, and seeded
Monte Carlo over random cubic ribbon graphs.  The per-graph cycle kernel
is compiled when the extension built; ``kernel_lane()`` reports which
implementation is active.
"""

from ._kernel import LANE as _KERNEL_LANE
from .curves import (Cycle, HomologyBasis, enumerate_cycles, has_short_separating_cycle,
                     homology_basis, is_graph_separating, is_null_homologous, m_ell,
                     systole_estimate)
from .exact import (dnk_count, dnk_probability, enumerate_all_pairings, expected_xk,
                    expected_z_class, gnk_probability_upper, omega_count, omega_nk_count)
from .harness import RunConfig, RunReport, StatsRequest, poisson_pmf, run, tv_distance
from .ribbon import (Pairing, RibbonGraph, load_pairing, pairing_from_pairs,
                     sample_uniform, save_pairing)
from .series import (mell_limit_pmf, p_term, riemannian_bound_coefficient,
                     riemannian_bounds, series_table, systole_limit_bracket)
from .words import (TraceClassTable, Word, WordClass, canonicalize,
                    enumerate_trace_classes, min_trace_for_length, word_matrix,
                    word_trace)

__version__ = "0.1.0"


def kernel_lane() -> str:
    """Active kernel implementation: "compiled" or "pure"."""
    return _KERNEL_LANE
