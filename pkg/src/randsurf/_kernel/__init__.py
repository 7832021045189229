"""Kernel selection: compiled extension when present, pure Python otherwise.

Set RANDSURF_PURE=1 to force the pure lane (used by the parity tests and
the benchmark).  Both lanes implement the contract documented in
``_pycore`` and return identical values.
"""

import os

from . import _pycore

if os.environ.get("RANDSURF_PURE"):
    impl = _pycore
else:
    try:
        from . import _fastcore as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _pycore

LANE = impl.LANE
MAX_SEARCH_LEN = impl.MAX_SEARCH_LEN

faces = impl.faces
genus_info = impl.genus_info
enumerate_cycles = impl.enumerate_cycles
count_cycles = impl.count_cycles
count_word_classes = impl.count_word_classes
face_edge_rows = impl.face_edge_rows
gf2_basis = impl.gf2_basis
gf2_in_span = impl.gf2_in_span
essential_search = impl.essential_search
has_short_separating = impl.has_short_separating
graph_stats = impl.graph_stats
check_involution = _pycore.check_involution
rho = _pycore.rho
canonical_word = _pycore.canonical_word
