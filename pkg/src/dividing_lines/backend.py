"""Kernel backend selection.

Imports the compiled kernels when the extension was built, otherwise the
pure-Python twins.  Both expose the same functions with identical
semantics (including tie-breaking), so results never depend on the
backend; only speed does.  The compiled kernels use 64-bit masks, so
instances with more than 64 rows, columns, or subset members go to the
Python twins regardless of backend.  `bench/bench_backends.py` compares
them.
"""
from __future__ import annotations

from . import _kernels_py

try:  # pragma: no cover - exercised only when the extension is built
    from . import _kernels_c  # type: ignore[attr-defined]

    _impl = _kernels_c
except ImportError:  # pragma: no cover
    _impl = _kernels_py

BACKEND_NAME: str = _impl.BACKEND_NAME

_LIMIT = 64

if _impl is _kernels_py:
    ladder_search = _kernels_py.ladder_search
    clique_search = _kernels_py.clique_search
    alternation_iii_search = _kernels_py.alternation_iii_search
    shatter_dim_search = _kernels_py.shatter_dim_search
    dk_count_free = _kernels_py.dk_count_free
    dk_count_distinct = _kernels_py.dk_count_distinct
else:

    def ladder_search(ge_by_col, le_by_row, budget):
        if len(ge_by_col) > _LIMIT or len(le_by_row) > _LIMIT:
            return _kernels_py.ladder_search(ge_by_col, le_by_row, budget)
        return _impl.ladder_search(ge_by_col, le_by_row, budget)

    def clique_search(adj, budget):
        if len(adj) > _LIMIT:
            return _kernels_py.clique_search(adj, budget)
        return _impl.clique_search(adj, budget)

    def alternation_iii_search(values, eps, n_rows, n_cols, budget):
        if n_rows > _LIMIT or n_cols > _LIMIT:
            return _kernels_py.alternation_iii_search(values, eps, n_rows, n_cols, budget)
        return _impl.alternation_iii_search(values, eps, n_rows, n_cols, budget)

    def shatter_dim_search(low_by_col, high_by_col, n_rows, max_k, budget):
        if n_rows > _LIMIT or len(low_by_col) > _LIMIT:
            return _kernels_py.shatter_dim_search(low_by_col, high_by_col, n_rows, max_k, budget)
        return _impl.shatter_dim_search(low_by_col, high_by_col, n_rows, max_k, budget)

    def dk_count_free(low_by_row, high_by_row, members, k):
        if len(low_by_row) and max(low_by_row + high_by_row).bit_length() > _LIMIT:
            return _kernels_py.dk_count_free(low_by_row, high_by_row, members, k)
        return _impl.dk_count_free(low_by_row, high_by_row, members, k)

    def dk_count_distinct(low_by_row, high_by_row, members, k):
        too_wide = len(low_by_row) and max(low_by_row + high_by_row).bit_length() > _LIMIT
        if too_wide or len(members) > _LIMIT:
            return _kernels_py.dk_count_distinct(low_by_row, high_by_row, members, k)
        return _impl.dk_count_distinct(low_by_row, high_by_row, members, k)
