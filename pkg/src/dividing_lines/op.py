"""Order-property detection: ladders, alternation ranks, the stability
spectrum, and the finite double-limit diagnostic."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import backend
from .core import Epsilon, EvalTable, ThresholdPair
from .errors import IndexOutOfRange

DEFAULT_EXACT_LIMIT = 10**6


@dataclass(frozen=True)
class LadderWitness:
    """Index certificate for an order-property staircase.

    Valid against T iff row indices are pairwise distinct, column indices
    are pairwise distinct, and for positions k > l: T[rows[k]][cols[l]] >= r
    while for k < l: T[rows[k]][cols[l]] <= s (diagonal cells free).
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    thresholds: ThresholdPair

    def __post_init__(self):
        if len(self.rows) != len(self.cols):
            raise ValueError("rows and cols must have equal length")

    @property
    def length(self) -> int:
        return len(self.rows)

    def first_violation(self, t: EvalTable):
        """None if valid, else ((row_pos, col_pos), description)."""
        n = len(self.rows)
        for i in self.rows:
            if not (0 <= i < t.n_rows):
                raise IndexOutOfRange(f"row index {i} out of range")
        for j in self.cols:
            if not (0 <= j < t.n_cols):
                raise IndexOutOfRange(f"col index {j} out of range")
        if len(set(self.rows)) != n:
            return None, "duplicate row index"
        if len(set(self.cols)) != n:
            return None, "duplicate col index"
        s, r = self.thresholds.s, self.thresholds.r
        for k in range(n):
            for l in range(n):
                v = t.entries[self.rows[k], self.cols[l]]
                if k > l and not (v >= r):
                    return (k, l), f"T[{self.rows[k]}][{self.cols[l]}]={v} < r={r}"
                if k < l and not (v <= s):
                    return (k, l), f"T[{self.rows[k]}][{self.cols[l]}]={v} > s={s}"
        return None

    def is_valid(self, t: EvalTable) -> bool:
        return self.first_violation(t) is None

    def to_dict(self) -> dict:
        return {
            "kind": "ladder",
            "rows": list(self.rows),
            "cols": list(self.cols),
            "s": self.thresholds.s,
            "r": self.thresholds.r,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LadderWitness":
        return cls(tuple(d["rows"]), tuple(d["cols"]), ThresholdPair(d["s"], d["r"]))


@dataclass(frozen=True)
class AlternationWitness:
    """Pair-sequence certificate for the epsilon-alternation conditions.

    Row indices and column indices are each pairwise distinct across pairs.
    Variant "ii": for all t < u, |T[i_t][j_u] - T[i_u][j_t]| >= eps.
    Variant "iii": for all t < u < v, |T[i_u][j_t] - T[i_u][j_v]| >= eps.
    """

    variant: Literal["ii", "iii"]
    pairs: tuple[tuple[int, int], ...]
    eps: Epsilon

    @property
    def length(self) -> int:
        return len(self.pairs)

    def first_violation(self, t: EvalTable):
        for i, j in self.pairs:
            if not (0 <= i < t.n_rows) or not (0 <= j < t.n_cols):
                raise IndexOutOfRange(f"pair ({i},{j}) out of range")
        if len(set(i for i, _ in self.pairs)) != len(self.pairs):
            return None, "duplicate row index"
        if len(set(j for _, j in self.pairs)) != len(self.pairs):
            return None, "duplicate col index"
        e = self.eps.eps
        n = len(self.pairs)
        if self.variant == "ii":
            for u in range(n):
                for v in range(u + 1, n):
                    a = t.entries[self.pairs[u][0], self.pairs[v][1]]
                    b = t.entries[self.pairs[v][0], self.pairs[u][1]]
                    if not (abs(a - b) >= e):
                        return (u, v), f"|{a} - {b}| < eps={e}"
        else:
            for tt in range(n):
                for u in range(tt + 1, n):
                    for v in range(u + 1, n):
                        a = t.entries[self.pairs[u][0], self.pairs[tt][1]]
                        b = t.entries[self.pairs[u][0], self.pairs[v][1]]
                        if not (abs(a - b) >= e):
                            return (tt, u, v), f"|{a} - {b}| < eps={e}"
        return None

    def is_valid(self, t: EvalTable) -> bool:
        return self.first_violation(t) is None

    def to_dict(self) -> dict:
        return {
            "kind": "alternation",
            "variant": self.variant,
            "pairs": [list(p) for p in self.pairs],
            "eps": self.eps.eps,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AlternationWitness":
        return cls(d["variant"], tuple((p[0], p[1]) for p in d["pairs"]), Epsilon(d["eps"]))


@dataclass(frozen=True)
class LadderResult:
    length: int
    witness: LadderWitness
    exact: bool


@dataclass(frozen=True)
class AlternationResult:
    rank: int
    witness: AlternationWitness
    exact: bool


def _threshold_masks(t: EvalTable, th: ThresholdPair):
    """Per-column row masks (rows >= r) and per-row column masks (cols <= s)."""
    ge = t.entries >= th.r
    le = t.entries <= th.s
    ge_by_col = [int(sum(1 << p for p in np.flatnonzero(ge[:, j]))) for j in range(t.n_cols)]
    le_by_row = [int(sum(1 << q for q in np.flatnonzero(le[i, :]))) for i in range(t.n_rows)]
    return ge_by_col, le_by_row


def max_ladder(
    t: EvalTable, th: ThresholdPair, exact_limit: int = DEFAULT_EXACT_LIMIT
) -> LadderResult:
    """Maximum ladder length with one witness.

    Length 1 always exists (a one-step ladder carries no constraints).
    When the node budget `exact_limit` is exhausted the result is a sound
    lower bound flagged `exact=False`.
    """
    ge_by_col, le_by_row = _threshold_masks(t, th)
    length, rows, cols, exact = backend.ladder_search(ge_by_col, le_by_row, exact_limit)
    if length == 0:
        length, rows, cols = 1, (0,), (0,)
    return LadderResult(length, LadderWitness(rows, cols, th), exact)


def alternation_rank(
    t: EvalTable,
    e: Epsilon,
    variant: Literal["ii", "iii"] = "ii",
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> AlternationResult:
    """Maximum length of a valid alternation witness of the given variant."""
    if variant == "ii":
        n_pairs = t.n_rows * t.n_cols
        vals = t.entries
        adj = []
        for v in range(n_pairs):
            i1, j1 = divmod(v, t.n_cols)
            m = 0
            for u in range(n_pairs):
                i2, j2 = divmod(u, t.n_cols)
                if i2 != i1 and j2 != j1 and abs(vals[i1, j2] - vals[i2, j1]) >= e.eps:
                    m |= 1 << u
            adj.append(m)
        size, verts, exact = backend.clique_search(adj, exact_limit)
        pairs = tuple(divmod(v, t.n_cols) for v in verts)
        if size == 0:
            size, pairs = 1, ((0, 0),)
        return AlternationResult(size, AlternationWitness("ii", pairs, e), exact)
    if variant == "iii":
        vals = t.entries.tolist()
        length, pairs, exact = backend.alternation_iii_search(
            vals, e.eps, t.n_rows, t.n_cols, exact_limit
        )
        if length == 0:
            length, pairs = 1, ((0, 0),)
        return AlternationResult(length, AlternationWitness("iii", tuple(pairs), e), exact)
    raise ValueError(f"unknown variant {variant!r}")


def stability_spectrum(
    t: EvalTable, max_len: int, exact_limit: int = DEFAULT_EXACT_LIMIT
) -> list[tuple[int, float | None]]:
    """For each ladder length l in 2..max_len, the widest gap r - s over
    threshold pairs drawn from the table's distinct entry values that still
    admit a ladder of length l; None when no such pair exists."""
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    values = sorted(set(t.entries.ravel().tolist()))
    best_gap: dict[int, float] = {}
    for a in range(len(values)):
        for b in range(a + 1, len(values)):
            s, r = values[a], values[b]
            res = max_ladder(t, ThresholdPair(s, r), exact_limit)
            for length in range(2, min(res.length, max_len) + 1):
                gap = r - s
                if gap > best_gap.get(length, -math.inf):
                    best_gap[length] = gap
    return [(length, best_gap.get(length)) for length in range(2, max_len + 1)]


def iterated_means(
    t: EvalTable,
    row_seq: Sequence[int],
    col_seq: Sequence[int],
    tail_fraction: float = 1.0,
) -> tuple[float, float, float]:
    """Cesaro-tail proxy for the double-limit criterion.

    Over the last ceil(tail_fraction * L) positions (at least 2), averages
    T[row_seq[k]][col_seq[l]] over k > l (below_mean) and k < l
    (above_mean); the defect is their absolute difference.
    """
    if len(row_seq) != len(col_seq):
        raise ValueError("row_seq and col_seq must have equal length")
    L = len(row_seq)
    if L < 2:
        raise ValueError("sequences must have length >= 2")
    if not (0 < tail_fraction <= 1):
        raise ValueError("tail_fraction must lie in (0, 1]")
    for i in row_seq:
        if not (0 <= i < t.n_rows):
            raise IndexOutOfRange(f"row index {i} out of range")
    for j in col_seq:
        if not (0 <= j < t.n_cols):
            raise IndexOutOfRange(f"col index {j} out of range")
    m = max(2, math.ceil(tail_fraction * L))
    tail = range(L - m, L)
    below = [t.entries[row_seq[k], col_seq[l]] for k in tail for l in tail if k > l]
    above = [t.entries[row_seq[k], col_seq[l]] for k in tail for l in tail if k < l]
    below_mean = float(np.mean(below))
    above_mean = float(np.mean(above))
    return below_mean, above_mean, abs(below_mean - above_mean)
