"""Evaluation tables: construction, validation, serialization, transpose.

The project-wide index convention: rows are the x-side ("points"), columns
are the y-side ("parameters/functions").  Every dual statement is obtained
through :func:`transpose`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .errors import BoundViolation, EmptyTable, ParseError, ShapeMismatch


@dataclass(frozen=True)
class ThresholdPair:
    """A pair of thresholds s < r used by all dividing-line detectors."""

    s: float
    r: float

    def __post_init__(self) -> None:
        if not (self.s < self.r):
            raise ValueError(f"thresholds must satisfy s < r, got s={self.s}, r={self.r}")

    def check_against(self, table: "EvalTable") -> None:
        """Raise if either threshold lies outside [-bound, bound] of `table`."""
        b = table.bound
        if not (-b <= self.s <= b) or not (-b <= self.r <= b):
            raise ValueError(
                f"thresholds ({self.s}, {self.r}) outside table range [-{b}, {b}]"
            )


@dataclass(frozen=True)
class Epsilon:
    """A positive separation parameter."""

    eps: float

    def __post_init__(self) -> None:
        if not (self.eps > 0):
            raise ValueError(f"eps must be positive, got {self.eps}")


class EvalTable:
    """Immutable bounded real matrix.

    Entries are 64-bit floats; all downstream threshold comparisons are
    exact (no implicit tolerance), so tables should be pre-rounded by
    callers who want tolerant comparisons.
    """

    __slots__ = ("entries", "bound", "row_labels", "col_labels")

    def __init__(
        self,
        entries,
        bound: float | None = None,
        row_labels: Sequence[str] | None = None,
        col_labels: Sequence[str] | None = None,
    ):
        try:
            arr = np.array(entries, dtype=np.float64)
        except (ValueError, TypeError) as exc:
            raise _classify_array_error(entries, exc) from exc
        if arr.ndim != 2:
            raise ShapeMismatch(f"entries must be a 2-d array, got ndim={arr.ndim}")
        if arr.size == 0:
            raise EmptyTable("table has no entries")
        if not np.isfinite(arr).all():
            raise BoundViolation("table entries must be finite")
        max_abs = float(np.max(np.abs(arr)))
        if bound is None:
            bound = max_abs if max_abs > 0 else 1.0
        if not (bound > 0) or not math.isfinite(bound):
            raise BoundViolation(f"bound must be a positive finite real, got {bound}")
        if max_abs > bound:
            raise BoundViolation(f"entry magnitude {max_abs} exceeds bound {bound}")
        if row_labels is not None and len(row_labels) != arr.shape[0]:
            raise ShapeMismatch("row_labels length does not match row count")
        if col_labels is not None and len(col_labels) != arr.shape[1]:
            raise ShapeMismatch("col_labels length does not match column count")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "bound", float(bound))
        object.__setattr__(self, "row_labels", tuple(row_labels) if row_labels is not None else None)
        object.__setattr__(self, "col_labels", tuple(col_labels) if col_labels is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("EvalTable is immutable")

    @property
    def n_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n_cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EvalTable):
            return NotImplemented
        return (
            self.bound == other.bound
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
        )

    def __hash__(self):
        return hash((self.entries.shape, self.bound, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"EvalTable({self.n_rows}x{self.n_cols}, bound={self.bound})"

    def to_dict(self) -> dict:
        d: dict = {"bound": self.bound, "entries": self.entries.tolist()}
        if self.row_labels is not None:
            d["row_labels"] = list(self.row_labels)
        if self.col_labels is not None:
            d["col_labels"] = list(self.col_labels)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EvalTable":
        if "bound" not in d:
            raise ParseError("JSON table requires a 'bound' field")
        if "entries" not in d:
            raise ParseError("JSON table requires an 'entries' field")
        return cls(
            d["entries"],
            bound=d["bound"],
            row_labels=d.get("row_labels"),
            col_labels=d.get("col_labels"),
        )


def _classify_array_error(entries, exc) -> Exception:
    try:
        rows = list(entries)
        lengths = {len(row) for row in rows}
        if len(lengths) > 1:
            return ShapeMismatch(f"ragged rows with lengths {sorted(lengths)}")
    except TypeError:
        pass
    return ParseError(f"could not build numeric array: {exc}")


def transpose(t: EvalTable) -> EvalTable:
    """Swap the roles of points and parameters (the dual table)."""
    return EvalTable(
        t.entries.T,
        bound=t.bound,
        row_labels=t.col_labels,
        col_labels=t.row_labels,
    )


def serialize(t: EvalTable) -> str:
    """Canonical JSON form; load_table round-trips it bit-exactly."""
    return json.dumps(t.to_dict(), sort_keys=True, separators=(",", ":"))


def _parse_csv(text: str, bound: float | None) -> EvalTable:
    rows = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cells = []
        for cell in line.split(","):
            try:
                cells.append(float(cell))
            except ValueError as exc:
                raise ParseError(f"non-numeric cell {cell!r} on line {line_no}") from exc
        rows.append(cells)
    if not rows:
        raise EmptyTable("CSV input contains no rows")
    lengths = {len(row) for row in rows}
    if len(lengths) > 1:
        raise ShapeMismatch(f"ragged CSV rows with lengths {sorted(lengths)}")
    return EvalTable(rows, bound=bound)


def _parse_json(text: str) -> EvalTable:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise ParseError("JSON table must be an object")
    return EvalTable.from_dict(d)


def load_table(
    source: str | bytes | Path | IO,
    format: str | None = None,
    bound: float | None = None,
) -> EvalTable:
    """Load a table from a path, byte/text stream, or in-memory string.

    `format` is "csv" or "json"; when omitted it is inferred from the file
    extension (paths only).  For CSV the bound defaults to the maximum
    absolute entry unless `bound` overrides it; for JSON the bound field
    is mandatory and `bound` must not be supplied.
    """
    if isinstance(source, (str, bytes)) and format is not None:
        text = source.decode("utf-8") if isinstance(source, bytes) else source
    elif isinstance(source, (str, Path)):
        path = Path(source)
        if format is None:
            ext = path.suffix.lower().lstrip(".")
            if ext not in ("csv", "json"):
                raise ParseError(f"cannot infer format from extension {path.suffix!r}")
            format = ext
        text = path.read_text(encoding="utf-8")
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
        if format is None:
            raise ParseError("format must be given when loading from a stream")
    if format == "csv":
        return _parse_csv(text, bound)
    if format == "json":
        if bound is not None:
            raise ParseError("bound override is a CSV-only option")
        return _parse_json(text)
    raise ParseError(f"unknown format {format!r}")
