"""Survey response tables: parsing, missing-value handling, and counting.

A :class:`Dataset` holds one state index per (record, variable), with -1
marking a missing response. Counting uses listwise deletion per statistic:
a record contributes to a count only if every variable in that statistic's
scope is present.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import SurveyBnError, Variable

MISSING = -1


class DataError(SurveyBnError):
    """Malformed survey data or an unknown variable/state reference."""


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable table of categorical observations.

    ``codes`` is an int16 array of shape (n_total, len(variables));
    entry (r, c) is the state index of variable ``variables[c]`` in record
    r, or -1 when that response is missing.
    """

    variables: tuple[Variable, ...]
    codes: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        codes = np.asarray(self.codes, dtype=np.int16)
        if codes.ndim != 2 or codes.shape[1] != len(self.variables):
            raise DataError(
                f"codes shape {codes.shape} does not match {len(self.variables)} variables"
            )
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    @property
    def n_total(self) -> int:
        return self.codes.shape[0]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v.id: i for i, v in enumerate(self.variables)}

    def variable(self, var_id: str) -> Variable:
        return self.variables[self.column(var_id)]

    def column(self, var_id: str) -> int:
        try:
            return self._index[var_id]
        except KeyError:
            raise DataError(f"unknown variable {var_id!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.variables == other.variables and np.array_equal(self.codes, other.codes)


@dataclass(frozen=True, eq=False)
class CountTable:
    """Joint occurrence counts over a scope of variables.

    ``counts`` has one axis per scope variable, in scope order, so the last
    scope variable varies fastest when flattened. ``n_valid`` is the number
    of records with no missing value anywhere in the scope.
    """

    scope: tuple[str, ...]
    counts: np.ndarray
    n_total: int

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "scope", tuple(self.scope))
        object.__setattr__(self, "counts", counts)

    @property
    def n_valid(self) -> int:
        return int(self.counts.sum())


# ---------------------------------------------------------------------------
# CSV parsing and serialization
# ---------------------------------------------------------------------------
# Dialect: comma-separated, double-quoted fields, UTF-8, mandatory header of
# variable ids. Cells are state labels (matched case-sensitively), 0-based
# integer codes, or empty for a missing response.

def parse_survey_csv(text: str | Iterable[str], schema: Sequence[Variable]) -> Dataset:
    """Parse survey responses against a schema of variables.

    Errors name the offending data row (1-based, excluding the header) and
    column id.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    reader = csv.reader(text)
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("empty input: header row is mandatory") from None

    by_id = {v.id: v for v in schema}
    seen: set[str] = set()
    columns: list[Variable] = []
    for name in header:
        if name not in by_id:
            raise DataError(f"unknown column id {name!r} in header")
        if name in seen:
            raise DataError(f"duplicate column id {name!r} in header")
        seen.add(name)
        columns.append(by_id[name])

    rows: list[list[int]] = []
    for row_no, cells in enumerate(reader, start=1):
        if len(cells) != len(columns):
            raise DataError(
                f"row {row_no} has {len(cells)} cells, header has {len(columns)} columns"
            )
        record: list[int] = []
        for var, cell in zip(columns, cells):
            if cell == "":
                record.append(MISSING)
                continue
            if cell in var.states:
                record.append(var.states.index(cell))
                continue
            try:
                code = int(cell)
            except ValueError:
                raise DataError(
                    f"row {row_no}, column {var.id}: {cell!r} is neither a state label nor an integer code"
                ) from None
            if not 0 <= code < var.k:
                raise DataError(
                    f"row {row_no}, column {var.id}: code {code} out of range [0, {var.k})"
                )
            record.append(code)
        rows.append(record)

    codes = np.asarray(rows, dtype=np.int16) if rows else np.empty((0, len(columns)), dtype=np.int16)
    return Dataset(variables=tuple(columns), codes=codes)


def serialize_survey_csv(ds: Dataset) -> str:
    """Render a dataset back to the survey CSV dialect (labels, '' = missing)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([v.id for v in ds.variables])
    for record in ds.codes:
        writer.writerow(
            ["" if c == MISSING else ds.variables[i].states[c] for i, c in enumerate(record)]
        )
    return out.getvalue()


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def state_counts(ds: Dataset, var: str) -> CountTable:
    """Per-state occurrence counts for one variable, missing excluded."""
    col = ds.column(var)
    values = ds.codes[:, col]
    present = values[values != MISSING]
    counts = np.bincount(present, minlength=ds.variables[col].k)
    return CountTable(scope=(var,), counts=counts, n_total=ds.n_total)


def joint_counts(ds: Dataset, child: str, parents: Sequence[str]) -> CountTable:
    """Joint counts over (parents..., child) with listwise deletion.

    A record contributes only if the child and every parent are present.
    The counts array is indexed by parent states first, child state last.
    """
    parents = tuple(parents)
    if not parents:
        raise DataError("parents must be non-empty; use state_counts for root nodes")
    if child in parents:
        raise DataError(f"child {child!r} listed among its parents")
    scope = parents + (child,)
    cols = [ds.column(v) for v in scope]
    cards = tuple(ds.variables[c].k for c in cols)

    selected = ds.codes[:, cols]
    complete = (selected != MISSING).all(axis=1)
    selected = selected[complete].astype(np.int64)
    if selected.shape[0]:
        flat = np.ravel_multi_index(tuple(selected.T), cards)
        counts = np.bincount(flat, minlength=int(np.prod(cards))).reshape(cards)
    else:
        counts = np.zeros(cards, dtype=np.int64)
    return CountTable(scope=scope, counts=counts, n_total=ds.n_total)
