"""Carpet specs and cylinder enumeration.

A carpet is described by horizontal rows stacked bottom to top.  Row i has
height ratio b_i (the b_i sum to 1) and carries n_i >= 0 cells; cell j of row i
is a rectangle of width a_ij < b_i at horizontal offset c_ij.  Each cell (i, j)
defines the affine contraction

    S_ij(x, y) = (a_ij * x + c_ij,  b_i * y + d_i),    d_i = b_1 + ... + b_{i-1},

and the attractor is the unique compact set E with E = union of S_ij(E).
Cylinders are images of the unit square under finite digit words.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import BudgetExceeded, EmptyAttractor, InvalidDigit, SchemaError

# Hard cap on enumerated cylinders; LG_MAX_CYLINDERS overrides at runtime.
DEFAULT_MAX_CYLINDERS = 10_000_000

# One digit is a (row, cell) pair, both 1-based; a word is a digit sequence.
Digit = tuple[int, int]
Word = tuple[Digit, ...]


class Cell(NamedTuple):
    a: float  # width ratio, 0 < a < row height
    c: float  # horizontal offset of the cell's left edge


@dataclass(frozen=True)
class RowSpec:
    b: float
    cells: tuple[Cell, ...]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle, possibly degenerate (zero width or height)."""

    x0: float
    y0: float
    w: float
    h: float

    @property
    def x1(self) -> float:
        return self.x0 + self.w

    @property
    def y1(self) -> float:
        return self.y0 + self.h


UNIT_SQUARE = Rect(0.0, 0.0, 1.0, 1.0)


@dataclass(frozen=True)
class Cylinder:
    """Image of the unit square under the word's map, with its two scale products."""

    word: Word
    rect: Rect
    a_prod: float
    b_prod: float


@dataclass(frozen=True)
class Violation:
    constraint: str
    where: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class CarpetSpec:
    rows: tuple[RowSpec, ...]

    @cached_property
    def m(self) -> int:
        return len(self.rows)

    @cached_property
    def d(self) -> tuple[float, ...]:
        """Bottom edge of each row: cumulative sum of the b_i below it."""
        out, acc = [], 0.0
        for row in self.rows:
            out.append(acc)
            acc += row.b
        return tuple(out)

    @cached_property
    def digits(self) -> tuple[Digit, ...]:
        return tuple(
            (i, j)
            for i, row in enumerate(self.rows, start=1)
            for j in range(1, len(row.cells) + 1)
        )

    @cached_property
    def nonempty_rows(self) -> tuple[int, ...]:
        return tuple(i for i, row in enumerate(self.rows, start=1) if row.cells)

    @cached_property
    def a_min(self) -> float:
        return min(cell.a for row in self.rows for cell in row.cells)

    @cached_property
    def a_max(self) -> float:
        return max(cell.a for row in self.rows for cell in row.cells)

    @cached_property
    def row_max_width(self) -> tuple[float, ...]:
        """Widest cell ratio per row (0.0 for empty rows)."""
        return tuple(max((c.a for c in row.cells), default=0.0) for row in self.rows)

    @cached_property
    def spec_hash(self) -> str:
        payload = json.dumps(
            {"rows": [{"b": row.b, "cells": [[c.a, c.c] for c in row.cells]}
                      for row in self.rows]},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def row(self, i: int) -> RowSpec:
        if not 1 <= i <= len(self.rows):
            raise InvalidDigit(f"row index {i} out of range 1..{len(self.rows)}")
        return self.rows[i - 1]

    def cell(self, i: int, j: int) -> Cell:
        row = self.row(i)
        if not 1 <= j <= len(row.cells):
            raise InvalidDigit(
                f"cell index {j} out of range 1..{len(row.cells)} in row {i}"
            )
        return row.cells[j - 1]


def _number(value: object, where: str) -> float:
    """Accept JSON numbers and 'p/q' / decimal strings; reject everything else."""
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{where}: bad numeric string {value!r}") from exc
    raise SchemaError(f"{where}: expected a number, got {type(value).__name__}")


def spec_from_dict(obj: object) -> CarpetSpec:
    if not isinstance(obj, dict):
        raise SchemaError("spec must be a JSON object")
    if "rows" not in obj:
        raise SchemaError("spec is missing the 'rows' field")
    raw_rows = obj["rows"]
    if not isinstance(raw_rows, list):
        raise SchemaError("'rows' must be a list")
    rows = []
    for i, raw in enumerate(raw_rows, start=1):
        if not isinstance(raw, dict):
            raise SchemaError(f"row {i} must be an object")
        if "b" not in raw:
            raise SchemaError(f"row {i} is missing 'b'")
        if "cells" not in raw:
            raise SchemaError(f"row {i} is missing 'cells'")
        if not isinstance(raw["cells"], list):
            raise SchemaError(f"row {i}: 'cells' must be a list")
        cells = []
        for j, rc in enumerate(raw["cells"], start=1):
            if not isinstance(rc, dict) or "a" not in rc or "c" not in rc:
                raise SchemaError(f"cell ({i},{j}) must be an object with 'a' and 'c'")
            cells.append(Cell(_number(rc["a"], f"cell ({i},{j}).a"),
                              _number(rc["c"], f"cell ({i},{j}).c")))
        rows.append(RowSpec(_number(raw["b"], f"row {i}.b"), tuple(cells)))
    return CarpetSpec(tuple(rows))


def parse_spec(text: str) -> CarpetSpec:
    """Parse a spec from JSON text.  Malformed JSON raises json.JSONDecodeError."""
    return spec_from_dict(json.loads(text))


def load_spec(path: str | os.PathLike) -> CarpetSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())


def spec_to_dict(spec: CarpetSpec) -> dict:
    return {"rows": [{"b": row.b, "cells": [{"a": c.a, "c": c.c} for c in row.cells]}
                     for row in spec.rows]}


_TOL = 1e-12


def validate(spec: CarpetSpec) -> list[Violation]:
    """Check the geometric constraints; an empty list means the spec is valid.

    Strict inequalities (a_ij < b_i, 0 < b_i < 1) flag equality as a violation;
    non-strict ones (column gaps, widths fitting in [0,1]) get a 1e-12 slack.
    """
    out: list[Violation] = []
    if spec.m < 2:
        out.append(Violation("m_rows", (), f"need at least 2 rows, got {spec.m}"))
    b_sum = 0.0
    for i, row in enumerate(spec.rows, start=1):
        b_sum += row.b
        if row.b <= 0.0 or row.b >= 1.0:
            out.append(Violation("b_range", (i,), f"b_{i}={row.b} not in (0,1)"))
        a_sum = 0.0
        for j, cell in enumerate(row.cells, start=1):
            a_sum += cell.a
            if cell.a <= 0.0:
                out.append(Violation("a_range", (i, j), f"a=({cell.a}) must be > 0"))
            if row.b - cell.a <= 0.0:
                out.append(Violation(
                    "a_lt_b", (i, j),
                    f"cell width {cell.a} must be strictly less than row height {row.b}"))
            if j == 1 and cell.c < -_TOL:
                out.append(Violation("c_low", (i, j), f"c={cell.c} must be >= 0"))
            if j > 1:
                prev = row.cells[j - 2]
                gap = cell.c - prev.c - prev.a
                if gap < -_TOL:
                    out.append(Violation(
                        "c_gap", (i, j),
                        f"cell {j} overlaps cell {j - 1} (gap {gap})"))
            if j == len(row.cells) and 1.0 - cell.c - cell.a < -_TOL:
                out.append(Violation(
                    "c_high", (i, j),
                    f"cell sticks out past x=1 (right edge {cell.c + cell.a})"))
        if a_sum - 1.0 > _TOL:
            out.append(Violation("a_sum", (i,), f"row widths sum to {a_sum} > 1"))
    if abs(b_sum - 1.0) > _TOL:
        out.append(Violation("b_sum", (), f"row heights sum to {b_sum}, expected 1"))
    return out


def word_map(spec: CarpetSpec, word: Iterable[Digit]) -> tuple[float, float, float, float]:
    """Affine coefficients (sx, tx, sy, ty) of the composed map of `word`.

    The composition is leftmost-outermost: word (w1, w2) means S_w1 after S_w2.
    """
    sx, tx, sy, ty = 1.0, 0.0, 1.0, 0.0
    for i, j in word:
        cell = spec.cell(i, j)
        row = spec.rows[i - 1]
        tx += sx * cell.c
        ty += sy * spec.d[i - 1]
        sx *= cell.a
        sy *= row.b
    return sx, tx, sy, ty


def apply_word(spec: CarpetSpec, word: Iterable[Digit], target):
    """Apply the word's map to a point (x, y) tuple or a Rect."""
    sx, tx, sy, ty = word_map(spec, word)
    if isinstance(target, Rect):
        return Rect(sx * target.x0 + tx, sy * target.y0 + ty,
                    sx * target.w, sy * target.h)
    x, y = target
    return (sx * x + tx, sy * y + ty)


def _cylinder(spec: CarpetSpec, word: Word) -> Cylinder:
    sx, tx, sy, ty = word_map(spec, word)
    return Cylinder(word, Rect(tx, ty, sx, sy), sx, sy)


def _max_cylinders(override: int | None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("LG_MAX_CYLINDERS", DEFAULT_MAX_CYLINDERS))


def enumerate_depth(spec: CarpetSpec, depth: int,
                    max_cylinders: int | None = None) -> list[Cylinder]:
    """All cylinders of exactly `depth` digits, in lexicographic word order."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if not spec.digits:
        raise EmptyAttractor("every row is empty")
    cap = _max_cylinders(max_cylinders)
    if len(spec.digits) ** depth > cap:
        raise BudgetExceeded(
            f"depth {depth} needs {len(spec.digits) ** depth} cylinders (cap {cap})")
    return [_cylinder(spec, word)
            for word in itertools.product(spec.digits, repeat=depth)]


def enumerate_stopping(spec: CarpetSpec, delta: float,
                       max_cylinders: int | None = None) -> list[Cylinder]:
    """Shortest-word cylinders whose height product just drops to <= delta.

    A word stops when its b-product is <= delta while its parent's is > delta,
    so the stopping set partitions the attractor into pieces of height in
    (delta * b_min, delta].  delta >= 1 stops every word at length 1.
    """
    if delta <= 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if not spec.digits:
        raise EmptyAttractor("every row is empty")
    cap = _max_cylinders(max_cylinders)
    out: list[Cylinder] = []

    # Preorder DFS; pushing digits in reverse makes pops lexicographic, and
    # stopped words are leaves, so the emission order is lexicographic too.
    stack: list[tuple[Word, float]] = [((), 1.0)]
    while stack:
        word, b_prod = stack.pop()
        if word and b_prod <= delta:
            if len(out) >= cap:
                raise BudgetExceeded(
                    f"stopping set at delta={delta} exceeds cap {cap}")
            out.append(_cylinder(spec, word))
            continue
        for digit in reversed(spec.digits):
            stack.append((word + (digit,), b_prod * spec.rows[digit[0] - 1].b))
    return out
