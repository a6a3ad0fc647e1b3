"""Exact-arithmetic point sets, valuations and per-axis decompositions.

All coordinates and function values are arbitrary-precision rationals
(:class:`fractions.Fraction`); coordinate equality, which everything else
in this package hinges on, is therefore exact.  Point sets are normalized
to a canonical lexicographic order so that indices, certificates and
reports are reproducible across runs and platforms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ParseError(ValueError):
    """Malformed input text (bad rational, bad line structure)."""


class DuplicatePointError(ParseError):
    """Two identical points in one input; carries the offending line numbers."""

    def __init__(self, point: "Point", lines: tuple[int, int]):
        self.point = point
        self.lines = lines
        super().__init__(f"duplicate point {point} on lines {lines[0]} and {lines[1]}")


class DimensionMismatchError(ParseError):
    """Points of different dimensions in one input."""


class OutOfDomainError(ValueError):
    """A coordinate is missing from the corresponding axis table."""


class ValuationMismatchError(ValueError):
    """Valuation domain does not match the point set."""


class DimensionUnsupportedError(ValueError):
    """Operation not defined for this ambient dimension."""


class InputError(ValueError):
    """Invalid command-line input (bad cell, missing file, ...)."""


def parse_rational(token: str) -> Fraction:
    """Parse an integer or ``p/q`` token; reject floats and exponents."""
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"not an integer or p/q fraction: {token!r}")
    return Fraction(token)


@dataclass(frozen=True, order=True)
class Point:
    """A point of Q^d, compared lexicographically by coordinates."""

    coords: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __getitem__(self, axis: int) -> Fraction:
        return self.coords[axis]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def point(*coords: int | str | Fraction) -> Point:
    """Convenience constructor: ``point(1, "1/2")`` -> Point((1, 1/2))."""
    return Point(tuple(Fraction(c) for c in coords))


@dataclass(frozen=True)
class PointSet:
    """A finite set of distinct points in canonical (lexicographic) order."""

    dim: int
    points: tuple[Point, ...]

    @staticmethod
    def of(coords: Iterable[Iterable[int | str | Fraction]],
           dedup: bool = False) -> "PointSet":
        """Build a normalized point set from coordinate tuples.

        Duplicates raise :class:`DuplicatePointError` unless ``dedup`` is set
        (deduplication is only meant for images of non-injective maps such as
        :func:`basicembed.lightning.collapse`).
        """
        pts = [Point(tuple(Fraction(c) for c in cs)) for cs in coords]
        dims = {p.dim for p in pts}
        if len(dims) > 1:
            raise DimensionMismatchError(f"mixed dimensions {sorted(dims)}")
        if dedup:
            pts = list(dict.fromkeys(pts))
        else:
            seen: dict[Point, int] = {}
            for i, p in enumerate(pts):
                if p in seen:
                    raise DuplicatePointError(p, (seen[p] + 1, i + 1))
                seen[p] = i
        dim = pts[0].dim if pts else 0
        return PointSet(dim, tuple(sorted(pts)))

    @cached_property
    def _index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, p: Point) -> int:
        return self._index[p]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p: Point) -> bool:
        return p in self._index

    def axis_values(self, axis: int) -> list[Fraction]:
        """Distinct coordinate values on one axis, ascending."""
        return sorted({p[axis] for p in self.points})


def parse_point_set(text: str) -> PointSet:
    """Parse the points file format: one point per line, ``#`` comments.

    Coordinates are integers or ``p/q`` fractions separated by whitespace.
    """
    rows: list[tuple[Fraction, ...]] = []
    lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            coords = tuple(parse_rational(tok) for tok in line.split())
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        rows.append(coords)
        lines.append(lineno)
    dims = {len(r) for r in rows}
    if len(dims) > 1:
        raise DimensionMismatchError(f"mixed dimensions {sorted(dims)}")
    seen: dict[tuple[Fraction, ...], int] = {}
    for i, r in enumerate(rows):
        if r in seen:
            raise DuplicatePointError(Point(r), (lines[seen[r]], lines[i]))
        seen[r] = i
    return PointSet.of(rows)


def format_point_set(ps: PointSet) -> str:
    """Serialize in canonical order; ``parse_point_set`` round-trips it."""
    return "\n".join(" ".join(str(c) for c in p.coords) for p in ps) + ("\n" if len(ps) else "")


@dataclass(frozen=True)
class Valuation:
    """An assignment f: K -> Q, stored by canonical point index."""

    values: tuple[Fraction, ...]

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def __len__(self) -> int:
        return len(self.values)

    def at(self, ps: PointSet, p: Point) -> Fraction:
        return self.values[ps.index(p)]

    @staticmethod
    def from_function(ps: PointSet, fn) -> "Valuation":
        return Valuation(tuple(Fraction(fn(p)) for p in ps))

    @staticmethod
    def of(values: Iterable[int | str | Fraction]) -> "Valuation":
        return Valuation(tuple(Fraction(v) for v in values))


def parse_valuation(text: str, size: int) -> Valuation:
    """Parse a valuation file: one rational per line, or ``index value`` pairs."""
    entries: list[tuple[int | None, Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if len(toks) == 1:
                entries.append((None, parse_rational(toks[0])))
            elif len(toks) == 2:
                entries.append((int(toks[0]), parse_rational(toks[1])))
            else:
                raise ParseError("expected 'value' or 'index value'")
        except (ParseError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    indexed = [e for e in entries if e[0] is not None]
    if indexed and len(indexed) != len(entries):
        raise ParseError("mix of plain and 'index value' lines")
    values: list[Fraction | None]
    if indexed:
        values = [None] * size
        for idx, val in indexed:
            if not 0 <= idx < size:
                raise ValuationMismatchError(f"index {idx} out of range 0..{size - 1}")
            if values[idx] is not None:
                raise ValuationMismatchError(f"index {idx} assigned twice")
            values[idx] = val
        if any(v is None for v in values):
            raise ValuationMismatchError("not every point received a value")
    else:
        values = [v for _, v in entries]
        if len(values) != size:
            raise ValuationMismatchError(f"{len(values)} values for {size} points")
    return Valuation(tuple(values))  # type: ignore[arg-type]


def format_valuation(f: Valuation) -> str:
    return "\n".join(str(v) for v in f.values) + ("\n" if len(f) else "")


@dataclass(frozen=True)
class AxisFunction:
    """A finite table coordinate -> value for one axis."""

    axis: int
    table: Mapping[Fraction, Fraction]

    def __call__(self, coord: Fraction) -> Fraction:
        try:
            return self.table[coord]
        except KeyError:
            raise OutOfDomainError(f"axis {self.axis}: no entry for {coord}") from None


@dataclass(frozen=True)
class GaugeEntry:
    """Normalization applied to one connectivity class of the point set.

    ``fixed`` records the pinned table entries as ``(axis, coord, value)``:
    the root's axis-0 entry carrying f(root), zeros on the other axes at the
    root's coordinates, and (in dimension >= 3) any remaining free unknowns
    pinned to zero.
    """

    root: Point
    fixed: tuple[tuple[int, Fraction, Fraction], ...]


@dataclass(frozen=True)
class Decomposition:
    """Per-axis tables whose pointwise sums reproduce a valuation.

    ``exact`` distinguishes rational decompositions (sums reproduce f
    exactly) from float-valued approximations produced by the least-squares
    decomposer.
    """

    per_axis: tuple[AxisFunction, ...]
    gauge: tuple[GaugeEntry, ...] = field(default=())
    exact: bool = True

    @property
    def dim(self) -> int:
        return len(self.per_axis)


def evaluate(dec: Decomposition, p: Point):
    """Sum of the axis tables at p's coordinates; OutOfDomainError if missing."""
    total = Fraction(0) if dec.exact else 0.0
    for axis_fn, coord in zip(dec.per_axis, p.coords):
        total += axis_fn(coord)
    return total


def combine_decompositions(a: Decomposition, b: Decomposition,
                           alpha: Fraction, beta: Fraction) -> Decomposition:
    """Pointwise alpha*a + beta*b on the union of table keys (missing = 0)."""
    if a.dim != b.dim:
        raise DimensionMismatchError("decompositions of different dimensions")
    per_axis = []
    for fa, fb in zip(a.per_axis, b.per_axis):
        keys = set(fa.table) | set(fb.table)
        table = {k: alpha * fa.table.get(k, Fraction(0)) + beta * fb.table.get(k, Fraction(0))
                 for k in keys}
        per_axis.append(AxisFunction(fa.axis, table))
    return Decomposition(tuple(per_axis), gauge=(), exact=a.exact and b.exact)


def format_decomposition(dec: Decomposition) -> str:
    """Structured text: ``axis j: coord -> value`` lines, then a gauge block."""
    out: list[str] = []
    for axis_fn in dec.per_axis:
        for coord in sorted(axis_fn.table):
            out.append(f"axis {axis_fn.axis}: {coord} -> {axis_fn.table[coord]}")
    out.append("gauge:")
    for i, entry in enumerate(dec.gauge):
        fixed = " ".join(f"axis{a}@{c}={v}" for a, c, v in entry.fixed)
        out.append(f"  class {i}: root {entry.root} {fixed}".rstrip())
    return "\n".join(out) + "\n"


def parse_decomposition(text: str, dim: int) -> Decomposition:
    """Parse the output of :func:`format_decomposition` (tables only)."""
    tables: list[dict[Fraction, Fraction]] = [dict() for _ in range(dim)]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line.startswith("axis "):
            continue
        m = re.match(r"^axis (\d+): (\S+) -> (\S+)$", line)
        if not m:
            raise ParseError(f"line {lineno}: bad axis table line")
        axis = int(m.group(1))
        if axis >= dim:
            raise ParseError(f"line {lineno}: axis {axis} out of range")
        tables[axis][parse_rational(m.group(2))] = parse_rational(m.group(3))
    return Decomposition(tuple(AxisFunction(j, t) for j, t in enumerate(tables)))
