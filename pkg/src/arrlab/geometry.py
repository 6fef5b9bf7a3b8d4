"""Projective lines and points over a preset field, and the intersection
lattice of a line arrangement.

The lattice is stored as its rank-2 flats: each singular point together with
the sorted indices of the lines through it. Lines and the bottom element are
implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .field import FieldDescriptor, FieldElement, FieldMismatchError, format_element

__all__ = [
    "GeometryError",
    "DuplicateLineError",
    "ProjLine",
    "ProjPoint",
    "Arrangement",
    "Flat",
    "IncidenceLattice",
    "intersect",
    "join",
    "incident",
    "compute_lattice",
    "lattice_of",
    "multiplicity_sets",
    "det3",
    "inverse3",
    "apply_projectivity",
]


class GeometryError(ValueError):
    pass


class DuplicateLineError(GeometryError):
    def __init__(self, i: int, j: int):
        self.indices = (i, j)
        super().__init__(f"lines {i + 1} and {j + 1} coincide")


def _normalize(triple: Sequence[FieldElement]) -> tuple[FieldElement, FieldElement, FieldElement]:
    if len(triple) != 3:
        raise GeometryError("expected three homogeneous coordinates")
    f = triple[0].field
    if any(c.field != f for c in triple):
        raise FieldMismatchError("coordinates from different fields")
    for i, c in enumerate(triple):
        if not c.is_zero():
            if c == 1:
                return tuple(triple)  # type: ignore[return-value]
            s = c.inverse()
            return tuple(f.zero if k < i else (f.one if k == i else triple[k] * s) for k in range(3))  # type: ignore[return-value]
    raise GeometryError("all homogeneous coordinates are zero")


def _format_triple(t: Sequence[FieldElement], sep: str) -> str:
    return sep.join(format_element(c) for c in t)


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[FieldElement, FieldElement, FieldElement]

    def __post_init__(self):
        object.__setattr__(self, "coords", _normalize(self.coords))

    @classmethod
    def of(cls, field: FieldDescriptor, x, y, z) -> ProjPoint:
        return cls((field(x), field(y), field(z)))

    @property
    def field(self) -> FieldDescriptor:
        return self.coords[0].field

    def __str__(self) -> str:
        return "[" + _format_triple(self.coords, ":") + "]"


@dataclass(frozen=True)
class ProjLine:
    """The line c_x*x + c_y*y + c_z*z = 0, scaled so its first nonzero coefficient is 1."""

    coeffs: tuple[FieldElement, FieldElement, FieldElement]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    @classmethod
    def of(cls, field: FieldDescriptor, cx, cy, cz) -> ProjLine:
        return cls((field(cx), field(cy), field(cz)))

    @property
    def field(self) -> FieldDescriptor:
        return self.coeffs[0].field

    def galois(self, k: int) -> ProjLine:
        return ProjLine(tuple(c.galois(k) for c in self.coeffs))

    def equation(self) -> str:
        terms = []
        for c, v in zip(self.coeffs, "xyz"):
            if c.is_zero():
                continue
            s = format_element(c)
            if s == "1":
                terms.append(f"+{v}")
            elif s == "-1":
                terms.append(f"-{v}")
            elif " " in s:
                terms.append(f"+({s}){v}")
            else:
                terms.append(f"{s}*{v}" if s.startswith("-") else f"+{s}*{v}")
        text = "".join(terms)
        return (text[1:] if text.startswith("+") else text) + "=0"

    def __str__(self) -> str:
        return _format_triple(self.coeffs, "; ")


def _cross(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> list[FieldElement]:
    return [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]


def _dot(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def intersect(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    if l1.field != l2.field:
        raise FieldMismatchError("lines over different fields")
    c = _cross(l1.coeffs, l2.coeffs)
    if all(x.is_zero() for x in c):
        raise GeometryError("cannot intersect a line with itself")
    return ProjPoint(tuple(c))


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """Line through two distinct points."""
    if p.field != q.field:
        raise FieldMismatchError("points over different fields")
    c = _cross(p.coords, q.coords)
    if all(x.is_zero() for x in c):
        raise GeometryError("cannot join a point with itself")
    return ProjLine(tuple(c))


def incident(p: ProjPoint, l: ProjLine) -> bool:
    if p.field != l.field:
        raise FieldMismatchError("point and line over different fields")
    return _dot(p.coords, l.coeffs).is_zero()


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of pairwise distinct lines over one field."""

    field: FieldDescriptor
    lines: tuple[ProjLine, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.lines):
                raise GeometryError("label count does not match line count")
        seen: dict[ProjLine, int] = {}
        for i, l in enumerate(self.lines):
            if l.field != self.field:
                raise FieldMismatchError(f"line {i + 1} is over {l.field.name}, arrangement over {self.field.name}")
            if l in seen:
                raise DuplicateLineError(seen[l], i)
            seen[l] = i

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i: int) -> ProjLine:
        return self.lines[i]

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return f"L_{i + 1}"

    def all_labels(self) -> tuple[str, ...]:
        return tuple(self.label(i) for i in range(len(self)))

    def index(self, line: ProjLine) -> int:
        return self.lines.index(line)

    def line_set(self) -> frozenset[ProjLine]:
        return frozenset(self.lines)

    def extended(self, lines: Iterable[ProjLine], labels: Iterable[str] | None = None) -> Arrangement:
        lines = tuple(lines)
        if labels is None:
            labels = tuple(f"L_{len(self) + i + 1}" for i in range(len(lines)))
        return Arrangement(self.field, self.lines + lines, self.all_labels() + tuple(labels))

    def subarrangement(self, indices: Iterable[int]) -> Arrangement:
        idx = list(indices)
        return Arrangement(self.field, tuple(self.lines[i] for i in idx), tuple(self.label(i) for i in idx))

    def galois(self, k: int) -> Arrangement:
        return Arrangement(self.field, tuple(l.galois(k) for l in self.lines), self.labels)


@dataclass(frozen=True)
class Flat:
    point: ProjPoint
    lines: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class IncidenceLattice:
    n: int
    flats: tuple[Flat, ...]
    line_flats: tuple[tuple[int, ...], ...]
    pair_flat: tuple[tuple[int, ...], ...] = dc_field(repr=False)

    def flat_of(self, i: int, j: int) -> int:
        return self.pair_flat[i][j]

    def flat_sets(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(f.lines) for f in self.flats)

    def multiplicities(self) -> list[int]:
        return [f.multiplicity for f in self.flats]

    def points_on(self, line: int, min_mult: int = 2) -> list[int]:
        return [fid for fid in self.line_flats[line] if self.flats[fid].multiplicity >= min_mult]

    def profile(self, line: int) -> tuple[int, ...]:
        return tuple(sorted(self.flats[fid].multiplicity for fid in self.line_flats[line]))


def compute_lattice(arr: Arrangement) -> IncidenceLattice:
    """Rank-2 flats of ``arr``, in order of their lexicographically first line pair."""
    n = len(arr)
    if n < 2:
        raise GeometryError("an arrangement needs at least two lines")
    lines = arr.lines
    pair = [[-1] * n for _ in range(n)]
    flats: list[Flat] = []
    for i in range(n):
        for j in range(i + 1, n):
            if pair[i][j] >= 0:
                continue
            p = intersect(lines[i], lines[j])
            # a line k < i through p would already have placed (i, j) in a flat
            on = [i] + [k for k in range(i + 1, n) if k == j or incident(p, lines[k])]
            fid = len(flats)
            flats.append(Flat(p, tuple(on)))
            for a in on:
                for b in on:
                    if a != b:
                        pair[a][b] = fid
    line_flats = [[] for _ in range(n)]
    for fid, f in enumerate(flats):
        for i in f.lines:
            line_flats[i].append(fid)
    return IncidenceLattice(
        n=n,
        flats=tuple(flats),
        line_flats=tuple(tuple(x) for x in line_flats),
        pair_flat=tuple(tuple(r) for r in pair),
    )


@lru_cache(maxsize=256)
def lattice_of(arr: Arrangement) -> IncidenceLattice:
    """Memoized :func:`compute_lattice`."""
    return compute_lattice(arr)


def multiplicity_sets(lat: IncidenceLattice, k: int, at_least: bool = False) -> frozenset[int]:
    """Flat ids of multiplicity exactly ``k`` (or at least ``k``)."""
    if k < 2:
        raise ValueError("multiplicity is at least 2")
    if at_least:
        return frozenset(i for i, f in enumerate(lat.flats) if f.multiplicity >= k)
    return frozenset(i for i, f in enumerate(lat.flats) if f.multiplicity == k)


# 3x3 matrices over a field, as nested tuples of FieldElement


def det3(m: Sequence[Sequence[FieldElement]]) -> FieldElement:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def inverse3(m: Sequence[Sequence[FieldElement]]) -> tuple[tuple[FieldElement, ...], ...]:
    d = det3(m)
    if d.is_zero():
        raise GeometryError("singular matrix")
    dinv = d.inverse()
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != i]
            c = [y for y in range(3) if y != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    # inverse is the transposed cofactor matrix over det
    return tuple(tuple(cof[j][i] * dinv for j in range(3)) for i in range(3))


def apply_projectivity(arr: Arrangement, matrix: Sequence[Sequence[FieldElement]]) -> Arrangement:
    """Image of ``arr`` under the point map p -> matrix @ p.

    Lines transform contragrediently: l -> l @ matrix^-1.
    """
    minv = inverse3(matrix)
    new = []
    for l in arr.lines:
        c = l.coeffs
        new.append(ProjLine(tuple(c[0] * minv[0][j] + c[1] * minv[1][j] + c[2] * minv[2][j] for j in range(3))))
    return Arrangement(arr.field, tuple(new), arr.labels)
