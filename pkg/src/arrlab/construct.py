"""Ordered generic unions, augmentations along a line, seeded random
projectivities, and pi_1 / homotopy-equivalence certificates for pairs of
augmentations of one arrangement.

Certificates never compute a group: they record that the combinatorial
hypotheses of the augmentation theorem hold (Oka-Sakamoto for pi_1, Williams
for the homotopy type over a real arrangement).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .combin import (
    LatticeMap,
    SharedLineError,
    condition_c3,
    generic_intersection,
    is_fan_connected,
    is_lattice_map,
    ordered_isomorphic,
)
from .field import FieldDescriptor, FieldElement
from .geometry import (
    Arrangement,
    GeometryError,
    ProjLine,
    ProjPoint,
    _cross,
    apply_projectivity,
    det3,
    incident,
    intersect,
    join,
    lattice_of,
)
from .report import Check

__all__ = [
    "ConstructionError",
    "GenericityError",
    "AugmentationError",
    "CertificationError",
    "ordered_union",
    "random_matrix",
    "random_projective_transform",
    "GenericTransform",
    "make_generic",
    "augment",
    "augment_with",
    "AugmentationReport",
    "validate_augmentation",
    "ZPConstruction",
    "theorem_main_construction",
    "is_real_complexified",
    "EquivalenceCertificate",
    "certify_equivalence",
    "certify_via_bases",
]

Seed = Union[int, random.Random]

PI1_STATEMENT = "pi1(M(A+_L)) = pi1(M(A)) x F2 = pi1(M(A+_L'))"
HOMOTOPY_STATEMENT = "M(A+_L) and M(A+_L') are homotopy equivalent (A real-complexified)"
CONDITIONAL_ON = "augmentation theorem (Oka-Sakamoto; Williams for real-complexified A)"


class ConstructionError(ValueError):
    def __init__(self, message: str, condition: str = "", witness=None):
        self.condition = condition
        self.witness = witness
        super().__init__(message)


class GenericityError(ConstructionError):
    pass


class AugmentationError(ConstructionError):
    def __init__(self, message: str, report: Optional["AugmentationReport"] = None, condition: str = ""):
        self.report = report
        super().__init__(message, condition, report.witnesses() if report else None)


class CertificationError(ValueError):
    def __init__(self, message: str, only_left: Sequence[str] = (), only_right: Sequence[str] = ()):
        self.only_left = tuple(only_left)
        self.only_right = tuple(only_right)
        super().__init__(message)


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _describe_triple(arr: Arrangement, i: int, j: int, k: int, point: ProjPoint) -> dict:
    return {"lines": [arr.label(i), arr.label(j), arr.label(k)], "indices": [i + 1, j + 1, k + 1], "point": str(point)}


def ordered_union(a1: Arrangement, a2: Arrangement) -> Arrangement:
    """``a1`` followed by ``a2``; the two must intersect generically."""
    if a1.field != a2.field:
        raise ConstructionError("arrangements over different fields", "field")
    try:
        gen = generic_intersection(a1, a2)
    except SharedLineError as exc:
        i, j = exc.indices
        raise GenericityError(str(exc), "shared-line", {"left": a1.label(i), "right": a2.label(j)}) from None
    union = Arrangement(a1.field, a1.lines + a2.lines, a1.all_labels() + a2.all_labels())
    if not gen:
        i, j, k, p = gen.witness
        raise GenericityError(
            f"non-generic crossing at {p}", "C2", _describe_triple(union, i, j, k, p)
        )
    return union


# random projectivities


def random_matrix(rng: random.Random, field: FieldDescriptor, bound: int = 3) -> tuple[tuple[FieldElement, ...], ...]:
    """Seeded invertible 3x3 integer matrix; entries from [-B, B], B growing on retries."""
    retries = 0
    while True:
        b = bound + retries // 8
        m = tuple(tuple(field(rng.randint(-b, b)) for _ in range(3)) for _ in range(3))
        if not det3(m).is_zero():
            return m
        retries += 1


def random_projective_transform(a: Arrangement, seed: Seed) -> Arrangement:
    rng = _rng(seed)
    out = apply_projectivity(a, random_matrix(rng, a.field))
    if not ordered_isomorphic(a, out):
        raise AssertionError("projectivity changed the lattice")
    return out


@dataclass(frozen=True)
class GenericTransform:
    arrangement: Arrangement
    matrix: tuple[tuple[FieldElement, ...], ...]
    attempts: int

    def matrix_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.matrix]


def make_generic(a1: Arrangement, a2: Arrangement, seed: Seed, max_tries: int = 50) -> GenericTransform:
    """Random projective image of ``a2`` meeting ``a1`` generically.

    Matrix entries start in [-16, 16] and the range widens by 4 per failed
    attempt; rational lines on both sides make small entries collide often.
    """
    if a1.field != a2.field:
        raise ConstructionError("arrangements over different fields", "field")
    if max_tries <= 0:
        raise GenericityError("max_tries must be positive", "max_tries")
    rng = _rng(seed)
    witness = None
    for attempt in range(1, max_tries + 1):
        m = random_matrix(rng, a1.field, 16 + 4 * (attempt - 1))
        cand = apply_projectivity(a2, m)
        try:
            gen = generic_intersection(a1, cand)
        except SharedLineError as exc:
            witness = {"shared": [a1.label(exc.indices[0]), cand.label(exc.indices[1])]}
            continue
        if gen:
            return GenericTransform(cand, m, attempt)
        i, j, k, p = gen.witness
        witness = _describe_triple(Arrangement(a1.field, a1.lines + cand.lines, a1.all_labels() + cand.all_labels()), i, j, k, p)
    raise GenericityError(f"no generic transform found in {max_tries} tries", "C2", witness)


# augmentation


@dataclass
class AugmentationReport:
    checks: list[Check]
    designated: Optional[int]
    new_indices: tuple[int, ...]
    signature: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def witnesses(self) -> list:
        return [{"check": c.name, "witness": c.witness} for c in self.checks if not c.passed]


def validate_augmentation(base: Arrangement, aug: Arrangement, line: Optional[int] = None) -> AugmentationReport:
    """Check that ``aug`` is ``base`` plus two lines concurrent with one base line
    and generic with all other base lines.

    The designated base line is recovered as the base line through the common
    point of the new lines; pass ``line`` to require a specific one. The
    signature sub-check (the new lines are the only ones with exactly one
    point of multiplicity >= 3) is reported in ``signature`` and only
    evaluated when ``base`` satisfies C3.
    """
    checks: list[Check] = []
    base_set = base.line_set()
    new = tuple(i for i, l in enumerate(aug.lines) if l not in base_set)
    shape_ok = len(aug) == len(base) + 2 and len(new) == 2 and base_set <= aug.line_set() and base.field == aug.field
    checks.append(
        Check(
            "shape",
            shape_ok,
            None if shape_ok else {"base_lines": len(base), "aug_lines": len(aug), "new_lines": [aug.label(i) for i in new]},
        )
    )
    if not shape_ok:
        return AugmentationReport(checks, None, new)

    lat = lattice_of(aug)
    u, v = new
    p_fid = lat.flat_of(u, v)
    p = lat.flats[p_fid]
    through = [i for i in p.lines if i not in new]
    bidx = {l: i for i, l in enumerate(base.lines)}
    if line is not None:
        ok1 = aug.lines.index(base.lines[line]) in through
        designated = line
    else:
        ok1 = bool(through)
        designated = bidx[aug.lines[through[0]]] if through else None
    checks.append(
        Check(
            "concurrent",
            ok1,
            {"point": str(p.point), "base_lines_through_point": [aug.label(i) for i in through]} if not ok1 else None,
        )
    )

    des_aug = None if designated is None else aug.lines.index(base.lines[designated])
    bad = []
    for w in new:
        for fid in lat.line_flats[w]:
            f = lat.flats[fid]
            if fid == p_fid:
                if f.multiplicity != 3 or des_aug not in f.lines:
                    bad.append({"point": str(f.point), "lines": [aug.label(i) for i in f.lines]})
            elif f.multiplicity != 2:
                bad.append({"point": str(f.point), "lines": [aug.label(i) for i in f.lines]})
    # a flat on both new lines is only the common point, so duplicates are impossible
    checks.append(Check("generic", not bad, bad[0] if bad else None))

    signature = None
    if condition_c3(base):
        singles = {i for i in range(len(aug)) if len(lat.points_on(i, 3)) == 1}
        signature = singles == set(new)
    return AugmentationReport(checks, designated, new, signature)


def augment_with(a: Arrangement, k: int, l1: ProjLine, l2: ProjLine, labels: Sequence[str] | None = None) -> Arrangement:
    """``a`` plus two explicit lines, which must form an augmentation along line ``k``."""
    if not 0 <= k < len(a):
        raise IndexError(f"line index {k} out of range")
    try:
        aug = a.extended((l1, l2), labels)
    except GeometryError as exc:
        raise AugmentationError(f"invalid augmentation lines: {exc}", None, "distinct") from None
    rep = validate_augmentation(a, aug, line=k)
    if not rep:
        failed = next(c.name for c in rep.checks if not c.passed)
        raise AugmentationError(f"augmentation condition {failed!r} fails", rep, failed)
    return aug


def _random_point_on(line: ProjLine, rng: random.Random, bound: int) -> Optional[ProjPoint]:
    f = line.field
    w = [f(rng.randint(-bound, bound)) for _ in range(3)]
    c = _cross(line.coeffs, w)
    if all(x.is_zero() for x in c):
        return None
    return ProjPoint(tuple(c))


def augment(a: Arrangement, k: int, seed: Seed = 0, max_tries: int = 500, labels: Sequence[str] | None = None) -> Arrangement:
    """Seeded augmentation of ``a`` along line ``k`` (0-based).

    Picks a rational-coordinate point of line k outside the singular locus,
    then two random lines through it, retrying until the result validates.
    """
    if not 0 <= k < len(a):
        raise IndexError(f"line index {k} out of range")
    rng = _rng(seed)
    f = a.field
    target = a.lines[k]
    others = [l for i, l in enumerate(a.lines) if i != k]
    for attempt in range(max_tries):
        bound = 3 + attempt // 10
        p = _random_point_on(target, rng, bound)
        if p is None or any(incident(p, l) for l in others):
            continue
        q1 = ProjPoint.of(f, *(rng.randint(-bound, bound) or 1 for _ in range(3)))
        q2 = ProjPoint.of(f, *(rng.randint(-bound, bound) or 1 for _ in range(3)))
        try:
            l1, l2 = join(p, q1), join(p, q2)
            aug = a.extended((l1, l2), labels)
        except GeometryError:
            continue
        if validate_augmentation(a, aug, line=k):
            return aug
    raise AugmentationError(f"no augmentation found along line {k + 1} in {max_tries} tries", None, "search")


# the two-arrangement construction


@dataclass(frozen=True)
class ZPConstruction:
    """Outputs of the generic-union-plus-augmentation construction.

    ``left`` augments ``a1 + a2`` along line k of a1, ``right`` augments
    ``a2 + a1`` along line k of a2; ``phi`` is the index map L_i^1 <-> L_i^2,
    new lines fixed, which with this ordering is the identity.
    """

    a1: Arrangement
    a2: Arrangement
    k: int
    union12: Arrangement
    union21: Arrangement
    left: Arrangement
    right: Arrangement
    phi: LatticeMap
    phi_valid: bool

    @property
    def n(self) -> int:
        return len(self.a1)

    def partition(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        n = self.n
        return tuple(range(n)), tuple(range(n, 2 * n))


def theorem_main_construction(a1: Arrangement, a2: Arrangement, k: int, seed: Seed) -> ZPConstruction:
    n = len(a1)
    if len(a2) != n:
        raise ConstructionError("arrangements have different sizes", "size")
    if not 0 <= k < n:
        raise IndexError(f"line index {k} out of range")
    for name, arr in (("first", a1), ("second", a2)):
        if not is_fan_connected(arr):
            raise ConstructionError(f"{name} arrangement is not connected", "C1")
        c3 = condition_c3(arr)
        if not c3:
            raise ConstructionError(
                f"{name} arrangement fails C3", "C3", [arr.label(i) for i in c3.failing]
            )
    if not ordered_isomorphic(a1, a2):
        raise ConstructionError("arrangements are not ordered lattice isomorphic", "ordered-isomorphic")
    union12 = ordered_union(a1, a2)
    union21 = ordered_union(a2, a1)
    rng = _rng(seed)
    extra = ("L_new1", "L_new2")
    left = augment(union12, k, rng, labels=extra)
    right = augment(union21, k, rng, labels=extra)
    phi = LatticeMap(tuple(range(2 * n + 2)), "(A12)+", "(A21)+")
    return ZPConstruction(a1, a2, k, union12, union21, left, right, phi, is_lattice_map(left, right, phi.perm))


def is_real_complexified(a: Arrangement) -> bool:
    return a.field.has_real_embedding


# certificates


@dataclass(frozen=True)
class EquivalenceCertificate:
    kind: str  # "pi1" or "homotopy"
    base: Arrangement
    line_left: ProjLine
    line_right: ProjLine
    checks: tuple[str, ...]
    external_assumptions: tuple[str, ...] = ()
    base_right: Optional[Arrangement] = None

    @property
    def statement(self) -> str:
        return HOMOTOPY_STATEMENT if self.kind == "homotopy" else PI1_STATEMENT

    @property
    def conditional(self) -> bool:
        return bool(self.external_assumptions)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "statement": self.statement,
            "conditional_on": CONDITIONAL_ON,
            "base_lines": len(self.base),
            "line_left": self.line_left.equation(),
            "line_right": self.line_right.equation(),
            "checks": list(self.checks),
        }
        if self.external_assumptions:
            out["external_assumptions"] = list(self.external_assumptions)
        return out


def _augmentation_pairs(x: Arrangement) -> list[tuple[int, int]]:
    """Pairs of lines that look like the two added lines of an augmentation."""
    lat = lattice_of(x)
    out = []
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            if lat.flats[lat.flat_of(i, j)].multiplicity != 3:
                continue
            if all(lat.flats[fid].multiplicity == 2 or fid == lat.flat_of(i, j) for w in (i, j) for fid in lat.line_flats[w]):
                out.append((i, j))
    return out


def certify_equivalence(x: Arrangement, y: Arrangement) -> EquivalenceCertificate:
    """Certificate that ``x`` and ``y`` augment one common arrangement."""
    if x.field != y.field:
        raise CertificationError("arrangements over different fields")
    if len(x) != len(y) or len(x) < 4:
        raise CertificationError(f"inputs are not augmentations of a common arrangement (line counts {len(x)}, {len(y)})")
    ys = {l: i for i, l in enumerate(y.lines)}
    pairs_y = set(_augmentation_pairs(y))
    for i, j in _augmentation_pairs(x):
        base_set = x.line_set() - {x.lines[i], x.lines[j]}
        rest = [ys[l] for l in y.lines if l not in base_set]
        if len(rest) != 2 or not base_set <= y.line_set() or tuple(sorted(rest)) not in pairs_y:
            continue
        base = Arrangement(x.field, tuple(l for l in x.lines if l in base_set), tuple(x.label(t) for t, l in enumerate(x.lines) if l in base_set))
        rx = validate_augmentation(base, x)
        ry = validate_augmentation(base, y)
        if not (rx and ry):
            continue
        kind = "homotopy" if is_real_complexified(base) else "pi1"
        checks = (
            f"left is an augmentation of the common base along {base.label(rx.designated)}",
            f"right is an augmentation of the common base along {base.label(ry.designated)}",
            f"base field {base.field.name} {'has' if kind == 'homotopy' else 'lacks'} a real embedding",
        )
        return EquivalenceCertificate(kind, base, base.lines[rx.designated], base.lines[ry.designated], checks)
    only_x = [x.label(i) for i, l in enumerate(x.lines) if l not in ys]
    xs = x.line_set()
    only_y = [y.label(i) for i, l in enumerate(y.lines) if l not in xs]
    raise CertificationError(
        f"no common base arrangement; lines only in first: {only_x}, only in second: {only_y}", only_x, only_y
    )


def certify_via_bases(
    chain_x: Sequence[Arrangement],
    chain_y: Sequence[Arrangement],
    assumption: str,
) -> EquivalenceCertificate:
    """Conditional certificate for augmentations of two *different* bases.

    ``chain_x = [A, A', ..., X]`` with each term an augmentation of the
    previous (likewise for y). Requires the two bases to be ordered lattice
    isomorphic and every layer to augment along the same line index; the
    equivalence of the bases themselves is the recorded external assumption.
    """
    if len(chain_x) != len(chain_y) or len(chain_x) < 2:
        raise CertificationError("chains must have equal length >= 2")
    bx, by = chain_x[0], chain_y[0]
    if not ordered_isomorphic(bx, by):
        raise CertificationError("bases are not ordered lattice isomorphic")
    checks = ["bases are ordered lattice isomorphic"]
    first_x = first_y = None
    for layer, (px, nx, py, ny) in enumerate(zip(chain_x, chain_x[1:], chain_y, chain_y[1:]), 1):
        rx, ry = validate_augmentation(px, nx), validate_augmentation(py, ny)
        if not (rx and ry):
            raise CertificationError(f"layer {layer} is not an augmentation")
        if rx.designated != ry.designated:
            raise CertificationError(f"layer {layer} augments along different lines")
        if first_x is None:
            first_x, first_y = px.lines[rx.designated], py.lines[ry.designated]
        checks.append(f"layer {layer}: both augment along {px.label(rx.designated)}")
    kind = "homotopy" if is_real_complexified(bx) and is_real_complexified(by) else "pi1"
    return EquivalenceCertificate(kind, bx, first_x, first_y, tuple(checks), (assumption,), by)
