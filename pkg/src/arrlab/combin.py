"""Lattice isomorphisms, automorphism groups and the combinatorial conditions
on line arrangements (connectedness, multiple points per line, genericity).

Line indices are 0-based throughout; user-facing rendering adds one.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .geometry import Arrangement, GeometryError, IncidenceLattice, ProjPoint, lattice_of
from .perm import Perm, PermGroup, closure, format_cycles, identity

__all__ = [
    "SearchCapExceeded",
    "SharedLineError",
    "LatticeMap",
    "is_lattice_map",
    "ordered_isomorphic",
    "isomorphisms",
    "automorphism_group",
    "double_point_components",
    "multiple_point_components",
    "is_fan_connected",
    "is_double_point_connected",
    "C3Result",
    "condition_c3",
    "GenericityResult",
    "generic_intersection",
    "search_cap",
]

DEFAULT_SEARCH_CAP = 10**8

LatticeLike = Union[Arrangement, IncidenceLattice]


class SearchCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"isomorphism search exceeded {cap} nodes")


class SharedLineError(GeometryError):
    def __init__(self, i: int, j: int):
        self.indices = (i, j)
        super().__init__(f"line {i + 1} of the first arrangement equals line {j + 1} of the second")


def search_cap() -> int:
    value = os.environ.get("ARRLAB_SEARCH_CAP")
    return int(value) if value else DEFAULT_SEARCH_CAP


def _lat(x: LatticeLike) -> IncidenceLattice:
    return x if isinstance(x, IncidenceLattice) else lattice_of(x)


@dataclass(frozen=True)
class LatticeMap:
    """Line bijection ``perm[i]`` = image of source line i."""

    perm: Perm
    source: str = "A"
    target: str = "B"

    def cycles(self) -> str:
        return format_cycles(self.perm)

    def is_identity_on(self, indices: Sequence[int]) -> bool:
        return all(self.perm[i] == i for i in indices)

    def restrict(self, indices: Sequence[int]) -> Perm:
        return tuple(self.perm[i] for i in indices)


def is_lattice_map(a: LatticeLike, b: LatticeLike, perm: Sequence[int]) -> bool:
    """Does ``perm`` send the flats of ``a`` bijectively onto the flats of ``b``?"""
    la, lb = _lat(a), _lat(b)
    if la.n != lb.n or len(perm) != la.n or sorted(perm) != list(range(la.n)):
        return False
    if len(la.flats) != len(lb.flats):
        return False
    target = lb.flat_sets()
    images = {frozenset(perm[i] for i in f.lines) for f in la.flats}
    return images == target


def ordered_isomorphic(a: LatticeLike, b: LatticeLike) -> bool:
    la, lb = _lat(a), _lat(b)
    if la.n != lb.n:
        return False
    return la.flat_sets() == lb.flat_sets()


def isomorphisms(
    a: LatticeLike,
    b: LatticeLike,
    limit: Optional[int] = None,
    cap: Optional[int] = None,
) -> list[LatticeMap]:
    """All line bijections inducing a lattice isomorphism, in lexicographic order.

    Backtracking over source lines in index order; a target is admissible
    only if its multiplicity profile matches and every pair with an already
    placed line lands in a flat consistent with a partial flat bijection.
    """
    la, lb = _lat(a), _lat(b)
    n = la.n
    if lb.n != n or sorted(la.multiplicities()) != sorted(lb.multiplicities()):
        return []
    prof_a = [la.profile(i) for i in range(n)]
    prof_b = [lb.profile(i) for i in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return []
    cands = [[t for t in range(n) if prof_b[t] == prof_a[i]] for i in range(n)]
    size_a = [f.multiplicity for f in la.flats]
    size_b = [f.multiplicity for f in lb.flats]
    pa, pb = la.pair_flat, lb.pair_flat
    cap = search_cap() if cap is None else cap

    perm = [-1] * n
    used = [False] * n
    fmap: dict[int, int] = {}
    rmap: dict[int, int] = {}
    count = [0] * len(la.flats)
    results: list[LatticeMap] = []
    nodes = 0

    def place(i: int, t: int) -> Optional[list[int]]:
        added: list[int] = []
        row_a, row_b = pa[i], pb[t]
        for j in range(i):
            fa = row_a[j]
            fb = row_b[perm[j]]
            if size_a[fa] != size_b[fb]:
                break
            m = fmap.get(fa)
            if m is None:
                if fb in rmap:
                    break
                fmap[fa] = fb
                rmap[fb] = fa
            elif m != fb:
                break
            count[fa] += 1
            added.append(fa)
        else:
            return added
        unplace(added)
        return None

    def unplace(added: list[int]) -> None:
        for fa in added:
            count[fa] -= 1
            if count[fa] == 0:
                del rmap[fmap.pop(fa)]

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == n:
            results.append(LatticeMap(tuple(perm)))
            return limit is not None and len(results) >= limit
        for t in cands[i]:
            if used[t]:
                continue
            nodes += 1
            if nodes > cap:
                raise SearchCapExceeded(cap)
            added = place(i, t)
            if added is None:
                continue
            perm[i] = t
            used[t] = True
            done = extend(i + 1)
            used[t] = False
            perm[i] = -1
            unplace(added)
            if done:
                return True
        return False

    if limit is not None and limit <= 0:
        return []
    extend(0)
    return results


def automorphism_group(a: LatticeLike, cap: Optional[int] = None) -> PermGroup:
    """Full automorphism group, with a greedy lexicographic generating set."""
    n = _lat(a).n
    elems = [m.perm for m in isomorphisms(a, a, cap=cap)]
    gens: list[Perm] = []
    span = {identity(n)}
    for p in elems:
        if p not in span:
            gens.append(p)
            span = set(closure(gens, n))
    group = PermGroup(n, tuple(gens), len(elems), frozenset(elems))
    if span != set(elems) or not group.is_closed():
        raise AssertionError("automorphism set is not a group")
    return group


def _components(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def double_point_components(a: LatticeLike) -> list[list[int]]:
    """Components of the graph on lines with one edge per double point."""
    lat = _lat(a)
    edges = [tuple(f.lines) for f in lat.flats if f.multiplicity == 2]
    return _components(lat.n, edges)


def multiple_point_components(a: LatticeLike) -> list[list[int]]:
    """Components of the graph on lines joined when they share a point of multiplicity >= 3."""
    lat = _lat(a)
    edges = [(f.lines[0], j) for f in lat.flats if f.multiplicity >= 3 for j in f.lines[1:]]
    return _components(lat.n, edges)


def is_fan_connected(a: LatticeLike) -> bool:
    """Connectedness of the arrangement (condition C1).

    Lines are joined through their points of multiplicity >= 3 only; double
    points do not connect. Under this reading a generic union of two
    connected arrangements has exactly two components, one per summand.
    """
    return len(multiple_point_components(a)) == 1


def is_double_point_connected(a: LatticeLike) -> bool:
    return len(double_point_components(a)) == 1


@dataclass(frozen=True)
class C3Result:
    passed: bool
    counts: tuple[int, ...]

    @property
    def failing(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.counts) if c < 2)

    def __bool__(self) -> bool:
        return self.passed


def condition_c3(a: LatticeLike) -> C3Result:
    """Every line carries at least two points of multiplicity >= 3."""
    lat = _lat(a)
    counts = tuple(len(lat.points_on(i, 3)) for i in range(lat.n))
    return C3Result(all(c >= 2 for c in counts), counts)


@dataclass(frozen=True)
class GenericityResult:
    passed: bool
    witness: Optional[tuple[int, int, int, ProjPoint]] = None
    """(line of a1, line of a2 as union index, third line, common point)"""

    def __bool__(self) -> bool:
        return self.passed


def generic_intersection(a1: Arrangement, a2: Arrangement) -> GenericityResult:
    """Every crossing of a line of ``a1`` with a line of ``a2`` is a double point of the union.

    Witness indices refer to the concatenation ``a1 + a2``.
    """
    if a1.field != a2.field:
        raise GeometryError("arrangements over different fields")
    pos = {l: i for i, l in enumerate(a1.lines)}
    for j, l in enumerate(a2.lines):
        if l in pos:
            raise SharedLineError(pos[l], j)
    n1 = len(a1)
    union = Arrangement(a1.field, a1.lines + a2.lines)
    if len(union) < 2:
        return GenericityResult(True)
    lat = lattice_of(union)
    for i in range(n1):
        for j in range(n1, len(union)):
            f = lat.flats[lat.flat_of(i, j)]
            if f.multiplicity > 2:
                k = next(x for x in f.lines if x not in (i, j))
                return GenericityResult(False, (i, j, k, f.point))
    return GenericityResult(True)
