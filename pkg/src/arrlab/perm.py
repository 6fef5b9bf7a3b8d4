"""Permutations as 0-based image tuples, cycle notation, and small permutation
groups given by generators."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation such as ``(1 3 2 4)(5 6)`` or ``(1,2,3)``."""
    images = list(range(degree))
    body = text.replace(" ", "")
    if body in ("", "()", "id"):
        return tuple(images)
    cycles = re.findall(r"\(([^()]*)\)", text)
    if "".join(f"({c})" for c in cycles).replace(" ", "") != body:
        raise ValueError(f"malformed cycle notation {text!r}")
    seen: set[int] = set()
    for c in cycles:
        pts = [int(x) - 1 for x in re.split(r"[,\s]+", c.strip()) if x]
        for x in pts:
            if not 0 <= x < degree or x in seen:
                raise ValueError(f"bad point {x + 1} in {text!r}")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return tuple(images)


def format_cycles(p: Perm) -> str:
    """1-based cycle notation, fixed points omitted; ``()`` for the identity."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def closure(generators: Iterable[Perm], degree: int) -> frozenset[Perm]:
    """All products of the generators (breadth-first orbit of the identity)."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"{g} is not a permutation of degree {degree}")
    e = identity(degree)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def restrict(p: Perm, points: Sequence[int]) -> Perm:
    """Action of ``p`` on the p-stable subset ``points``, relabelled 0..len-1 in the given order."""
    pos = {x: i for i, x in enumerate(points)}
    try:
        return tuple(pos[p[x]] for x in points)
    except KeyError:
        raise ValueError("subset is not stable under the permutation") from None


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    order: int
    elements: Optional[frozenset[Perm]] = None

    @classmethod
    def generated_by(cls, generators: Iterable[Perm], degree: int) -> PermGroup:
        gens = tuple(tuple(g) for g in generators)
        elems = closure(gens, degree)
        return cls(degree, gens, len(elems), elems)

    def all_elements(self) -> frozenset[Perm]:
        if self.elements is None:
            return closure(self.generators, self.degree)
        return self.elements

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.all_elements()

    def is_closed(self) -> bool:
        """Explicit check: closed under products and inverses, and of the stated order."""
        elems = self.all_elements()
        if len(elems) != self.order:
            return False
        for x in elems:
            if inverse(x) not in elems:
                return False
            for y in elems:
                if compose(x, y) not in elems:
                    return False
        return True

    def restricted(self, points: Sequence[int]) -> PermGroup:
        """Induced action on a stable subset (may be non-faithful)."""
        images = {restrict(p, points) for p in self.all_elements()}
        gens = tuple(dict.fromkeys(restrict(g, points) for g in self.generators))
        return PermGroup(len(points), gens, len(images), frozenset(images))

    def is_cyclic(self) -> bool:
        return any(len(closure([g], self.degree)) == self.order for g in self.all_elements())
