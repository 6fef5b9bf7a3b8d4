"""Möbius function and Whitney-type polynomials of the intersection lattice.

The lattice is that of the cone over the projective arrangement: bottom
(rank 0), lines (rank 1), points (rank 2) and, unless every line passes
through one point, the origin as top element (rank 3).

Polynomials are tuples of integer coefficients in ascending degree.
"""
from __future__ import annotations

from typing import Union

from .geometry import Arrangement, IncidenceLattice, lattice_of

Element = tuple  # ("bottom",) | ("line", i) | ("flat", fid) | ("top",)
IntPoly = tuple[int, ...]

BOTTOM = ("bottom",)
TOP = ("top",)


def _lat(x: Union[Arrangement, IncidenceLattice]) -> IncidenceLattice:
    return x if isinstance(x, IncidenceLattice) else lattice_of(x)


def has_top(lat: IncidenceLattice) -> bool:
    """False exactly for a pencil, where the point through all lines is the top."""
    return not any(f.multiplicity == lat.n for f in lat.flats)


def elements(lat: IncidenceLattice) -> list[tuple[Element, int]]:
    """Lattice elements with their ranks, in a linear extension of the order."""
    out = [(BOTTOM, 0)]
    out += [(("line", i), 1) for i in range(lat.n)]
    out += [(("flat", fid), 2) for fid in range(len(lat.flats))]
    if has_top(lat):
        out.append((TOP, 3))
    return out


def below(lat: IncidenceLattice, x: Element) -> list[Element]:
    """Elements strictly below ``x``."""
    if x == BOTTOM:
        return []
    if x[0] == "line":
        return [BOTTOM]
    if x[0] == "flat":
        return [BOTTOM] + [("line", i) for i in lat.flats[x[1]].lines]
    return [e for e, _ in elements(lat) if e != TOP]


def moebius(x: Union[Arrangement, IncidenceLattice]) -> dict[Element, int]:
    """mu(bottom, X) for every X, by the recursion mu(X) = -sum_{Y<X} mu(Y)."""
    lat = _lat(x)
    mu: dict[Element, int] = {}
    for e, _ in elements(lat):
        mu[e] = 1 if e == BOTTOM else -sum(mu[y] for y in below(lat, e))
    return mu


def characteristic_polynomial(x: Union[Arrangement, IncidenceLattice]) -> IntPoly:
    """sum_X mu(X) t^(3 - rank X)."""
    lat = _lat(x)
    mu = moebius(lat)
    coeffs = [0, 0, 0, 0]
    for e, r in elements(lat):
        coeffs[3 - r] += mu[e]
    return tuple(coeffs)


def poincare_polynomial(x: Union[Arrangement, IncidenceLattice]) -> IntPoly:
    """sum_X mu(X) (-t)^rank X; the Betti numbers of the complement of the cone."""
    lat = _lat(x)
    mu = moebius(lat)
    coeffs = [0, 0, 0, 0]
    for e, r in elements(lat):
        coeffs[r] += mu[e] * (-1) ** r
    return tuple(coeffs)


def format_poly(p: IntPoly, var: str = "t") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if k == 0 else (mono if mag == 1 else f"{mag}*{mono}")
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out
