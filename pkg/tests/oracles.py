"""Brute-force reference implementations used to cross-check the fast code."""
from itertools import combinations, permutations

from arrlab.geometry import Arrangement, det3


def flat_sets_by_determinants(arr: Arrangement) -> frozenset[frozenset[int]]:
    """For every pair, the lines whose coefficient determinant with the pair vanishes."""
    n = len(arr)
    rows = [l.coeffs for l in arr.lines]
    out = set()
    for i, j in combinations(range(n), 2):
        s = {i, j} | {k for k in range(n) if k not in (i, j) and det3((rows[i], rows[j], rows[k])).is_zero()}
        out.add(frozenset(s))
    return frozenset(out)


def isomorphisms_by_enumeration(fa, fb, n: int) -> list[tuple[int, ...]]:
    """Every permutation of n lines mapping flat set ``fa`` onto ``fb``."""
    return [p for p in permutations(range(n)) if frozenset(frozenset(p[i] for i in s) for s in fa) == fb]
