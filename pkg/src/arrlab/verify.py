"""Machine checks of the combinatorial facts behind the two explicit examples
and behind the generic-union-plus-augmentation construction.

Uniqueness claims ("the only line ...") are always checked by full
enumeration. Statements about fundamental groups or homotopy types are
reported as conditional certificates; nothing here computes a group.
"""
from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .combin import (
    SharedLineError,
    automorphism_group,
    condition_c3,
    generic_intersection,
    is_fan_connected,
    isomorphisms,
    multiple_point_components,
    ordered_isomorphic,
)
from .construct import (
    CertificationError,
    ZPConstruction,
    augment,
    certify_equivalence,
    certify_via_bases,
    is_real_complexified,
    make_generic,
    theorem_main_construction,
    validate_augmentation,
)
from .geometry import Arrangement, lattice_of, multiplicity_sets
from .paper import ACCM_INDEX, ACCM_SIGMAS, GUE_SIGMA, build_paper_arrangement
from .perm import PermGroup, compose, format_cycles, inverse, parse_cycles
from .report import VerificationReport

__all__ = [
    "build_paper_arrangement",
    "verify_theorem_main_hypotheses",
    "verify_distinguishing_features",
    "run_theorem_main",
    "verify_gue_example",
    "verify_accm_example",
    "verify_paper",
]


def _labels(arr: Arrangement, idx: Sequence[int]) -> list[str]:
    return [arr.label(i) for i in idx]


def _components_witness(arr: Arrangement) -> list[list[str]]:
    return [_labels(arr, c) for c in multiple_point_components(arr)]


def verify_theorem_main_hypotheses(a1: Arrangement, a2: Arrangement, k: int) -> VerificationReport:
    """Connectedness (C1), genericity (C2), two multiple points per line (C3),
    and ordered lattice isomorphism of the pair; ``k`` is 0-based."""
    rep = VerificationReport("theorem-main-hypotheses")
    rep.add("line k in range", 0 <= k < min(len(a1), len(a2)), None if 0 <= k < min(len(a1), len(a2)) else {"k": k + 1})
    for tag, arr in (("first", a1), ("second", a2)):
        ok = is_fan_connected(arr)
        rep.add(f"C1: {tag} arrangement connected", ok, None if ok else {"components": _components_witness(arr)})
    try:
        gen = generic_intersection(a1, a2)
        if gen:
            rep.add("C2: generic intersection", True)
        else:
            i, j, kk, p = gen.witness
            rep.add(
                "C2: generic intersection",
                False,
                {"point": str(p), "lines": [a1.label(i), a2.label(j - len(a1)), (a1.all_labels() + a2.all_labels())[kk]]},
            )
    except SharedLineError as exc:
        i, j = exc.indices
        rep.add("C2: generic intersection", False, {"shared_line": [a1.label(i), a2.label(j)], "equation": a1.lines[i].equation()})
    for tag, arr in (("first", a1), ("second", a2)):
        c3 = condition_c3(arr)
        rep.add(
            f"C3: {tag} arrangement has >= 2 multiple points per line",
            c3.passed,
            None if c3 else {"lines": _labels(arr, c3.failing), "counts": [c3.counts[i] for i in c3.failing]},
        )
    ok = len(a1) == len(a2) and ordered_isomorphic(a1, a2)
    rep.add("ordered lattice isomorphism", ok, None if ok else {"sizes": [len(a1), len(a2)]})
    return rep


def verify_distinguishing_features(
    x: Arrangement,
    partition: Sequence[Sequence[int]],
    expected_component: int = 0,
) -> VerificationReport:
    """The three combinatorial facts that pin down an augmented generic union.

    (i) exactly the last two lines carry a single point of multiplicity >= 3;
    (ii) without them, lines joined through multiple points split into the
    parts of ``partition``; (iii) exactly one line with >= 2 multiple points
    passes through the common point of the last two, and it lies in
    ``partition[expected_component]``.
    """
    rep = VerificationReport("distinguishing-features")
    n = len(x)
    if n < 6:
        rep.add("size", False, {"lines": n})
        return rep
    lat = lattice_of(x)
    counts = [len(lat.points_on(i, 3)) for i in range(n)]
    singles = [i for i in range(n) if counts[i] == 1]
    ok = singles == [n - 2, n - 1]
    rep.add("i: only the last two lines carry a single multiple point", ok, None if ok else {"single_lines": _labels(x, singles)})

    sub = x.subarrangement(range(n - 2))
    comps = multiple_point_components(sub)
    want = sorted(sorted(p) for p in partition)
    ok = comps == want
    rep.add(
        "ii: base splits into the two summands",
        ok,
        None if ok else {"components": [_labels(sub, c) for c in comps], "expected": [_labels(sub, c) for c in want]},
    )

    p = lat.flats[lat.flat_of(n - 2, n - 1)]
    hits = [i for i in p.lines if counts[i] >= 2]
    ok = len(hits) == 1 and hits[0] in set(partition[expected_component])
    rep.add(
        "iii: unique multiple line through the special point, in the expected summand",
        ok,
        None if ok else {"point": str(p.point), "lines": _labels(x, hits), "expected_component": expected_component + 1},
    )
    return rep


def run_theorem_main(
    a1: Arrangement,
    a2: Arrangement,
    k: int,
    seed: int,
    max_tries: int = 50,
) -> tuple[Optional[ZPConstruction], VerificationReport, dict]:
    """Full pipeline: hypotheses, generic repositioning of ``a2`` if needed,
    construction, and verification of its outputs."""
    rep = VerificationReport("construct-zp")
    info: dict = {"seed": seed, "line": k + 1}
    hyp = verify_theorem_main_hypotheses(a1, a2, k)
    for c in hyp.checks:
        if not c.name.startswith("C2"):
            rep.checks.append(c)
    if not rep.overall:
        return None, rep, info
    if not hyp["C2: generic intersection"].passed:
        moved = make_generic(a1, a2, seed, max_tries)
        a2 = moved.arrangement
        info["transform"] = {"matrix": moved.matrix_strings(), "attempts": moved.attempts}
        rep.add("C2: generic after projective transform of the second arrangement", True, note=f"{moved.attempts} attempt(s)")
        ok = ordered_isomorphic(a1, a2)
        rep.add("transformed arrangement keeps the ordered lattice", ok, None if ok else {"transform": info["transform"]})
    else:
        rep.add("C2: generic intersection", True)

    con = theorem_main_construction(a1, a2, k, seed)
    n = len(a1)
    rep.reset_clock()
    ok = len(con.left) == len(con.right) == 2 * n + 2
    rep.add("output line count is 2n+2", ok, None if ok else {"lines": [len(con.left), len(con.right)]})
    ok = con.union12.line_set() == con.union21.line_set() and con.union12.lines != con.union21.lines
    rep.add("A12 and A21 are one arrangement with two orders", ok, None if ok else "unions differ")
    rep.add("P1: phi+ is a lattice isomorphism", con.phi_valid, None if con.phi_valid else {"phi": con.phi.cycles()})
    for tag, base, aug in (("left", con.union12, con.left), ("right", con.union21, con.right)):
        r = validate_augmentation(base, aug, line=k)
        rep.add(f"{tag} output augments the union along line {k + 1}", r.passed, r.witnesses() or None)
    for tag, aug, part in (
        ("left", con.left, con.partition()),
        ("right", con.right, con.partition()),
    ):
        df = verify_distinguishing_features(aug, part, 0)
        rep.merge(df, prefix=f"{tag} ")

    maps = isomorphisms(con.left, con.right)
    first = set(range(n))
    bad = [m for m in maps if {m.perm[i] for i in range(n)} != first or m.perm[k] != k]
    ok = bool(maps) and not bad
    rep.add(
        "every isomorphism sends A1 onto A2 and l1 to l2",
        ok,
        None if ok else {"maps": len(maps), "violations": [m.cycles() for m in bad[:5]]},
        note=f"{len(maps)} isomorphism(s) enumerated",
    )
    try:
        cert = certify_equivalence(con.left, con.right)
        info["certificate"] = cert.to_dict()
        ok = cert.base.line_set() == con.union12.line_set()
        rep.add(f"P3: {cert.kind} certificate over the common union", ok, None if ok else "certificate base is not the union")
    except CertificationError as exc:
        rep.add("P3: certificate over the common union", False, str(exc))
    return con, rep, info


def _gue_pairs() -> list[tuple[str, str]]:
    return [("M+", "N+"), ("M-", "N-"), ("M+", "N-"), ("M-", "N+")]


def verify_gue_example() -> VerificationReport:
    rep = VerificationReport("gue")
    arr = {name: build_paper_arrangement(name) for name in ("M+", "M-", "N+", "N-")}
    frak = {name: build_paper_arrangement("Frak-" + name) for name in arr}

    for x, y in _gue_pairs():
        ok = ordered_isomorphic(arr[x], arr[y])
        rep.add(f"a: ({x}, {y}) ordered lattice isomorphic", ok, None if ok else {"pair": [x, y]})
    for name, a in arr.items():
        ok = is_fan_connected(a) and condition_c3(a).passed
        rep.add(f"a: {name} satisfies C1 and C3", ok, None if ok else {"components": _components_witness(a), "c3": condition_c3(a).counts})

    mp = arr["M+"]
    group = automorphism_group(mp)
    sigma = parse_cycles(GUE_SIGMA, 11)
    ok = group.order == 4 and sigma in group and group.is_cyclic() and group.is_closed()
    rep.add(
        "b: Aut(M+) is cyclic of order 4 and contains sigma",
        ok,
        None if ok else {"order": group.order, "generators": [format_cycles(g) for g in group.generators]},
        note=f"generators {[format_cycles(g) for g in group.generators]}",
    )
    others = {n: automorphism_group(a).all_elements() for n, a in arr.items() if n != "M+"}
    ok = all(g == group.all_elements() for g in others.values())
    rep.add("b: M-, N+, N- have the same automorphism group", ok, None if ok else {"orders": {n: len(g) for n, g in others.items()}})

    # L1 -> L3 -> L2 -> L4 -> L1, 0-based 0 -> 2 -> 1 -> 3 -> 0
    cycle = [0, 2, 1, 3]
    ok = all(sigma[cycle[i]] == cycle[(i + 1) % 4] for i in range(4))
    rep.add("c: sigma cycles L1 -> L3 -> L2 -> L4", ok, None if ok else {"sigma": GUE_SIGMA})

    for name in arr:
        r = validate_augmentation(arr[name], frak[name], line=0)
        ok = r.passed and r.signature is True
        rep.add(
            f"d: Frak-{name} augments {name} along L_1; only L_12, L_13 carry a single multiple point",
            ok,
            None if ok else {"checks": r.witnesses(), "signature": r.signature},
        )

    for name, x in frak.items():
        lat = lattice_of(x)
        p = lat.flats[lat.flat_of(11, 12)]
        base_through = [i for i in p.lines if i < 11]
        ok = base_through == [0]
        rep.add(f"e: L_1 is the only line of Frak-{name} through L_12 cap L_13", ok, None if ok else {"point": str(p.point), "lines": _labels(x, p.lines)})

    for x, y in _gue_pairs():
        maps = isomorphisms(frak[x], frak[y])
        bad = [m.cycles() for m in maps if not m.is_identity_on(range(11))]
        ok = bool(maps) and not bad
        rep.add(
            f"f: every isomorphism Frak-{x} -> Frak-{y} is ordered on L_1..L_11",
            ok,
            {"maps": [m.cycles() for m in maps]} if ok else {"maps": len(maps), "non_ordered": bad[:5]},
        )

    try:
        cert = certify_via_bases(
            [arr["M+"], frak["M+"]],
            [arr["N+"], frak["N+"]],
            "M+ and N+ have pi1-equivalent complements (external input)",
        )
        rep.add(f"g: conditional {cert.kind} certificate for (Frak-M+, Frak-N+)", cert.kind == "pi1", cert.to_dict())
    except CertificationError as exc:
        rep.add("g: conditional certificate for (Frak-M+, Frak-N+)", False, str(exc))
    other = augment(arr["M+"], 1, seed=0)
    try:
        cert = certify_equivalence(frak["M+"], other)
        ok = cert.kind == "pi1" and cert.base.line_set() == arr["M+"].line_set()
        rep.add("g: pi1 certificate for Frak-M+ vs an augmentation of M+ along L_2", ok, cert.to_dict())
    except CertificationError as exc:
        rep.add("g: pi1 certificate for Frak-M+ vs an augmentation of M+ along L_2", False, str(exc))
    return rep


def verify_accm_example() -> VerificationReport:
    rep = VerificationReport("accm")
    base = {"M": build_paper_arrangement("ACCM-M"), "N": build_paper_arrangement("ACCM-N")}
    aug = {"M": build_paper_arrangement("ACCM-M-aug"), "N": build_paper_arrangement("ACCM-N-aug")}
    I = ACCM_INDEX
    m1, m2, l1, l5 = I["M_1"], I["M_2"], I["L_1"], I["L_5"]
    d1, d2, d3, d4 = I["D_1"], I["D_2"], I["D_3"], I["D_4"]

    ok = ordered_isomorphic(base["M"], base["N"])
    rep.add("(M, N) ordered lattice isomorphic", ok, None if ok else "lattices differ")

    for tag, x in aug.items():
        lat = lattice_of(x)
        counts = [len(lat.points_on(i, 3)) for i in range(len(x))]
        ok = all(counts[i] == 1 for i in (d1, d2, d3, d4)) and all(c >= 2 for c in counts[:10])
        rep.add(f"a: {tag}-aug: D_1..D_4 carry one multiple point, the base lines >= 2", ok, None if ok else dict(zip(x.all_labels(), counts)))

    for tag, x in aug.items():
        lat = lattice_of(x)
        fives = sorted(multiplicity_sets(lat, 5))
        above = sorted(multiplicity_sets(lat, 6, at_least=True))
        ok = len(fives) == 1 and not above and m1 in lat.flats[fives[0]].lines and l5 not in lat.flats[fives[0]].lines
        witness = [_labels(x, lat.flats[f].lines) for f in fives]
        rep.add(f"b: {tag}-aug has a unique quintuple point; it lies on M_1, not on L_5", ok, witness or {"quintuple_points": 0})

    for tag, x in aug.items():
        lat = lattice_of(x)
        p12 = [i for i in lat.flats[lat.flat_of(d1, d2)].lines if i < 10]
        p34 = [i for i in lat.flats[lat.flat_of(d3, d4)].lines if i < 10]
        ok = p12 == [m1] and p34 == [l5]
        rep.add(f"c: {tag}-aug: M_1 and L_5 are the only base lines through D_1 cap D_2 and D_3 cap D_4", ok, {"D1D2": _labels(x, p12), "D3D4": _labels(x, p34)})

    for tag, x in base.items():
        lat = lattice_of(x)
        doubles = sorted(j for j in range(len(x)) if j != m1 and lat.flats[lat.flat_of(m1, j)].multiplicity == 2)
        ok = doubles == [l1]
        rep.add(f"d: L_1 is the only line meeting M_1 in a double point of {tag}", ok, None if ok else {"lines": _labels(x, doubles)})

    for tag, x in base.items():
        lat = lattice_of(x)
        f = lat.flats[lat.flat_of(l5, l1)]
        ok = sorted(f.lines) == sorted([l5, l1, m2])
        rep.add(f"e: L_5, L_1, M_2 meet in a triple point of {tag}", ok, None if ok else {"point": str(f.point), "lines": _labels(x, f.lines)})

    maps = isomorphisms(aug["M"], aug["N"])
    bad = [m.cycles() for m in maps if not m.is_identity_on(range(10))]
    ok = bool(maps) and not bad
    rep.add(
        "f: every isomorphism M-aug -> N-aug is ordered on the ten base lines",
        ok,
        {"maps": [m.cycles() for m in maps]} if ok else {"maps": len(maps), "non_ordered": bad[:5]},
    )

    real = is_real_complexified(aug["M"]) and is_real_complexified(aug["N"])
    rep.add("g: real-complexified", real, None if real else {"field": aug["M"].field.name})
    mid = {t: base[t].extended(aug[t].lines[10:12], aug[t].labels[10:12]) for t in base}
    try:
        cert = certify_via_bases(
            [base["M"], mid["M"], aug["M"]],
            [base["N"], mid["N"], aug["N"]],
            "M and N have homotopy-equivalent complements (external input)",
        )
        rep.add(f"g: conditional {cert.kind} certificate for (M-aug, N-aug)", cert.kind == "homotopy", cert.to_dict())
    except CertificationError as exc:
        rep.add("g: conditional certificate for (M-aug, N-aug)", False, str(exc))
    other = augment(mid["M"], m2, seed=0)
    try:
        cert = certify_equivalence(aug["M"], other)
        ok = cert.kind == "homotopy" and cert.base.line_set() == mid["M"].line_set()
        rep.add("g: homotopy certificate for M-aug vs an augmentation of M + D_1, D_2 along M_2", ok, cert.to_dict())
    except CertificationError as exc:
        rep.add("g: homotopy certificate for M-aug vs an augmentation of M + D_1, D_2 along M_2", False, str(exc))

    _check_accm_group(rep, base["M"])
    return rep


def _check_accm_group(rep: VerificationReport, m: Arrangement) -> None:
    group = automorphism_group(m)
    ok = group.order == 20 and group.is_closed()
    rep.add("h: Aut(M) has order 20", ok, None if ok else {"order": group.order})
    mlines = list(range(5))
    restricted = group.restricted(mlines)
    ok = restricted.order == group.order
    rep.add("h: Aut(M) acts faithfully on M_1..M_5", ok, None if ok else {"restricted_order": restricted.order})
    sigmas = [parse_cycles(s, 5) for s in ACCM_SIGMAS]
    printed = PermGroup.generated_by(sigmas, 5)
    rep.add("h: <sigma1, sigma2> has order 20 (closure)", printed.order == 20, None if printed.order == 20 else {"order": printed.order})

    got, want = restricted.all_elements(), printed.all_elements()
    ok = got == want
    conj = [
        c for c in itertools.permutations(range(5)) if {compose(compose(c, h), inverse(c)) for h in want} == got
    ]
    rep.add(
        "h: Aut(M) restricted to M_1..M_5 equals <sigma1, sigma2>",
        ok,
        None
        if ok
        else {
            "sigma1_in_restriction": sigmas[0] in got,
            "sigma2_in_restriction": sigmas[1] in got,
            "restriction_generators": [format_cycles(g) for g in restricted.generators],
            "conjugated_by": [format_cycles(c) for c in conj if len([i for i in range(5) if c[i] != i]) <= 2][:3],
        },
    )
    ok = bool(conj)
    rep.add(
        "h: restriction is conjugate to <sigma1, sigma2> in S5",
        ok,
        {"conjugators": [format_cycles(c) for c in conj[:3]]} if ok else {"conjugators": []},
    )
    stab = [p for p in group.all_elements() if p[ACCM_INDEX["M_1"]] == ACCM_INDEX["M_1"] and p[ACCM_INDEX["M_2"]] == ACCM_INDEX["M_2"]]
    ok = len(stab) == 1
    rep.add("h: only the identity of Aut(M) fixes M_1 and M_2", ok, None if ok else {"stabilizer": [format_cycles(p) for p in stab]})


def verify_paper(name: str) -> VerificationReport:
    if name == "gue":
        return verify_gue_example()
    if name == "accm":
        return verify_accm_example()
    raise KeyError(f"unknown scenario {name!r}; expected gue or accm")
