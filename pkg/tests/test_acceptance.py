"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are collected in ``RESULTS`` and echoed in the pytest terminal
summary (see conftest). Running this file directly prints them as well.
"""
import io
import json
import random
import time

import pytest

from arrlab.arrfile import bundled_names, bundled_path, parse_arrangement_file, read_arrangement
from arrlab.cli import main
from arrlab.combin import automorphism_group, is_lattice_map, isomorphisms
from arrlab.field import QA, QG, QQ
from arrlab.geometry import Arrangement, apply_projectivity, compute_lattice
from arrlab.invariants import characteristic_polynomial, moebius
from arrlab.paper import build_paper_arrangement
from arrlab.perm import parse_cycles
from arrlab.verify import verify_distinguishing_features

from conftest import random_arrangement, random_element
from oracles import flat_sets_by_determinants, isomorphisms_by_enumeration

RESULTS: dict[int, str] = {}

ZP_SEEDS = (1, 2, 3)


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)


def cli(*argv):
    out = io.StringIO()
    code = main([*argv, "--json"], out=out)
    return code, json.loads(out.getvalue())


def failed_checks(data):
    return [c["name"] for c in data["checks"] if not c["pass"]]


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("acceptance")


@pytest.fixture(scope="module")
def zp_runs(workdir):
    runs = {}
    for seed in ZP_SEEDS:
        left, right = workdir / f"zp{seed}_l.arr", workdir / f"zp{seed}_r.arr"
        code, data = cli("construct-zp", "m_plus.arr", "n_plus.arr", "--line", "1", "--seed", str(seed), "-o", str(left), str(right))
        runs[seed] = (code, data, left, right)
    return runs


def test_criterion_1_gue():
    t0 = time.perf_counter()
    code, data = cli("verify-paper", "gue")
    elapsed = time.perf_counter() - t0
    bad = failed_checks(data)
    names = " ".join(c["name"] for c in data["checks"])
    covered = all(tag in names for tag in ("(M+, N+)", "(M-, N-)", "(M+, N-)", "(M-, N+)", "sigma", "Frak-N-"))
    ok = code == 0 and not bad and covered and elapsed < 60
    record(1, ok, f"verify-paper gue: {len(data['checks'])} checks, failed={bad}, {elapsed:.1f}s")
    assert ok


def _closure_by_words(gens, degree):
    """Independent closure oracle: saturate by right multiplication until no growth."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def test_criterion_2_accm():
    t0 = time.perf_counter()
    code, data = cli("verify-paper", "accm")
    elapsed = time.perf_counter() - t0
    bad = failed_checks(data)
    sigmas = [parse_cycles(s, 5) for s in ("(1 2 3 4 5)", "(2 4 5 3)")]
    oracle = _closure_by_words(sigmas, 5)
    aut = automorphism_group(build_paper_arrangement("ACCM-M"))
    restricted = {p[:5] for p in aut.all_elements()}
    order_ok = len(oracle) == 20 and aut.order == 20
    ok = code == 0 and not bad and order_ok and restricted == oracle and elapsed < 60
    detail = (
        f"verify-paper accm: {len(data['checks'])} checks, failed={bad}, "
        f"closure oracle order {len(oracle)}, Aut order {aut.order}, "
        f"restriction equals <sigma1, sigma2>: {restricted == oracle}, {elapsed:.1f}s"
    )
    record(2, ok, detail)
    assert ok, detail


def test_criterion_3_construct_zp(zp_runs):
    problems = []
    for seed, (code, data, left_path, right_path) in zp_runs.items():
        if code != 0 or not data["overall"]:
            problems.append((seed, "pipeline", failed_checks(data)))
            continue
        left, _ = read_arrangement(str(left_path))
        right, _ = read_arrangement(str(right_path))
        if len(left) != 24 or len(right) != 24:
            problems.append((seed, "size", len(left), len(right)))
        phi = parse_cycles(data["result"]["phi"], 24)
        if not is_lattice_map(left, right, phi):
            problems.append((seed, "phi"))
        part = (tuple(range(11)), tuple(range(11, 22)))
        for tag, x in (("left", left), ("right", right)):
            if not verify_distinguishing_features(x, part).overall:
                problems.append((seed, f"{tag} distinguishing features"))
        cert = data["result"].get("certificate", {})
        if cert.get("kind") != "pi1" or cert.get("base_lines") != 22 or cert.get("external_assumptions"):
            problems.append((seed, "certificate", cert.get("kind")))
    ok = not problems and len(zp_runs) >= 3
    record(3, ok, f"construct-zp M+ N+ line 1, seeds {list(zp_runs)}: problems={problems}")
    assert ok


def test_criterion_4_oracles():
    rng = random.Random(4)
    lattice_mismatch = iso_mismatch = 0
    iso_cases = 0
    for trial in range(600):
        n = rng.randint(2, 8)
        arr = random_arrangement(rng, n, bound=5)
        if compute_lattice(arr).flat_sets() != flat_sets_by_determinants(arr):
            lattice_mismatch += 1
        if n > 6:
            continue
        # compare against a relabeled projective image and against an unrelated arrangement
        perm = list(range(n))
        rng.shuffle(perm)
        moved = Arrangement(QQ, tuple(arr.lines[perm.index(i)] for i in range(n)))
        matrix = ((QQ(1), QQ(rng.randint(-3, 3)), QQ(0)), (QQ(0), QQ(1), QQ(rng.randint(-3, 3))), (QQ(rng.randint(-3, 3)), QQ(0), QQ(1)))
        try:
            moved = apply_projectivity(moved, matrix)
        except Exception:
            pass
        other = random_arrangement(rng, n, bound=1)
        fa = compute_lattice(arr).flat_sets()
        for target in (moved, other):
            fb = compute_lattice(target).flat_sets()
            expected = isomorphisms_by_enumeration(fa, fb, n)
            if [m.perm for m in isomorphisms(arr, target)] != expected:
                iso_mismatch += 1
            iso_cases += 1
    ok = lattice_mismatch == 0 and iso_mismatch == 0
    record(4, ok, f"600 random arrangements: lattice mismatches={lattice_mismatch}; {iso_cases} n! comparisons, mismatches={iso_mismatch}")
    assert ok


def _field_property_failures(field, rng, trials):
    bad = 0
    exps = field.galois_exponents
    for _ in range(trials):
        x, y, z = (random_element(rng, field) for _ in range(3))
        ok = (
            (x + y) + z == x + (y + z)
            and (x * y) * z == x * (y * z)
            and x + y == y + x
            and x * y == y * x
            and x * (y + z) == x * y + x * z
            and x + field.zero == x
            and x * field.one == x
            and x + (-x) == 0
            and (x.is_zero() or x * x.inverse() == 1)
        )
        for k in exps:
            ok = ok and (x + y).galois(k) == x.galois(k) + y.galois(k) and (x * y).galois(k) == x.galois(k) * y.galois(k)
            ok = ok and z.galois(k).galois(pow(k, -1, 10) if field is QG else k) == z
        bad += not ok
    return bad


def test_criterion_5_invariants(zp_runs):
    rng = random.Random(5)
    trials = 10_000
    field_bad = {f.name: _field_property_failures(f, rng, trials) for f in (QQ, QA, QG)}

    mu_bad = []
    count_bad = []
    for name in bundled_names():
        arr = parse_arrangement_file(bundled_path(name).read_text(encoding="utf-8"))
        lat = compute_lattice(arr)
        mu = moebius(lat)
        if any(mu[("flat", i)] != f.multiplicity - 1 for i, f in enumerate(lat.flats)):
            mu_bad.append(name)
        if len(isomorphisms(arr, arr)) != automorphism_group(arr).order:
            count_bad.append(name)

    pairs = [
        ("M+", "N+"), ("M-", "N-"), ("M+", "N-"), ("M-", "N+"),
        ("Frak-M+", "Frak-N+"), ("Frak-M-", "Frak-N-"), ("Frak-M+", "Frak-N-"), ("Frak-M-", "Frak-N+"),
        ("ACCM-M", "ACCM-N"), ("ACCM-M-aug", "ACCM-N-aug"),
    ]
    arrs = [(build_paper_arrangement(a), build_paper_arrangement(b)) for a, b in pairs]
    for code, data, left, right in zp_runs.values():
        if code == 0:
            arrs.append((read_arrangement(str(left))[0], read_arrangement(str(right))[0]))
    chi_bad = sum(characteristic_polynomial(a) != characteristic_polynomial(b) for a, b in arrs)

    ok = not any(field_bad.values()) and not mu_bad and not count_bad and chi_bad == 0
    record(
        5,
        ok,
        f"{trials} triples per field, failures={field_bad}; mu failures={mu_bad}; "
        f"|Iso(a,a)| != |Aut(a)|: {count_bad}; char poly mismatches over {len(arrs)} pairs={chi_bad}",
    )
    assert ok


def test_criterion_6_determinism(workdir):
    commands = [
        ["construct-zp", "m_plus.arr", "n_plus.arr", "--line", "1", "--seed", "2", "-o", "{d}/a.arr", "{d}/b.arr"],
        ["augment", "accm_m.arr", "--line", "10", "--seed", "7", "-o", "{d}/aug.arr"],
        ["union", "accm_m.arr", "accm_n.arr", "--make-generic", "--seed", "11", "-o", "{d}/u.arr"],
        ["verify-paper", "gue"],
    ]
    differing = []
    for cmd in commands:
        outputs = []
        # same output paths on both runs so that the JSON can be compared byte for byte
        argv = [a.replace("{d}", str(workdir)) for a in cmd]
        for _ in range(2):
            out = io.StringIO()
            main([*argv, "--json"], out=out)
            data = json.loads(out.getvalue())
            data.pop("timings")
            outputs.append(json.dumps(data, indent=2))
        if outputs[0] != outputs[1]:
            differing.append(cmd[0])
    ok = not differing
    record(6, ok, f"{len(commands)} seeded commands run twice: differing={differing}")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
