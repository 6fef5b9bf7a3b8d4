"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
3 an internal limit was hit (isomorphism search cap).
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .arrfile import ArrangementFileError, read_arrangement, sha256_text, write_arrangement
from .combin import (
    SearchCapExceeded,
    automorphism_group,
    condition_c3,
    is_fan_connected,
    isomorphisms,
    multiple_point_components,
    ordered_isomorphic,
)
from .construct import (
    AugmentationError,
    CertificationError,
    ConstructionError,
    augment,
    augment_with,
    certify_equivalence,
    is_real_complexified,
    make_generic,
    ordered_union,
)
from .field import FieldError, parse_element
from .geometry import Arrangement, GeometryError, ProjLine, lattice_of
from .invariants import characteristic_polynomial, format_poly, moebius, poincare_polynomial
from .paper import BUNDLED_FILES, build_paper_arrangement
from .perm import format_cycles
from .report import VerificationReport
from .verify import run_theorem_main, verify_paper, verify_theorem_main_hypotheses

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Session:
    """Collects inputs, seed and payload for one invocation."""

    def __init__(self, scenario: str, as_json: bool):
        self.report = VerificationReport(scenario)
        self.as_json = as_json
        self.inputs: list[dict[str, str]] = []
        self.seed: Optional[int] = None
        self.result: dict[str, Any] = {}
        self.text: list[str] = []

    def load(self, path: str) -> Arrangement:
        try:
            arr, text = read_arrangement(path)
        except FileNotFoundError as exc:
            raise UsageError(str(exc)) from None
        self.inputs.append({"path": path, "sha256": sha256_text(text)})
        return arr

    def write(self, path: str, arr: Arrangement) -> None:
        text = write_arrangement(arr)
        Path(path).write_text(text, encoding="utf-8")
        self.result.setdefault("outputs", []).append({"path": path, "sha256": sha256_text(text), "lines": len(arr)})

    def say(self, line: str) -> None:
        self.text.append(line)

    def payload(self) -> dict[str, Any]:
        rep = self.report
        return {
            "scenario": rep.scenario,
            "version": __version__,
            "inputs": self.inputs,
            "seed": self.seed,
            "checks": [c.to_dict() for c in rep.checks],
            "overall": rep.overall,
            "result": self.result,
            "timings": rep.timings(),
        }

    def emit(self, out) -> int:
        if self.as_json:
            out.write(json.dumps(self.payload(), indent=2) + "\n")
        else:
            for line in self.text:
                out.write(line + "\n")
            if self.report.checks:
                out.write(self.report.render() + "\n")
        return EXIT_OK if self.report.overall else EXIT_FAIL


def _line_index(arr: Arrangement, k: int) -> int:
    if not 1 <= k <= len(arr):
        raise UsageError(f"--line must be between 1 and {len(arr)}")
    return k - 1


def _flat_dicts(arr: Arrangement) -> list[dict]:
    lat = lattice_of(arr)
    return [
        {"point": str(f.point), "multiplicity": f.multiplicity, "lines": [arr.label(i) for i in f.lines], "indices": [i + 1 for i in f.lines]}
        for f in lat.flats
    ]


# commands


def cmd_lattice(s: Session, args) -> None:
    arr = s.load(args.file)
    lat = lattice_of(arr)
    n = len(arr)
    hist = Counter(lat.multiplicities())
    s.result = {"lines": n, "flats": _flat_dicts(arr), "multiplicity_counts": {str(k): hist[k] for k in sorted(hist)}}
    covered = sum(m * (m - 1) // 2 for m in lat.multiplicities())
    s.report.add("every line pair lies in exactly one flat", covered == n * (n - 1) // 2, {"pairs": covered})
    s.say(f"{n} lines, {len(lat.flats)} singular points")
    for k in sorted(hist, reverse=True):
        s.say(f"  multiplicity {k}: {hist[k]}")
    for f in s.result["flats"]:
        if f["multiplicity"] > 2:
            s.say(f"  {f['point']}  {' '.join(f['lines'])}")


def cmd_iso(s: Session, args) -> None:
    a, b = s.load(args.file1), s.load(args.file2)
    if args.ordered:
        ok = ordered_isomorphic(a, b)
        s.result = {"ordered_isomorphic": ok}
        s.report.add("ordered-isomorphic", ok, None if ok else {"lines": [len(a), len(b)]})
        s.say(f"ordered-isomorphic: {str(ok).lower()}")
        return
    maps = isomorphisms(a, b, limit=None if args.all else 1)
    s.result = {"isomorphic": bool(maps), "maps": [m.cycles() for m in maps]}
    if args.all:
        s.result["count"] = len(maps)
    s.report.add("lattice-isomorphic", bool(maps), None if maps else "no line bijection preserves the flats")
    s.say(f"lattice-isomorphic: {str(bool(maps)).lower()}")
    for m in maps:
        s.say(f"  {m.cycles()}")


def cmd_aut(s: Session, args) -> None:
    arr = s.load(args.file)
    g = automorphism_group(arr)
    s.result = {
        "order": g.order,
        "generators": [format_cycles(p) for p in g.generators],
        "elements": sorted(format_cycles(p) for p in g.all_elements()) if g.order <= 128 else None,
    }
    if g.order <= 2000:
        s.report.add("closed under products and inverses", g.is_closed(), {"order": g.order})
    s.say(f"order: {g.order}")
    s.say("generators: " + (" ".join(s.result["generators"]) or "()"))


def cmd_invariants(s: Session, args) -> None:
    arr = s.load(args.file)
    lat = lattice_of(arr)
    mu = moebius(lat)
    chi = characteristic_polynomial(lat)
    poin = poincare_polynomial(lat)
    bad = [f.lines for fid, f in enumerate(lat.flats) if mu[("flat", fid)] != f.multiplicity - 1]
    s.report.add("mu(point of multiplicity m) = m - 1", not bad, {"flats": [[i + 1 for i in b] for b in bad]} if bad else None)
    s.result = {
        "characteristic_polynomial": format_poly(chi),
        "characteristic_coefficients": list(chi),
        "poincare_polynomial": format_poly(poin),
        "poincare_coefficients": list(poin),
        "top_element": ("top",) in mu,
        "convention": "cone lattice; rank-3 top element present unless all lines are concurrent",
    }
    s.say(f"characteristic polynomial: {format_poly(chi)}")
    s.say(f"Poincare polynomial: {format_poly(poin)}")


def cmd_check(s: Session, args) -> None:
    arr = s.load(args.file)
    c1 = is_fan_connected(arr)
    s.report.add("C1: connected", c1, None if c1 else {"components": [[arr.label(i) for i in c] for c in multiple_point_components(arr)]})
    c3 = condition_c3(arr)
    s.report.add("C3: >= 2 multiple points on every line", c3.passed, None if c3 else {"lines": [arr.label(i) for i in c3.failing]})
    real = is_real_complexified(arr)
    s.result = {"real_complexified": real, "multiple_points_per_line": dict(zip(arr.all_labels(), c3.counts))}
    s.say(f"real-complexified: {str(real).lower()}")


def cmd_pair_check(s: Session, args) -> None:
    a, b = s.load(args.file1), s.load(args.file2)
    rep = verify_theorem_main_hypotheses(a, b, _line_index(a, args.line))
    s.report.merge(rep)


def cmd_union(s: Session, args) -> None:
    a, b = s.load(args.file1), s.load(args.file2)
    if args.make_generic:
        s.seed = args.seed
        moved = make_generic(a, b, args.seed, args.max_tries)
        b = moved.arrangement
        s.result["transform"] = {"matrix": moved.matrix_strings(), "attempts": moved.attempts}
    u = ordered_union(a, b)
    s.report.add("generic intersection", True)
    s.write(args.output, u)
    s.say(f"wrote {len(u)} lines to {args.output}")


def _parse_line_spec(spec: str, arr: Arrangement) -> ProjLine:
    parts = spec.split(";")
    if len(parts) != 3:
        raise UsageError(f"line spec {spec!r} needs three ';'-separated coefficients")
    try:
        return ProjLine(tuple(parse_element(p, arr.field) for p in parts))
    except (FieldError, GeometryError) as exc:
        raise UsageError(f"bad line spec {spec!r}: {exc}") from None


def cmd_augment(s: Session, args) -> None:
    arr = s.load(args.file)
    k = _line_index(arr, args.line)
    labels = (f"L_{len(arr) + 1}", f"L_{len(arr) + 2}")
    if args.with_lines:
        l1, l2 = (_parse_line_spec(x, arr) for x in args.with_lines)
        aug = augment_with(arr, k, l1, l2, labels)
    else:
        s.seed = args.seed
        aug = augment(arr, k, args.seed, labels=labels)
    s.report.add(f"augmentation along {arr.label(k)}", True)
    s.result["new_lines"] = [l.equation() for l in aug.lines[-2:]]
    s.write(args.output, aug)
    s.say(f"wrote {len(aug)} lines to {args.output}")


def cmd_construct_zp(s: Session, args) -> None:
    a, b = s.load(args.file1), s.load(args.file2)
    s.seed = args.seed
    con, rep, info = run_theorem_main(a, b, _line_index(a, args.line), args.seed, args.max_tries)
    s.report.merge(rep)
    s.result.update({k: v for k, v in info.items() if k not in ("seed",)})
    if con is not None and rep.overall:
        s.result["phi"] = con.phi.cycles()
        s.write(args.output[0], con.left)
        s.write(args.output[1], con.right)
        s.say(f"wrote {len(con.left)}-line arrangements to {args.output[0]} and {args.output[1]}")


def cmd_certify(s: Session, args) -> None:
    a, b = s.load(args.file1), s.load(args.file2)
    try:
        cert = certify_equivalence(a, b)
    except CertificationError as exc:
        s.report.add("common base arrangement", False, {"only_first": list(exc.only_left), "only_second": list(exc.only_right), "reason": str(exc)})
        return
    s.report.add("common base arrangement", True)
    s.result["certificate"] = cert.to_dict()
    s.say(f"{cert.kind} certificate: {cert.statement}")
    s.say(f"  base of {len(cert.base)} lines, augmented along {cert.line_left.equation()} and {cert.line_right.equation()}")


def cmd_verify_paper(s: Session, args) -> None:
    rep = verify_paper(args.scenario)
    s.report.scenario = rep.scenario
    s.report.merge(rep)
    names = ["M+", "M-", "N+", "N-", "Frak-M+", "Frak-M-", "Frak-N+", "Frak-N-"] if args.scenario == "gue" else [
        "ACCM-M", "ACCM-N", "ACCM-M-aug", "ACCM-N-aug"
    ]
    for name in names:
        s.inputs.append({"path": f"bundled:{BUNDLED_FILES[name]}", "sha256": sha256_text(write_arrangement(build_paper_arrangement(name)))})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    parser = argparse.ArgumentParser(prog="arrlab", description="Exact intersection lattices of projective line arrangements.")
    parser.add_argument("--version", action="version", version=f"arrlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", parents=[common], help="singular points and their lines")
    p.add_argument("file")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("iso", parents=[common], help="lattice isomorphism")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--ordered", action="store_true", help="only test the identity index map")
    p.add_argument("--all", action="store_true", help="list every isomorphism")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of the lattice")
    p.add_argument("file")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("invariants", parents=[common], help="Moebius function and polynomials")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("check", parents=[common], help="connectedness, multiple points, reality")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pair-check", parents=[common], help="hypotheses C1-C3 for a pair")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--line", type=int, default=1)
    p.set_defaults(func=cmd_pair_check)

    p = sub.add_parser("union", parents=[common], help="ordered generic union")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--make-generic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-tries", type=int, default=50)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_union)

    p = sub.add_parser("augment", parents=[common], help="augment along a line")
    p.add_argument("file")
    p.add_argument("--line", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--seed", type=int)
    g.add_argument("--with", dest="with_lines", nargs=2, metavar="SPEC")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("construct-zp", parents=[common], help="generic union plus augmentation pipeline")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--line", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-tries", type=int, default=50)
    p.add_argument("-o", "--output", nargs=2, required=True, metavar=("OUT1", "OUT2"))
    p.set_defaults(func=cmd_construct_zp)

    p = sub.add_parser("certify", parents=[common], help="pi1 / homotopy equivalence certificate")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify-paper", parents=[common], help="check the explicit examples")
    p.add_argument("scenario", choices=["gue", "accm"])
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    s = Session(args.command, args.json)
    try:
        args.func(s, args)
    except (UsageError, ArrangementFileError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ConstructionError, AugmentationError) as exc:
        s.report.add(exc.condition or "construction", False, exc.witness if exc.witness is not None else str(exc))
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return s.emit(out)


def run(command: str, args: Sequence[str] = ()) -> tuple[int, str]:
    """Run one command in-process; returns the exit code and captured stdout."""
    buf = io.StringIO()
    code = main([command, *args], out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
