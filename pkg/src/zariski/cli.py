"""Command-line entry point ``zariski``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .arrangement import conjugate, intersection_lattice, is_ordered_realization, load_arrangement
from .character import XI5, GAMMA_5_6_11, Character, TriangleCycle, is_inner_cyclic
from .combinatorics import automorphism_group, load_combinatorics, orbits, validate_combinatorics
from .cyclotomic import set_precision_floor
from .invariant import DEFAULT_CONFIGS, invariant, k_separation, separation_report
from .svg import render_svg
from .wiring import compute_diagram

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class DomainFailure(Exception):
    """A well-formed request whose answer is negative; the report is already printed."""


def _dump(obj: object) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False)


def _load_json_or_builtin(spec: str) -> dict | None:
    if spec.startswith("builtin:"):
        return None
    return json.loads(Path(spec).read_text())


def load_character(spec: str, n_lines: int | None = None) -> Character:
    """A character file, or ``builtin:xi`` (padded with zero exponents up to ``n_lines``)."""
    data = _load_json_or_builtin(spec)
    if data is None:
        if spec != "builtin:xi":
            raise ValueError(f"unknown built-in character {spec!r}; the only one is 'builtin:xi'")
        xi = XI5
        while n_lines is not None and xi.n_lines < n_lines:
            xi = xi.extended(0)
        return xi
    return Character.from_json(data)


def load_cycle(spec: str) -> TriangleCycle:
    """``r,s,t`` on the command line, or a JSON file ``{"cycle": [r, s, t]}``."""
    if Path(spec).is_file():
        data = json.loads(Path(spec).read_text())
        return TriangleCycle(*(int(v) for v in data["cycle"]))
    return TriangleCycle.parse(spec)


# -- combi ------------------------------------------------------------------------------------


def _combi(args: argparse.Namespace) -> int:
    C = load_combinatorics(args.input)
    report = validate_combinatorics(C)
    if args.action == "validate":
        print(_dump({"valid": report.ok, "violations": list(report.violations)}))
        if not report.ok:
            raise DomainFailure
        return EXIT_OK
    if not report.ok:
        print(_dump({"valid": False, "violations": list(report.violations)}))
        raise DomainFailure
    G = automorphism_group(C)
    if args.action == "aut":
        gens = [str(g) for g in G.generators]
        if args.json:
            print(_dump({"order": G.order, "generators": gens}))
        else:
            print(f"order: {G.order}")
            for g in gens:
                print(f"generator: {g}")
        return EXIT_OK
    orb = orbits(C, G)
    if args.json:
        print(_dump({"lines": [list(o) for o in orb.lines], "points": [[list(p) for p in o] for o in orb.points]}))
    else:
        print("line orbits:")
        for o in orb.lines:
            print("  {" + ", ".join(map(str, o)) + "}")
        print("point orbits:")
        for o in orb.points:
            print("  " + " ".join("{" + ",".join(map(str, p)) + "}" for p in o))
    return EXIT_OK


# -- arr --------------------------------------------------------------------------------------


def _arr(args: argparse.Namespace) -> int:
    A = load_arrangement(args.input)
    if args.action == "lattice":
        print(_dump(intersection_lattice(A).to_json()))
        return EXIT_OK
    if args.action == "conjugate":
        print(_dump(conjugate(A).to_json()))
        return EXIT_OK
    C = load_combinatorics(args.against) if args.against else None
    L = intersection_lattice(A)
    out: dict[str, object] = {"lines": len(A), "points": len(L.points)}
    ok = True
    if C is not None:
        ok = is_ordered_realization(A, C)
        out["realizes"] = ok
        if not ok:
            out["missing_points"] = [list(p) for p in sorted(set(C.points) - set(L.points))]
            out["extra_points"] = [list(p) for p in sorted(set(L.points) - set(C.points))]
    print(_dump(out))
    if not ok:
        raise DomainFailure
    return EXIT_OK


# -- char -------------------------------------------------------------------------------------


def _char(args: argparse.Namespace) -> int:
    C = load_combinatorics(args.combinatorics)
    xi = load_character(args.character, C.n_lines)
    gamma = load_cycle(args.cycle)
    report = is_inner_cyclic(C, xi, gamma)
    print(_dump({"inner_cyclic": report.ok, "failures": report.failures()}))
    if not report.ok:
        raise DomainFailure
    return EXIT_OK


# -- wiring -----------------------------------------------------------------------------------


def _wiring(args: argparse.Namespace) -> int:
    A = load_arrangement(args.input)
    result = compute_diagram(A, args.infinity, args.chart, depth=args.depth)
    W = result.diagram
    if args.events:
        Path(args.events).write_text(W.dumps())
    if args.svg:
        Path(args.svg).write_text(render_svg(W, title=f"{A.name or args.input}, L{args.infinity} at infinity"))
    if not args.events and not args.svg:
        print(W.dumps(), end="")
    else:
        print(f"epsilon: {result.epsilon}")
        print(f"events: {len(W.events)} ({len(W.nodes())} nodes, {len(W.crossings())} crossings)")
    return EXIT_OK


# -- invariant --------------------------------------------------------------------------------


def _invariant(args: argparse.Namespace) -> int:
    A = load_arrangement(args.input)
    xi = load_character(args.char, len(A))
    gamma = load_cycle(args.cycle)
    res = invariant(A, xi, gamma, args.paths)
    print(_dump(res.to_json()))
    return EXIT_OK


# -- reproduce-paper --------------------------------------------------------------------------


def _reproduce(args: argparse.Namespace) -> int:
    report = k_separation(args.paths)
    print("I(A, xi, gamma) for gamma = (5, 6, 11):")
    print(report.text())
    ext = [(n, load_arrangement(f"builtin:{n}")) for n in ("FN+", "FN-", "FM+", "FM-")]
    print()
    print("With the extra generic line L12 (exponent 0):")
    print(separation_report(ext, XI5.extended(0), GAMMA_5_6_11, args.paths).text())
    if args.json:
        Path(args.json).write_text(_dump(report.to_json()) + "\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zariski", description="Combinatorics, wiring diagrams and invariants of line arrangements.")
    p.add_argument("--precision", type=int, default=64, metavar="BITS", help="starting precision of sign certification (default 64)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("combi", help="validate a combinatorics, or compute its automorphisms")
    c.add_argument("action", choices=("validate", "aut", "orbits"))
    c.add_argument("input", help="JSON file or builtin:K / builtin:K12")
    c.add_argument("--json", action="store_true", help="machine-readable output")
    c.set_defaults(func=_combi)

    a = sub.add_parser("arr", help="intersection lattice, realization check, complex conjugate")
    a.add_argument("action", choices=("lattice", "check", "conjugate"))
    a.add_argument("input", help="JSON file or builtin:NAME")
    a.add_argument("--against", metavar="COMBI", help="combinatorics to check against (for 'check')")
    a.set_defaults(func=_arr)

    ch = sub.add_parser("char", help="character tests")
    ch.add_argument("action", choices=("check-inner-cyclic",))
    ch.add_argument("combinatorics")
    ch.add_argument("character", help="JSON file or builtin:xi")
    ch.add_argument("cycle", help="r,s,t or a JSON file")
    ch.set_defaults(func=_char)

    w = sub.add_parser("wiring", help="braided wiring diagram")
    w.add_argument("input")
    w.add_argument("--infinity", type=int, required=True, metavar="LINE")
    w.add_argument("--chart", choices=("paper", "paper-conjugate", "standard"), default="standard")
    w.add_argument("--depth", choices=("neg-imag", "pos-imag"), default="neg-imag")
    w.add_argument("--svg", metavar="FILE")
    w.add_argument("--events", metavar="FILE")
    w.set_defaults(func=_wiring)

    i = sub.add_parser("invariant", help="the invariant I(A, xi, gamma)")
    i.add_argument("input")
    i.add_argument("--char", default="builtin:xi")
    i.add_argument("--cycle", default="5,6,11")
    i.add_argument("--paths", type=int, default=3, help=f"number of diagram configurations (1..{len(DEFAULT_CONFIGS)})")
    i.set_defaults(func=_invariant)

    r = sub.add_parser("reproduce-paper", help="values for N+, N-, M+, M- and the separation conclusions")
    r.add_argument("--paths", type=int, default=3)
    r.add_argument("--json", metavar="FILE")
    r.set_defaults(func=_reproduce)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.precision < 16:
        parser.print_usage(sys.stderr)
        print("zariski: error: --precision must be at least 16", file=sys.stderr)
        return EXIT_USAGE
    old = set_precision_floor(args.precision)
    try:
        return args.func(args)
    except DomainFailure:
        return EXIT_DOMAIN
    except (ValueError, OSError, KeyError) as exc:
        print(f"zariski: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        set_precision_floor(old)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
