"""tiltwall command line: walls, scans, smallest/largest walls, BMT discs, Bridgeland paths, plots."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import bridgeland, wallfinder
from .chern import ChernCharacter, format_rational, validate_integrality
from .svg import auto_viewport, render_svg
from .tilt import NumericallyTrivialError, bmt_region, hyperbola, vertical_wall

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_USAGE = 2  # argparse's own code
EXIT_MALFORMED = 3
EXIT_LATTICE = 4
EXIT_PRECONDITION = 5


class MalformedInput(ValueError):
    pass


class LatticeViolation(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not a rational: {text!r}") from exc


def parse_ch(text: str, strict: bool = False) -> ChernCharacter:
    parts = [p for p in text.split(",")]
    if len(parts) not in (3, 4):
        raise MalformedInput(f"expected 3 or 4 comma-separated rationals, got {text!r}")
    v = ChernCharacter.of(*(parse_rational(p) for p in parts))
    if strict and not validate_integrality(v):
        raise LatticeViolation(f"{v!r} violates the P^3 integrality conditions")
    return v


def parse_range(text: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise MalformedInput(f"expected 'lo,hi', got {text!r}")
    return parse_rational(parts[0]), parse_rational(parts[1])


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(r) for r in rows)
    return "\n".join(out) + "\n"


def _fmt_witness(w: wallfinder.WallCandidate) -> str:
    return "(" + ", ".join(format_rational(x) for x in w.twisted) + ")"


def _reports_table(reports: Sequence[wallfinder.WallReport]) -> str:
    rows = [
        [rep.wall.equation(), format_rational(rep.alpha_sq_on_line), " ".join(_fmt_witness(w) for w in rep.witnesses)]
        for rep in reports
    ]
    return _table(["wall", "alpha^2 on line", "witnesses (twisted r, c, d)"], rows)


def _wall_table(wall) -> str:
    center = "-" if wall.center is None else format_rational(wall.center)
    r2 = "-" if wall.radius_sq is None else format_rational(wall.radius_sq)
    return _table(["equation", "kind", "center", "radius^2"], [[wall.equation(), wall.kind.value, center, r2]])


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_walls(args) -> str:
    v = parse_ch(args.ch, args.strict)
    beta = parse_rational(args.beta)
    reports = wallfinder.enumerate_walls_on_line(v, beta)
    if args.format == "json":
        return _dump(wallfinder.reports_to_json(beta, reports))
    return _reports_table(reports)


def cmd_scan(args) -> str:
    v = parse_ch(args.ch, args.strict)
    lines = [parse_rational(b) for b in args.lines.split(",")] if args.lines else None
    reports = wallfinder.scan_all_walls(v, args.side, lines=lines)
    if args.format == "json":
        return _dump({"ch": v.to_json(), "side": args.side, "walls": [rep.to_json() for rep in reports]})
    return _reports_table(reports)


def cmd_smallest(args) -> str:
    wall = wallfinder.smallest_wall(args.m, args.n, args.i, args.j)
    if args.format == "json":
        return _dump({"center": format_rational(wall.center), "radius_sq": format_rational(wall.radius_sq)})
    return _wall_table(wall)


def cmd_largest_bound(args) -> str:
    wall = wallfinder.largest_wall_bound(parse_ch(args.ch, args.strict), args.side)
    return _dump(wall.to_json()) if args.format == "json" else _wall_table(wall)


def cmd_bmt(args) -> str:
    v = parse_ch(args.ch, args.strict)
    if len(args.ch.split(",")) != 4:
        raise MalformedInput("bmt needs all four components")
    wall = bmt_region(v)
    return _dump(wall.to_json()) if args.format == "json" else _wall_table(wall)


def _load_pairs(path: str) -> list[ChernCharacter]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"pairs file is not JSON: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("pairs")
    if not isinstance(data, list):
        raise MalformedInput("pairs file must hold a list of 4-component characters")
    out = []
    for item in data:
        if isinstance(item, str):
            out.append(parse_ch(item))
        elif isinstance(item, list) and len(item) == 4:
            out.append(ChernCharacter.of(*(parse_rational(str(x)) for x in item)))
        else:
            raise MalformedInput(f"bad pair entry {item!r}")
    return out


def cmd_bridgeland_path(args) -> str:
    v = parse_ch(args.ch, args.strict)
    pairs = _load_pairs(args.pairs)
    s, eps, tol = parse_rational(args.s), parse_rational(args.epsilon), parse_rational(args.tol)
    path = bridgeland.hyperbola_offset_path(v, eps, parse_range(args.range), args.steps)
    crossings = bridgeland.trace_path_crossings(v, pairs, path, s, tol)
    if args.format == "json":
        return _dump(bridgeland.crossings_to_json(s, eps, pairs, crossings))
    rows = [
        [str(c.pair_index), repr(pairs[c.pair_index]), f"{float(c.t_lo):.6f}", f"{float(c.beta_mid):.6f}", f"{float(c.alpha_sq_mid):.6f}"]
        for c in crossings
    ]
    return _table(["pair", "w", "t", "beta", "alpha^2"], rows)


def cmd_plot(args) -> str:
    v = parse_ch(args.ch, args.strict)
    walls = [rep.wall for rep in wallfinder.scan_all_walls(v, args.side)]
    bmt = bmt_region(v) if len(args.ch.split(",")) == 4 else None
    extra = [bmt] if bmt is not None else []
    vw = vertical_wall(v)
    return render_svg(walls, hyperbola(v), bmt, auto_viewport(walls, extra, vw), vertical=vw)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tiltwall", description="Exact tilt and Bridgeland wall computations on P^3.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ch=True, formats=("table", "json"), default="table"):
        if ch:
            sp.add_argument("--ch", required=True, help="Chern character a,b,c[,d] with p/q rationals")
            sp.add_argument("--strict", action="store_true", help="reject characters off the integral lattice")
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("-o", "--output", help="write here instead of stdout")

    sp = sub.add_parser("walls", help="potential walls on one vertical line")
    common(sp)
    sp.add_argument("--beta", required=True)
    sp.set_defaults(func=cmd_walls)

    sp = sub.add_parser("scan", help="walls on one side of the vertical wall")
    common(sp)
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("--lines", help="comma-separated beta values to scan instead of the default set")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("smallest", help="smallest wall of i ch(O(m)) - j ch(O(n))")
    common(sp, ch=False)
    for name in ("m", "n", "i", "j"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.set_defaults(func=cmd_smallest)

    sp = sub.add_parser("largest-bound", help="semicircle bounding every wall on one side")
    common(sp)
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.set_defaults(func=cmd_largest_bound)

    sp = sub.add_parser("bmt", help="boundary of the BMT-excluded disc")
    common(sp)
    sp.set_defaults(func=cmd_bmt)

    sp = sub.add_parser("bridgeland-path", help="Bridgeland wall crossings along a path next to the hyperbola")
    common(sp)
    sp.add_argument("--pairs", required=True, help="JSON file: list of 4-component characters")
    sp.add_argument("--s", default="1")
    sp.add_argument("--epsilon", default="1/50")
    sp.add_argument("--range", default="-6,-5/2", help="beta range lo,hi in traversal order")
    sp.add_argument("--steps", type=int, default=256)
    sp.add_argument("--tol", default=format_rational(bridgeland.DEFAULT_TOL))
    sp.set_defaults(func=cmd_bridgeland_path)

    sp = sub.add_parser("plot", help="SVG diagram of walls, hyperbola and BMT disc")
    common(sp, formats=("svg",), default="svg")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.set_defaults(func=cmd_plot)
    return p


_NEGATIVE_VALUE = re.compile(r"^[-\u2212]\d[\d/,\-\u2212 ]*$")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn "--beta -5/2" into "--beta=-5/2"; argparse only accepts plain negative numbers."""
    out: list[str] = []
    it = iter(range(len(argv)))
    for k in it:
        tok = argv[k]
        if tok.startswith("--") and "=" not in tok and k + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[k + 1]):
            out.append(f"{tok}={argv[k + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        text = args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except LatticeViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LATTICE
    except (wallfinder.WallFinderError, NumericallyTrivialError, bridgeland.DegenerateHitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as exc:  # pragma: no cover - last resort
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_OTHER
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
