"""``wangforge`` command line.

Exit status: 0 on success, 1 when the answer is negative (no tiling, no
period within the bound, undecodable tiling), 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .builtins import BUILTIN_NAMES, builtin
from .compilers import (
    HexTileSet,
    HexTiling,
    compile_eca_hex,
    compile_eca_wang,
    compile_tm,
    compile_tree,
    decode_eca_rows,
    recover_path,
    tile_eca,
)
from .errors import (
    ColorParseError,
    InvalidRequest,
    MalformedPredicate,
    NotFound,
    OracleTooLarge,
    UnsupportedRender,
    WangforgeError,
    WindowTooSmall,
)
from .machines import TagSystem, TuringMachine, eca_run, tag_run, tm_run
from .render import FORMATS, RenderOptions, render
from .solver import SolveRequest, find_period, solve_rect, solve_torus
from .tiles import TileSet, Tiling
from .trees import MembershipTable, from_predicate, normalize, seq_to_str

_USAGE_ERRORS = (InvalidRequest, NotFound, ColorParseError, MalformedPredicate, WindowTooSmall,
                 UnsupportedRender, OracleTooLarge)


class Failure(Exception):
    """A negative answer: printed, exit status 1."""


class Usage(Exception):
    """Bad input discovered after argument parsing: exit status 2."""


# --------------------------------------------------------------------------- input helpers


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise Usage(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise Usage(f"{path} is not valid JSON: {exc}") from None


def load_tileset(spec: str):
    """A builtin name or a path to tile set JSON (Wang or hex15)."""
    if spec in BUILTIN_NAMES:
        return builtin(spec)
    if not os.path.exists(spec):
        raise Usage(f"{spec!r} is neither a builtin ({', '.join(BUILTIN_NAMES)}) nor a file")
    doc = _read_json(spec)
    if isinstance(doc, dict) and doc.get("geometry") == "hex15":
        return HexTileSet.from_dict(doc)
    return TileSet.from_dict(doc)


def _wang(ts) -> TileSet:
    if not isinstance(ts, TileSet):
        raise Usage("this command needs a Wang tile set")
    return ts


def _pair(text: str, what: str) -> tuple[int, int]:
    try:
        x, y = text.split(",")
        return int(x), int(y)
    except ValueError:
        raise Usage(f"{what} must look like X,Y, got {text!r}") from None


def _pin(text: str):
    if "=" not in text:
        raise Usage(f"pin must look like X,Y=INDEX, got {text!r}")
    cell, idx = text.split("=", 1)
    try:
        return _pair(cell, "pin cell"), int(idx)
    except ValueError:
        raise Usage(f"pin index must be an integer, got {idx!r}") from None


def _tree(args):
    if args.tree:
        tbl = MembershipTable.from_dict(_read_json(args.tree))
    else:
        if args.predicate is None or args.depth is None:
            raise Usage("give --tree FILE, or --predicate with --depth (and --branching)")
        pred = args.predicate
        if pred == "random":
            if args.seed is None:
                raise Usage("--predicate random needs --seed")
            pred = f"random({args.seed},{args.density})"
        tbl = from_predicate(pred, args.depth, args.branching)
    tree, report = normalize(tbl)
    if not report.clean:
        print(f"note: normalisation removed {len(report.deleted)} orphaned sequence(s)", file=sys.stderr)
    return tree


def _emit(out, data: bytes | str):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _print_json(obj):
    print(json.dumps(obj, ensure_ascii=False))


# --------------------------------------------------------------------------- commands


def cmd_builtin(args):
    if not args.name:
        if args.json:
            _print_json(list(BUILTIN_NAMES))
        else:
            print("\n".join(BUILTIN_NAMES))
        return
    print(builtin(args.name).to_json())


def cmd_solve(args):
    ts = _wang(load_tileset(args.tileset))
    req = SolveRequest(ts, args.width, args.height, tuple(_pin(p) for p in args.pin),
                       wildcard_allowed=args.wildcard, wildcard_budget=args.budget,
                       origin=_pair(args.origin, "--origin") if args.origin else (0, 0),
                       scan=args.scan, connected=args.connected)
    t = solve_rect(req)
    if t is None:
        if args.json:
            _print_json({"solved": False})
        raise Failure(f"no tiling of the {args.width}x{args.height} region")
    if args.format:
        _emit(args.out, render(t, RenderOptions(args.format, args.cell_size), tileset=ts))
    else:
        _emit(args.out, t.to_json() + "\n")


def cmd_period(args):
    ts = _wang(load_tileset(args.tileset))
    res = find_period(ts, args.max, args.max)
    if args.json:
        _print_json({"found": res.found, "p": res.p, "q": res.q, "max": args.max,
                     "torus": None if res.torus is None else res.torus.to_dict()["cells"]})
    else:
        print(res)
    if not res.found:
        raise Failure(None)


def cmd_torus(args):
    ts = _wang(load_tileset(args.tileset))
    tor = solve_torus(ts, args.width, args.height)
    if tor is None:
        if args.json:
            _print_json({"found": False})
        raise Failure(f"no {args.width}x{args.height} torus tiling")
    if args.json:
        _print_json({"found": True, **tor.to_dict()})
    elif args.format:
        _emit(args.out, render(tor.as_tiling(), RenderOptions(args.format, args.cell_size), tileset=ts))
    else:
        _emit(args.out, tor.as_tiling().to_json() + "\n")


def cmd_tm_run(args):
    tm = TuringMachine.from_dict(_read_json(args.machine))
    trace = tm_run(tm, tuple(args.input), args.max)
    if args.json:
        _print_json({
            "halted": trace.halted, "stuck": trace.stuck, "steps": trace.steps,
            "configs": [{"step": c.step, "state": c.state, "head": c.head,
                         "tape": {str(p): s for p, s in c.tape}} for c in trace.configs],
        })
        return
    lo = min([0] + [c.head for c in trace.configs] + [p for c in trace.configs for p, _ in c.tape])
    hi = max([len(args.input)] + [c.head + 1 for c in trace.configs]
             + [p + 1 for c in trace.configs for p, _ in c.tape])
    for c in trace.configs:
        tape = c.window(lo, hi)
        marker = " " * (c.head - lo) + "^"
        print(f"{c.step:>4} {c.state:<8} {tape}\n{'':>4} {'':<8} {marker}")
    print("halted" if trace.halted else f"running after {trace.steps} steps")


def cmd_compile_tm(args):
    tm = TuringMachine.from_dict(_read_json(args.machine))
    ct = compile_tm(tm, tuple(args.input), width=args.width, head_col=args.head_col,
                    reachable_only=args.reachable_only)
    pins = [[x, y, t] for (x, y), t in ct.first_row_pins]
    print(ct.tileset.to_json(layout=ct.layout, pins=pins))


def cmd_compile_tree(args):
    ct = compile_tree(_tree(args), args.kind, path_only=args.path_only)
    print(ct.to_json())


def cmd_compile_eca(args):
    if args.geometry == "hex":
        print(compile_eca_hex(args.rule).to_json())
    else:
        ce = compile_eca_wang(args.rule)
        print(ce.to_json())


def cmd_eca_run(args):
    rows = eca_run(args.rule, args.input, args.rows, args.boundary)
    if args.json:
        _print_json({"rule": args.rule, "rows": rows})
    else:
        print("\n".join(rows))


def _eca_tiled(args, compiled, decode_with=None):
    t = tile_eca(compiled, args.input, args.rows, width=args.width)
    rows = decode_eca_rows(t, decode_with)
    if args.render:
        picture = render(t, RenderOptions(args.render, args.cell_size),
                         tileset=None if decode_with is None else decode_with.tileset)
        if args.json:
            _print_json({"rows": rows, "picture": picture.decode("utf-8") if args.render != "ppm" else None})
        elif args.out:
            _emit(args.out, picture)
            print("\n".join(rows))
        elif args.render == "svg":
            # decoded rows ride along as a trailing XML comment so stdout stays well-formed
            _emit(None, picture + ("<!-- rows\n" + "\n".join(rows) + "\n-->\n").encode())
        elif args.render == "ascii":
            _emit(None, picture)
            print("\n".join(rows))
        else:
            raise Usage("ppm output needs --out")
        return
    if args.json:
        _print_json({"rows": rows, "tiling": t.to_dict()})
    else:
        print("\n".join(rows))


def cmd_eca_hex(args):
    _eca_tiled(args, compile_eca_hex(args.rule))


def cmd_eca_wang(args):
    ce = compile_eca_wang(args.rule)
    _eca_tiled(args, ce, ce)


def cmd_tag_run(args):
    system = TagSystem(tuple(p.strip() for p in args.productions.split(",")))
    trace = tag_run(system, args.input, args.steps)
    if args.json:
        _print_json({"halted": trace.halted, "states": [{"i": s.i, "d": s.d} for s in trace.states]})
        return
    for k, s in enumerate(trace.states):
        print(f"{k:>4} {s.i} {s.d if s.d else 'λ'}")
    if trace.halted:
        print("halted")


def cmd_recover_path(args):
    ct = compile_tree(_tree(args), args.kind, path_only=args.path_only)
    if args.tiling:
        t = Tiling.from_dict(_read_json(args.tiling))
    else:
        t = solve_rect(ct.request())
        if t is None:
            if args.json:
                _print_json({"solved": False})
            raise Failure("the root-pinned window does not tile")
    start = _pair(args.start, "--start") if args.start else None
    path = recover_path(ct, t, start)
    if args.json:
        _print_json({"path": seq_to_str(path), "length": len(path)})
    else:
        print(seq_to_str(path) if path else "λ")


def cmd_render(args):
    opts = RenderOptions(args.format, args.cell_size, show_labels=not args.no_labels)
    if args.tiling:
        doc = _read_json(args.tiling)
        if isinstance(doc, dict) and doc.get("geometry") == "hex15":
            _emit(args.out, render(HexTiling.from_dict(doc), opts))
            return
        t = Tiling.from_dict(doc)
        ts = load_tileset(args.tileset) if args.tileset else None
        _emit(args.out, render(t, opts, tileset=ts))
        return
    if not args.tileset:
        raise Usage("render needs --tiling and/or --tileset")
    _emit(args.out, render(load_tileset(args.tileset), opts))


# --------------------------------------------------------------------------- parser


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _rule(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rule must be an integer, got {text!r}") from None
    if not 0 <= v <= 255:
        raise argparse.ArgumentTypeError("rule must lie in 0..255")
    return v


def _tree_args(p):
    p.add_argument("--tree", help="tree JSON file ({depth, branching, ones})")
    p.add_argument("--predicate", help="all | single-path(010) | comb(k) | random(seed,density) | random")
    p.add_argument("--depth", type=int)
    p.add_argument("--branching", type=int, default=2)
    p.add_argument("--seed", type=int, help="seed for --predicate random")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--kind", choices=("ait", "pit", "spokes"), default="ait")
    p.add_argument("--path-only", action="store_true", help="keep only the longest path's nodes")


def _render_args(p, name="--format"):
    p.add_argument(name, choices=FORMATS)
    p.add_argument("--cell-size", type=_positive, default=40)
    p.add_argument("--out", help="write the picture here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wangforge", description="Wang tile compilers, solver and renderers.")
    ap.add_argument("--version", action="version", version=f"wangforge {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("builtin", parents=[common], help="list or print builtin tile sets")
    p.add_argument("name", nargs="?", choices=BUILTIN_NAMES)
    p.set_defaults(fn=cmd_builtin)

    p = sub.add_parser("solve", parents=[common], help="tile a rectangle")
    p.add_argument("--tileset", required=True)
    p.add_argument("--width", type=_positive, required=True)
    p.add_argument("--height", type=_positive, required=True)
    p.add_argument("--pin", action="append", default=[], help="X,Y=INDEX (repeatable)")
    p.add_argument("--origin", help="X,Y of the top-left cell (default 0,0)")
    p.add_argument("--wildcard", action="store_true", help="allow untiled cells")
    p.add_argument("--budget", type=int, help="maximum number of wildcards")
    p.add_argument("--connected", action="store_true", help="with --wildcard, keep the tiled cells connected")
    p.add_argument("--scan", choices=("row-major", "spiral"), default="row-major")
    _render_args(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("period", parents=[common], help="search for a torus tiling up to a bound")
    p.add_argument("--tileset", required=True)
    p.add_argument("--max", type=_positive, required=True)
    p.set_defaults(fn=cmd_period)

    p = sub.add_parser("torus", parents=[common], help="tile a p x q torus")
    p.add_argument("--tileset", required=True)
    p.add_argument("--width", type=_positive, required=True)
    p.add_argument("--height", type=_positive, required=True)
    _render_args(p)
    p.set_defaults(fn=cmd_torus)

    p = sub.add_parser("tm-run", parents=[common], help="simulate a Turing machine")
    p.add_argument("--machine", required=True, help="machine JSON file")
    p.add_argument("--input", default="")
    p.add_argument("--max", type=_positive, default=100, help="maximum number of transitions")
    p.set_defaults(fn=cmd_tm_run)

    comp = sub.add_parser("compile", help="compile a machine, tree or automaton to tiles")
    csub = comp.add_subparsers(dest="what", required=True, metavar="tm|tree|eca")
    p = csub.add_parser("tm", parents=[common])
    p.add_argument("--machine", required=True)
    p.add_argument("--input", default="")
    p.add_argument("--width", type=_positive)
    p.add_argument("--head-col", type=int, default=0)
    p.add_argument("--reachable-only", action="store_true")
    p.set_defaults(fn=cmd_compile_tm)
    p = csub.add_parser("tree", parents=[common])
    _tree_args(p)
    p.set_defaults(fn=cmd_compile_tree)
    p = csub.add_parser("eca", parents=[common])
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--geometry", choices=("wang", "hex"), default="wang")
    p.set_defaults(fn=cmd_compile_eca)

    eca = sub.add_parser("eca", help="elementary cellular automata")
    esub = eca.add_subparsers(dest="what", required=True, metavar="run|hex|wang")
    p = esub.add_parser("run", parents=[common])
    p.add_argument("--rule", type=_rule, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--rows", type=_positive, required=True, help="rows of the diagram, input included")
    p.add_argument("--boundary", choices=("zero", "wrap"), default="zero")
    p.set_defaults(fn=cmd_eca_run)
    for name, fn in (("hex", cmd_eca_hex), ("wang", cmd_eca_wang)):
        p = esub.add_parser(name, parents=[common])
        p.add_argument("--rule", type=_rule, required=True)
        p.add_argument("--input", required=True)
        p.add_argument("--rows", type=_positive, required=True, help="updates below the input row")
        p.add_argument("--width", type=_positive, help="window width in cells; the input is centred")
        _render_args(p, "--render")
        p.set_defaults(fn=fn)

    tag = sub.add_parser("tag", help="cyclic tag systems")
    tsub = tag.add_subparsers(dest="what", required=True, metavar="run")
    p = tsub.add_parser("run", parents=[common])
    p.add_argument("--productions", required=True, help="comma-separated, e.g. 101,110,11")
    p.add_argument("--input", required=True, help="initial data string")
    p.add_argument("--steps", type=_positive, default=10, help="number of states, the initial one included")
    p.set_defaults(fn=cmd_tag_run)

    p = sub.add_parser("recover-path", parents=[common], help="read a tree path back out of a tiling")
    _tree_args(p)
    p.add_argument("--tiling", help="tiling JSON; by default the root-pinned window is solved")
    p.add_argument("--start", help="X,Y cell to start the walk from")
    p.set_defaults(fn=cmd_recover_path)

    p = sub.add_parser("render", help="draw a tiling or tile set")
    p.add_argument("--tileset")
    p.add_argument("--tiling")
    p.add_argument("--format", choices=FORMATS, default="svg")
    p.add_argument("--cell-size", type=_positive, default=40)
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except Failure as exc:
        if exc.args and exc.args[0]:
            print(exc.args[0], file=sys.stderr)
        return 1
    except Usage as exc:
        print(f"wangforge: error: {exc}", file=sys.stderr)
        return 2
    except _USAGE_ERRORS as exc:
        print(f"wangforge: error: {exc}", file=sys.stderr)
        return 2
    except WangforgeError as exc:
        print(f"wangforge: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
