"""Command-line entry point.

Exit codes: 0 success, 1 a verification came out false, 2 bad usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config
from .coxeter import CoxeterSystem, build_system, longest_element
from .embeddings import (
    AdmissiblePartition,
    embed_word,
    expand,
    parse_sigma_consistent,
    table_row,
    verify_induced_matrix,
)
from .errors import CoxtileError, MatrixMismatch, UsageError, VerificationFailure
from .render import RenderConfig, to_svg
from .suites import CASES, run_case
from .tilings import basis_for, coverage, outline, realize, subtiling, tile_word
from .words import (
    RelationSet,
    classes_of_words,
    count_reduced,
    enumerate_reduced,
    format_word,
    parse_word,
)

LONGEST = {"longest", "w0", "x0"}


def _config(args):
    return load_config(args.config).updated(
        group_size_cap=args.group_cap, enumeration_cap=args.enum_cap
    )


def _system(args, config) -> tuple[CoxeterSystem, AdmissiblePartition | None]:
    if getattr(args, "row", None):
        p = table_row(args.row, config)
        return p.x_system, p
    if getattr(args, "host", None):
        return build_system(args.host, config), None
    raise UsageError("give --host or --row")


def _element(system: CoxeterSystem, partition, text: str):
    text = text.strip()
    if text.lower() in LONGEST:
        return longest_element(system)
    tokens = text.split()
    if partition is not None or all(t[:1] in "sStT" for t in tokens):
        return system.evaluate(parse_word(text))
    return system.parse_element(text)


def _write_svg(args, tiling, host):
    if not args.svg:
        return
    basis = basis_for(host, regular=args.regular)
    polygons = realize(tiling, basis)
    config = RenderConfig.named(args.palette, show_labels=args.labels, regular_mode=args.regular)
    Path(args.svg).write_text(to_svg(polygons, config, outline(tiling, basis)))
    if host.ctype.family == "D" and args.regular:
        rep = coverage(tiling, basis)
        if not rep.ok():
            print("# warning: regular-polygon geometry has overlapping tiles", file=sys.stderr)


# -- subcommands ------------------------------------------------------------


def cmd_info(args, config, out):
    system, p = _system(args, config)
    table = system.table
    print(f"type={system.ctype} rank={system.rank} order={len(table)} max_length={table.max_length()}", file=out)
    print("coxeter_matrix:", file=out)
    for row in system.coxeter_matrix:
        print("  " + " ".join(str(v) for v in row), file=out)
    if p is None:
        print(f"longest={system.one_line(longest_element(system))}", file=out)
        moved = {i: f for i, f in system.diagram_labels.items() if i != f}
        if moved:
            pairs = " ".join(f"s{i}->{f}" for i, f in sorted(system.diagram_labels.items()))
            print(f"diagram_labels: {pairs}", file=out)
    else:
        for t, (block, word) in enumerate(zip(p.blocks, p.canonical), 1):
            print(f"t{t} -> block {{{','.join(map(str, block))}}} word {format_word(word)}", file=out)
    return 0


def cmd_words(args, config, out):
    system, p = _system(args, config)
    w = _element(system, p, args.element)
    action = args.action
    if action == "enumerate":
        if args.count_only:
            print(count_reduced(system, w), file=out)
            return 0
        for word in enumerate_reduced(system, w, config.enumeration_cap):
            print(format_word(word), file=out)
        return 0
    rels = RelationSet.parse(args.relations, system)
    words = enumerate_reduced(system, w, config.enumeration_cap)
    part = classes_of_words(system, w, words, rels)
    if args.count_only:
        print(len(part), file=out)
        return 0
    classes = sorted(sorted(c) for c in part.classes)
    for k, cls in enumerate(classes, 1):
        print(f"class {k} size={len(cls)}", file=out)
        for word in cls:
            print("  " + format_word(word), file=out)
    return 0


def cmd_classes(args, config, out):
    args.action = "classes"
    return cmd_words(args, config, out)


def cmd_embed(args, config, out):
    p = table_row(args.row, config)
    if args.action == "verify-matrix":
        try:
            matrix = verify_induced_matrix(p)
        except MatrixMismatch as exc:
            print(str(exc), file=out)
            return 1
        for row in matrix:
            print(" ".join(str(v) for v in row), file=out)
        print(f"ok=true type={p.x_type}", file=out)
        return 0
    if args.word is None:
        raise UsageError("embed needs --word")
    x_word = parse_word(args.word) if args.word.strip().lower() not in LONGEST else None
    if x_word is None:
        x_word = enumerate_reduced(p.x_system, longest_element(p.x_system))[0]
    s_word = embed_word(p, x_word)
    print(f"expansion: {format_word(s_word)}", file=out)
    parts = " | ".join(f"t{t}:{format_word(sub)}" for t, sub in expand(p, x_word))
    print(f"blocks: {parts}", file=out)
    parse = parse_sigma_consistent(p, s_word)
    if parse is None:
        print("parse: inconsistent", file=out)
        return 1
    print("parse: " + " | ".join(f"t{t}:{format_word(sub)}" for t, sub in parse.blocks_sequence), file=out)
    return 0


def cmd_tile(args, config, out):
    host = build_system(args.host, config)
    word = parse_word(args.word)
    tiling = tile_word(host, word)
    out.write(tiling.dump())
    _write_svg(args, tiling, host)
    return 0


def cmd_subtile(args, config, out):
    p = table_row(args.row, config)
    text = args.xword.strip()
    if text.lower() in LONGEST:
        x_word = enumerate_reduced(p.x_system, longest_element(p.x_system))[0]
    else:
        x_word = parse_word(text)
    tiling = subtiling(p, x_word)
    out.write(tiling.dump())
    _write_svg(args, tiling, p.host)
    return 0


def cmd_render(args, config, out):
    if not args.svg:
        raise UsageError("render needs --svg")
    if args.row:
        p = table_row(args.row, config)
        text = args.word.strip()
        if text.lower() in LONGEST:
            x_word = enumerate_reduced(p.x_system, longest_element(p.x_system))[0]
        else:
            x_word = parse_word(text)
        tiling, host = subtiling(p, x_word), p.host
    elif args.host:
        host = build_system(args.host, config)
        tiling = tile_word(host, parse_word(args.word))
    else:
        raise UsageError("render needs --host or --row")
    _write_svg(args, tiling, host)
    print(f"wrote {args.svg} ({len(tiling)} tiles)", file=out)
    return 0


def cmd_verify(args, config, out):
    names = list(CASES) if args.case == "all" else [args.case]
    ok = True
    for name in names:
        result = run_case(name, config, jobs=args.jobs, geometry=args.geometry)
        for line in result.lines():
            print(line, file=out)
        ok = ok and result.ok
    if not ok:
        raise VerificationFailure("at least one case failed")
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file (default: $COXTILE_CONFIG)")
    common.add_argument("--group-cap", type=int, help="override group_size_cap")
    common.add_argument("--enum-cap", type=int, help="override enumeration_cap")

    svg = argparse.ArgumentParser(add_help=False)
    svg.add_argument("--svg", help="write an SVG rendering to this path")
    svg.add_argument("--palette", choices=["default", "mono"], default="default")
    svg.add_argument("--labels", action="store_true", help="print edge labels inside tiles")
    svg.add_argument("--regular", action="store_true",
                     help="regular-polygon edges for type D (overlaps become warnings)")

    parser = argparse.ArgumentParser(prog="coxtile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="describe a host or an embedded system")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--host")
    g.add_argument("--row")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("words", parents=[common], help="reduced words and their classes")
    p.add_argument("action", choices=["enumerate", "classes"])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--host")
    g.add_argument("--row", help="work in the embedded group X of this row")
    p.add_argument("--element", required=True, help="one-line form, a word 's1 s3 s2', or 'longest'")
    p.add_argument("--relations", default="all-commuting",
                   help="all-commuting | none | elnitsky | custom:1-3,2-4")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("classes", parents=[common], help="same as 'words classes'")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--host")
    g.add_argument("--row")
    p.add_argument("--element", required=True)
    p.add_argument("--relations", default="all-commuting")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("embed", parents=[common], help="expand words of X into the host")
    p.add_argument("action", nargs="?", choices=["expand", "verify-matrix"], default="expand")
    p.add_argument("--row", required=True, help="A5-B3 | A6-B3 | D4-B3 | D5-B4 | D6-H3 ...")
    p.add_argument("--word", help="word over t1..tk, or 'longest'")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("tile", parents=[common, svg], help="tiling of Y(w) for a reduced host word")
    p.add_argument("--host", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("subtile", parents=[common, svg], help="subtiling for a reduced word of X")
    p.add_argument("--row", required=True)
    p.add_argument("--xword", required=True, help="word over t1..tk, or 'longest'")
    p.set_defaults(func=cmd_subtile)

    p = sub.add_parser("render", parents=[common, svg], help="write an SVG only")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--host")
    g.add_argument("--row")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", parents=[common], help="run bijection checks")
    p.add_argument("--case", required=True, choices=list(CASES) + ["all"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--geometry", action="store_true", help="also check tile areas and overlaps")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _config(args)
        return args.func(args, config, out)
    except VerificationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CoxtileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
