"""Command-line interface.

Exit status: 0 on success, 1 on validation errors (bad notation, rejected
or duplicate lines, empty charts), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .aggregate import (
    EmptyClass,
    EmptyEdition,
    TimeSeries,
    format_stats,
    stats_from_json,
    stats_to_json,
    stats_to_tsv,
    time_series,
)
from .charts import (
    EmptyRing,
    EmptySeries,
    SeriesChartSpec,
    ValueKind,
    emit_ring_svg,
    emit_series_svg,
    ring_spec_from_stats,
)
from .mrf_ingest import EditionFormat, IngestError, export_tabular, load_edition
from .notation import (
    ClassificationMode,
    NotationError,
    auxiliary_profile,
    main_class,
    parse,
)
from .ontogeny import diff, history

log = logging.getLogger("udcevo")

_MODES = {"standard": ClassificationMode.STANDARD, "01main": ClassificationMode.TREAT_01_AS_MAIN}
_METRICS = ("special-pct", "special", "classes", "common")


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, code: str, on: bool) -> str:
    return f"\033[{code}m{text}\033[0m" if on else text


def _load(path: str, fmt: str, strict: bool, label: Optional[str] = None):
    snapshot, report = load_edition(path, EditionFormat(fmt), label=label, strict=strict)
    for line, reason in report.rejected:
        print(f"{path}:{line}: rejected: {reason}", file=sys.stderr)
    for line, msg in report.warnings:
        log.info("%s:%d: %s", path, line, msg)
    return snapshot, report


def _load_all(paths: Sequence[str], args) -> tuple[list, bool]:
    snaps, clean = [], True
    for p in paths:
        snap, report = _load(p, args.format, args.strict)
        snaps.append(snap)
        clean = clean and report.ok
    return snaps, clean


def cmd_parse(args) -> int:
    expr = parse(args.notation)
    mode = _MODES[args.mode]
    label = main_class(expr, mode)
    profile = auxiliary_profile(expr)
    if args.json:
        out = {
            "notation": args.notation,
            "canonical": expr.render(),
            "main_class": label.code,
            "main_class_name": label.display_name,
            "aux_type": profile.aux_type.value if profile.aux_type else None,
            "aux_part": profile.aux_part,
            "terms": [
                {
                    "main": t.main.digits if t.main else None,
                    "bracket": t.bracket.render() if t.bracket else None,
                    "auxiliaries": [
                        {"kind": s.kind.value, "payload": s.payload, "raw": s.raw} for s in t.auxiliaries
                    ],
                }
                for t in expr.terms
            ],
            "connectors": [c.value for c in expr.connectors],
        }
        print(json.dumps(out, indent=2, ensure_ascii=False))
        return 0
    print(f"notation:   {expr.render()}")
    print(f"main class: {label.code} ({label.display_name})")
    print(f"aux type:   {profile.aux_type.value if profile.aux_type else '-'}")
    print(f"aux part:   {profile.aux_part or '-'}")
    for i, term in enumerate(expr.terms):
        if i:
            print(f"  connector {expr.connectors[i - 1].value!r}")
        head = term.main.render() if term.main else (f"[{term.bracket.render()}]" if term.bracket else "-")
        print(f"  term {i + 1}: {head}")
        for seg in term.auxiliaries:
            print(f"    {seg.kind.value:<24} {seg.raw}")
    return 0


def cmd_convert(args) -> int:
    snapshot, report = _load(args.input, args.format, args.strict, args.label)
    export_tabular(snapshot, _MODES[args.mode], args.output)
    print(f"wrote {len(snapshot)} records to {args.output}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_stats(args) -> int:
    snaps, clean = _load_all(args.editions, args)
    series = time_series(snaps, _MODES[args.mode])
    if args.json:
        sys.stdout.write(stats_to_json(series))
    elif args.tsv:
        sys.stdout.write(stats_to_tsv(series.editions))
    else:
        blocks = [format_stats(s) for s in series.editions]
        for d in series.deltas():
            moves = "  ".join(f"{k}:{v:+d}" for k, v in d.special_by_class.items() if v)
            blocks.append(f"special auxiliaries {d.from_label} -> {d.to_label}: {moves or 'unchanged'}")
        print("\n\n".join(blocks))
    return 0 if clean else 1


def cmd_diff(args) -> int:
    (a, b), clean = _load_all([args.old, args.new], args)
    delta = diff(a, b)
    if args.json:
        sys.stdout.write(delta.to_json())
    else:
        color = _use_color(sys.stdout)
        for line in delta.report().splitlines():
            if line.startswith("  + "):
                line = _paint(line, "32", color)
            elif line.startswith("  - "):
                line = _paint(line, "31", color)
            print(line)
    return 0 if clean else 1


def cmd_history(args) -> int:
    snaps, clean = _load_all(args.editions, args)
    lineage = history(args.notation, snaps)
    if args.json:
        print(json.dumps(lineage.to_dict(), indent=2, ensure_ascii=False))
    else:
        print(lineage.report())
    if lineage.unknown:
        print(f"warning: {lineage.notation} does not occur in any edition", file=sys.stderr)
    return 0 if clean else 1


def cmd_chart(args) -> int:
    stats = []
    for p in args.stats:
        stats.extend(stats_from_json(Path(p).read_text(encoding="utf-8")))
    if args.kind == "ring":
        spec = ring_spec_from_stats(stats, size=args.size)
        spec.title = args.title
        svg = emit_ring_svg(spec)
    else:
        series = TimeSeries(stats)
        kind = ValueKind.PERCENTAGE if args.metric == "special-pct" else ValueKind.COUNT
        values = series.series(args.metric)
        if args.keys:
            wanted = args.keys.split(",")
            values = {k: v for k, v in values.items() if k in wanted}
        spec = SeriesChartSpec(series.labels, values, kind, title=args.title)
        svg = emit_series_svg(spec)
    Path(args.output).write_bytes(svg.encode("utf-8"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="udcevo", description="UDC notation parsing and edition analysis")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings such as empty descriptions")
    sub = parser.add_subparsers(dest="command", required=True)

    def edition_opts(p):
        p.add_argument("--format", choices=[f.value for f in EditionFormat], default="canonical")
        p.add_argument("--strict", action="store_true", help="abort on the first rejected line")

    def mode_opt(p):
        p.add_argument("--mode", choices=sorted(_MODES), default="standard")

    p = sub.add_parser("parse", help="show the structure of one notation")
    p.add_argument("notation")
    mode_opt(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("convert", help="write the tab-delimited analysis table")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--label")
    edition_opts(p)
    mode_opt(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("stats", help="per-edition counts and percentages")
    p.add_argument("editions", nargs="+")
    edition_opts(p)
    mode_opt(p)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--tsv", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("diff", help="compare two editions")
    p.add_argument("old")
    p.add_argument("new")
    edition_opts(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("history", help="trace one notation through editions")
    p.add_argument("notation")
    p.add_argument("editions", nargs="+")
    edition_opts(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_history)

    p = sub.add_parser("chart", help="draw an SVG chart from `stats --json` output")
    p.add_argument("kind", choices=["ring", "series"])
    p.add_argument("stats", nargs="+", help="JSON files written by `stats --json`")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--metric", choices=_METRICS, default="special-pct", help="series charts only")
    p.add_argument("--keys", help="comma-separated classes or kinds to plot")
    p.add_argument("--size", type=int, default=400, help="ring chart size in pixels")
    p.add_argument("--title")
    p.set_defaults(func=cmd_chart)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s"
    )
    try:
        return args.func(args)
    except BrokenPipeError:
        # reader went away (e.g. `| head`); stop quietly, keep interpreter shutdown from complaining
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1
    except (NotationError, IngestError, EmptyRing, EmptySeries, EmptyEdition, EmptyClass) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
