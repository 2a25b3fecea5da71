"""Command-line entry point.

Subcommands cover the whole pipeline: ``gen`` (synthetic traces), ``parse``
(filter + parse report), ``stats`` (per-address CSV), ``scene`` (exported
scene JSON), ``store`` (debug dump of the record store), and ``report``
(stats CSV, scene JSON, and rendered PNG figures in one output directory).

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data error (malformed
lines beyond MEMVIZ_MAX_MALFORMED, or a layout mismatch). All outputs are
written atomically (temp file + rename) and deterministically: the same
inputs and flags produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Sequence

from . import analytics, generators, parser, scenes, store

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DATA = 3

DEFAULT_MAX_MALFORMED = 1000


class _DataError(Exception):
    """Input data violates a limit or a declared layout."""


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # usage failures exit 1 (argparse's default is 2, which we reserve for I/O)
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_arg(text: str) -> int:
    return int(text, 0)


def _comma_names(text: str) -> frozenset[str]:
    return frozenset(part for part in text.split(",") if part)


def _comma_ints(text: str) -> frozenset[int]:
    return frozenset(int(part) for part in text.split(",") if part)


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def _atomic_write(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".memviz-tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _max_malformed() -> int:
    raw = os.environ.get("MEMVIZ_MAX_MALFORMED", "")
    if not raw:
        return DEFAULT_MAX_MALFORMED
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"MEMVIZ_MAX_MALFORMED must be an integer, got {raw!r}")


def _load_trace(path: str, rules: parser.FilterRule | None = None):
    events, allocs, parse_report = parser.parse_trace_file(path, rules)
    limit = _max_malformed()
    if parse_report.lines_malformed > limit:
        raise _DataError(
            f"{parse_report.lines_malformed} malformed lines exceed the "
            f"limit of {limit} (MEMVIZ_MAX_MALFORMED)"
        )
    return events, allocs, parse_report


def _filter_rules(args: argparse.Namespace) -> parser.FilterRule:
    return parser.FilterRule(
        drop_unattributed=getattr(args, "drop_unattributed", False),
        keep_functions=getattr(args, "keep_fn", None),
        keep_variables=getattr(args, "keep_var", None),
        keep_threads=getattr(args, "keep_thread", None),
    )


def _parse_layout(text: str, structure: str, base: int) -> scenes.ArrayLayout:
    """Layout syntax: dims separated by 'x', final token the element size in
    bytes. '4x4x8' is a 4x4 array of 8-byte elements; '2x2x2x8' is 3D."""
    tokens = text.split("x")
    if len(tokens) not in (3, 4):
        raise _UsageError(f"bad layout {text!r}: expected ROWSxCOLS[xDEPTH]x<element_size>")
    try:
        values = [int(token) for token in tokens]
    except ValueError:
        raise _UsageError(f"bad layout {text!r}: dims and element size must be integers")
    if any(v < 1 for v in values):
        raise _UsageError(f"bad layout {text!r}: dims and element size must be positive")
    dims = tuple(values[:-1])
    return scenes.ArrayLayout(
        structure=structure, base=base, element_size=values[-1], dims=dims
    )


def _infer_base(stats: dict[int, analytics.AddressStats], structure: str) -> int:
    matching = [addr for addr, st in stats.items() if st.variable == structure]
    return min(matching) if matching else 0


def _build_array_scene(args: argparse.Namespace, events, allocs, kind: scenes.SceneKind):
    if not args.var or not args.layout:
        raise _UsageError(f"--var and --layout are required for {kind.value} scenes")
    built = store.build(events)
    stats = analytics.compute_stats(built, allocs)
    base = args.base if args.base is not None else _infer_base(stats, args.var)
    layout = _parse_layout(args.layout, args.var, base)
    want = 2 if kind is scenes.SceneKind.ARRAY2D else 3
    if len(layout.dims) != want:
        raise _UsageError(
            f"layout {args.layout!r} has {len(layout.dims)} dims but {kind.value} needs {want}"
        )
    builder = (
        scenes.build_2d_array_scene
        if kind is scenes.SceneKind.ARRAY2D
        else scenes.build_3d_array_scene
    )
    return builder(built, stats, layout, source=args.trace)


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.workload == "bmm":
        spec = generators.BmmSpec(
            n=args.n,
            block=args.block,
            element_size=args.elem,
            base_a=args.base_a,
            base_b=args.base_b,
            base_c=args.base_c,
        )
        events = generators.gen_bmm(spec)
    elif args.workload == "walk3d":
        dims = tuple(int(d) for d in args.dims.split(","))
        if len(dims) != 3:
            raise _UsageError(f"--dims needs three comma-separated values, got {args.dims!r}")
        spec = generators.Walk3dSpec(dims=dims, element_size=args.elem, base=args.base)
        events = generators.gen_walk3d(spec)
    else:
        events = generators.gen_random(
            seed=args.seed, n_events=args.events, n_vars=args.vars, max_elems=args.max_elems
        )
    _atomic_write(args.output, parser.serialize_trace(events).encode("utf-8"))
    return EXIT_OK


def _cmd_parse(args: argparse.Namespace) -> int:
    _, _, parse_report = _load_trace(args.trace, _filter_rules(args))
    payload = {
        "lines_read": parse_report.lines_read,
        "events_emitted": parse_report.events_emitted,
        "events_filtered": parse_report.events_filtered,
        "lines_skipped": parse_report.lines_skipped,
        "lines_malformed": parse_report.lines_malformed,
        "reduction_ratio": float(f"{parse_report.reduction_ratio:.9g}"),
        "reduction_percent": float(f"{parser.reduction_percent(parse_report):.9g}"),
    }
    _atomic_write(args.report, _json_bytes(payload))
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    events, allocs, _ = _load_trace(args.trace)
    built = store.build(events)
    stats = analytics.compute_stats(built, allocs)
    _atomic_write(args.output, analytics.stats_csv_text(stats).encode("utf-8"))
    return EXIT_OK


_KIND_BY_FLAG = {
    "complete": scenes.SceneKind.COMPLETE_MAP,
    "array2d": scenes.SceneKind.ARRAY2D,
    "array3d": scenes.SceneKind.ARRAY3D,
}


def _cmd_scene(args: argparse.Namespace) -> int:
    kind = _KIND_BY_FLAG[args.kind]
    events, allocs, _ = _load_trace(args.trace)
    if kind is scenes.SceneKind.COMPLETE_MAP:
        built = store.build(events)
        stats = analytics.compute_stats(built, allocs)
        scene = scenes.build_complete_map(built, stats, source=args.trace)
    else:
        scene = _build_array_scene(args, events, allocs, kind)
    _atomic_write(args.output, scenes.scene_json_text(scene).encode("utf-8"))
    return EXIT_OK


def _cmd_store(args: argparse.Namespace) -> int:
    events, _, _ = _load_trace(args.trace)
    built = store.build(events)
    _atomic_write(args.dump, _json_bytes(store.store_to_json_dict(built)))
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    from . import report  # defers the matplotlib import to the one path that needs it

    events, allocs, _ = _load_trace(args.trace)
    built = store.build(events)
    stats = analytics.compute_stats(built, allocs)
    os.makedirs(args.output, exist_ok=True)
    _atomic_write(
        os.path.join(args.output, "stats.csv"), analytics.stats_csv_text(stats).encode("utf-8")
    )
    built_scenes = [scenes.build_complete_map(built, stats, source=args.trace)]
    if args.var and args.layout:
        base = args.base if args.base is not None else _infer_base(stats, args.var)
        layout = _parse_layout(args.layout, args.var, base)
        if len(layout.dims) == 2:
            built_scenes.append(scenes.build_2d_array_scene(built, stats, layout, source=args.trace))
        else:
            built_scenes.append(scenes.build_3d_array_scene(built, stats, layout, source=args.trace))
    elif args.var or args.layout:
        raise _UsageError("--var and --layout must be given together")
    for scene in built_scenes:
        name = scene.kind.value
        _atomic_write(
            os.path.join(args.output, f"{name}.json"),
            scenes.scene_json_text(scene).encode("utf-8"),
        )
        _atomic_write(
            os.path.join(args.output, f"{name}.png"), report.render_scene_png(scene)
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = _ArgumentParser(prog="memviz", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True, metavar="COMMAND")

    gen = sub.add_parser("gen", help="generate a synthetic trace")
    gen_sub = gen.add_subparsers(dest="workload", required=True, metavar="WORKLOAD")

    gen_bmm = gen_sub.add_parser("bmm", help="blocked matrix multiplication C = A * B")
    gen_bmm.add_argument("--n", type=int, required=True, help="matrix dimension")
    gen_bmm.add_argument("--block", type=int, required=True, help="block size (divides n)")
    gen_bmm.add_argument("--elem", type=int, default=8, help="element size in bytes")
    gen_bmm.add_argument("--base-a", type=_int_arg, default=0x100000)
    gen_bmm.add_argument("--base-b", type=_int_arg, default=0x200000)
    gen_bmm.add_argument("--base-c", type=_int_arg, default=0x300000)
    gen_bmm.add_argument("-o", "--output", required=True, help="trace file to write")

    gen_walk = gen_sub.add_parser("walk3d", help="sequential 3D array walk")
    gen_walk.add_argument("--dims", required=True, help="rows,cols,depth")
    gen_walk.add_argument("--elem", type=int, default=8, help="element size in bytes")
    gen_walk.add_argument("--base", type=_int_arg, default=0x400000)
    gen_walk.add_argument("-o", "--output", required=True)

    gen_rand = gen_sub.add_parser("random", help="seeded random trace")
    gen_rand.add_argument("--seed", type=int, required=True)
    gen_rand.add_argument("--events", type=int, required=True)
    gen_rand.add_argument("--vars", type=int, default=8)
    gen_rand.add_argument("--max-elems", type=int, default=64)
    gen_rand.add_argument("-o", "--output", required=True)

    parse_cmd = sub.add_parser("parse", help="parse a trace and write the parse report")
    parse_cmd.add_argument("trace")
    parse_cmd.add_argument("--drop-unattributed", action="store_true")
    parse_cmd.add_argument("--keep-fn", type=_comma_names, default=None, metavar="F1,F2")
    parse_cmd.add_argument("--keep-var", type=_comma_names, default=None, metavar="V1,V2")
    parse_cmd.add_argument("--keep-thread", type=_comma_ints, default=None, metavar="T1,T2")
    parse_cmd.add_argument("--report", required=True, help="report JSON to write")

    stats_cmd = sub.add_parser("stats", help="per-address statistics CSV")
    stats_cmd.add_argument("trace")
    stats_cmd.add_argument("-o", "--output", required=True)

    scene_cmd = sub.add_parser("scene", help="build and export a scene as JSON")
    scene_cmd.add_argument("trace")
    scene_cmd.add_argument("--kind", required=True, choices=sorted(_KIND_BY_FLAG))
    scene_cmd.add_argument("--var", help="structure name for array scenes")
    scene_cmd.add_argument("--layout", help="ROWSxCOLS[xDEPTH]x<element_size>")
    scene_cmd.add_argument(
        "--base", type=_int_arg, default=None, help="array base address (default: inferred)"
    )
    scene_cmd.add_argument("-o", "--output", required=True)

    store_cmd = sub.add_parser("store", help="debug dump of the record store")
    store_cmd.add_argument("trace")
    store_cmd.add_argument("--dump", required=True, help="store JSON to write")

    report_cmd = sub.add_parser(
        "report", help="stats CSV plus scene JSON and PNG figures in one directory"
    )
    report_cmd.add_argument("trace")
    report_cmd.add_argument("--var", help="structure name for the array scene")
    report_cmd.add_argument("--layout", help="ROWSxCOLS[xDEPTH]x<element_size>")
    report_cmd.add_argument("--base", type=_int_arg, default=None)
    report_cmd.add_argument("-o", "--output", required=True, help="output directory")

    top.set_defaults(handler=None)
    gen.set_defaults(handler=_cmd_gen)
    parse_cmd.set_defaults(handler=_cmd_parse)
    stats_cmd.set_defaults(handler=_cmd_stats)
    scene_cmd.set_defaults(handler=_cmd_scene)
    store_cmd.set_defaults(handler=_cmd_store)
    report_cmd.set_defaults(handler=_cmd_report)
    return top


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI; returns the process exit code instead of raising."""
    top = build_parser()
    try:
        args = top.parse_args(argv)
    except SystemExit as exc:  # argparse --help exits 0, usage errors exit 1
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"memviz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"memviz: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (_DataError, scenes.LayoutMismatchError) as exc:
        print(f"memviz: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"memviz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
