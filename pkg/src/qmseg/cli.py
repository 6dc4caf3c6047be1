"""Command-line interface: ``qmseg label|segment|spectrum|generate|bench``.

Data goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
2 for unreadable or malformed input and 3 for an out-of-range numeric
argument such as ``--k 0``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .bench import bench_size
from .heuristics import aggregate_signs, bottom_up, top_down
from .labeling import label_extrema
from .rng import random_walk
from .segmentation import (
    Segmentation,
    build_spectrum_index,
    optimal_segmentation,
    spectrum_curve,
    trivial_segmentation,
)
from .series import CSVFormatError, TimeSeries, dedup_consecutive, parse_csv

EXIT_INPUT = 2
EXIT_RANGE = 3

ALGOS = ("optimal", "topdown", "bottomup")
KINDS = ("random-walk",)


class UsageRangeError(ValueError):
    """A numeric argument is syntactically fine but out of range."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str = "-"
    algo: str = "optimal"
    k: int = 1
    max_k: int = 1
    n: int = 1
    seed: int = 0
    kind: str = "random-walk"
    format: str = "csv"
    sizes: tuple[int, ...] = ()
    bottomup_ceiling: int = 20000


def fmt_float(v: float) -> str:
    """Shortest round-trip decimal, without a trailing ``.0``."""
    text = repr(float(v))
    if text.endswith(".0"):
        text = text[:-2]
    return "0" if text == "-0" else text


def _sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size list: {text!r}") from None
    if not sizes:
        raise argparse.ArgumentTypeError("size list is empty")
    return sizes


def _config(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**fields)
    for name, low in (("k", 1), ("max_k", 1), ("n", 1), ("bottomup_ceiling", 0)):
        if getattr(cfg, name) < low:
            flag = "--" + name.replace("_", "-")
            raise UsageRangeError(f"{flag} must be >= {low}, got {getattr(cfg, name)}")
    if not 0 <= cfg.seed < 2**64:
        raise UsageRangeError("--seed must be an unsigned 64-bit integer")
    if any(s < 2 for s in cfg.sizes):
        raise UsageRangeError("--sizes entries must be >= 2")
    return cfg


def _read_series(path: str) -> TimeSeries:
    try:
        if path == "-":
            series = parse_csv(sys.stdin)
        else:
            with open(path, encoding="utf-8", newline="") as fh:
                series = parse_csv(fh)
    except OSError as exc:
        raise CSVFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise CSVFormatError(f"input is not UTF-8 text ({exc.reason})") from exc
    if len(series) == 0:
        raise CSVFormatError("no samples in input")
    return series


def _emit_json(payload: dict, out) -> None:
    json.dump(payload, out, indent=2)
    out.write("\n")


def _heuristic(series: TimeSeries, k: int, algo: str):
    """Sign-aggregated heuristic segmentation and its pre-aggregation range count."""
    n = len(series)
    if n < 2:
        return trivial_segmentation(n), 1
    if algo == "topdown":
        lin = top_down(series, k)
    else:
        if k > n:
            raise UsageRangeError(f"--k must be <= series length {n} for bottomup")
        lin = bottom_up(series, k)
    return aggregate_signs(series, lin), len(lin)


def cmd_label(cfg: RunConfig, out) -> None:
    series = _read_series(cfg.input)
    pre = dedup_consecutive(series)
    if len(pre) < 2:
        print("warning: degenerate series", file=sys.stderr)
        rows = [(0, float(series.ys[0]), "none", 0.0)]
    else:
        labeled = label_extrema(pre)
        src = pre.origin_index[labeled.pos]
        rows = [
            (int(i), float(series.ys[i]), e.kind.short, e.scale)
            for i, e in zip(src.tolist(), labeled)
        ]
    if cfg.format == "json":
        _emit_json(
            {
                "command": "label",
                "extrema": [
                    {"index": i, "value": v, "kind": kd, "scale": s} for i, v, kd, s in rows
                ],
            },
            out,
        )
        return
    out.write("index,value,kind,scale\n")
    for i, v, kd, s in rows:
        out.write(f"{i},{fmt_float(v)},{kd},{fmt_float(s)}\n")


def _segment_payload(seg: Segmentation, cfg: RunConfig, linear_ranges) -> dict:
    return {
        "command": "segment",
        "algo": cfg.algo,
        "k": cfg.k,
        "breakpoints": list(seg.breakpoints),
        "segments": [
            {"start": a, "end": b, "direction": d.value, "omafe": e}
            for a, b, d, e in seg.segments()
        ],
        "total_omafe": seg.total_error,
        "linear_ranges": linear_ranges,
    }


def cmd_segment(cfg: RunConfig, out) -> None:
    series = _read_series(cfg.input)
    linear_ranges = None
    if cfg.algo == "optimal":
        seg = optimal_segmentation(series, cfg.k)
    else:
        seg, linear_ranges = _heuristic(series, cfg.k, cfg.algo)
    if cfg.format == "json":
        _emit_json(_segment_payload(seg, cfg, linear_ranges), out)
        return
    out.write("breakpoint\n")
    for b in seg.breakpoints:
        out.write(f"{b}\n")
    out.write("\nstart,end,direction,omafe\n")
    for a, b, d, e in seg.segments():
        out.write(f"{a},{b},{d.value},{fmt_float(e)}\n")
    out.write(f"\ntotal_omafe\n{fmt_float(seg.total_error)}\n")
    if linear_ranges is not None:
        out.write(f"\nlinear_ranges\n{linear_ranges}\n")


def spectrum_rows(series: TimeSeries, max_k: int, algo: str) -> list[tuple[int, float]]:
    """``(k, omafe)`` for ``k = 1..max_k``; bottom-up budgets are capped at ``n``."""
    if algo == "optimal":
        pre = dedup_consecutive(series)
        if len(pre) < 2:
            return [(k, 0.0) for k in range(1, max_k + 1)]
        return spectrum_curve(build_spectrum_index(label_extrema(pre), pre), max_k)
    n = len(series)
    return [
        (k, _heuristic(series, min(k, n), algo)[0].total_error) for k in range(1, max_k + 1)
    ]


def cmd_spectrum(cfg: RunConfig, out) -> None:
    series = _read_series(cfg.input)
    rows = spectrum_rows(series, cfg.max_k, cfg.algo)
    if cfg.format == "json":
        _emit_json(
            {
                "command": "spectrum",
                "algo": cfg.algo,
                "rows": [{"k": k, "omafe": e} for k, e in rows],
            },
            out,
        )
        return
    out.write("k,omafe\n")
    for k, e in rows:
        out.write(f"{k},{fmt_float(e)}\n")


def cmd_generate(cfg: RunConfig, out) -> None:
    ys = random_walk(cfg.n, cfg.seed).tolist()
    if cfg.format == "json":
        _emit_json(
            {"command": "generate", "kind": cfg.kind, "n": cfg.n, "seed": cfg.seed, "values": ys},
            out,
        )
        return
    out.write("".join(fmt_float(y) + "\n" for y in ys))


BENCH_COLUMNS = ("n", "optimal_s", "topdown_s", "bottomup_s", "index_build_s", "query_ns")


def cmd_bench(cfg: RunConfig, out) -> None:
    rows = []
    for n in cfg.sizes:
        row = bench_size(n, cfg.k, cfg.seed, cfg.bottomup_ceiling)
        if row.bottomup_s is None:
            print(
                f"note: bottomup skipped for n={n} (above ceiling {cfg.bottomup_ceiling})",
                file=sys.stderr,
            )
        rows.append(row)
    if cfg.format == "json":
        _emit_json(
            {
                "command": "bench",
                "k": cfg.k,
                "rows": [{c: getattr(r, c) for c in BENCH_COLUMNS} for r in rows],
            },
            out,
        )
        return
    out.write(",".join(BENCH_COLUMNS) + "\n")
    for r in rows:
        cells = [str(r.n)] + [
            "" if getattr(r, c) is None else fmt_float(getattr(r, c)) for c in BENCH_COLUMNS[1:]
        ]
        out.write(",".join(cells) + "\n")


COMMANDS = {
    "label": cmd_label,
    "segment": cmd_segment,
    "spectrum": cmd_spectrum,
    "generate": cmd_generate,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmseg", description="Quasi-monotonic segmentation under l-infinity error."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    reads = argparse.ArgumentParser(add_help=False)
    reads.add_argument("input", nargs="?", default="-", help="CSV file, or - for stdin")
    algo = argparse.ArgumentParser(add_help=False)
    algo.add_argument("--algo", choices=ALGOS, default="optimal")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("label", parents=[reads, common], help="scale label of every extremum")
    p = sub.add_parser("segment", parents=[reads, algo, common], help="segment into k pieces")
    p.add_argument("--k", type=int, required=True, help="segment budget")
    p = sub.add_parser("spectrum", parents=[reads, algo, common], help="error for k = 1..max-k")
    p.add_argument("--max-k", type=int, required=True)
    p = sub.add_parser("generate", parents=[common], help="synthetic series")
    p.add_argument("--kind", choices=KINDS, default="random-walk")
    p.add_argument("--n", type=int, required=True, help="number of samples")
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("bench", parents=[common], help="timings on seeded random walks")
    p.add_argument("--sizes", type=_sizes, default=(1000, 10000, 100000), help="e.g. 1000,10000")
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bottomup-ceiling", type=int, default=20000, metavar="N")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        COMMANDS[cfg.command](cfg, sys.stdout)
    except UsageRangeError as exc:
        print(f"qmseg: error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except CSVFormatError as exc:
        print(f"qmseg: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
