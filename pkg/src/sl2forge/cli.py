"""forge: minimal generating sets of SL2 invariants from the command line.

Subcommands invariants / semi-invariants / kernel / invariants-simple run the
degree scan; dims and series expose the dimension oracle directly.  Output is
text (a streamed per-degree trace plus rendered generators), json (a stable
versioned document), or latex.  Exit codes: 0 success, 2 usage error, 3
internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import forms, genset, render
from .derivation import ConsistencyError
from .dims import (PrecisionError, cell_dim, rational_reconstruct,
                   univariate_series)
from .forms import ComponentKey, FormSpec
from .genset import RunStrategy

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONSISTENCY = 3

RUN_COMMANDS = {
    "invariants": (genset.MODE_INVARIANTS, RunStrategy.MULTIDEGREE),
    "semi-invariants": (genset.MODE_SEMI, RunStrategy.MULTIDEGREE),
    "kernel": (genset.MODE_KERNEL, RunStrategy.MULTIDEGREE),
    "invariants-simple": (genset.MODE_INVARIANTS, RunStrategy.TOTAL_DEGREE),
}

DEGREE_RULE = "-----------------------------degree----------------------------"
HEADER_RULE = "-" * 63


@dataclass
class RunConfig:
    degrees: List[int]
    command: str
    max_degree: Optional[int] = None
    fmt: str = "text"
    out: Optional[str] = None
    workers: Optional[int] = None
    verbose: bool = False
    warn_threshold: Optional[int] = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forge",
        description="Minimal generating sets of invariants and semi-invariants "
                    "of binary forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("degrees", nargs="+", type=int, metavar="d",
                       help="degrees of the binary forms")
        p.add_argument("--format", dest="fmt", choices=("json", "text", "latex"),
                       default="text")
        p.add_argument("--out", metavar="FILE")
        p.add_argument("--verbose", action="store_true")

    for name, help_text in (
            ("invariants", "joint invariants, multidegree-by-multidegree scan"),
            ("semi-invariants", "joint semi-invariants (highest weight vectors)"),
            ("kernel", "kernel of the lowering derivation (same algebra, "
                       "derivation-first presentation)"),
            ("invariants-simple", "joint invariants, whole degree at a time")):
        p = sub.add_parser(name, help=help_text)
        add_common(p)
        p.add_argument("--max-degree", dest="max_degree", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--warn-threshold", dest="warn_threshold", type=int)

    p = sub.add_parser("dims", help="dimension of one graded cell")
    add_common(p)
    p.add_argument("--multidegree", nargs="+", type=int, required=True)
    p.add_argument("--order", type=int, default=0)

    p = sub.add_parser("series", help="dimension series and its rational form")
    add_common(p)
    p.add_argument("--mode", choices=("invariants", "semi"), default="invariants")
    p.add_argument("--truncation", type=int, default=genset.RECONSTRUCT_TRUNCATION)

    return parser


def _check_degrees(degrees: List[int]) -> None:
    if not degrees or any(d < 1 for d in degrees):
        raise ValueError(f"degrees must be positive integers, got {degrees}")


def _find_line(mode: str, rec) -> str:
    mdeg = list(rec.multidegree)
    if mode == genset.MODE_INVARIANTS:
        return f" irreducible invariant of multidegree {mdeg} found"
    if mode == genset.MODE_SEMI:
        return f" irreducible semi-invariant of multidegree {mdeg} and order {rec.order} found"
    return f" irreducible element of multidegree {mdeg} and order {rec.order} found"


def _total_line(mode: str, count: int) -> str:
    if mode == genset.MODE_INVARIANTS:
        return f"Total number of invariants in a minimal generating set: {count}"
    return f"number of semi-invariants in a minimal generating set: {count}"


def _simple_count_line(count: int) -> str:
    if count == 1:
        return " an irreducible invariant found"
    return f" {count} irreducible invariants found"


def _generator_lines(gset: genset.GeneratingSet) -> List[str]:
    lines = ["", "generators:"]
    for rec in gset.records:
        meta = f"degree {rec.total_degree}  multidegree {list(rec.multidegree)}"
        if gset.mode != genset.MODE_INVARIANTS:
            meta += f"  order {rec.order}"
        lines.append(f"{meta}:  {render.render_poly_text(rec.polynomial)}")
    return lines


def _latex_lines(gset: genset.GeneratingSet) -> List[str]:
    lines = [f"% degrees {list(gset.spec.degrees)}, mode {gset.mode}, "
             f"strategy {gset.strategy.value}, cap {gset.cap_used}"]
    for rec in gset.records:
        meta = f"% degree {rec.total_degree}, multidegree {list(rec.multidegree)}"
        if gset.mode != genset.MODE_INVARIANTS:
            meta += f", order {rec.order}"
        lines.append(meta)
        lines.append(render.render_poly_latex(rec.polynomial) + " \\\\")
    return lines


def _run_generating_set(config: RunConfig) -> str:
    mode, strategy = RUN_COMMANDS[config.command]
    spec = FormSpec(tuple(config.degrees))
    if config.warn_threshold is not None:
        forms.set_cell_warn_threshold(config.warn_threshold)

    text_lines: List[str] = []
    stream = config.fmt == "text" and config.out is None
    simple = strategy == RunStrategy.TOTAL_DEGREE
    pending = 0

    def emit(line: str) -> None:
        text_lines.append(line)
        if stream:
            print(line, flush=True)

    def flush_pending() -> None:
        nonlocal pending
        if pending:
            emit(_simple_count_line(pending))
            pending = 0

    def progress(event: str, payload) -> None:
        nonlocal pending
        if event == "cap":
            emit("done!, upper bound " + str(payload))
            emit(HEADER_RULE)
        elif event == "degree":
            flush_pending()
            emit(f"{DEGREE_RULE} {payload}")
        elif event == "generator":
            if simple:
                pending += 1
            else:
                emit(_find_line(mode, payload))
        elif event == "cell" and config.verbose:
            ev = payload
            note = (f"  cell {list(ev.key.multidegree)} order {ev.key.order}: "
                    f"dim {ev.dim}, {ev.method}, {ev.new_count} new")
            print(note, file=sys.stderr, flush=True)

    emit("calculating Poincare series....")
    gset = genset.minimal_generating_set(spec, mode, strategy,
                                         cap_override=config.max_degree,
                                         workers=config.workers,
                                         progress=progress)
    flush_pending()
    emit(_total_line(mode, len(gset.records)))

    if config.fmt == "json":
        return render.render_json(gset)
    if config.fmt == "latex":
        return "\n".join(_latex_lines(gset)) + "\n"
    tail = _generator_lines(gset)
    if stream:
        for line in tail:
            print(line, flush=True)
    return "\n".join(text_lines + tail) + "\n"


def _run_dims(config: RunConfig, multidegree: List[int], order: int) -> str:
    spec = FormSpec(tuple(config.degrees))
    if len(multidegree) != spec.nforms:
        raise ValueError(f"multidegree needs {spec.nforms} entries, "
                         f"got {len(multidegree)}")
    if any(m < 0 for m in multidegree) or order < 0:
        raise ValueError("multidegree entries and order must be >= 0")
    dim = cell_dim(spec, ComponentKey(tuple(multidegree), order))
    if config.fmt == "json":
        import json
        return json.dumps({"schema": 1, "degrees": config.degrees,
                           "multidegree": multidegree, "order": order,
                           "dim": dim}, indent=2) + "\n"
    return f"{dim}\n"


def _run_series(config: RunConfig, mode: str, truncation: int) -> str:
    spec = FormSpec(tuple(config.degrees))
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    series = univariate_series(spec, mode, truncation)
    try:
        form = rational_reconstruct(series)
    except PrecisionError:
        form = None
    if config.fmt == "json":
        import json
        doc = {"schema": 1, "degrees": config.degrees, "mode": mode,
               "truncation": truncation, "coefficients": list(series.coeffs),
               "beta": None, "numerator": None, "denominator_factors": None}
        if form is not None and form.reconstructed:
            doc["beta"] = form.beta
            doc["numerator"] = list(form.numerator)
            doc["denominator_factors"] = [list(f) for f in form.denominator_factors]
        return json.dumps(doc, indent=2) + "\n"
    lines = [f"series coefficients (degree 0..{truncation}): {list(series.coeffs)}"]
    if form is not None and form.reconstructed:
        lines.append(f"rational form: ({render.render_series_poly(form.numerator)}) / "
                     f"{render.render_series_factors(form.denominator_factors)}")
        lines.append(f"beta = {form.beta}")
    else:
        lines.append("rational form: not reconstructed within the search bounds")
        lines.append("beta = infinity (cap falls back to the hard bound)")
    return "\n".join(lines) + "\n"


def run(config: RunConfig, extra: Optional[dict] = None) -> int:
    extra = extra or {}
    try:
        _check_degrees(config.degrees)
        if config.command in RUN_COMMANDS:
            output = _run_generating_set(config)
        elif config.command == "dims":
            output = _run_dims(config, extra["multidegree"], extra["order"])
        elif config.command == "series":
            output = _run_series(config, extra["mode"], extra["truncation"])
        else:
            raise ValueError(f"unknown command {config.command!r}")
    except ConsistencyError as exc:
        print(f"forge: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ValueError, PrecisionError) as exc:
        print(f"forge: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if config.out:
        with open(config.out, "w") as handle:
            handle.write(output)
    elif not (config.command in RUN_COMMANDS and config.fmt == "text"):
        sys.stdout.write(output)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(degrees=args.degrees, command=args.command,
                       max_degree=getattr(args, "max_degree", None),
                       fmt=args.fmt, out=args.out,
                       workers=getattr(args, "workers", None),
                       verbose=args.verbose,
                       warn_threshold=getattr(args, "warn_threshold", None))
    extra = {}
    if args.command == "dims":
        extra = {"multidegree": args.multidegree, "order": args.order}
    elif args.command == "series":
        extra = {"mode": args.mode, "truncation": args.truncation}
    return run(config, extra)


if __name__ == "__main__":
    sys.exit(main())
