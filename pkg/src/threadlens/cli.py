"""Command-line front end.

Three subcommands over canonical thread JSON files::

    threadlens analyze <file>      # metrics report
    threadlens restructure <file>  # dedup + topic grouping, before/after
    threadlens validate <file>     # structural check, warnings listed

Exit codes: 0 success, 1 validation errors (bad thread structure, grouping
blocked), 2 I/O or parse errors. Text output rounds to two decimals; JSON
output carries full precision and is byte-stable for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .codec import load_thread, thread_to_dict
from .dedup import DuplicateFlags, SimilarityConfig, detect_duplicates
from .errors import NoLabelsPresentError, ThreadLensError, ThreadParseError
from .metrics import MetricsReport, metrics_report, report_to_dict
from .model import Thread
from .restructure import RestructureResult, plan_to_dict, restructure
from .topics import TopicAssignment, assignment_from_labels, cluster_keywords

_PROJECTIONS = {"dfs": "dfs_index", "dfs_index": "dfs_index", "depth": "depth"}


def _default_format() -> str:
    env = os.environ.get("THREADLENS_FORMAT", "")
    return env if env in ("text", "json") else "text"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threadlens",
        description="Measure and restructure threaded discussions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(cmd: argparse.ArgumentParser) -> None:
        cmd.add_argument("file", help="canonical thread JSON file")
        cmd.add_argument(
            "--format",
            choices=("text", "json"),
            default=_default_format(),
            help="output format (default from THREADLENS_FORMAT, else text)",
        )
        cmd.add_argument("-o", "--output", metavar="PATH", help="write output here instead of stdout")

    analyze = sub.add_parser("analyze", help="compute the metrics report")
    common(analyze)
    analyze.add_argument(
        "--projection",
        choices=sorted(_PROJECTIONS),
        default="dfs",
        help="1-D projection for topic dispersion (default: dfs preorder index)",
    )
    analyze.add_argument("--tau", type=float, default=0.8, help="duplicate similarity threshold")
    analyze.add_argument("--k", type=int, default=3, help="shingle size in words")

    restruct = sub.add_parser("restructure", help="remove duplicates and group posts by topic")
    common(restruct)
    restruct.add_argument("--cluster", action="store_true", help="cluster unlabeled threads by keywords")
    restruct.add_argument("--cluster-threshold", type=float, default=0.3, help="cosine link threshold")
    restruct.add_argument("--tau", type=float, default=0.8, help="duplicate similarity threshold")
    restruct.add_argument("--k", type=int, default=3, help="shingle size in words")

    validate = sub.add_parser("validate", help="check a thread file and list warnings")
    common(validate)
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _render_report(thread: Thread, report: MetricsReport) -> str:
    lines = [f"thread '{thread.thread_id}': {len(thread)} posts ({len(thread.roots)} first-level)"]
    r = report.redundancy
    h = report.hierarchy
    lines.append(f"redundancy: n = {r.total_posts}, n_d = {r.duplicate_posts}, r = {r.redundancy:.2f}")
    lines.append(f"hierarchy: d = {h.depth}, b = {h.breadth}, h = {h.degree:.2f}")
    if report.topics:
        lines.append(f"topics (M = {len(report.topics)}):")
        for stats in report.topics:
            noun = "post" if stats.count == 1 else "posts"
            lines.append(f"  {stats.topic}: {stats.count} {noun}, dispersion = {stats.dispersion:.2f}")
    else:
        lines.append("topics: none labeled")
    if report.chronological_coherence is not None:
        lines.append(f"chronological coherence: {report.chronological_coherence:.2f}")
    if report.sub_hierarchies:
        lines.append("first-level sub-threads:")
        for rid, stats in report.sub_hierarchies:
            lines.append(f"  {rid}: d = {stats.depth}, b = {stats.breadth}, h = {stats.degree:.2f}")
    return "\n".join(lines) + "\n"


def _render_restructure(before_thread: Thread, result: RestructureResult) -> str:
    removed = len(result.plan.removals)
    lines = [
        f"thread '{before_thread.thread_id}': {len(before_thread)} posts -> "
        f"{len(result.thread)} posts ({removed} duplicate{'s' if removed != 1 else ''} removed)"
    ]
    lines.append(
        f"before: r = {result.before.redundancy.redundancy:.2f}, "
        f"h = {result.before.hierarchy.degree:.2f}"
    )
    lines.append(
        f"after:  r = {result.after.redundancy.redundancy:.2f}, "
        f"h = {result.after.hierarchy.degree:.2f}"
    )
    if result.plan.topic_roots:
        lines.append("topic roots:")
        for label, rid in result.plan.topic_roots.items():
            lines.append(f"  {label} -> {rid}")
    if result.plan.moves:
        lines.append(f"moves: {len(result.plan.moves)} post(s) re-attached")
    return "\n".join(lines) + "\n"


def _json_doc(data: object) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _run_analyze(args: argparse.Namespace) -> int:
    thread = load_thread(args.file)
    config = SimilarityConfig(shingle_size=args.k, threshold=args.tau)
    flags = detect_duplicates(thread, config)
    try:
        assignment: Optional[TopicAssignment] = assignment_from_labels(thread)
    except NoLabelsPresentError:
        assignment = None
    report = metrics_report(thread, assignment, flags, projection=_PROJECTIONS[args.projection])
    if args.format == "json":
        _emit(_json_doc(report_to_dict(report)), args.output)
    else:
        _emit(_render_report(thread, report), args.output)
    return 0


def _run_restructure(args: argparse.Namespace) -> int:
    thread = load_thread(args.file)
    config = SimilarityConfig(shingle_size=args.k, threshold=args.tau)
    flags = detect_duplicates(thread, config)
    if not thread.posts:
        assignment = TopicAssignment()
    else:
        try:
            assignment = assignment_from_labels(thread)
        except NoLabelsPresentError:
            if not args.cluster:
                raise ThreadLensError(
                    "thread has no topic labels; pass --cluster to derive them"
                ) from None
            assignment = cluster_keywords(thread, args.cluster_threshold)
    result = restructure(thread, flags, assignment)
    doc = {
        "thread": thread_to_dict(result.thread),
        "plan": plan_to_dict(result.plan),
        "before": report_to_dict(result.before),
        "after": report_to_dict(result.after),
    }
    if args.format == "json":
        _emit(_json_doc(doc), args.output)
    else:
        print(_render_restructure(thread, result), end="")
        if args.output:
            _emit(_json_doc(doc), args.output)
    return 0


def _run_validate(args: argparse.Namespace) -> int:
    thread = load_thread(args.file)
    if args.format == "json":
        doc = {"valid": True, "posts": len(thread), "warnings": list(thread.warnings)}
        _emit(_json_doc(doc), args.output)
        return 0
    lines = [f"thread '{thread.thread_id}': {len(thread)} posts, valid"]
    if thread.warnings:
        lines.append(f"warnings ({len(thread.warnings)}):")
        lines.extend(f"  - {warning}" for warning in thread.warnings)
    else:
        lines.append("no warnings")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    runners = {
        "analyze": _run_analyze,
        "restructure": _run_restructure,
        "validate": _run_validate,
    }
    try:
        return runners[args.command](args)
    except ThreadParseError as exc:
        print(f"threadlens: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"threadlens: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"threadlens: invalid option: {exc}", file=sys.stderr)
        return 2
    except ThreadLensError as exc:
        print(f"threadlens: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
