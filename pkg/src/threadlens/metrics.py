"""Quantitative properties of threaded discussions.

Four families of measures:

* redundancy — how many posts merely repeat earlier ones, as the ratio of
  duplicates to retained posts;
* topic dispersion — how scattered each topic's posts are when the tree is
  projected onto one dimension (preorder index by default, ancestor count as
  an alternative); the population standard deviation of those positions;
* chronological coherence — how far the actual posting order sits from an
  externally supplied ideal order, as normalized Kendall tau distance;
* degree of hierarchy — depth over breadth, for the whole thread and for
  each first-level sub-thread.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import pstdev
from typing import Any, Optional, Sequence, Union

from .dedup import DuplicateFlags
from .errors import (
    AllPostsDuplicatesError,
    EmptySubThreadError,
    EmptyTopicListError,
    NotAPermutationError,
    UnknownPostError,
)
from .model import SubThread, Thread, breadth, max_depth, sub_thread
from .topics import TopicAssignment

PROJECTIONS = ("dfs_index", "depth")


@dataclass(frozen=True)
class RedundancyStats:
    total_posts: int
    duplicate_posts: int
    redundancy: float


@dataclass(frozen=True)
class TopicStats:
    topic: str
    count: int
    positions: tuple[int, ...]
    dispersion: float


@dataclass(frozen=True)
class HierarchyStats:
    depth: int
    breadth: int
    degree: float


@dataclass(frozen=True)
class MetricsReport:
    redundancy: RedundancyStats
    hierarchy: HierarchyStats
    sub_hierarchies: tuple[tuple[str, HierarchyStats], ...]
    topics: tuple[TopicStats, ...]
    chronological_coherence: Optional[float]


def redundancy_factor(total: int, duplicates: int) -> float:
    """Duplicates per retained post: N_d / (N - N_d). 0 for an empty thread."""
    if not 0 <= duplicates <= total:
        raise ValueError(f"need 0 <= duplicates <= total, got {duplicates}/{total}")
    if total == 0:
        return 0.0
    if duplicates == total:
        raise AllPostsDuplicatesError(
            f"all {total} posts are flagged as duplicates; no retained posts remain"
        )
    return duplicates / (total - duplicates)


def topic_dispersion(
    thread: Thread,
    assignment: TopicAssignment,
    projection: str = "dfs_index",
) -> list[TopicStats]:
    """Per-topic spread of posts along a 1-D projection of the tree.

    ``dfs_index`` uses the 0-based preorder position; ``depth`` uses the
    ancestor count (0 for first-level posts), which matches the preorder
    index on a single chain. Dispersion is the population standard
    deviation, so singleton topics score exactly 0. Topics are listed in
    order of their earliest post.
    """
    if projection not in PROJECTIONS:
        raise ValueError(f"projection must be one of {PROJECTIONS}, got {projection!r}")
    for pid in assignment.by_post:
        if pid not in thread:
            raise UnknownPostError(f"assignment references unknown post '{pid}'")

    members: dict[str, list[str]] = {}
    for post in thread.posts:
        label = assignment.label_of(post.id)
        if label is not None:
            members.setdefault(label, []).append(post.id)

    stats = []
    for label, ids in members.items():
        if projection == "dfs_index":
            positions = tuple(thread.dfs_index[pid] for pid in ids)
        else:
            positions = tuple(thread.depths[pid] - 1 for pid in ids)
        spread = pstdev(positions) if len(positions) > 1 else 0.0
        stats.append(TopicStats(topic=label, count=len(ids), positions=positions, dispersion=spread))
    return stats


def _count_inversions(seq: list[int]) -> int:
    """Mergesort-based inversion count."""
    if len(seq) < 2:
        return 0
    mid = len(seq) // 2
    left, right = seq[:mid], seq[mid:]
    count = _count_inversions(left) + _count_inversions(right)
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            j += 1
            count += len(left) - i
    merged.extend(left[i:])
    merged.extend(right[j:])
    seq[:] = merged
    return count


def chronological_coherence(actual: Sequence[str], ideal: Sequence[str]) -> float:
    """Normalized Kendall tau distance between two orderings of the same posts.

    Fraction of post pairs whose relative order disagrees: 0 when the actual
    order already matches the ideal one, 1 for a full reversal. Sequences of
    length 0 or 1 score 0.
    """
    if len(actual) != len(ideal) or set(actual) != set(ideal) or len(set(actual)) != len(actual):
        raise NotAPermutationError("orderings must be permutations of the same id set")
    n = len(actual)
    if n <= 1:
        return 0.0
    rank = {pid: i for i, pid in enumerate(ideal)}
    inversions = _count_inversions([rank[pid] for pid in actual])
    return inversions / (n * (n - 1) / 2)


def degree_of_hierarchy(sub: Union[Thread, SubThread]) -> HierarchyStats:
    """Depth-to-breadth ratio of a thread or sub-thread.

    For a whole thread, breadth counts the first-level posts and depth the
    deepest nesting level, so a flat thread of N posts scores 1/N and a
    single chain scores N. A leaf sub-thread has no children; its ratio is
    computed against a breadth of 1 (both degenerate forms agree on 1.0 for
    a single post), while the reported breadth stays 0.
    """
    if isinstance(sub, Thread) and not sub.posts:
        raise EmptySubThreadError("empty thread has no hierarchy degree")
    d = max_depth(sub)
    b = breadth(sub)
    return HierarchyStats(depth=d, breadth=b, degree=d / max(b, 1))


def hierarchical_reference(topic_counts: Sequence[int], m: Optional[int] = None) -> float:
    """Hierarchy degree of the maximally hierarchical arrangement.

    With each of the M topics collapsed to a single chain, depth is the
    largest topic size and breadth is M, giving max_i N_i / M.
    """
    counts = list(topic_counts)
    if not counts:
        raise EmptyTopicListError("no topic counts given")
    if any(count < 1 for count in counts):
        raise ValueError(f"topic counts must be >= 1, got {counts}")
    if m is None:
        m = len(counts)
    elif m != len(counts):
        raise ValueError(f"M={m} does not match {len(counts)} topic counts")
    return max(counts) / m


_ZERO_REDUNDANCY = RedundancyStats(total_posts=0, duplicate_posts=0, redundancy=0.0)
_ZERO_HIERARCHY = HierarchyStats(depth=0, breadth=0, degree=0.0)


def metrics_report(
    thread: Thread,
    assignment: Optional[TopicAssignment] = None,
    flags: Optional[DuplicateFlags] = None,
    ideal_order: Optional[Sequence[str]] = None,
    projection: str = "dfs_index",
) -> MetricsReport:
    """Assemble every measure for one thread into a single report.

    Duplicates count toward the redundancy total and are measured in place
    for dispersion and hierarchy; remove them first (see the restructure
    module) to measure the cleaned thread. Chronological coherence is only
    reported when an ideal order is supplied — the library never invents one.
    """
    total = len(thread)
    duplicates = len(flags) if flags is not None else 0
    redundancy = RedundancyStats(
        total_posts=total,
        duplicate_posts=duplicates,
        redundancy=redundancy_factor(total, duplicates),
    )
    if thread.posts:
        hierarchy = degree_of_hierarchy(thread)
        subs = tuple(
            (rid, degree_of_hierarchy(sub_thread(thread, rid))) for rid in thread.roots
        )
    else:
        hierarchy = _ZERO_HIERARCHY
        subs = ()
    topics = tuple(topic_dispersion(thread, assignment, projection)) if assignment else ()
    coherence = None
    if ideal_order is not None:
        coherence = chronological_coherence([post.id for post in thread.posts], ideal_order)
    return MetricsReport(
        redundancy=redundancy,
        hierarchy=hierarchy,
        sub_hierarchies=subs,
        topics=topics,
        chronological_coherence=coherence,
    )


def report_to_dict(report: MetricsReport) -> dict[str, Any]:
    """JSON form of a report, full precision."""
    return {
        "redundancy": {
            "n": report.redundancy.total_posts,
            "n_d": report.redundancy.duplicate_posts,
            "r": report.redundancy.redundancy,
        },
        "hierarchy": {
            "d": report.hierarchy.depth,
            "b": report.hierarchy.breadth,
            "h": report.hierarchy.degree,
        },
        "topics": [
            {"topic": stats.topic, "count": stats.count, "dispersion": stats.dispersion}
            for stats in report.topics
        ],
        "chronological_coherence": report.chronological_coherence,
    }
