"""Thread restructuring: drop duplicates, then regroup posts by topic.

The pipeline turns a sprawling discussion into a view with one first-level
sub-thread per topic. Replies within a topic keep their original nesting;
a reply whose parent sits in a different topic is re-attached to its nearest
ancestor of its own topic, or to the topic's root if it has none. The topic
root is the chronologically earliest post of the topic. After grouping,
every topic occupies one contiguous block of the preorder traversal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .dedup import DuplicateFlags, validate_flags
from .errors import InvalidFlagsError, UnlabeledPostError
from .metrics import MetricsReport, metrics_report
from .model import Post, Thread, build_thread
from .topics import TopicAssignment


@dataclass(frozen=True)
class RestructurePlan:
    """Edit script from an original thread to its restructured view."""

    removals: tuple[tuple[str, str], ...]  # (duplicate, retained original)
    moves: tuple[tuple[str, Optional[str], Optional[str]], ...]  # (post, old parent, new parent)
    topic_roots: dict[str, str]


@dataclass(frozen=True)
class RestructureResult:
    thread: Thread
    plan: RestructurePlan
    before: MetricsReport
    after: MetricsReport


def remove_duplicates(thread: Thread, flags: DuplicateFlags) -> Thread:
    """Delete flagged posts; replies to a deleted post move to its original.

    A reply to a duplicate is semantically a reply to that content, which
    survives at the retained original, so children re-attach there rather
    than to the duplicate's parent.
    """
    validate_flags(thread, flags)
    removed = flags.originals
    for dup in removed:
        # Only possible under clock skew: re-attaching the duplicate's
        # children under an original inside its own subtree would loop.
        ancestor = thread.get(removed[dup]).parent_id
        while ancestor is not None:
            if ancestor == dup:
                raise InvalidFlagsError(
                    f"original '{removed[dup]}' lies inside the subtree of "
                    f"its duplicate '{dup}'"
                )
            ancestor = thread.get(ancestor).parent_id

    survivors = []
    for post in thread.posts:
        if post.id in removed:
            continue
        parent = post.parent_id
        if parent in removed:
            parent = removed[parent]
        duplicate_of = post.duplicate_of
        if duplicate_of in removed:
            duplicate_of = removed[duplicate_of]
        if parent != post.parent_id or duplicate_of != post.duplicate_of:
            post = Post(
                id=post.id,
                author=post.author,
                timestamp=post.timestamp,
                body=post.body,
                parent_id=parent,
                topic=post.topic,
                duplicate_of=duplicate_of,
            )
        survivors.append(post)
    return build_thread(survivors, thread_id=thread.thread_id)


def group_by_topic(thread: Thread, assignment: TopicAssignment) -> Thread:
    """Aggregate posts of the same topic into one first-level sub-thread each.

    Every post must carry a label (run after remove_duplicates; assignment
    entries for posts no longer in the thread are ignored). The output has
    exactly one first-level post per topic — its chronologically earliest
    post — and each topic's posts are contiguous in preorder.
    """
    if not thread.posts:
        return thread

    label_of: dict[str, str] = {}
    for post in thread.posts:
        label = assignment.label_of(post.id)
        if label is None:
            raise UnlabeledPostError(post.id)
        label_of[post.id] = label

    topic_roots: dict[str, str] = {}
    for post in thread.posts:  # chronological, so first sighting is earliest
        topic_roots.setdefault(label_of[post.id], post.id)
    root_ids = set(topic_roots.values())

    def new_parent(post: Post) -> Optional[str]:
        if post.id in root_ids:
            return None
        ancestor = post.parent_id
        while ancestor is not None:
            if label_of[ancestor] == label_of[post.id]:
                return ancestor
            ancestor = thread.get(ancestor).parent_id
        return topic_roots[label_of[post.id]]

    regrouped = []
    for post in thread.posts:
        parent = new_parent(post)
        if parent != post.parent_id:
            post = Post(
                id=post.id,
                author=post.author,
                timestamp=post.timestamp,
                body=post.body,
                parent_id=parent,
                topic=post.topic,
                duplicate_of=post.duplicate_of,
            )
        regrouped.append(post)
    return build_thread(regrouped, thread_id=thread.thread_id)


def restructure(
    thread: Thread,
    flags: DuplicateFlags,
    assignment: TopicAssignment,
) -> RestructureResult:
    """Full pipeline: remove duplicates, group by topic, report before/after.

    The before report measures the thread as given (duplicates in place);
    the after report measures the cleaned, regrouped thread, whose
    redundancy is 0 by construction.
    """
    before = metrics_report(thread, assignment or None, flags)
    deduped = remove_duplicates(thread, flags)
    surviving = assignment.restricted_to(post.id for post in deduped.posts)
    grouped = group_by_topic(deduped, surviving)
    after = metrics_report(grouped, surviving if surviving.by_post else None, DuplicateFlags())

    old_parent = {post.id: post.parent_id for post in thread.posts}
    moves = tuple(
        (post.id, old_parent[post.id], post.parent_id)
        for post in grouped.posts
        if post.parent_id != old_parent[post.id]
    )
    removals = tuple(
        (post.id, flags.original_of(post.id)) for post in thread.posts if post.id in flags
    )
    topic_roots = {
        label: rid
        for rid in grouped.roots
        if (label := surviving.label_of(rid)) is not None
    }
    plan = RestructurePlan(removals=removals, moves=moves, topic_roots=topic_roots)
    return RestructureResult(thread=grouped, plan=plan, before=before, after=after)


def plan_to_dict(plan: RestructurePlan) -> dict[str, Any]:
    return {
        "removals": [{"post": dup, "of": orig} for dup, orig in plan.removals],
        "moves": [
            {"post": pid, "old_parent": old, "new_parent": new}
            for pid, old, new in plan.moves
        ],
        "topic_roots": dict(plan.topic_roots),
    }
