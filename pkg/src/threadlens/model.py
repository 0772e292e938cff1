"""Tree data model for threaded discussions.

A discussion is a forest of posts: first-level posts have no parent, every
other post replies to exactly one earlier post. Posts are kept in
chronological order (submission order breaks timestamp ties) and the derived
structure (children lists, depths, preorder traversal) is computed once at
construction time. Thread values are immutable after that and safe to share.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Iterator, Optional, Union

from .errors import (
    CycleDetectedError,
    DuplicateIdError,
    EmptySubThreadError,
    InvalidFlagsError,
    UnknownParentError,
    UnknownPostError,
)


@dataclass(frozen=True)
class Post:
    """One contribution to a discussion.

    ``parent_id`` is None for first-level posts. ``duplicate_of``, when set,
    names a post with a strictly earlier timestamp whose content this post
    repeats. ``timestamp`` must be timezone-aware; it is compared, never
    formatted, here (the codec owns the RFC 3339 surface form).
    """

    id: str
    author: str
    timestamp: datetime
    body: str
    parent_id: Optional[str] = None
    topic: Optional[str] = None
    duplicate_of: Optional[str] = None


class Thread:
    """Validated forest of posts with derived indexes.

    Construction validates the structure and raises on duplicate ids,
    unresolvable parents, cycles, and bad duplicate annotations. Non-fatal
    oddities (a post dated before its parent, an empty body) are recorded as
    warnings instead: real forum exports contain clock skew and blank posts,
    and no downstream computation requires fixing them.
    """

    def __init__(self, posts: Iterable[Post], thread_id: str = "") -> None:
        records = list(posts)
        self.thread_id = thread_id

        seen: set[str] = set()
        for post in records:
            if not post.id or not isinstance(post.id, str):
                raise UnknownPostError(f"post id must be a non-empty string, got {post.id!r}")
            if post.id in seen:
                raise DuplicateIdError(f"duplicate post id '{post.id}'")
            seen.add(post.id)

        by_id = {post.id: post for post in records}
        for post in records:
            if post.parent_id is not None and post.parent_id not in by_id:
                raise UnknownParentError(
                    f"post '{post.id}' replies to unknown post '{post.parent_id}'"
                )
            if post.duplicate_of is not None:
                original = by_id.get(post.duplicate_of)
                if original is None:
                    raise UnknownPostError(
                        f"post '{post.id}' is annotated as a duplicate of "
                        f"unknown post '{post.duplicate_of}'"
                    )
                if not original.timestamp < post.timestamp:
                    raise InvalidFlagsError(
                        f"post '{post.id}' is annotated as a duplicate of "
                        f"'{post.duplicate_of}', which is not strictly earlier"
                    )

        # Chronological storage order; Python's sort is stable, so posts with
        # equal timestamps keep their submission order.
        records.sort(key=lambda post: post.timestamp)
        self.posts: tuple[Post, ...] = tuple(records)
        self._by_id = {post.id: post for post in self.posts}
        self._position = {post.id: i for i, post in enumerate(self.posts)}

        children: dict[str, list[str]] = {post.id: [] for post in self.posts}
        roots: list[str] = []
        for post in self.posts:
            if post.parent_id is None:
                roots.append(post.id)
            else:
                children[post.parent_id].append(post.id)
        self.roots: tuple[str, ...] = tuple(roots)
        self.children: dict[str, tuple[str, ...]] = {
            pid: tuple(kids) for pid, kids in children.items()
        }

        # Every post must reach a first-level post via parent links; anything
        # unreachable from the roots sits on a cycle.
        depths: dict[str, int] = {}
        queue = deque((rid, 1) for rid in self.roots)
        while queue:
            pid, d = queue.popleft()
            depths[pid] = d
            for kid in self.children[pid]:
                queue.append((kid, d + 1))
        if len(depths) != len(self.posts):
            raise CycleDetectedError(pid for pid in self._by_id if pid not in depths)
        self.depths: dict[str, int] = depths

        order: list[str] = []
        stack = [rid for rid in reversed(self.roots)]
        while stack:
            pid = stack.pop()
            order.append(pid)
            stack.extend(reversed(self.children[pid]))
        self.dfs: tuple[str, ...] = tuple(order)
        self.dfs_index: dict[str, int] = {pid: i for i, pid in enumerate(order)}

        warnings: list[str] = []
        for post in self.posts:
            if post.parent_id is not None:
                parent = self._by_id[post.parent_id]
                if post.timestamp < parent.timestamp:
                    warnings.append(
                        f"timestamp_before_parent: post '{post.id}' is dated "
                        f"before its parent '{parent.id}'"
                    )
            if not post.body:
                warnings.append(f"empty_body: post '{post.id}' has an empty body")
        self.warnings: tuple[str, ...] = tuple(warnings)

    def __len__(self) -> int:
        return len(self.posts)

    def __contains__(self, post_id: str) -> bool:
        return post_id in self._by_id

    def __iter__(self) -> Iterator[Post]:
        return iter(self.posts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Thread):
            return NotImplemented
        return self.thread_id == other.thread_id and self.posts == other.posts

    def __repr__(self) -> str:
        return f"Thread({self.thread_id!r}, {len(self.posts)} posts)"

    def get(self, post_id: str) -> Post:
        try:
            return self._by_id[post_id]
        except KeyError:
            raise UnknownPostError(f"no post with id '{post_id}'") from None

    def position(self, post_id: str) -> int:
        """Index of the post in chronological storage order."""
        self.get(post_id)
        return self._position[post_id]


@dataclass(frozen=True)
class SubThread:
    """View over one post and all of its descendants."""

    thread: Thread
    root: str

    def __post_init__(self) -> None:
        self.thread.get(self.root)

    def member_ids(self) -> tuple[str, ...]:
        """Descendant closure of the root (inclusive), in preorder."""
        order: list[str] = []
        stack = [self.root]
        while stack:
            pid = stack.pop()
            order.append(pid)
            stack.extend(reversed(self.thread.children[pid]))
        return tuple(order)


def build_thread(records: Iterable[Post], thread_id: str = "") -> Thread:
    """Materialize and validate a thread from raw post records."""
    return Thread(records, thread_id=thread_id)


def depth(thread: Thread, post_id: str) -> int:
    """Nesting level of a post: 1 for first-level posts, parent depth + 1 below."""
    thread.get(post_id)
    return thread.depths[post_id]


def dfs_order(thread: Thread) -> list[str]:
    """Preorder traversal; roots and siblings visited in chronological order."""
    return list(thread.dfs)


def sub_thread(thread: Thread, root: str) -> SubThread:
    return SubThread(thread, root)


def max_depth(sub: Union[Thread, SubThread]) -> int:
    """Deepest nesting level. The root of a sub-thread counts as level 1; a
    whole thread is measured from a virtual root whose children are the
    first-level posts, so a flat thread has depth 1."""
    if isinstance(sub, Thread):
        if not sub.posts:
            raise EmptySubThreadError("empty thread has no depth")
        return max(sub.depths.values())
    base = sub.thread.depths[sub.root]
    return max(sub.thread.depths[pid] for pid in sub.member_ids()) - base + 1


def breadth(sub: Union[Thread, SubThread]) -> int:
    """Fan-out at the top: first-level post count for a whole thread, child
    count of the root for a sub-thread (0 for a leaf)."""
    if isinstance(sub, Thread):
        if not sub.posts:
            raise EmptySubThreadError("empty thread has no breadth")
        return len(sub.roots)
    return len(sub.thread.children[sub.root])
