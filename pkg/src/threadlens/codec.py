"""Canonical thread JSON: parsing and serialization.

The wire format is a single object::

    {"thread_id": "...", "posts": [{"id": ..., "parent_id": ..., "author": ...,
     "timestamp": ..., "body": ..., "topic": ..., "duplicate_of": ...}]}

Serialization emits posts in chronological order with keys in the order
above, UTF-8, full precision. Parsing is strict about shape and types and
names the offending field; semantic validation (cycles, dangling parents)
happens in the Thread constructor and surfaces as model errors, not parse
errors.
"""

from __future__ import annotations

import json
import re
from datetime import datetime, timedelta, timezone
from typing import Any

from .errors import ThreadParseError
from .model import Post, Thread, build_thread

_POST_KEYS = ("id", "parent_id", "author", "timestamp", "body", "topic", "duplicate_of")

_RFC3339 = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2})[Tt ](\d{2}):(\d{2}):(\d{2})(\.\d+)?"
    r"([Zz]|[+-]\d{2}:\d{2})$"
)


def parse_rfc3339(value: str) -> datetime:
    """Parse an RFC 3339 instant to an aware UTC datetime, second precision.

    Offsets are normalized to UTC and fractional seconds are truncated, so
    parsing is idempotent with respect to :func:`format_rfc3339`.
    """
    match = _RFC3339.match(value)
    if not match:
        raise ValueError(f"not an RFC 3339 instant: {value!r}")
    year, month, day, hour, minute, second = (int(match.group(i)) for i in range(1, 7))
    offset = match.group(8)
    if offset in ("Z", "z"):
        tz = timezone.utc
    else:
        sign = 1 if offset[0] == "+" else -1
        tz = timezone(sign * timedelta(hours=int(offset[1:3]), minutes=int(offset[4:6])))
    try:
        stamp = datetime(year, month, day, hour, minute, second, tzinfo=tz)
    except ValueError as exc:
        raise ValueError(f"not an RFC 3339 instant: {value!r} ({exc})") from None
    return stamp.astimezone(timezone.utc)


def format_rfc3339(stamp: datetime) -> str:
    return stamp.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _expect(value: Any, kind: type, where: str, optional: bool = False) -> Any:
    if optional and value is None:
        return None
    if not isinstance(value, kind):
        raise ThreadParseError(
            f"{where}: expected {kind.__name__}{' or null' if optional else ''}, "
            f"got {type(value).__name__}"
        )
    return value


def post_from_dict(data: Any, where: str = "post") -> Post:
    if not isinstance(data, dict):
        raise ThreadParseError(f"{where}: expected object, got {type(data).__name__}")
    unknown = set(data) - set(_POST_KEYS)
    if unknown:
        raise ThreadParseError(f"{where}: unknown keys {sorted(unknown)}")
    missing = [key for key in ("id", "author", "timestamp", "body") if key not in data]
    if missing:
        raise ThreadParseError(f"{where}: missing keys {missing}")
    raw_stamp = _expect(data["timestamp"], str, f"{where}.timestamp")
    try:
        stamp = parse_rfc3339(raw_stamp)
    except ValueError as exc:
        raise ThreadParseError(f"{where}.timestamp: {exc}") from None
    return Post(
        id=_expect(data["id"], str, f"{where}.id"),
        parent_id=_expect(data.get("parent_id"), str, f"{where}.parent_id", optional=True),
        author=_expect(data["author"], str, f"{where}.author"),
        timestamp=stamp,
        body=_expect(data["body"], str, f"{where}.body"),
        topic=_expect(data.get("topic"), str, f"{where}.topic", optional=True),
        duplicate_of=_expect(data.get("duplicate_of"), str, f"{where}.duplicate_of", optional=True),
    )


def post_to_dict(post: Post) -> dict[str, Any]:
    return {
        "id": post.id,
        "parent_id": post.parent_id,
        "author": post.author,
        "timestamp": format_rfc3339(post.timestamp),
        "body": post.body,
        "topic": post.topic,
        "duplicate_of": post.duplicate_of,
    }


def thread_from_dict(data: Any) -> Thread:
    if not isinstance(data, dict):
        raise ThreadParseError(f"document: expected object, got {type(data).__name__}")
    thread_id = _expect(data.get("thread_id", ""), str, "thread_id")
    raw_posts = _expect(data.get("posts"), list, "posts")
    posts = [post_from_dict(item, where=f"posts[{i}]") for i, item in enumerate(raw_posts)]
    return build_thread(posts, thread_id=thread_id)


def thread_to_dict(thread: Thread) -> dict[str, Any]:
    return {
        "thread_id": thread.thread_id,
        "posts": [post_to_dict(post) for post in thread.posts],
    }


def parse_thread(text: str) -> Thread:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ThreadParseError(f"invalid JSON: {exc}") from None
    return thread_from_dict(data)


def serialize_thread(thread: Thread) -> str:
    return json.dumps(thread_to_dict(thread), indent=2, ensure_ascii=False) + "\n"


def load_thread(path: Any) -> Thread:
    with open(path, encoding="utf-8") as handle:
        return parse_thread(handle.read())


def dump_thread(thread: Thread, path: Any) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_thread(thread))
