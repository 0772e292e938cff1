"""Duplicate-post detection.

A later post is a duplicate when its content repeats an earlier post closely
enough that dropping it loses nothing. Human annotations (``duplicate_of`` on
the post) are taken at face value; for everything else we fall back to
lexical near-duplicate detection: word shingles compared with Jaccard
similarity. Similarity thresholds are a proxy, not a semantic judgment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from .errors import InvalidFlagsError, ThreadParseError
from .model import Thread

_WORD = re.compile(r"[a-z0-9_]+")


@dataclass(frozen=True)
class SimilarityConfig:
    """Knobs for lexical detection: shingle width and match threshold."""

    shingle_size: int = 3
    threshold: float = 0.8

    def __post_init__(self) -> None:
        if self.shingle_size < 1:
            raise ValueError(f"shingle_size must be >= 1, got {self.shingle_size}")
        if not 0 < self.threshold <= 1:
            raise ValueError(f"threshold must be in (0, 1], got {self.threshold}")


@dataclass(frozen=True)
class DuplicateFlags:
    """Map from each duplicate post to the earlier post it repeats.

    Originals are never themselves flagged (no chains), and every flagged
    post is strictly later than its original. ``scores`` holds the similarity
    that triggered each flag; None for human-annotated pairs.
    """

    originals: dict[str, str] = field(default_factory=dict)
    scores: dict[str, Optional[float]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.originals)

    def __contains__(self, post_id: str) -> bool:
        return post_id in self.originals

    def __iter__(self) -> Iterator[str]:
        return iter(self.originals)

    def original_of(self, post_id: str) -> str:
        return self.originals[post_id]


def normalize_text(body: str) -> list[str]:
    """Lowercased word tokens with punctuation stripped and whitespace collapsed."""
    return _WORD.findall(body.lower())


def normalize_and_shingle(body: str, k: int = 3) -> set[str]:
    """Set of k-word shingles after normalization.

    Texts shorter than k words collapse to a single shingle of all their
    words; empty text yields the empty set.
    """
    if k < 1:
        raise ValueError(f"shingle size must be >= 1, got {k}")
    words = normalize_text(body)
    if not words:
        return set()
    if len(words) <= k:
        return {" ".join(words)}
    return {" ".join(words[i : i + k]) for i in range(len(words) - k + 1)}


def jaccard(a: set[str], b: set[str]) -> float:
    """|a ∩ b| / |a ∪ b|; two empty sets count as identical (1.0)."""
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def detect_duplicates(thread: Thread, config: SimilarityConfig = SimilarityConfig()) -> DuplicateFlags:
    """Flag duplicate posts, honoring annotations and scoring the rest.

    Posts are visited chronologically. A post carrying a ``duplicate_of``
    annotation is flagged without scoring. Any other post is compared against
    every earlier post in chronological order; the first one scoring at or
    above the threshold marks it as a duplicate. Either way the flag is
    attributed to the retained original (annotation and detection chains are
    resolved), so flagged posts never serve as originals themselves.
    """
    originals: dict[str, str] = {}
    scores: dict[str, Optional[float]] = {}

    def resolve(post_id: str) -> str:
        while post_id in originals:
            post_id = originals[post_id]
        return post_id

    shingles = {
        post.id: normalize_and_shingle(post.body, config.shingle_size)
        for post in thread.posts
    }
    for i, post in enumerate(thread.posts):
        if post.duplicate_of is not None:
            originals[post.id] = resolve(post.duplicate_of)
            scores[post.id] = None
            continue
        for earlier in thread.posts[:i]:
            score = jaccard(shingles[earlier.id], shingles[post.id])
            if score >= config.threshold:
                originals[post.id] = resolve(earlier.id)
                scores[post.id] = score
                break
    return DuplicateFlags(originals=originals, scores=scores)


def validate_flags(thread: Thread, flags: DuplicateFlags) -> None:
    """Check flags against the thread; raise InvalidFlagsError on violation."""
    for dup, orig in flags.originals.items():
        if dup not in thread:
            raise InvalidFlagsError(f"flagged post '{dup}' is not in the thread")
        if orig not in thread:
            raise InvalidFlagsError(f"original post '{orig}' is not in the thread")
        if orig in flags.originals:
            raise InvalidFlagsError(
                f"original '{orig}' is itself flagged as a duplicate (chain)"
            )
        if not thread.get(orig).timestamp < thread.get(dup).timestamp:
            raise InvalidFlagsError(
                f"duplicate '{dup}' is not strictly later than its original '{orig}'"
            )


def flags_to_dict(flags: DuplicateFlags) -> dict[str, Any]:
    return {
        "duplicates": [
            {"post": dup, "of": orig, "score": flags.scores.get(dup)}
            for dup, orig in flags.originals.items()
        ]
    }


def flags_from_dict(data: Any) -> DuplicateFlags:
    if not isinstance(data, dict) or not isinstance(data.get("duplicates"), list):
        raise ThreadParseError("flags document: expected {'duplicates': [...]}")
    originals: dict[str, str] = {}
    scores: dict[str, Optional[float]] = {}
    for i, entry in enumerate(data["duplicates"]):
        if not isinstance(entry, dict) or "post" not in entry or "of" not in entry:
            raise ThreadParseError(f"duplicates[{i}]: expected keys 'post' and 'of'")
        originals[entry["post"]] = entry["of"]
        scores[entry["post"]] = entry.get("score")
    return DuplicateFlags(originals=originals, scores=scores)
