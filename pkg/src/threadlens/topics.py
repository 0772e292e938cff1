"""Topic assignments: annotated labels first, keyword clustering as fallback.

Human labels (the ``topic`` field on posts) are authoritative whenever
present. For unlabeled threads, a deliberately simple baseline is provided:
single-link agglomerative clustering of term-frequency vectors under cosine
similarity. It exists so the restructuring pipeline can run end to end on
raw exports, not as a serious topic model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Any, Iterable, Mapping, Optional

from .dedup import normalize_text
from .errors import EmptyThreadError, NoLabelsPresentError, ThreadParseError
from .model import Thread

# Fixed and versioned here on purpose: clustering output must be reproducible
# across installs, so no external stopword list is consulted.
STOPWORDS = frozenset(
    """
    a about above after again all am an and any are as at be because been
    before being below between both but by can could did do does doing down
    during each few for from further had has have having he her here hers him
    his how i if in into is it its itself just me more most my no nor not of
    off on once only or other our ours out over own same she should so some
    such than that the their theirs them then there these they this those
    through to too under until up very was we were what when where which
    while who whom why will with would you your yours
    """.split()
)


@dataclass(frozen=True)
class TopicAssignment:
    """Mapping from post id to topic label, plus the posts left unlabeled."""

    by_post: Mapping[str, str] = field(default_factory=dict)
    unlabeled: tuple[str, ...] = ()

    @property
    def topic_set(self) -> frozenset[str]:
        return frozenset(self.by_post.values())

    def __len__(self) -> int:
        return len(self.by_post)

    def label_of(self, post_id: str) -> Optional[str]:
        return self.by_post.get(post_id)

    def restricted_to(self, ids: Iterable[str]) -> "TopicAssignment":
        keep = set(ids)
        return TopicAssignment(
            by_post={pid: label for pid, label in self.by_post.items() if pid in keep},
            unlabeled=tuple(pid for pid in self.unlabeled if pid in keep),
        )


def assignment_from_labels(thread: Thread) -> TopicAssignment:
    """Collect annotated topic labels; posts without one are reported, not guessed."""
    by_post = {post.id: post.topic for post in thread.posts if post.topic is not None}
    if not by_post:
        raise NoLabelsPresentError("no post in the thread carries a topic label")
    unlabeled = tuple(post.id for post in thread.posts if post.topic is None)
    return TopicAssignment(by_post=by_post, unlabeled=unlabeled)


def _term_counts(body: str) -> dict[str, int]:
    counts: dict[str, int] = {}
    for word in normalize_text(body):
        if word not in STOPWORDS:
            counts[word] = counts.get(word, 0) + 1
    return counts


def cosine_similarity(a: Mapping[str, int], b: Mapping[str, int]) -> float:
    """Cosine of two sparse term-frequency vectors; 0 if either is empty."""
    if not a or not b:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(count * b[term] for term, count in a.items() if term in b)
    norm_a = sqrt(sum(count * count for count in a.values()))
    norm_b = sqrt(sum(count * count for count in b.values()))
    return dot / (norm_a * norm_b)


def cluster_keywords(thread: Thread, link_threshold: float = 0.3) -> TopicAssignment:
    """Partition posts into topics by single-link clustering over TF cosine.

    Two posts link when their cosine similarity reaches ``link_threshold``;
    connected components become topics, labeled "C1", "C2", ... in order of
    their earliest member. Deterministic for a given thread.
    """
    if not 0 < link_threshold < 1:
        raise ValueError(f"link_threshold must be in (0, 1), got {link_threshold}")
    if not thread.posts:
        raise EmptyThreadError("cannot cluster an empty thread")

    vectors = [_term_counts(post.body) for post in thread.posts]
    n = len(vectors)
    component = list(range(n))

    def find(i: int) -> int:
        while component[i] != i:
            component[i] = component[component[i]]
            i = component[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if cosine_similarity(vectors[i], vectors[j]) >= link_threshold:
                root_i, root_j = find(i), find(j)
                if root_i != root_j:
                    component[root_j] = root_i

    labels: dict[int, str] = {}
    by_post: dict[str, str] = {}
    for i, post in enumerate(thread.posts):
        root = find(i)
        if root not in labels:
            labels[root] = f"C{len(labels) + 1}"
        by_post[post.id] = labels[root]
    return TopicAssignment(by_post=by_post)


def assignment_to_dict(assignment: TopicAssignment) -> dict[str, Any]:
    return {
        "topics": [
            {"post": pid, "topic": label} for pid, label in assignment.by_post.items()
        ]
    }


def assignment_from_dict(data: Any) -> TopicAssignment:
    if not isinstance(data, dict) or not isinstance(data.get("topics"), list):
        raise ThreadParseError("assignment document: expected {'topics': [...]}")
    by_post: dict[str, str] = {}
    for i, entry in enumerate(data["topics"]):
        if not isinstance(entry, dict) or "post" not in entry or "topic" not in entry:
            raise ThreadParseError(f"topics[{i}]: expected keys 'post' and 'topic'")
        by_post[entry["post"]] = entry["topic"]
    return TopicAssignment(by_post=by_post)
