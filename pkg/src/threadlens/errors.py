"""Exception types shared across the package."""


class ThreadLensError(Exception):
    """Base class for all threadlens errors."""


# -- thread construction ----------------------------------------------------

class DuplicateIdError(ThreadLensError):
    """Two posts share the same id."""


class UnknownParentError(ThreadLensError):
    """A post's parent_id does not resolve to any post in the thread."""


class CycleDetectedError(ThreadLensError):
    """Parent links form a cycle instead of a forest."""

    def __init__(self, ids):
        self.ids = tuple(sorted(ids))
        super().__init__(f"parent links form a cycle involving: {', '.join(self.ids)}")


class UnknownPostError(ThreadLensError):
    """An id does not name a post in the thread."""


class EmptySubThreadError(ThreadLensError):
    """Structural query on an empty thread or sub-thread."""


# -- codec ------------------------------------------------------------------

class ThreadParseError(ThreadLensError):
    """Input document does not match the canonical thread JSON schema."""


# -- metrics ----------------------------------------------------------------

class AllPostsDuplicatesError(ThreadLensError):
    """Every post is flagged as a duplicate; the redundancy ratio is undefined."""


class NotAPermutationError(ThreadLensError):
    """The two orderings are not permutations of the same id set."""


class EmptyTopicListError(ThreadLensError):
    """Topic-count input is empty."""


# -- topics -----------------------------------------------------------------

class NoLabelsPresentError(ThreadLensError):
    """No post in the thread carries a topic label."""


class EmptyThreadError(ThreadLensError):
    """Operation requires a non-empty thread."""


# -- dedup / restructure ----------------------------------------------------

class InvalidFlagsError(ThreadLensError):
    """Duplicate flags violate their invariants for the given thread."""


class UnlabeledPostError(ThreadLensError):
    """Topic grouping reached a post without a topic label."""

    def __init__(self, post_id):
        self.post_id = post_id
        super().__init__(f"post '{post_id}' has no topic label")
