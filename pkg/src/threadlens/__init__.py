"""Metrics and restructuring for threaded discussions.

Model a discussion as a validated tree of posts, measure its redundancy,
topic dispersion, chronological coherence and degree of hierarchy, detect
duplicate posts, and rebuild the thread with duplicates removed and posts
grouped by topic.
"""

from .codec import (
    dump_thread,
    format_rfc3339,
    load_thread,
    parse_rfc3339,
    parse_thread,
    serialize_thread,
    thread_from_dict,
    thread_to_dict,
)
from .dedup import (
    DuplicateFlags,
    SimilarityConfig,
    detect_duplicates,
    flags_from_dict,
    flags_to_dict,
    jaccard,
    normalize_and_shingle,
    validate_flags,
)
from .errors import (
    AllPostsDuplicatesError,
    CycleDetectedError,
    DuplicateIdError,
    EmptySubThreadError,
    EmptyThreadError,
    EmptyTopicListError,
    InvalidFlagsError,
    NoLabelsPresentError,
    NotAPermutationError,
    ThreadLensError,
    ThreadParseError,
    UnknownParentError,
    UnknownPostError,
    UnlabeledPostError,
)
from .metrics import (
    HierarchyStats,
    MetricsReport,
    RedundancyStats,
    TopicStats,
    chronological_coherence,
    degree_of_hierarchy,
    hierarchical_reference,
    metrics_report,
    redundancy_factor,
    report_to_dict,
    topic_dispersion,
)
from .model import (
    Post,
    SubThread,
    Thread,
    breadth,
    build_thread,
    depth,
    dfs_order,
    max_depth,
    sub_thread,
)
from .restructure import (
    RestructurePlan,
    RestructureResult,
    group_by_topic,
    plan_to_dict,
    remove_duplicates,
    restructure,
)
from .topics import (
    STOPWORDS,
    TopicAssignment,
    assignment_from_dict,
    assignment_from_labels,
    assignment_to_dict,
    cluster_keywords,
)

__version__ = "0.1.0"
