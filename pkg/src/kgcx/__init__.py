"""kgcx: complexity profiling for knowledge-graph link-prediction benchmarks.

Quantifies dataset difficulty along three axes: spectral class overlap
(cumulative spectral gradient over composite head||relation embeddings),
semantic relation statistics, and structural graph measures; then correlates
profiles against model-performance tables.
"""

__version__ = "0.1.0"

from .dataset import (  # noqa: F401
    KnowledgeGraph,
    SimpleGraph,
    directed_view,
    dump_jsonl,
    load_dataset,
    load_jsonl,
    undirected_view,
)
from .embeddings import (  # noqa: F401
    CompositeVector,
    EmbeddingTable,
    composite,
    fallback_embed,
    fallback_table,
    load_embeddings,
)
from .errors import (  # noqa: F401
    AnalysisError,
    ComputeError,
    ConvergenceError,
    IngestionError,
    KgcxError,
    MissingLabelError,
)
from .report import (  # noqa: F401
    build_report,
    load_performance,
    mean_performance,
    normalize_features,
    pearson,
)
from .semantic import (  # noqa: F401
    max_relation_diversity,
    relation_count,
    relation_entropy,
    semantic_profile,
)
from .spectral import (  # noqa: F401
    ClassPartition,
    ClassSamples,
    CsgConfig,
    CsgRecord,
    SpectralResult,
    build_similarity,
    compute_csg,
    csg,
    laplacian_spectrum,
    partition_by_tail,
    sample_class_vectors,
    sweep,
)
from .structural import StructuralConfig, StructuralProfile, structural_profile  # noqa: F401
