"""Exact computations on colored partite hypergraphs, plus a small Ramsey-number search."""

from .core import (
    INVISIBLE,
    BlowupSpec,
    ColoredHypergraph,
    Complex,
    TotalColor,
    Vertex,
    build_blowup,
    induced_subcomplex,
    max_degree,
    neighborhood_complex,
    truncate,
)
from .counting import (
    EtaProfile,
    check_blowup_counts,
    check_density_floor,
    enumerate_test_blowups,
    extension_error,
    mean_extension_error,
    split_complex,
    verify_counting_inequality,
    verify_injective_bound,
)
from .density import (
    RegularityWitness,
    chain_rule_product,
    check_regularity,
    discrepancy,
    exceptional_edges,
    is_subdivision,
    relative_density,
)
from .documents import Document, parse_document, serialize_document
from .embedding import (
    PartitionwiseMap,
    conditional_extension_probability,
    count_embeddings,
    embedding_probability,
    embeds,
    find_embedding,
    injective_embedding_probability,
)
from .generate import ExperimentConfig, random_instance
from .pipeline import pipeline_demo
from .ramsey import (
    ColoringAssignment,
    RamseyResult,
    UniformHypergraph,
    exists_good_coloring,
    find_monochromatic_copy,
    partition_ambient,
    ramsey_number,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupSpec",
    "build_blowup",
    "chain_rule_product",
    "check_blowup_counts",
    "check_density_floor",
    "check_regularity",
    "ColoredHypergraph",
    "ColoringAssignment",
    "Complex",
    "conditional_extension_probability",
    "count_embeddings",
    "discrepancy",
    "Document",
    "embedding_probability",
    "embeds",
    "enumerate_test_blowups",
    "EtaProfile",
    "exceptional_edges",
    "exists_good_coloring",
    "ExperimentConfig",
    "extension_error",
    "find_embedding",
    "find_monochromatic_copy",
    "induced_subcomplex",
    "injective_embedding_probability",
    "INVISIBLE",
    "is_subdivision",
    "max_degree",
    "mean_extension_error",
    "neighborhood_complex",
    "parse_document",
    "partition_ambient",
    "PartitionwiseMap",
    "pipeline_demo",
    "ramsey_number",
    "RamseyResult",
    "random_instance",
    "RegularityWitness",
    "relative_density",
    "serialize_document",
    "split_complex",
    "TotalColor",
    "truncate",
    "UniformHypergraph",
    "verify_counting_inequality",
    "verify_injective_bound",
    "Vertex",
]
