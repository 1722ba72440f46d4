"""Distance and overlap between finite-group multiplication tables.

Core claims made executable here: two non-isomorphic group structures
on n elements keep their multiplication tables at Hamming distance at
least 2/9 * n^2 under every relabeling, and a group that does not embed
in a larger one agrees with it on at most 7/9 of products under every
injection.  The blr module provides the plurality self-correction that
underpins both: a map with pair agreement above 7/9 decodes to a true
homomorphism.
"""

from .groups import (
    ElementMap,
    GroupTable,
    InvalidTableError,
    TableFormatError,
    Violation,
    cyclic,
    direct_product,
    element_order,
    find_isomorphism,
    find_subgroup_embedding,
    heisenberg,
    parse_table,
    relabel,
    semidirect_product,
    serialize,
    validate,
)
from .catalog import CatalogEntry, all_of_order, by_name, entries
from .metric import (
    BoundVerdict,
    DistanceResult,
    OverlapResult,
    distance_under_map,
    agreement_under_injection,
    drapal_bound_check,
    min_distance_exact,
    min_distance_heuristic,
    overlap_exact,
    table_distance,
)
from .blr import (
    CorrectionReport,
    CorrectionVerdict,
    NoisyMap,
    corrupt,
    fact1_check,
    is_homomorphism,
    pair_agreement,
    plurality_decode,
    point_agreement,
    sampled_agreement,
)
from .embed import (
    OverlapWitness,
    RecoveredEmbedding,
    RecoveryOutcome,
    extend_partial_injection,
    partial_from_witness,
    recover_embedding,
    witness_from_injection,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "BoundVerdict",
    "CorrectionReport",
    "CorrectionVerdict",
    "DistanceResult",
    "ElementMap",
    "GroupTable",
    "InvalidTableError",
    "NoisyMap",
    "OverlapResult",
    "OverlapWitness",
    "RecoveredEmbedding",
    "RecoveryOutcome",
    "TableFormatError",
    "Violation",
    "agreement_under_injection",
    "all_of_order",
    "by_name",
    "corrupt",
    "cyclic",
    "direct_product",
    "distance_under_map",
    "drapal_bound_check",
    "element_order",
    "entries",
    "extend_partial_injection",
    "fact1_check",
    "find_isomorphism",
    "find_subgroup_embedding",
    "heisenberg",
    "is_homomorphism",
    "min_distance_exact",
    "min_distance_heuristic",
    "overlap_exact",
    "pair_agreement",
    "parse_table",
    "partial_from_witness",
    "plurality_decode",
    "point_agreement",
    "recover_embedding",
    "relabel",
    "sampled_agreement",
    "semidirect_product",
    "serialize",
    "table_distance",
    "validate",
    "witness_from_injection",
]
