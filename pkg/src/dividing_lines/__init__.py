"""Dividing-line detection and certification for finite evaluation tables.

Detects and certifies order-property ladders, independence-property
shattering, strict-order chains, and empirical-measure stability of a
bounded real matrix, with witness certificates, converters between them,
a deterministic generator corpus, and convex sup-norm approximation of
limit columns.
"""

__version__ = "0.1.0"

from .backend import BACKEND_NAME
from .core import Epsilon, EvalTable, ThresholdPair, load_table, serialize, transpose
from .op import (
    AlternationWitness,
    LadderWitness,
    alternation_rank,
    iterated_means,
    max_ladder,
    stability_spectrum,
)
from .ip import ShatterWitness, ip_to_ladder, is_shattered, shattering_dimension
from .sop import (
    ChainWitness,
    PreorderMatrix,
    preorder_psi,
    sop_to_alternation,
    sop_witness,
    strict_chain,
)
from .talagrand import DkReport, almost_nip_scan, dk_count, shattered_tuple_fraction
from .classify import (
    ClassificationReport,
    ClassifyParams,
    ScanSummary,
    classify,
    dichotomy_scan,
    table_digest,
    validate_witness,
    witness_from_dict,
)
from .generators import (
    GeneratorConfig,
    cantor_example,
    full_pattern,
    generate,
    half_graph,
    random_table,
)
from .definability import ConvexApproximation, cesaro_column, mazur_approximate

__all__ = [
    "AlternationWitness",
    "BACKEND_NAME",
    "ChainWitness",
    "ClassificationReport",
    "ClassifyParams",
    "ConvexApproximation",
    "DkReport",
    "Epsilon",
    "EvalTable",
    "GeneratorConfig",
    "LadderWitness",
    "PreorderMatrix",
    "ScanSummary",
    "ShatterWitness",
    "ThresholdPair",
    "almost_nip_scan",
    "alternation_rank",
    "cantor_example",
    "cesaro_column",
    "classify",
    "dichotomy_scan",
    "dk_count",
    "full_pattern",
    "generate",
    "half_graph",
    "ip_to_ladder",
    "is_shattered",
    "iterated_means",
    "load_table",
    "max_ladder",
    "mazur_approximate",
    "preorder_psi",
    "random_table",
    "serialize",
    "shattered_tuple_fraction",
    "shattering_dimension",
    "sop_to_alternation",
    "sop_witness",
    "stability_spectrum",
    "strict_chain",
    "table_digest",
    "transpose",
    "validate_witness",
    "witness_from_dict",
]
