"""Forbidden-configuration set families in the Kneser cube.

Subset families over [n] as bitmasks, detection of copies of small graphs
among pairwise-disjoint sets, the extremal constructions with exact sizes and
coefficients, exact audits of the good-set and equipartition inequalities,
and desk-scale solvers for vex(n, G), emb(n, G) and the fractional chromatic
number.
"""

from .coefficients import alpha, beta, beta_via_sum, table1
from .constructions import (
    ConstructionSpec,
    Kind,
    family_sm1,
    family_sm_t3,
    kleitman_a,
    kleitman_b,
    layer_size_formula,
    lemma22_family,
)
from .core import (
    Family,
    SetMask,
    binary_entropy,
    binom_partial_sum,
    complement,
    downward_closure,
    format_family,
    geometric_bound,
    parse_family,
    shadow,
    upward_closure,
)
from .freeness import (
    PatternGraph,
    Witness,
    audit_good,
    complete_multipartite,
    disjoint_tuple,
    find_copy,
    good_family,
    kneser_adjacent,
)
from .partitions import (
    PartitionType,
    audit_good_partition_count,
    audit_kleitman,
    count_ordered,
    rho_vector,
)
from .solver import (
    Homomorphism,
    SearchTimeout,
    blow_up,
    chi_f,
    emb,
    entropy_limit_report,
    shrink_injective,
    solve_vex,
)

__version__ = "0.1.0"

__all__ = [
    "alpha",
    "audit_good",
    "audit_good_partition_count",
    "audit_kleitman",
    "beta",
    "beta_via_sum",
    "binary_entropy",
    "binom_partial_sum",
    "blow_up",
    "chi_f",
    "complement",
    "complete_multipartite",
    "ConstructionSpec",
    "count_ordered",
    "disjoint_tuple",
    "downward_closure",
    "emb",
    "entropy_limit_report",
    "Family",
    "family_sm1",
    "family_sm_t3",
    "find_copy",
    "format_family",
    "geometric_bound",
    "good_family",
    "Homomorphism",
    "Kind",
    "kleitman_a",
    "kleitman_b",
    "kneser_adjacent",
    "layer_size_formula",
    "lemma22_family",
    "parse_family",
    "PartitionType",
    "PatternGraph",
    "rho_vector",
    "SearchTimeout",
    "SetMask",
    "shadow",
    "shrink_injective",
    "solve_vex",
    "table1",
    "upward_closure",
    "Witness",
]
