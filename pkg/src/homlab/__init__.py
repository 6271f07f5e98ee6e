"""homlab: an exact homomorphism-counting laboratory.

Finite undirected graphs (loops allowed) and finite groups, with exact
enumeration of hom/epi/mono/iso sets, subobject and quotient
decompositions, independence certificates for count functions,
distinguishing-witness search, conjecture scanners, and cancellation
checks.  Every count is an arbitrary-precision integer; there is no
floating point anywhere.
"""

__version__ = "0.1.0"

# Bumped whenever counting semantics change; cached counts from other
# engine versions are invalidated on load.
ENGINE_VERSION = "homlab-1"

from .errors import (
    CapabilityError,
    FormatError,
    GroupAxiomError,
    HomLabError,
    VerificationError,
)
from .graphs import (
    EMPTY_GRAPH,
    Graph,
    build_graph,
    complete_graph,
    disjoint_union,
    graph_to_text,
    parse_graph,
    tensor_product,
)
from .groups import (
    CatalogEntry,
    FiniteGroup,
    alternating_group,
    catalog_groups,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    elementary_abelian_group,
    group_from_table,
    group_to_text,
    parse_group,
    symmetric_group,
    trivial_group,
)
from .morphisms import Morphism, identity_morphism
from .homsearch import (
    OrbitSpec,
    automorphisms,
    canonical_key,
    count_morphisms,
    enumerate_morphisms,
    epi_mono_factorize,
    has_morphism,
    hopfian_report,
    is_isomorphic,
    orbit_count,
    orbit_count_by_fixed_points,
)
from .factorization import (
    Poset,
    SubQuotEntry,
    build_poset,
    normal_subgroups,
    quotients,
    subobjects,
    verify_decomposition,
)
from .certificates import (
    CountMatrix,
    IndependenceVerdict,
    WitnessResult,
    algebraic_independence_check,
    cancellation_check,
    exact_rank,
    find_witness,
    hom_matrix,
    independence_check,
    verify_certificate,
    witness_partition,
)
from .group_analysis import (
    PairDeterminantReport,
    SpectrumReport,
    conjecture_scan,
    gcd_hom_count,
    pair_determinant,
    spectrum,
)
from .graph_analysis import (
    Profile,
    all_graphs,
    chromatic_polynomial,
    complete_family,
    degeneracy,
    degenerate_family,
    hom_to_family,
    lovasz_check,
    profile,
    tutte_polynomial,
    tutte_profile_equivalence,
)
