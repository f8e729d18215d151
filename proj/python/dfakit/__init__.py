"""Decoherence-free subalgebras of unital quantum channels.

A channel is held by its Kraus operators in the Heisenberg picture,
phi(x) = sum_i A_i^* x A_i. The central object is the subalgebra on which
phi is multiplicative, computed as the commutant of the products A_i A_j^*
and cross-checkable against the kernel of the dissipation form.
"""

from ._core import (
    AlgebraReport,
    ChannelFlags,
    KrausChannel,
    MatrixSubspace,
    ParseError,
    RangeProjector,
    RankPolicy,
    ReducedKraus,
    StinespringDilation,
    SubspaceComparison,
    algebra_closure,
    apply,
    choi_multiplicativity_check,
    commutant,
    compare_subspaces,
    contains,
    decoherence_free_algebra,
    dfa_oracle,
    dilation_kron,
    dissipation,
    equivalent_rep,
    fixed_point_algebra,
    format_channel,
    generator_products,
    ginibre,
    haar_unitary,
    inclusion_report,
    orthonormalize,
    parse_channel,
    random_channel,
    random_isometry,
    range_projector,
    read_channel,
    reduce_kraus,
    stinespring,
    validate,
    write_channel,
)

__all__ = [
    "AlgebraReport",
    "ChannelFlags",
    "KrausChannel",
    "MatrixSubspace",
    "ParseError",
    "RangeProjector",
    "RankPolicy",
    "ReducedKraus",
    "StinespringDilation",
    "SubspaceComparison",
    "algebra_closure",
    "apply",
    "choi_multiplicativity_check",
    "commutant",
    "compare_subspaces",
    "contains",
    "decoherence_free_algebra",
    "dfa_oracle",
    "dilation_kron",
    "dissipation",
    "equivalent_rep",
    "fixed_point_algebra",
    "format_channel",
    "generator_products",
    "ginibre",
    "haar_unitary",
    "inclusion_report",
    "orthonormalize",
    "parse_channel",
    "random_channel",
    "random_isometry",
    "range_projector",
    "read_channel",
    "reduce_kraus",
    "stinespring",
    "validate",
    "write_channel",
]

__version__ = "0.1.0"
