"""Skew inverse semigroup rings, groupoid convolution algebras, and exact
simplicity tests on desk-scale instances."""

from .scalars import ModCarrier, RationalCarrier, parse_carrier, CarrierError
from .spaces import Space, LcFun, atoms, ideal_of_open, open_of_ideal, SpaceError
from .semigroups import (
    InverseSemigroup,
    StructureError,
    verify_inverse_semigroup,
    semigroup_from_json,
    min_semilattice,
    cyclic_group,
    snake_semigroup,
    symmetric_inverse_monoid,
    subsemigroup_closure,
)
from .actions import (
    PartialAction,
    ActionError,
    verify_partial_action,
    action_from_json,
    munn_action,
    snake_action,
    canonical_action,
    AlgebraAction,
    induce_algebra_action,
    is_minimal,
    is_topologically_principal,
    is_topologically_free,
    lambda_set,
)
from .ring import (
    SkewRing,
    SkewElement,
    CapExceeded,
    tau,
    diagonal_embed,
    is_S_simple,
    is_diagonal_max_commutative,
    centralizer_of_diagonal,
    ideal_generated_by,
    exhaustive_ideal_scan,
    is_simple,
)
from .groupoids import (
    Groupoid,
    GroupoidError,
    verify_groupoid,
    groupoid_from_json,
    pair_groupoid,
    unit_groupoid,
    group_groupoid,
    SteinbergFun,
    convolve,
    compact_bisections,
    theta_of_bisections,
    SteinbergModel,
    groupoid_properties,
    steinberg_simplicity,
)

__version__ = "0.1.0"
