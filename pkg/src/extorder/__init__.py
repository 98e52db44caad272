"""Generalized external order of ordered matroids, with antimatroids and join-distributive lattices."""

from __future__ import annotations

from .activity import ActivityReport, TuttePolynomial, active_chain, activity_report, tutte
from .antimatroid import (
    Antimatroid,
    Clutter,
    RootedSet,
    SetFamily,
    Verdict,
    blocker,
    check_rooted_axioms,
    feasible_extensions,
    independents,
    rooted_circuits,
    rooted_cocircuits,
    trace,
    verify_antimatroid,
)
from .errors import (
    EmptyPassiveError,
    ExtOrderError,
    InternalConsistencyError,
    NotFeasibleError,
    NotIndependentError,
    NotJoinDistributiveError,
    NotMatroidalError,
    OverlapError,
    UndefinedInputError,
    ValidationError,
)
from .external_order import (
    ExternalOrder,
    boolean_partition,
    build,
    ext_rooted_circuits,
    flats_projection,
    internal_order,
    leq_ext,
    meet_join_ext,
    min_passive_lower_cover,
    upper_covers,
)
from .lattice import (
    JDLattice,
    LatticeClass,
    classify,
    confluent_ordering,
    element_sets,
    is_matroidal,
    lattice_from_antimatroid,
    lattice_from_covers,
    matroid_from_lattice,
    t_map,
    verify_join_distributive,
    verify_snelling,
)
from .matroid import (
    GroundOrder,
    Matroid,
    graphic_matroid,
    linear_matroid,
    matroid_from_bases,
    matroid_from_circuits,
    uniform_matroid,
)
from .minors import MinorSpec, anti_contract, anti_delete, correspondence_check, extending, greedoid_minor
from .wire import export_dot, export_json, export_spec, parse_spec
