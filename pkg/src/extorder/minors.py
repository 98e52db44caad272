"""Antimatroid and greedoid minors, extending sets, and their matroid counterparts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .antimatroid import (
    Antimatroid,
    RootedSet,
    SetFamily,
    Verdict,
    extending_elements,
    extending_sequence,
    feasible_from_circuits,
    sort_rooted,
    trace,
)
from .bits import fmt, is_subset, sorted_masks
from .errors import InternalConsistencyError, OverlapError
from .external_order import build
from .matroid import Matroid


@dataclass(frozen=True)
class MinorSpec:
    delete: int = 0
    contract: int = 0

    def __post_init__(self) -> None:
        if self.delete & self.contract:
            raise OverlapError("deletion and contraction sets overlap")


def deletion_circuits(f: Antimatroid, a: int) -> list[RootedSet]:
    return [r for r in f.rooted_circuits() if not r.set & a]


def contraction_circuits(f: Antimatroid, a: int) -> list[RootedSet]:
    """min{(C - A, x) : x not in A}, minimal as unrooted sets; all roots of a minimal set are kept."""
    cand = {RootedSet(r.set & ~a, r.root) for r in f.rooted_circuits() if not a >> r.root & 1}
    sets = {r.set for r in cand}
    keep = {s for s in sets if not any(t != s and is_subset(t, s) for t in sets)}
    return sort_rooted(r for r in cand if r.set in keep)


def anti_delete(f: Antimatroid, a: int) -> Antimatroid:
    ground = f.ground & ~a
    fam = trace(f, ground)
    if sorted_masks(fam.members) != feasible_from_circuits(deletion_circuits(f, a), ground):
        raise InternalConsistencyError(f"deletion by {fmt(a)}: trace and circuit forms differ")
    return Antimatroid(f.n, fam.members, ground=ground)


def anti_contract(f: Antimatroid, a: int) -> Antimatroid:
    ground = f.ground & ~a
    members = [x for x in f.members if not x & a]
    if sorted_masks(members) != feasible_from_circuits(contraction_circuits(f, a), ground):
        raise InternalConsistencyError(f"contraction by {fmt(a)}: feasible-set and circuit forms differ")
    return Antimatroid(f.n, members, ground=ground)


def greedoid_minor(f: SetFamily, spec: MinorSpec) -> tuple[SetFamily, Verdict]:
    """Greedoid deletion of ``spec.delete`` followed by contraction of ``spec.contract``.

    Contraction by a non-feasible set is carried out anyway and reported in
    the verdict (the result then lacks the empty set).
    """
    ground = f.ground & ~spec.delete
    deleted = [x for x in f.members if not x & spec.delete]
    c = spec.contract
    verdict = Verdict(True)
    if c and c not in set(deleted):
        verdict = Verdict(False, "contraction set is feasible", (fmt(c),))
    members = [x & ~c for x in deleted if x & c == c]
    return SetFamily(f.n, members, ground=ground & ~c), verdict


@dataclass(frozen=True)
class Extending:
    elements: int
    circuits: tuple[RootedSet, ...] = field(repr=False)

    def is_extending_set(self, a: int) -> list[int] | None:
        return extending_sequence(self.circuits, a)


def extending(f: Antimatroid) -> Extending:
    circuits = tuple(f.rooted_circuits())
    return Extending(extending_elements(circuits, f.ground), circuits)


@dataclass
class CorrespondenceReport:
    """``checks`` are asserted; ``observations`` record claims that are known to fail in general."""

    subset: int
    feasible: bool
    extending: bool
    checks: dict[str, bool] = field(default_factory=dict)
    observations: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def correspondence_check(m: Matroid, a: int) -> CorrespondenceReport:
    """Compare antimatroid minors of F_ext(M) with external orders of matroid minors.

    Contraction by a feasible A matches F_ext(M / A) when every element of A is
    a feasible singleton; for other feasible sets the equality can fail (for
    example the set {1,2,4} on the 2 x 4 matrix fixture) and is only observed.
    """
    f = build(m).antimatroid
    dele = anti_delete(f, a)
    con = anti_contract(f, a)
    ext_del = build(m.delete(a)).antimatroid
    ext_con = build(m.contract(a)).antimatroid
    is_feasible = a in f
    is_ext = extending(f).is_extending_set(a) is not None
    checks = {
        "deletion equals external order of deletion": dele == ext_del,
        "sandwich lower": set(ext_con.members) <= set(con.members),
        "sandwich upper": set(con.members) <= set(ext_del.members),
    }
    observations: dict[str, bool] = {}
    if is_feasible:
        gcon, _ = greedoid_minor(f, MinorSpec(contract=a))
        checks["deletion equals greedoid contraction"] = set(dele.members) == set(gcon.members)
        key = "contraction equals external order of contraction"
        if is_subset(a, f.gamma(0)):
            checks[key] = con == ext_con
        else:
            observations[key] = con == ext_con
    if is_ext:
        gdel, _ = greedoid_minor(f, MinorSpec(delete=a))
        checks["contraction equals deletion"] = con == dele
        checks["contraction equals external order of deletion"] = con == ext_del
        checks["deletion equals greedoid deletion"] = set(dele.members) == set(gdel.members)
    return CorrespondenceReport(a, is_feasible, is_ext, checks, observations)
