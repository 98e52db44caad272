"""The generalized external order of an ordered matroid."""

from __future__ import annotations

import threading

from .activity import active_chain, external_passive
from .antimatroid import Antimatroid, RootedSet, Verdict, feasible_from_circuits, sort_rooted, verify_antimatroid
from .bits import bits, fmt, is_subset, popcount, sorted_masks, submasks
from .errors import EmptyPassiveError, InternalConsistencyError, NotIndependentError
from .lattice import JDLattice, lattice_from_antimatroid
from .matroid import Matroid


def ext_rooted_circuits(m: Matroid) -> list[RootedSet]:
    return sort_rooted(RootedSet(c, m.order.min(c)) for c in m.enumerate("circuits"))


class ExternalOrder:
    """Independent sets of ``matroid`` ordered by inclusion of externally passive sets.

    The lattice is built on first use; the lattice element of ``I`` is the
    feasible set EP(I).
    """

    def __init__(self, matroid: Matroid, ep: dict[int, int], antimatroid: Antimatroid, verdict: Verdict, internal: bool = False) -> None:
        self.matroid = matroid
        self.ep_of = ep
        self.independent_of = {v: k for k, v in ep.items()}
        self.antimatroid = antimatroid
        self.verdict = verdict
        self.internal = internal
        self._lock = threading.Lock()
        self._lattice: JDLattice | None = None
        self._index: dict[int, int] | None = None

    @property
    def independents(self) -> list[int]:
        return sorted_masks(self.ep_of)

    @property
    def lattice(self) -> JDLattice:
        if self._lattice is None:
            with self._lock:
                if self._lattice is None:
                    lat = lattice_from_antimatroid(self.antimatroid)
                    self._index = {self.independent_of[f]: i for i, f in enumerate(lat.elements or ())}
                    self._lattice = lat
        return self._lattice

    @property
    def index(self) -> dict[int, int]:
        """Independent set -> lattice element index."""
        _ = self.lattice
        assert self._index is not None
        return self._index

    def ep(self, indep: int) -> int:
        try:
            return self.ep_of[indep]
        except KeyError:
            raise NotIndependentError(f"{fmt(indep)} is not independent") from None

    def ea(self, indep: int) -> int:
        return self.matroid.ground & ~indep & ~self.ep(indep)

    @property
    def minimum(self) -> int:
        return self.independent_of[0]

    @property
    def maximum(self) -> int:
        return self.independent_of[max(self.independent_of, key=popcount)]


def build(m: Matroid, *, internal: bool = False) -> ExternalOrder:
    """EP for every independent set, checked against the family rebuilt from rooted circuits."""
    ep = {i: external_passive(m, i) for i in m.enumerate("independents")}
    if len(set(ep.values())) != len(ep):
        raise InternalConsistencyError("EP is not injective on independent sets")
    feasible = sorted_masks(ep.values())
    rebuilt = feasible_from_circuits(ext_rooted_circuits(m), m.ground)
    if feasible != rebuilt:
        raise InternalConsistencyError(
            f"EP family {list(map(fmt, feasible))} differs from circuit reconstruction {list(map(fmt, rebuilt))}"
        )
    anti = Antimatroid(m.n, feasible, ground=m.ground, verify=False)
    verdict = verify_antimatroid(anti)
    if not verdict:
        raise InternalConsistencyError(f"externally passive sets do not form an antimatroid: {verdict}")
    return ExternalOrder(m, ep, anti, verdict, internal)


def internal_order(m: Matroid) -> ExternalOrder:
    return build(m.dual(), internal=True)


def _require(eo: ExternalOrder, *sets: int) -> None:
    for s in sets:
        if s not in eo.ep_of:
            raise NotIndependentError(f"{fmt(s)} is not independent")


def leq_ext(eo: ExternalOrder, i: int, j: int) -> bool:
    _require(eo, i, j)
    by_containment = is_subset(eo.ep(i), eo.ep(j))
    by_disjointness = not eo.ep(i) & j
    if by_containment != by_disjointness:
        raise InternalConsistencyError(f"order tests disagree on {fmt(i)}, {fmt(j)}")
    return by_containment


def upper_covers(eo: ExternalOrder, indep: int) -> list[tuple[int, int]]:
    """(a, J_a) for each a in I, where EP(J_a) = EP(I) + a."""
    _require(eo, indep)
    m = eo.matroid
    out = []
    for a in bits(indep):
        ch = active_chain(m, indep, a)
        j = indep & ~(1 << a)
        if ch:
            j |= 1 << m.order.max(ch)
        if eo.ep(j) != eo.ep(indep) | (1 << a):
            raise InternalConsistencyError(f"cover of {fmt(indep)} at {a + 1} has wrong passive set")
        out.append((a, j))
    lat = eo.lattice
    x = eo.index[indep]
    from_lattice = sorted((lat.natural_labels()[(x, y)], eo.independent_of[lat.elements[y]]) for y in lat.upc[x])  # type: ignore[index]
    if sorted(out) != from_lattice:
        raise InternalConsistencyError(f"covers of {fmt(indep)} disagree with the lattice")
    return out


def min_passive_lower_cover(eo: ExternalOrder, indep: int) -> int:
    _require(eo, indep)
    m = eo.matroid
    ep = eo.ep(indep)
    if not ep:
        raise EmptyPassiveError(f"{fmt(indep)} has no externally passive elements")
    x = m.order.min(ep)
    if not m.closure(indep) >> x & 1:
        j = indep | (1 << x)
    else:
        y = m.order.min(m.basic_circuit(indep, x))
        j = (indep & ~(1 << y)) | (1 << x)
    if eo.ep(j) != ep & ~(1 << x):
        raise InternalConsistencyError(f"lower cover of {fmt(indep)} has wrong passive set")
    return j


def meet_join_ext(eo: ExternalOrder, i: int, j: int) -> tuple[int, int]:
    _require(eo, i, j)
    m = eo.matroid
    meet = m.lex_max_basis(eo.ep(i) & eo.ep(j))
    join = m.lex_max_basis(eo.ep(i) | eo.ep(j))
    lat = eo.lattice
    xi, xj = eo.index[i], eo.index[j]
    if eo.index.get(meet) != lat.meet(xi, xj) or eo.index.get(join) != lat.join(xi, xj):
        raise InternalConsistencyError(f"meet/join formula disagrees with the lattice on {fmt(i)}, {fmt(j)}")
    return meet, join


def boolean_partition(eo: ExternalOrder) -> dict[int, int]:
    """Map each A to the unique independent I with I <= A <= I + EA(I); both partitions are verified."""
    m = eo.matroid
    ground = m.ground
    part: dict[int, int] = {}
    comp: dict[int, int] = {}
    for i in eo.independents:
        ea = eo.ea(i)
        for s in submasks(ea):
            a = i | s
            if a in part:
                raise InternalConsistencyError(f"{fmt(a)} lies in intervals of {fmt(part[a])} and {fmt(i)}")
            part[a] = i
        ep = eo.ep(i)
        for s in submasks(ground & ~i & ~ep):
            b = ep | s
            if b in comp:
                raise InternalConsistencyError(f"{fmt(b)} lies in two complementary intervals")
            comp[b] = i
    total = 1 << popcount(ground)
    if len(part) != total or len(comp) != total:
        raise InternalConsistencyError("interval partition does not cover the boolean lattice")
    return part


def flats_projection(eo: ExternalOrder) -> dict[int, int]:
    """I -> closure(I): surjective onto flats and order-reversing."""
    m = eo.matroid
    proj = {i: m.closure(i) for i in eo.independents}
    if set(proj.values()) != set(m.enumerate("flats")):
        raise InternalConsistencyError("closure map is not onto the flats")
    for i in eo.independents:
        for j in eo.independents:
            if is_subset(eo.ep(i), eo.ep(j)) and not is_subset(proj[j], proj[i]):
                raise InternalConsistencyError(f"closure map is not order-reversing on {fmt(i)}, {fmt(j)}")
    return proj

