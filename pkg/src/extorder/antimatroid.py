"""Antimatroids as families of feasible sets, with rooted circuits, cocircuits and blockers."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bits import bits, fmt, full, is_subset, popcount, sort_key, sorted_masks, submasks
from .errors import InternalConsistencyError, NotFeasibleError, ValidationError


@dataclass(frozen=True, order=True)
class RootedSet:
    set: int
    root: int

    def __post_init__(self) -> None:
        if not self.set >> self.root & 1:
            raise ValidationError(f"root {self.root + 1} is not in its set {fmt(self.set)}")

    @property
    def stem(self) -> int:
        return self.set & ~(1 << self.root)

    def key(self) -> tuple[int, int, int]:
        return (*sort_key(self.set), self.root)

    def __str__(self) -> str:
        return f"({fmt(self.set)}, {self.root + 1})"


def sort_rooted(rooted: Iterable[RootedSet]) -> list[RootedSet]:
    return sorted(set(rooted), key=RootedSet.key)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; falsy on failure, carrying a clause name and a witness."""

    ok: bool
    clause: str = ""
    witness: tuple = ()
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return f"violation of {self.clause}: {self.witness}"


class SetFamily:
    """A duplicate-free family of subsets of ``ground`` (a mask over ids ``0..n-1``)."""

    def __init__(self, n: int, members: Iterable[int], ground: int | None = None) -> None:
        self.n = n
        self.ground = full(n) if ground is None else ground
        self.members: tuple[int, ...] = tuple(sorted_masks(members))
        for m in self.members:
            if m & ~self.ground:
                raise ValidationError(f"member {fmt(m)} is not within the ground set {fmt(self.ground)}")
        self.member_set = frozenset(self.members)

    @property
    def ground_n(self) -> int:
        return popcount(self.ground)

    def __contains__(self, mask: int) -> bool:
        return mask in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.ground == other.ground and self.member_set == other.member_set

    def __hash__(self) -> int:
        return hash((self.ground, self.member_set))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(ground={fmt(self.ground)}, members=[{', '.join(fmt(m) for m in self.members)}])"

    def gamma(self, a: int) -> int:
        """Feasible extensions of ``a`` (no membership check)."""
        g = 0
        for x in bits(self.ground & ~a):
            if a | (1 << x) in self.member_set:
                g |= 1 << x
        return g

    def union(self) -> int:
        u = 0
        for m in self.members:
            u |= m
        return u


# --------------------------------------------------------------------------- verification


def verify_antimatroid(family: SetFamily) -> Verdict:
    """Check the three equivalent antimatroid formulations and require that they agree.

    (a) greedoid (accessible + exchange) with the interval property without upper bounds;
    (b) accessible and closed under unions;
    (c) contains the empty set and satisfies the antimatroid exchange axiom.
    """
    members = family.members
    fam = family.member_set
    gam = {x: family.gamma(x) for x in members}

    access = _accessibility(family)
    # (a)
    a_result = access
    if a_result.ok:
        for x in members:
            for y in members:
                if popcount(x) > popcount(y) and not (x & ~y) & gam[y]:
                    a_result = Verdict(False, "greedoid exchange", (fmt(x), fmt(y)))
                    break
                if x != y and is_subset(x, y) and gam[x] & ~y & ~gam[y]:
                    e = (gam[x] & ~y & ~gam[y]).bit_length() - 1
                    a_result = Verdict(False, "interval property without upper bounds", (fmt(x), fmt(y), e + 1))
                    break
            if not a_result.ok:
                break
    # (b)
    b_result = access
    if b_result.ok:
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                if x | y not in fam:
                    b_result = Verdict(False, "union-closed", (fmt(x), fmt(y)))
                    break
            if not b_result.ok:
                break
    # (c)
    if 0 not in fam:
        c_result = Verdict(False, "contains empty set", ())
    else:
        c_result = Verdict(True)
        for x in members:
            for y in members:
                if not is_subset(x, y) and not (x & ~y) & gam[y]:
                    c_result = Verdict(False, "antimatroid exchange", (fmt(x), fmt(y)))
                    break
            if not c_result.ok:
                break

    results = {"greedoid+interval": a_result, "accessible+union": b_result, "exchange": c_result}
    oks = {r.ok for r in results.values()}
    if len(oks) != 1:
        raise InternalConsistencyError(f"antimatroid formulations disagree: {results}")
    if a_result.ok:
        return Verdict(True, details={k: str(v) for k, v in results.items()})
    first = next(r for r in results.values() if not r.ok)
    return Verdict(False, first.clause, first.witness, details={k: str(v) for k, v in results.items()})


def _accessibility(family: SetFamily) -> Verdict:
    if not family.members:
        return Verdict(False, "nonempty", ())
    for x in family.members:
        if x and not any(x & ~(1 << e) in family.member_set for e in bits(x)):
            return Verdict(False, "accessibility", (fmt(x),))
    return Verdict(True)


def is_greedoid(family: SetFamily) -> bool:
    if not _accessibility(family):
        return False
    return all(
        (x & ~y) & family.gamma(y)
        for x in family.members
        for y in family.members
        if popcount(x) > popcount(y)
    )


# --------------------------------------------------------------------------- antimatroid


class Antimatroid(SetFamily):
    """Feasible-set family verified to be an antimatroid. Loops (elements in no feasible set) are allowed.

    Derived structures are computed once on first use under a lock; the
    object is otherwise immutable.
    """

    def __init__(self, n: int, members: Iterable[int], ground: int | None = None, *, verify: bool = True) -> None:
        super().__init__(n, members, ground)
        if verify:
            v = verify_antimatroid(self)
            if not v:
                raise ValidationError(f"not an antimatroid: {v}")
        self._lock = threading.RLock()
        self._cache: dict[str, object] = {}

    @classmethod
    def of(cls, family: SetFamily, *, verify: bool = True) -> Antimatroid:
        return cls(family.n, family.members, family.ground, verify=verify)

    def _memo(self, key: str, fn):
        if key in self._cache:
            return self._cache[key]
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    @property
    def loops(self) -> int:
        return self.ground & ~self.union()

    @property
    def top(self) -> int:
        return self.union()

    def gammas(self) -> dict[int, int]:
        return self._memo("gammas", lambda: {x: self.gamma(x) for x in self.members})  # type: ignore[return-value]

    def free_sets(self) -> frozenset[int]:
        return self._memo("free", lambda: frozenset(self.gammas().values()))  # type: ignore[return-value]

    def rooted_circuits(self) -> list[RootedSet]:
        return list(self._memo("circuits", lambda: _rooted_circuits(self)))  # type: ignore[arg-type]

    def rooted_cocircuits(self) -> list[RootedSet]:
        return list(self._memo("cocircuits", lambda: _rooted_cocircuits(self)))  # type: ignore[arg-type]


def trace(family: SetFamily, a: int) -> SetFamily:
    return SetFamily(family.n, {x & a for x in family.members}, ground=a & family.ground)


def feasible_extensions(family: SetFamily, a: int) -> int:
    if a not in family:
        raise NotFeasibleError(f"{fmt(a)} is not feasible")
    return family.gamma(a)


def free_sets_by_trace(family: SetFamily) -> list[int]:
    """Sets whose trace is the whole power set, grown upward from the empty set."""
    free = {0}
    frontier = [0]
    elems = list(bits(family.ground))
    while frontier:
        nxt = []
        for a in frontier:
            top = a.bit_length()
            for e in elems:
                if e < top:
                    continue
                c = a | (1 << e)
                if all(c & ~(1 << x) in free for x in bits(c)) and len({m & c for m in family.members}) == 1 << popcount(c):
                    free.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted_masks(free)


def independents(family: Antimatroid) -> list[int]:
    """Free sets, computed from traces and from feasible extensions; the two must agree."""
    by_trace = free_sets_by_trace(family)
    by_gamma = sorted_masks(family.free_sets())
    if by_trace != by_gamma:
        raise InternalConsistencyError(
            f"free sets by trace {list(map(fmt, by_trace))} != by extensions {list(map(fmt, by_gamma))}"
        )
    return by_gamma


def _rooted_circuits(family: Antimatroid) -> list[RootedSet]:
    free = family.free_sets()
    candidates = set()
    for s in free:
        for e in bits(family.ground & ~s):
            c = s | (1 << e)
            if c not in free and all(c & ~(1 << x) in free for x in bits(c)):
                candidates.add(c)
    out = []
    for c in candidates:
        seen = {m & c for m in family.members}
        missing = [s for s in submasks(c) if s not in seen]
        if len(missing) != 1 or popcount(missing[0]) != 1:
            raise InternalConsistencyError(f"circuit {fmt(c)} has no unique root (missing traces {missing})")
        out.append(RootedSet(c, missing[0].bit_length() - 1))
    return sort_rooted(out)


def _rooted_cocircuits(family: Antimatroid) -> list[RootedSet]:
    fam = family.member_set
    by_endpoint = []
    for x in family.members:
        ends = [e for e in bits(x) if x & ~(1 << e) in fam]
        if len(ends) == 1:
            by_endpoint.append(RootedSet(x, ends[0]))
    by_minimality = []
    for a in bits(family.ground):
        containing = [x for x in family.members if x >> a & 1]
        for x in containing:
            if not any(y != x and is_subset(y, x) for y in containing):
                by_minimality.append(RootedSet(x, a))
    r1, r2 = sort_rooted(by_endpoint), sort_rooted(by_minimality)
    if r1 != r2:
        raise InternalConsistencyError(f"cocircuits by endpoint {r1} != by minimality {r2}")
    return r1


def rooted_circuits(family: Antimatroid) -> list[RootedSet]:
    return family.rooted_circuits()


def rooted_cocircuits(family: Antimatroid) -> list[RootedSet]:
    return family.rooted_cocircuits()


# --------------------------------------------------------------------------- rooted axioms


def feasible_from_circuits(rooted: Iterable[RootedSet], ground: int) -> list[int]:
    """A is feasible iff no rooted circuit meets A in exactly its root."""
    rooted = list(rooted)
    out = []
    for a in submasks(ground):
        if all(r.set & a != 1 << r.root for r in rooted):
            out.append(a)
    return sorted_masks(out)


def feasible_from_cocircuits(rooted: Iterable[RootedSet]) -> list[int]:
    """Feasible sets are exactly the unions of cocircuits."""
    fam = {0}
    for d in {r.set for r in rooted}:
        fam |= {x | d for x in fam}
    return sorted_masks(fam)


def check_rooted_axioms(kind: str, rooted: Sequence[RootedSet], ground_n: int, *, ground: int | None = None) -> Verdict:
    """Check CI1/CI2 (kind="circuit") or CC1/CC2 (kind="cocircuit"); on success return the family."""
    g = full(ground_n) if ground is None else ground
    rooted = sort_rooted(rooted)
    for r in rooted:
        if r.set & ~g:
            return Verdict(False, "within ground", (str(r),))
    tag = "CI" if kind == "circuit" else "CC"
    if kind not in ("circuit", "cocircuit"):
        raise ValueError(f"unknown kind {kind!r}")
    for r1 in rooted:
        for r2 in rooted:
            if r1.root == r2.root and r2.set != r1.set and is_subset(r2.set, r1.set):
                return Verdict(False, f"{tag}1", (str(r1), str(r2)))
    if kind == "circuit":
        for r1 in rooted:
            for r2 in rooted:
                if r2.stem >> r1.root & 1:
                    bound = (r1.set | r2.set) & ~(1 << r1.root)
                    if not any(r3.root == r2.root and is_subset(r3.set, bound) for r3 in rooted):
                        return Verdict(False, "CI2", (str(r1), str(r2)))
        fam = feasible_from_circuits(rooted, g)
    else:
        for r1 in rooted:
            for a2 in bits(r1.stem):
                if not any(r2.root == a2 and is_subset(r2.set, r1.stem) for r2 in rooted):
                    return Verdict(False, "CC2", (str(r1), a2 + 1))
        fam = feasible_from_cocircuits(rooted)
    return Verdict(True, details={"family": fam, "ground": g})


# --------------------------------------------------------------------------- clutters and blockers


class Clutter:
    def __init__(self, ground_n: int, members: Iterable[int]) -> None:
        self.ground_n = ground_n
        self.members = tuple(sorted_masks(members))
        for a in self.members:
            for b in self.members:
                if a != b and is_subset(a, b):
                    raise ValidationError(f"not a clutter: {fmt(a)} is contained in {fmt(b)}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Clutter) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"Clutter([{', '.join(fmt(m) for m in self.members)}])"


def minimal_sets(sets: Iterable[int]) -> list[int]:
    sets = sorted_masks(sets)
    out: list[int] = []
    for s in sets:
        if not any(is_subset(t, s) for t in out):
            out.append(s)
    return out


def blocker(clutter: Clutter) -> Clutter:
    """Minimal transversals, built one member at a time (Berge's method)."""
    trans = [0]
    for u in clutter.members:
        nxt = set()
        for t in trans:
            if t & u:
                nxt.add(t)
            else:
                nxt.update(t | (1 << e) for e in bits(u))
        trans = minimal_sets(nxt)
    return Clutter(clutter.ground_n, trans)


def stems(rooted: Iterable[RootedSet], x: int) -> list[int]:
    return sorted_masks(r.stem for r in rooted if r.root == x)


def extending_elements(rooted: Iterable[RootedSet], ground: int) -> int:
    """Elements of ``ground`` that are the root of every rooted circuit containing them."""
    ext = ground
    for r in rooted:
        ext &= ~r.stem
    return ext


def extending_sequence(rooted: Iterable[RootedSet], target: int) -> list[int] | None:
    """Peel ``target`` by repeatedly deleting an extending element (smallest id first).

    Deleting an extending element keeps every other extending element extending,
    so a greedy choice never blocks; returns None when no extending element remains.
    """
    live = list(rooted)
    remaining = target
    seq: list[int] = []
    while remaining:
        ext = extending_elements(live, remaining)
        if not ext:
            return None
        a = (ext & -ext).bit_length() - 1
        seq.append(a)
        remaining &= ~(1 << a)
        live = [r for r in live if not r.set >> a & 1]
    return seq
