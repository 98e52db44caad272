"""Join-distributive lattices: presentation, the T map, classification and S_n EL-labelings."""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from .antimatroid import Antimatroid, Verdict, extending_sequence
from .bits import bits, fmt, full, is_subset, mask_of, popcount, sort_key
from .errors import InternalConsistencyError, NotJoinDistributiveError, NotMatroidalError, ValidationError
from .matroid import GroundOrder, Matroid, matroid_from_bases


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _high(mask: int) -> int:
    return mask.bit_length() - 1


class JDLattice:
    """A finite lattice given by its Hasse diagram, indexed along a linear extension.

    ``up[i]`` / ``down[i]`` are bitmasks over indices of the principal filter and
    ideal, so joins are the lowest common upper bound and meets the highest
    common lower bound.  Elements may carry feasible sets (``elements``).
    """

    def __init__(
        self,
        upper: Sequence[Sequence[int]],
        *,
        names: Sequence[str] | None = None,
        elements: Sequence[int] | None = None,
        mi_labels: dict[int, int] | None = None,
        n: int | None = None,
        source: Antimatroid | None = None,
        validate: bool = True,
    ) -> None:
        size = len(upper)
        if size == 0:
            raise ValidationError("a lattice needs at least one element")
        self.size = size
        self.upc: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(set(u))) for u in upper)
        low: list[list[int]] = [[] for _ in range(size)]
        for i, ups in enumerate(self.upc):
            for j in ups:
                if not i < j < size:
                    raise ValidationError(f"cover {i} -> {j} does not follow the index order")
                low[j].append(i)
        self.lowc: tuple[tuple[int, ...], ...] = tuple(tuple(v) for v in low)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(size))
        self.elements = tuple(elements) if elements is not None else None
        self.source = source
        up = [0] * size
        for i in reversed(range(size)):
            m = 1 << i
            for j in self.upc[i]:
                m |= up[j]
            up[i] = m
        down = [0] * size
        for i in range(size):
            m = 1 << i
            for j in self.lowc[i]:
                m |= down[j]
            down[i] = m
        self.up, self.down = up, down
        if validate:
            self._validate()
        self.bottom, self.top = 0, size - 1
        self.meet_irreducibles: tuple[int, ...] = tuple(i for i in range(size) if len(self.upc[i]) == 1)
        if mi_labels is None:
            if elements is not None:
                mi_labels = {y: _low(self.elements[self.upc[y][0]] & ~self.elements[y]) for y in self.meet_irreducibles}
            else:
                mi_labels = {y: k for k, y in enumerate(self.meet_irreducibles)}
        if set(mi_labels) != set(self.meet_irreducibles):
            raise ValidationError("labels must be given for exactly the meet-irreducible elements")
        if len(set(mi_labels.values())) != len(mi_labels):
            raise ValidationError("meet-irreducible labels must be distinct")
        self.mi_labels = dict(mi_labels)
        self.n = n if n is not None else max(self.mi_labels.values(), default=-1) + 1
        self.ground = mask_of(self.mi_labels.values())
        if self.ground & ~full(self.n):
            raise ValidationError("meet-irreducible label outside the element range")
        self._lock = threading.RLock()
        self._cache: dict[str, object] = {}

    def _validate(self) -> None:
        size = self.size
        if sum(1 for i in range(size) if not self.lowc[i]) != 1 or sum(1 for i in range(size) if not self.upc[i]) != 1:
            raise ValidationError("a lattice needs a unique bottom and a unique top")
        for i in range(size):
            for j in self.upc[i]:
                if any(c != j and self.up[c] >> j & 1 for c in self.upc[i]):
                    raise ValidationError(f"edge {self.names[i]} -> {self.names[j]} is not a cover")
        for i in range(size):
            for j in range(i + 1, size):
                common = self.up[i] & self.up[j]
                if common & ~self.up[_low(common)]:
                    raise ValidationError(f"{self.names[i]} and {self.names[j]} have no least upper bound")
                common = self.down[i] & self.down[j]
                if common & ~self.down[_high(common)]:
                    raise ValidationError(f"{self.names[i]} and {self.names[j]} have no greatest lower bound")

    def _memo(self, key: str, fn):
        if key in self._cache:
            return self._cache[key]
        with self._lock:
            if key not in self._cache:
                self._cache[key] = fn()
            return self._cache[key]

    # -- order structure
    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def join(self, i: int, j: int) -> int:
        return _low(self.up[i] & self.up[j])

    def meet(self, i: int, j: int) -> int:
        return _high(self.down[i] & self.down[j])

    def meet_all(self, idx: Iterable[int]) -> int:
        m = full(self.size)
        for i in idx:
            m &= self.down[i]
        return _high(m)

    def join_all(self, idx: Iterable[int]) -> int:
        m = full(self.size)
        for i in idx:
            m &= self.up[i]
        return _low(m)

    def meet_table(self) -> list[list[int]]:
        return self._memo("meet_table", lambda: [[self.meet(i, j) for j in range(self.size)] for i in range(self.size)])  # type: ignore[return-value]

    def join_table(self) -> list[list[int]]:
        return self._memo("join_table", lambda: [[self.join(i, j) for j in range(self.size)] for i in range(self.size)])  # type: ignore[return-value]

    @property
    def cover_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in self.upc[i]]

    def rcov(self, i: int) -> int:
        return len(self.upc[i])

    # -- T map and natural labels
    def t_sets(self) -> tuple[int, ...]:
        def build() -> tuple[int, ...]:
            mis = [(y, 1 << self.mi_labels[y]) for y in self.meet_irreducibles]
            return tuple(sum(b for y, b in mis if not self.up[x] >> y & 1) for x in range(self.size))

        return self._memo("t", build)  # type: ignore[return-value]

    def T(self, i: int) -> int:
        return self.t_sets()[i]

    def edge_label(self, lo: int, hi: int) -> int | None:
        """Natural label of a cover edge, or None when T does not grow by exactly one element."""
        d = self.T(hi) & ~self.T(lo)
        if popcount(d) != 1 or self.T(lo) & ~self.T(hi):
            return None
        return _low(d)

    def natural_labels(self) -> dict[tuple[int, int], int]:
        def build() -> dict[tuple[int, int], int]:
            out = {}
            for lo, hi in self.cover_edges:
                lab = self.edge_label(lo, hi)
                if lab is None:
                    raise NotJoinDistributiveError(f"edge {self.names[lo]} -> {self.names[hi]} has no natural label")
                out[(lo, hi)] = lab
            return out

        return self._memo("labels", build)  # type: ignore[return-value]

    def I(self, i: int) -> int:
        labels = self.natural_labels()
        return mask_of(labels[(i, j)] for j in self.upc[i])

    def J(self, i: int) -> int:
        labels = self.natural_labels()
        return mask_of(labels[(j, i)] for j in self.lowc[i])

    def index_of_independent(self) -> dict[int, int]:
        return self._memo("iindex", lambda: {self.I(i): i for i in range(self.size)})  # type: ignore[return-value]

    def x_of(self, a: int) -> int:
        """Meet of x_I over independent I inside ``a`` (x_I is the element with I(x_I) = I)."""
        return self.meet_all(i for s, i in self.index_of_independent().items() if is_subset(s, a))

    def label(self, i: int) -> str:
        return self.names[i]

    def __repr__(self) -> str:
        return f"JDLattice(size={self.size}, edges={len(self.cover_edges)}, meet_irreducibles={len(self.meet_irreducibles)})"


# --------------------------------------------------------------------------- construction


def lattice_from_antimatroid(f: Antimatroid) -> JDLattice:
    """Inclusion order on feasible sets; covers add one feasible extension, joins are unions."""
    members = list(f.members)
    index = {m: i for i, m in enumerate(members)}
    upper = [[index[m | (1 << e)] for e in bits(f.gamma(m))] for m in members]
    names = [fmt(m) for m in members]
    return JDLattice(upper, names=names, elements=members, n=f.n, source=f, validate=False)


def lattice_from_covers(
    names: Sequence[str],
    covers: Iterable[tuple[int, int]],
    mi_labels: dict[int, int] | None = None,
    n: int | None = None,
) -> JDLattice:
    """Abstract lattice from a Hasse diagram over ``names``; reindexed along a linear extension.

    ``mi_labels`` maps original indices of meet-irreducibles to element-ids.
    """
    size = len(names)
    succ: list[set[int]] = [set() for _ in range(size)]
    indeg = [0] * size
    for a, b in covers:
        if not (0 <= a < size and 0 <= b < size) or a == b:
            raise ValidationError(f"bad cover edge ({a}, {b})")
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    order: list[int] = []
    ready = sorted(i for i in range(size) if indeg[i] == 0)
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in sorted(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
        ready.sort()
    if len(order) != size:
        raise ValidationError("cover relation has a cycle")
    pos = {v: k for k, v in enumerate(order)}
    upper = [[pos[w] for w in succ[v]] for v in order]
    labels = None if mi_labels is None else {pos[v]: e for v, e in mi_labels.items()}
    return JDLattice(upper, names=[names[v] for v in order], mi_labels=labels, n=n)


def t_map(lat: JDLattice) -> Antimatroid:
    """Antimatroid of the sets T(x) over the meet-irreducible labels."""
    v = verify_join_distributive(lat)
    if not v:
        raise NotJoinDistributiveError(f"not join-distributive: {v}")
    return Antimatroid(lat.n, lat.t_sets(), ground=lat.ground)


def element_sets(lat: JDLattice, i: int) -> dict[str, int]:
    return {"T": lat.T(i), "I": lat.I(i), "J": lat.J(i)}


# --------------------------------------------------------------------------- join-distributivity


def _semimodular_msd(lat: JDLattice) -> Verdict:
    for z in range(lat.size):
        for a, b in itertools.combinations(lat.upc[z], 2):
            j = lat.join(a, b)
            if j not in lat.upc[a] or j not in lat.upc[b]:
                return Verdict(False, "semimodular", (lat.names[a], lat.names[b]))
    for x in range(lat.size):
        groups: dict[int, int] = {}
        for y in range(lat.size):
            u = lat.meet(x, y)
            groups[u] = groups.get(u, full(lat.size)) & lat.up[y]
        for u, ups in groups.items():
            if lat.meet(x, _low(ups)) != u:
                return Verdict(False, "meet-semidistributive", (lat.names[x], lat.names[u]))
    return Verdict(True)


def _unique_meet_decompositions(lat: JDLattice) -> Verdict:
    mis = lat.meet_irreducibles
    for x in range(lat.size):
        above = [y for y in mis if lat.up[x] >> y & 1]
        k = len(above)
        pre = [full(lat.size)] * (k + 1)
        for i, y in enumerate(above):
            pre[i + 1] = pre[i] & lat.down[y]
        suf = [full(lat.size)] * (k + 1)
        for i in reversed(range(k)):
            suf[i] = suf[i + 1] & lat.down[above[i]]
        essential = [above[i] for i in range(k) if _high(pre[i] & suf[i + 1]) != x]
        if lat.meet_all(essential) != x:
            return Verdict(False, "unique irredundant meet decomposition", (lat.names[x],))
    return Verdict(True)


def _boolean_intervals(lat: JDLattice) -> Verdict:
    for x in range(lat.size):
        covers = lat.upc[x]
        k = len(covers)
        top = lat.join_all(covers) if covers else x
        interval = lat.up[x] & lat.down[top]
        if popcount(interval) != 1 << k:
            return Verdict(False, "boolean interval [x, j(x)]", (lat.names[x],))
        seen = set()
        for r in range(k + 1):
            for sub in itertools.combinations(range(k), r):
                j = lat.join_all([covers[i] for i in sub]) if sub else x
                if any(lat.leq(covers[i], j) for i in range(k) if i not in sub):
                    return Verdict(False, "boolean interval [x, j(x)]", (lat.names[x],))
                seen.add(j)
        if len(seen) != 1 << k:
            return Verdict(False, "boolean interval [x, j(x)]", (lat.names[x],))
    return Verdict(True)


def _chain_lengths(lat: JDLattice) -> Verdict:
    lo = [0] * lat.size
    hi = [0] * lat.size
    for i in range(1, lat.size):
        lo[i] = min(lo[j] for j in lat.lowc[i]) + 1
        hi[i] = max(hi[j] for j in lat.lowc[i]) + 1
    m = len(lat.meet_irreducibles)
    if lo[lat.top] != m or hi[lat.top] != m:
        return Verdict(False, "maximal chain length = |MeetIrr|", (lo[lat.top], hi[lat.top], m))
    return Verdict(True)


def verify_join_distributive(lat: JDLattice) -> Verdict:
    """Four equivalent characterizations; they must agree."""

    def compute() -> Verdict:
        results = {
            "semimodular+meet-semidistributive": _semimodular_msd(lat),
            "unique irredundant meet decompositions": _unique_meet_decompositions(lat),
            "boolean [x, j(x)]": _boolean_intervals(lat),
            "chain length": _chain_lengths(lat),
        }
        oks = {r.ok for r in results.values()}
        if len(oks) != 1:
            raise InternalConsistencyError(f"join-distributivity conditions disagree: { {k: str(v) for k, v in results.items()} }")
        details = {k: str(v) for k, v in results.items()}
        if all(oks):
            return Verdict(True, details=details)
        first = next(r for r in results.values() if not r.ok)
        return Verdict(False, first.clause, first.witness, details)

    return lat._memo("jd", compute)


# --------------------------------------------------------------------------- matroidal lattices


def is_matroidal(lat: JDLattice) -> Verdict:
    """rcov decreasing along the order and satisfying the semimodular inequality."""
    rc = [lat.rcov(i) for i in range(lat.size)]
    table = {lat.names[i]: rc[i] for i in range(lat.size)}
    for lo, hi in lat.cover_edges:
        if rc[lo] < rc[hi]:
            return Verdict(False, "rcov decreasing", (lat.names[lo], lat.names[hi]), {"rcov": table})
    for i in range(lat.size):
        for j in range(i + 1, lat.size):
            if rc[lat.meet(i, j)] + rc[lat.join(i, j)] > rc[i] + rc[j]:
                return Verdict(False, "semimodular inequality", (lat.names[i], lat.names[j]), {"rcov": table})
    return Verdict(True, details={"rcov": table})


def lattice_independents(lat: JDLattice) -> list[int]:
    return sorted({lat.I(i) for i in range(lat.size)}, key=sort_key)


def satisfies_matroid_exchange(sets: Iterable[int]) -> bool:
    fam = set(sets)
    if 0 not in fam:
        return False
    for a in fam:
        if any(a & ~(1 << e) not in fam for e in bits(a)):
            return False
    for a in fam:
        for b in fam:
            if popcount(a) < popcount(b) and not any(a | (1 << e) in fam for e in bits(b & ~a)):
                return False
    return True


def matroid_from_lattice(lat: JDLattice) -> Matroid:
    v = is_matroidal(lat)
    if not v:
        raise NotMatroidalError(f"lattice is not matroidal: {v}")
    indep = lattice_independents(lat)
    r = max(popcount(a) for a in indep)
    return matroid_from_bases(lat.n, [a for a in indep if popcount(a) == r])


# --------------------------------------------------------------------------- confluence and EL-labelings


def confluent_ordering(f: Antimatroid) -> GroundOrder | None:
    """A ground order making every rooted-circuit root the circuit maximum, or None.

    Elements are placed last-first by repeated deletion of an extending element.
    """
    circuits = f.rooted_circuits()
    seq = extending_sequence(circuits, f.ground)
    if seq is None:
        return None
    outside = [e for e in range(f.n) if not f.ground >> e & 1]
    order = GroundOrder(tuple(outside + seq[::-1]))
    for c in circuits:
        if order.max(c.set) != c.root:
            raise InternalConsistencyError(f"greedy order {order.permutation} fails on circuit {c}")
    return order


def is_snelling(lat: JDLattice, labels: dict[tuple[int, int], int]) -> Verdict:
    """EL-labeling test whose maximal chains carry permutations.

    For each interval [x, y]: exactly one increasing maximal chain, and it is
    the unique lexicographically least chain.
    """
    universe: int | None = None
    reach: list[set[int]] = [set() for _ in range(lat.size)]
    reach[lat.bottom] = {0}
    for z in range(lat.size):
        for c in lat.upc[z]:
            b = 1 << labels[(z, c)]
            for m in reach[z]:
                if m & b:
                    return Verdict(False, "chain labels form a permutation", (lat.names[z], lat.names[c]))
                reach[c].add(m | b)
    if len(reach[lat.top]) != 1:
        return Verdict(False, "chain labels form a permutation", (lat.names[lat.top],))
    universe = next(iter(reach[lat.top]))
    if popcount(universe) != len(lat.meet_irreducibles):
        return Verdict(False, "chain labels form a permutation", ("label count",))
    for y in range(lat.size):
        inc: dict[int, dict[int, int]] = {y: {1 << 62: 1}}
        best: dict[int, tuple[tuple[int, ...], int]] = {y: ((), 1)}
        for w in sorted(bits(lat.down[y] & ~(1 << y)), reverse=True):
            counts: dict[int, int] = {}
            cand: list[tuple[tuple[int, ...], int]] = []
            for c in lat.upc[w]:
                if not lat.down[y] >> c & 1:
                    continue
                lab = labels[(w, c)]
                total = sum(cnt for first, cnt in inc[c].items() if lab < first)
                if total:
                    counts[lab] = counts.get(lab, 0) + total
                seq, ties = best[c]
                cand.append(((lab, *seq), ties))
            inc[w] = counts
            low_seq = min(s for s, _ in cand)
            best[w] = (low_seq, sum(t for s, t in cand if s == low_seq))
            n_inc = sum(counts.values())
            seq, ties = best[w]
            if n_inc != 1:
                return Verdict(False, "unique increasing chain", (lat.names[w], lat.names[y]), {"increasing": n_inc})
            if ties != 1 or any(a >= b for a, b in zip(seq, seq[1:])):
                return Verdict(False, "increasing chain is lex-least", (lat.names[w], lat.names[y]))
    return Verdict(True)


def verify_snelling(lat: JDLattice, order: GroundOrder) -> Verdict:
    labels = {e: order.position(l) for e, l in lat.natural_labels().items()}
    return is_snelling(lat, labels)


def snelling_labelings(lat: JDLattice, limit: int = 12) -> list[dict[tuple[int, int], int]]:
    """Every S_n EL-labeling with labels 0..h-1, found by exhaustive backtracking.

    Prunes with the facts that all chains into an element use the same label
    set and that labels along a chain are distinct.
    """
    if lat.size > limit:
        raise ValueError(f"exhaustive search is capped at {limit} elements")
    h = len(lat.meet_irreducibles)
    edges = sorted(lat.cover_edges, key=lambda e: (e[1], e[0]))
    found: list[dict[tuple[int, int], int]] = []
    labels: dict[tuple[int, int], int] = {}
    sets: list[int | None] = [None] * lat.size
    sets[lat.bottom] = 0

    def rec(k: int) -> None:
        if k == len(edges):
            if is_snelling(lat, labels):
                found.append(dict(labels))
            return
        lo, hi = edges[k]
        base = sets[lo]
        assert base is not None
        prev = sets[hi]
        for lab in range(h):
            if base >> lab & 1:
                continue
            s = base | (1 << lab)
            if prev is not None and prev != s:
                continue
            labels[(lo, hi)] = lab
            sets[hi] = s
            rec(k + 1)
            sets[hi] = prev
        labels.pop((lo, hi), None)

    rec(0)
    return found


def natural_relabeling(lat: JDLattice, labels: dict[tuple[int, int], int]) -> dict[int, int] | None:
    """A bijection p with labels[e] = p[natural(e)] for every edge, or None."""
    nat = lat.natural_labels()
    p: dict[int, int] = {}
    for e, lab in labels.items():
        if p.setdefault(nat[e], lab) != lab:
            return None
    if len(set(p.values())) != len(p):
        return None
    return p


# --------------------------------------------------------------------------- classification


@dataclass(frozen=True)
class LatticeClass:
    join_distributive: bool
    matroidal: bool
    confluent: bool
    classification: str
    order: tuple[int, ...] | None = None

    def as_dict(self) -> dict[str, object]:
        return {
            "classification": self.classification,
            "join_distributive": self.join_distributive,
            "matroidal": self.matroidal,
            "confluent": self.confluent,
            "confluent_order": None if self.order is None else [e + 1 for e in self.order],
        }


def classify(lat: JDLattice) -> LatticeClass:
    if not verify_join_distributive(lat):
        return LatticeClass(False, False, False, "not-JD")
    matroidal = bool(is_matroidal(lat))
    order = confluent_ordering(t_map(lat))
    confluent = order is not None
    if not matroidal:
        cls = "JD-only"
    elif not confluent:
        cls = "MJD-not-EO"
    else:
        cls = "EO"
    return LatticeClass(True, matroidal, confluent, cls, None if order is None else order.permutation)
