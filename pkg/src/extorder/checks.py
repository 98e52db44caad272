"""Invariant sweeps over a matroid, antimatroid or lattice.

Each sweep returns a list of ``CheckResult``; a result carries the first
witness found when it fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from .activity import (
    active_set,
    active_set_by_circuits,
    activity_report,
    classical_basis_activity,
    external_passive,
    tutte,
)
from .antimatroid import (
    Antimatroid,
    Clutter,
    blocker,
    check_rooted_axioms,
    independents,
    stems,
)
from .bits import bits, fmt, is_subset, popcount, submasks
from .errors import ExtOrderError
from .external_order import (
    ExternalOrder,
    boolean_partition,
    build,
    flats_projection,
    internal_order,
    leq_ext,
    meet_join_ext,
    min_passive_lower_cover,
    upper_covers,
)
from .lattice import (
    JDLattice,
    classify,
    confluent_ordering,
    is_matroidal,
    lattice_from_antimatroid,
    lattice_independents,
    satisfies_matroid_exchange,
    t_map,
    verify_join_distributive,
    verify_snelling,
)
from .matroid import Matroid
from .minors import (
    anti_contract,
    anti_delete,
    contraction_circuits,
    correspondence_check,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    witness: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f" ({self.witness})" if self.witness else "")


def _first(name: str, witnesses: Iterable[object]) -> CheckResult:
    """Pass iff the generator of witnesses is empty; errors count as failures."""
    try:
        for w in witnesses:
            return CheckResult(name, False, str(w))
    except ExtOrderError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, True)


def _run(name: str, fn: Callable[[], object]) -> CheckResult:
    try:
        fn()
    except ExtOrderError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, True)


# --------------------------------------------------------------------------- matroids


def matroid_invariants(m: Matroid, exhaustive_limit: int = 7) -> list[CheckResult]:
    res: list[CheckResult] = []
    bases = m.enumerate("bases")
    base_set = set(bases)
    indep = m.enumerate("independents")
    g = m.ground
    small = popcount(g) <= exhaustive_limit

    def exchange():
        for b in bases:
            for x in bits(g & ~b):
                circ = m.basic_circuit(b, x)
                for y in bits(b):
                    a = bool(circ >> y & 1)
                    c = bool(m.basic_bond(b, y) >> x & 1)
                    d = (b & ~(1 << y)) | (1 << x) in base_set
                    if not a == c == d:
                        yield f"B={fmt(b)} x={x + 1} b={y + 1}"

    res.append(_first("basis exchange: circuit / bond / swap agree", exchange()))

    if small:
        subsets = list(submasks(g))
        rk = {a: m.rank(a) for a in subsets}

        def rank_props():
            for a in subsets:
                if rk[a] > popcount(a):
                    yield f"subcardinal {fmt(a)}"
                for e in bits(g & ~a):
                    if rk[a | (1 << e)] < rk[a]:
                        yield f"monotone {fmt(a)}+{e + 1}"
            for a, b in itertools.combinations(subsets, 2):
                if rk[a | b] + rk[a & b] > rk[a] + rk[b]:
                    yield f"submodular {fmt(a)}, {fmt(b)}"

        res.append(_first("rank monotone, subcardinal, submodular", rank_props()))

        def closure_props():
            cl = {a: m.closure(a) for a in subsets}
            for a in subsets:
                if not is_subset(a, cl[a]) or cl[cl[a]] != cl[a]:
                    yield f"closure of {fmt(a)}"
                for e in bits(g & ~a):
                    if not is_subset(cl[a], cl[a | (1 << e)]):
                        yield f"closure monotone at {fmt(a)}"
            flats = set(m.enumerate("flats"))
            for f1, f2 in itertools.combinations(flats, 2):
                if f1 & f2 not in flats:
                    yield f"flats not closed under meet: {fmt(f1)}, {fmt(f2)}"

        res.append(_first("closure idempotent, extensive, monotone; flats form a lattice", closure_props()))
        dd = m.dual().dual()
        res.append(_first("dual of dual", (fmt(a) for a in subsets if dd.is_independent(a) != m.is_independent(a))))

        def report_props():
            for a in subsets:
                r = activity_report(m, a)
                if r.ea != r.act & ~a or r.ea & r.ep or r.ea | r.ep != g & ~a or r.ia | r.ip != a or r.ia & r.ip:
                    yield fmt(a)

        res.append(_first("activity report partitions", report_props()))

    top = m.lex_max_basis(0)

    def gale():
        key = sorted((m.order.position(e) for e in bits(top)), reverse=True)
        for b in bases:
            other = sorted((m.order.position(e) for e in bits(b)), reverse=True)
            if any(p < q for p, q in zip(key, other)):
                yield fmt(b)

    res.append(_first("greedy basis Gale-dominates every basis", gale()))

    def tutte_props():
        t1, t2 = tutte(m, "activity"), tutte(m, "corank_nullity")
        if t1 != t2:
            yield f"{t1} != {t2}"
        if any(c < 0 for c in t1.coeffs.values()):
            yield "negative coefficient"
        if t1(1, 1) != len(bases) or t1(2, 1) != len(indep):
            yield "T(1,1) or T(2,1) count mismatch"

    res.append(_first("Tutte polynomial: activity = corank-nullity", tutte_props()))

    def classical():
        for b in bases:
            r = activity_report(m, b)
            if (r.ia, r.ea) != classical_basis_activity(m, b):
                yield fmt(b)

    res.append(_first("basis activity agrees with the classical definition", classical()))

    res.append(_first("fast active set agrees with circuit scan", (fmt(i) for i in indep if active_set(m, i) != active_set_by_circuits(m, i))))

    eps = [external_passive(m, i) for i in indep]
    res.append(CheckResult("EP injective on independent sets", len(set(eps)) == len(eps)))

    def flat_decomposition():
        for i in indep:
            f = m.closure(i)
            if external_passive(m, i) != external_passive(m.restrict(f), i) | (g & ~f):
                yield fmt(i)

    res.append(_first("EP splits over the spanned flat", flat_decomposition()))
    return res


def order_invariance(m: Matroid, orders: Iterable) -> CheckResult:
    t0 = tutte(m)
    return _first("Tutte polynomial independent of the order", (o.permutation for o in orders if tutte(m.with_order(o)) != t0))


# --------------------------------------------------------------------------- external orders


def external_order_invariants(m: Matroid, eo: ExternalOrder | None = None) -> list[CheckResult]:
    res: list[CheckResult] = []
    try:
        eo = eo or build(m)
    except ExtOrderError as exc:
        return [CheckResult("externally passive sets form an antimatroid", False, str(exc))]
    res.append(CheckResult("externally passive sets form an antimatroid", eo.verdict.ok, str(eo.verdict)))
    lat = eo.lattice
    indep = eo.independents
    f = eo.antimatroid
    nonloops = popcount(m.ground & ~m.loops)

    def grading():
        depth = [0] * lat.size
        for i in range(1, lat.size):
            depth[i] = max(depth[j] for j in lat.lowc[i]) + 1
        for i in indep:
            if depth[eo.index[i]] != popcount(eo.ep(i)):
                yield fmt(i)
        if depth[lat.top] != nonloops:
            yield f"height {depth[lat.top]} != {nonloops}"

    res.append(_first("lattice rank equals |EP(I)|", grading()))

    def extension():
        for i in indep:
            ep = eo.ep(i)
            for a in bits(m.ground & ~ep):
                if ((ep | (1 << a)) in f) != bool(i >> a & 1):
                    yield f"I={fmt(i)} a={a + 1}"

    res.append(_first("EP(I) + a feasible iff a in I", extension()))

    def basis_restriction():
        for b in m.enumerate("bases"):
            _, ea = classical_basis_activity(m, b)
            if eo.ep(b) != m.ground & ~b & ~ea:
                yield fmt(b)

    res.append(_first("generalized EP extends the classical EP on bases", basis_restriction()))
    res.append(_first("I is the lex-maximal basis of M minus EP(I)", (fmt(i) for i in indep if m.lex_max_basis(eo.ep(i)) != i)))

    def lex_monotone():
        for i in indep:
            for j in indep:
                if leq_ext(eo, i, j) and m.order.lex_key(i, descending=True) < m.order.lex_key(j, descending=True):
                    yield f"{fmt(i)} <= {fmt(j)}"

    res.append(_first("order refines lex order on descending words (prefixes small)", lex_monotone()))
    res.append(_first("meet/join via lex-maximal bases", (1 for i in indep for j in indep if meet_join_ext(eo, i, j) is None)))
    res.append(_run("boolean interval partitions", lambda: boolean_partition(eo)))
    res.append(_run("closure map onto flats, order-reversing", lambda: flats_projection(eo)))
    res.append(_run("upper covers via active chains", lambda: [upper_covers(eo, i) for i in indep]))
    res.append(_run("lower cover at min EP", lambda: [min_passive_lower_cover(eo, i) for i in indep if eo.ep(i)]))
    res.append(CheckResult("minimum is the lex-maximal basis", eo.minimum == m.lex_max_basis(0)))
    res.append(CheckResult("maximum is the empty set", eo.maximum == 0))
    res.append(CheckResult("classified as an external order", classify(lat).classification == "EO"))
    res.append(CheckResult("snelling under the reversed order", verify_snelling(lat, m.order.reversed()).ok))
    res.append(_run("internal order builds", lambda: internal_order(m)))
    return res


def minor_invariants(m: Matroid) -> list[CheckResult]:
    def all_subsets():
        for a in submasks(m.ground):
            rep = correspondence_check(m, a)
            bad = [k for k, v in rep.checks.items() if not v]
            if bad:
                yield f"A={fmt(a)}: {bad}"

    return [_first("matroid / antimatroid minor correspondences", all_subsets())]


# --------------------------------------------------------------------------- antimatroids


def antimatroid_invariants(f: Antimatroid) -> list[CheckResult]:
    res: list[CheckResult] = []
    res.append(_run("free sets by trace = by extensions", lambda: independents(f)))
    circ, cocirc = f.rooted_circuits(), f.rooted_cocircuits()
    members = sorted(f.members, key=lambda x: (popcount(x), x))

    def roundtrip(kind, rooted):
        v = check_rooted_axioms(kind, rooted, f.n, ground=f.ground)
        if not v:
            yield str(v)
        elif v.details["family"] != members:
            yield "reconstructed family differs"

    res.append(_first("rooted circuit axioms and reconstruction", roundtrip("circuit", circ)))
    res.append(_first("rooted cocircuit axioms and reconstruction", roundtrip("cocircuit", cocirc)))

    def duality():
        for x in bits(f.ground):
            cs, ds = Clutter(f.n, stems(circ, x)), Clutter(f.n, stems(cocirc, x))
            if blocker(cs) != ds or blocker(ds) != cs:
                yield f"x={x + 1}"

    res.append(_first("circuit and cocircuit stems are blockers", duality()))

    def endpoint_unions():
        for x in f.members:
            ends = [e for e in bits(x) if x & ~(1 << e) in f]
            options = [[d.set for d in cocirc if d.root == e and is_subset(d.set, x)] for e in ends]
            if not any(_union(c) == x for c in itertools.product(*options)):
                yield fmt(x)

    res.append(_first("feasible set is a union of cocircuits at its endpoints", endpoint_unions()))
    gam = f.gammas()
    res.append(CheckResult("feasible extensions injective", len(set(gam.values())) == len(gam)))

    def obstruction():
        for x in f.members:
            for a in bits(f.ground & ~x):
                blocked = all(c.set & x for c in circ if c.root == a)
                if blocked != bool(gam[x] >> a & 1):
                    yield f"A={fmt(x)} a={a + 1}"

    res.append(_first("circuits are the minimal obstructions to extension", obstruction()))
    free = f.free_sets()
    res.append(_first("free sets closed under subsets", (fmt(s) for s in free for e in bits(s) if s & ~(1 << e) not in free)))

    def minors_ok():
        for a in bits(f.ground):
            anti_delete(f, 1 << a)
            con = anti_contract(f, 1 << a).rooted_circuits()
            for c in circ:
                if c.root != a and not any(d.root == c.root and is_subset(d.set, c.set & ~(1 << a)) for d in con):
                    yield f"contraction circuits at {a + 1}, {c}"

    res.append(_first("single-element minors are antimatroids and keep circuits below circuits", minors_ok()))
    return res


def _union(sets: Iterable[int]) -> int:
    u = 0
    for s in sets:
        u |= s
    return u


# --------------------------------------------------------------------------- lattices


def lattice_invariants(lat: JDLattice, *, set_pairs: bool = True) -> list[CheckResult]:
    res: list[CheckResult] = []
    v = verify_join_distributive(lat)
    res.append(CheckResult("join-distributive (four characterizations agree)", v.ok, "" if v else str(v)))
    if not v:
        return res
    size = lat.size
    T = [lat.T(x) for x in range(size)]
    I = [lat.I(x) for x in range(size)]
    res.append(_first("T(x) and I(y) disjoint iff x <= y", ((x, y) for x in range(size) for y in range(size) if (not T[x] & I[y]) != lat.leq(x, y))))
    res.append(CheckResult("I injective", len(set(I)) == size))
    res.append(_first("I(x) inside I(y) implies x >= y", ((x, y) for x in range(size) for y in range(size) if is_subset(I[x], I[y]) and not lat.leq(y, x))))
    res.append(_first("x <= y implies I(x) inside I(y) + T(y)", ((x, y) for x in range(size) for y in range(size) if lat.leq(x, y) and not is_subset(I[x], I[y] | T[y]))))
    res.append(_first("I(x meet y) inside I(x) + I(y)", ((x, y) for x in range(size) for y in range(size) if not is_subset(I[lat.meet(x, y)], I[x] | I[y]))))
    res.append(_first("J(x) inside T(x), I(x) disjoint from T(x)", (x for x in range(size) if not is_subset(lat.J(x), T[x]) or I[x] & T[x])))
    if set_pairs:
        subsets = list(submasks(lat.ground))
        xa = {a: lat.x_of(a) for a in subsets}

        def set_lattice():
            for a in subsets:
                for b in subsets:
                    if not lat.leq(lat.join(xa[a], xa[b]), xa[a & b]) or not lat.leq(lat.meet(xa[a], xa[b]), xa[a | b]):
                        yield f"A={fmt(a)} B={fmt(b)}"

        res.append(_first("x_A join x_B <= x_(A meet B), x_A meet x_B <= x_(A join B)", set_lattice()))
    anti = t_map(lat)
    circ = anti.rooted_circuits()

    def t_reconstruction():
        for x in range(size):
            t0 = 0
            for a in bits(lat.ground & ~I[x]):
                if not any(c.root == a and is_subset(c.set, I[x] | (1 << a)) for c in circ):
                    t0 |= 1 << a
            if t0 != T[x]:
                yield lat.names[x]

    res.append(_first("T(x) recovered from I(x) and rooted circuits", t_reconstruction()))
    matroidal = is_matroidal(lat).ok
    res.append(CheckResult("matroidal iff independents satisfy matroid exchange", matroidal == satisfies_matroid_exchange(lattice_independents(lat))))
    order = confluent_ordering(anti)
    if order is not None:

        def key(x: int) -> tuple[int, ...]:
            return tuple(sorted(order.position(e) for e in bits(I[x]))) + (1 << 62,)

        res.append(_first("confluent order: x <= y implies I(x) <= I(y) lex", ((x, y) for x in range(size) for y in range(size) if lat.leq(x, y) and key(x) > key(y))))
        res.append(CheckResult("snelling under the confluent order", verify_snelling(lat, order).ok))
    return res


def antimatroid_lattice_roundtrip(f: Antimatroid) -> CheckResult:
    lat = lattice_from_antimatroid(f)
    back = t_map(lat)
    return CheckResult("T map recovers the antimatroid", set(back.members) == set(f.members))


def matroid_contraction_circuits_check(m: Matroid) -> CheckResult:
    """Each circuit C and x in C - A give a circuit of M / A inside C through x."""

    def sweep():
        circuits = m.enumerate("circuits")
        for a in submasks(m.ground):
            con = m.contract(a).enumerate("circuits")
            for c in circuits:
                for x in bits(c & ~a):
                    if not any(is_subset(d, c) and d >> x & 1 for d in con):
                        yield f"A={fmt(a)} C={fmt(c)} x={x + 1}"

    return _first("matroid contraction keeps a circuit below each circuit", sweep())


def rooted_contraction_circuits_check(f: Antimatroid) -> CheckResult:
    """For (C, x) with x outside A, the contraction by A has a circuit (C', x) with C' inside C - A."""

    def sweep():
        for a in submasks(f.ground):
            con = contraction_circuits(f, a)
            for c in f.rooted_circuits():
                if a >> c.root & 1:
                    continue
                if not any(d.root == c.root and is_subset(d.set, c.set & ~a) for d in con):
                    yield f"A={fmt(a)} {c}"

    return _first("contraction keeps a circuit below each surviving circuit", sweep())
