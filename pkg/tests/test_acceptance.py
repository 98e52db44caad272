"""Acceptance criteria 1-10, each reported as one PASS/FAIL line."""

from __future__ import annotations

import itertools
import time

import pytest
from acceptance_report import record

from extorder import checks
from extorder.activity import tutte
from extorder.antimatroid import Antimatroid, Clutter, blocker, stems, verify_antimatroid
from extorder.bits import bits, full, mask_of, popcount, submasks
from extorder.corpus import corpus_matroids, fig1, fuzz_antimatroids, fuzz_clutters, jdb, jdb_lattice, orderings, u24ce
from extorder.external_order import boolean_partition, build, meet_join_ext
from extorder.lattice import (
    JDLattice,
    classify,
    confluent_ordering,
    is_matroidal,
    lattice_from_antimatroid,
    snelling_labelings,
    verify_snelling,
)
from extorder.matroid import GroundOrder, linear_matroid
from extorder.minors import correspondence_check


def S(text: str) -> int:
    return mask_of(int(c) - 1 for c in text)


FIG1_EP = {"34": "", "23": "4", "24": "3", "13": "24", "12": "34", "4": "23", "3": "124", "2": "134", "1": "234", "": "1234"}


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _ordered_corpus():
    for name, m in corpus_matroids():
        for order in orderings(m.n):
            yield name, m.with_order(order)


def test_criterion_1_fig1_reproduction():
    def run():
        m = linear_matroid([[1, 1, 0, 1], [0, 1, 1, 0]], 2)
        eo = build(m)
        lat = eo.lattice
        table = {i: eo.ep(i) for i in eo.independents}
        return table, lat.size, len(lat.cover_edges), eo.minimum, eo.maximum

    (table, size, edges, lo, hi), dt = _timed(run)
    ok = table == {S(i): S(e) for i, e in FIG1_EP.items()} and (size, edges, lo, hi) == (10, 14, S("34"), 0) and dt < 1
    record("1", ok, f"EP table of 10 pairs, {size} nodes, {edges} edges, min {{3,4}}, max {{}}; {dt:.3f}s < 1s")
    assert ok


def test_criterion_2_passive_sets_form_antimatroids():
    def run():
        bad = []
        count = 0
        for name, m in _ordered_corpus():
            count += 1
            if not verify_antimatroid(build(m).antimatroid):
                bad.append((name, m.order.permutation))
        return bad, count

    (bad, count), dt = _timed(run)
    ok = not bad and dt < 60
    record("2", ok, f"F_ext(M) is an antimatroid on {count} ordered matroids, {len(bad)} violations; {dt:.1f}s < 60s")
    assert ok, bad[:3]


def test_criterion_3_classification_fixtures():
    c1 = classify(build(fig1()).lattice)
    c2 = classify(lattice_from_antimatroid(u24ce()))
    c3 = classify(jdb_lattice())
    ok = (
        c1.classification == "EO"
        and c2.classification == "MJD-not-EO"
        and confluent_ordering(u24ce()) is None
        and c3.classification == "JD-only"
        and not is_matroidal(jdb_lattice())
        and classify(lattice_from_antimatroid(jdb())).classification == "JD-only"
    )
    record("3", ok, f"fig1 {c1.classification}, u24ce {c2.classification} (no confluent order), jdb {c3.classification}")
    assert ok


def test_criterion_4_tutte():
    bad = []
    for name, m in corpus_matroids():
        t = tutte(m, "activity")
        if t != tutte(m, "corank_nullity"):
            bad.append((name, "methods"))
        for order in orderings(m.n):
            if tutte(m.with_order(order), "activity") != t:
                bad.append((name, order.permutation))
                break
    t = tutte(fig1())
    ok = not bad and str(t) == "x^2 + xy + y^2 + x + y" and t(1, 1) == 5 and t(2, 1) == 10
    record("4", ok, f"activity = corank-nullity and order-invariant on corpus ({len(bad)} mismatches); fig1 {t}, T(1,1)={t(1, 1)}, T(2,1)={t(2, 1)}")
    assert ok, bad[:3]


def _bound_search(lat: JDLattice) -> tuple[list[list[int]], list[list[int]]]:
    """Meets and joins from the transitive closure of the cover edges, by exhaustive bound search."""
    size = lat.size
    above = [{i} for i in range(size)]
    for i in reversed(range(size)):
        for j in lat.upc[i]:
            above[i] |= above[j]
    below = [{j for j in range(size) if i in above[j]} for i in range(size)]
    meets = [[0] * size for _ in range(size)]
    joins = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            lower = below[i] & below[j]
            upper = above[i] & above[j]
            (meets[i][j],) = [z for z in lower if lower <= below[z]]
            (joins[i][j],) = [z for z in upper if upper <= above[z]]
    return meets, joins


def test_criterion_5_meet_join():
    bad = []
    pairs = 0
    for name, m in corpus_matroids():
        eo = build(m)
        lat = eo.lattice
        meets, joins = _bound_search(lat)
        for i in eo.independents:
            for j in eo.independents:
                pairs += 1
                meet, join = meet_join_ext(eo, i, j)
                xi, xj = eo.index[i], eo.index[j]
                if eo.index[meet] != meets[xi][xj] or eo.index[join] != joins[xi][xj]:
                    bad.append((name, i, j))
    ok = not bad
    record("5", ok, f"meet/join formula matches exhaustive bound search on {pairs} pairs, {len(bad)} mismatches")
    assert ok, bad[:3]


def test_criterion_6_boolean_partition():
    bad = []
    count = 0
    for name, m in _ordered_corpus():
        count += 1
        eo = build(m)
        boolean_partition(eo)
        n = popcount(m.ground)
        seen: dict[int, int] = {}
        comp: dict[int, int] = {}
        for i in eo.independents:
            for s in submasks(eo.ea(i)):
                seen[i | s] = seen.get(i | s, 0) + 1
            for s in submasks(m.ground & ~i & ~eo.ep(i)):
                comp[eo.ep(i) | s] = comp.get(eo.ep(i) | s, 0) + 1
        total = sum(2 ** popcount(eo.ea(i)) for i in eo.independents)
        once = len(seen) == 2**n and set(seen.values()) == {1} and len(comp) == 2**n and set(comp.values()) == {1}
        if not once or total != 2**n:
            bad.append((name, m.order.permutation))
    ok = not bad
    record("6", ok, f"both interval partitions cover 2^E exactly once on {count} ordered matroids, {len(bad)} failures")
    assert ok, bad[:3]


def _corpus_antimatroids() -> list[Antimatroid]:
    fams = [build(m).antimatroid for _, m in corpus_matroids()]
    return fams + [u24ce(), jdb()] + fuzz_antimatroids()


def test_criterion_7_duality():
    bad = []
    elements = 0
    for f in _corpus_antimatroids():
        circ, cocirc = f.rooted_circuits(), f.rooted_cocircuits()
        for x in bits(f.ground):
            elements += 1
            if blocker(Clutter(f.n, stems(circ, x))) != Clutter(f.n, stems(cocirc, x)):
                bad.append((f, x))
    clutters = fuzz_clutters()
    inv = [c for c in clutters if blocker(blocker(c)) != c]
    ok = not bad and not inv
    record("7", ok, f"blocker duality at {elements} elements ({len(bad)} failures); involution on {len(clutters)} clutters ({len(inv)} failures)")
    assert ok


def _small_corpus():
    return [(name, m) for name, m in corpus_matroids() if popcount(m.ground) <= 6]


def test_criterion_8_minors():
    """Deletion, extending-set and sandwich claims for every A; feasible contraction for A inside Gamma(empty)."""
    failures = []
    subsets = 0
    for name, m in _small_corpus():
        for a in submasks(m.ground):
            subsets += 1
            r = correspondence_check(m, a)
            if not r.ok:
                failures.append((name, a, [k for k, v in r.checks.items() if not v]))
    ok = not failures
    record("8", ok, f"deletion, extending-set and sandwich equalities on {subsets} (M, A) pairs, {len(failures)} failures")
    assert ok, failures[:3]


@pytest.mark.xfail(strict=True, reason="contraction by a feasible set need not match the external order of the contraction")
def test_criterion_8_literal_feasible_contraction():
    counter = []
    feasible = 0
    for name, m in _small_corpus():
        f = build(m).antimatroid
        for a in f.members:
            feasible += 1
            r = correspondence_check(m, a)
            key = "contraction equals external order of contraction"
            if not r.checks.get(key, r.observations.get(key, True)):
                counter.append((name, a))
    ok = not counter
    detail = f"literal feasible-set contraction equality: {len(counter)} of {feasible} feasible sets fail"
    if counter:
        detail += " (e.g. fig1, A={1,2,4}); recorded as an expected failure"
    record("8-literal", ok, detail)
    assert ok


def _natural_snellings(lat: JDLattice) -> set[frozenset]:
    nat = lat.natural_labels()
    ground = sorted(bits(lat.ground))
    out = set()
    for perm in itertools.permutations(ground):
        rank = {e: k for k, e in enumerate(perm)}
        labels = {edge: rank[e] for edge, e in nat.items()}
        order = GroundOrder(tuple(perm) + tuple(e for e in range(lat.n) if e not in rank))
        if verify_snelling(lat, order):
            out.add(frozenset(labels.items()))
    return out


def test_criterion_9_snelling():
    bad = []
    count = 0
    for name, m in _ordered_corpus():
        count += 1
        if not verify_snelling(build(m).lattice, m.order.reversed()):
            bad.append((name, m.order.permutation))
    u = lattice_from_antimatroid(u24ce())
    u_pass = [p for p in itertools.permutations(range(4)) if verify_snelling(u, GroundOrder(p))]
    small = [build(m).lattice for _, m in corpus_matroids()] + [lattice_from_antimatroid(f) for f in [u24ce(), jdb(), *fuzz_antimatroids()]]
    small = [lat for lat in small if lat.size <= 12]
    mismatch = []
    for lat in small:
        found = {frozenset(lab.items()) for lab in snelling_labelings(lat)}
        if found != _natural_snellings(lat):
            mismatch.append(lat)
    ok = not bad and not u_pass and not mismatch
    record(
        "9",
        ok,
        f"reversed-order snelling on {count} ordered lattices ({len(bad)} failures); u24ce passes {len(u_pass)} of 24 orders; "
        f"exhaustive search = natural reorderings on {len(small)} lattices ({len(mismatch)} mismatches)",
    )
    assert ok


def test_criterion_10_lattice_invariant_sweep():
    def run():
        lats = [build(m).lattice for _, m in corpus_matroids()]
        lats += [lattice_from_antimatroid(f) for f in fuzz_antimatroids()]
        failed = []
        for lat in lats:
            for res in checks.lattice_invariants(lat):
                if not res.ok:
                    failed.append(res.line())
        return failed, len(lats)

    (failed, count), dt = _timed(run)
    ok = not failed and dt < 120
    record("10", ok, f"lattice invariant sweep on {count} lattices, {len(failed)} failures; {dt:.1f}s < 120s")
    assert ok, failed[:3]
