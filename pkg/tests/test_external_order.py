from __future__ import annotations

import pytest
from hypothesis import given
from strategies import gf2_matroids

from extorder.antimatroid import RootedSet, verify_antimatroid
from extorder.bits import full, mask_of, popcount, submasks
from extorder.corpus import fig1
from extorder.errors import EmptyPassiveError, NotIndependentError
from extorder.external_order import (
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
from extorder.matroid import graphic_matroid, uniform_matroid

FIG1_EP = {"34": "", "23": "4", "24": "3", "13": "24", "12": "34", "4": "23", "3": "124", "2": "134", "1": "234", "": "1234"}


def S(text: str) -> int:
    return mask_of(int(c) - 1 for c in text)


def test_ext_rooted_circuits():
    assert set(ext_rooted_circuits(fig1())) == {RootedSet(S("14"), 0), RootedSet(S("123"), 0), RootedSet(S("234"), 1)}
    assert ext_rooted_circuits(uniform_matroid(2, 3)) == [RootedSet(S("123"), 0)]
    assert ext_rooted_circuits(uniform_matroid(3, 3)) == []


def test_fig1_ep_table():
    eo = build(fig1())
    got = {i: eo.ep(i) for i in eo.independents}
    expected = {S(i): S(e) for i, e in FIG1_EP.items()}
    assert got == expected
    assert eo.minimum == S("34") and eo.maximum == 0


def test_rank_zero_and_u12():
    eo = build(graphic_matroid([(1, 1), (2, 2)]))
    assert eo.independents == [0] and list(eo.antimatroid.members) == [0]
    eo = build(uniform_matroid(1, 2))
    assert {eo.ep(S("2")), eo.ep(S("1")), eo.ep(0)} == {0, S("2"), S("12")}
    assert eo.ep(S("2")) == 0 and eo.ep(S("1")) == S("2")


def test_leq_ext():
    eo = build(fig1())
    assert leq_ext(eo, S("34"), S("23"))
    assert not leq_ext(eo, S("13"), S("12"))
    assert leq_ext(eo, S("13"), S("13"))
    with pytest.raises(NotIndependentError):
        leq_ext(eo, S("14"), S("1"))


def test_upper_covers():
    eo = build(fig1())
    assert upper_covers(eo, S("34")) == [(2, S("24")), (3, S("23"))]
    assert upper_covers(eo, S("24")) == [(1, S("4")), (3, S("12"))]
    assert upper_covers(eo, 0) == []


def test_min_passive_lower_cover():
    eo = build(fig1())
    assert min_passive_lower_cover(eo, S("24")) == S("34")
    assert min_passive_lower_cover(eo, S("1")) == S("12")
    assert min_passive_lower_cover(eo, 0) == S("1")
    with pytest.raises(EmptyPassiveError):
        min_passive_lower_cover(eo, S("34"))


def test_meet_join():
    eo = build(fig1())
    assert meet_join_ext(eo, S("13"), S("12")) == (S("23"), S("1"))
    assert meet_join_ext(eo, S("13"), S("13")) == (S("13"), S("13"))
    for j in eo.independents:
        assert meet_join_ext(eo, S("34"), j) == (S("34"), j)


def test_boolean_partition_fig1():
    part = boolean_partition(build(fig1()))
    assert part[full(4)] == S("34")
    assert part[0] == 0


def test_flats_projection():
    proj = flats_projection(build(fig1()))
    assert proj[S("34")] == full(4)
    assert proj[S("1")] == S("14")
    assert proj[0] == 0


def test_internal_order_of_free_matroid():
    eo = internal_order(uniform_matroid(2, 2))
    assert eo.independents == [0]


@given(gf2_matroids())
def test_feasible_family_is_antimatroid(m):
    eo = build(m)
    assert verify_antimatroid(eo.antimatroid)
    assert len(eo.antimatroid) == len(m.enumerate("independents"))


@given(gf2_matroids())
def test_grading_and_partitions(m):
    eo = build(m)
    lat = eo.lattice
    r = m.full_rank
    for i in eo.independents:
        assert popcount(eo.ep(i)) + popcount(i) + popcount(eo.ea(i)) == popcount(m.ground)
        x = eo.index[i]
        assert lat.rcov(x) == popcount(i)
        assert len(upper_covers(eo, i)) == popcount(i)
    assert eo.minimum == m.lex_max_basis() and popcount(eo.minimum) == r
    boolean_partition(eo)


@given(gf2_matroids())
def test_meet_join_all_pairs(m):
    eo = build(m)
    for i in eo.independents:
        for j in eo.independents:
            meet, join = meet_join_ext(eo, i, j)
            assert leq_ext(eo, meet, i) and leq_ext(eo, i, join)


@given(gf2_matroids())
def test_interval_counts(m):
    eo = build(m)
    assert sum(2 ** popcount(eo.ea(i)) for i in eo.independents) == 2 ** popcount(m.ground)
    covered = set()
    for i in eo.independents:
        covered.update(i | s for s in submasks(eo.ea(i)))
    assert len(covered) == 2 ** popcount(m.ground)
