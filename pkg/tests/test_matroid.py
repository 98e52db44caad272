from __future__ import annotations

import pytest

from extorder.bits import full, mask_of, popcount
from extorder.corpus import fig1, k4
from extorder.errors import UndefinedInputError, ValidationError
from extorder.matroid import GroundOrder, graphic_matroid, linear_matroid, matroid_from_bases, matroid_from_circuits, uniform_matroid


def S(text: str) -> int:
    return mask_of(int(c) - 1 for c in text)


def test_independence_fig1():
    m = fig1()
    assert not m.is_independent(S("14"))
    assert m.is_independent(0)
    assert m.is_independent(S("34"))


def test_rank_and_closure_fig1():
    m = fig1()
    assert m.rank(full(4)) == 2
    assert m.rank(0) == 0
    assert m.rank(S("14")) == 1
    assert m.closure(S("1")) == S("14")
    assert m.closure(full(4)) == full(4)
    assert m.closure(S("34")) == S("1234")


def test_enumerate_fig1():
    m = fig1()
    assert sorted(m.enumerate("circuits")) == sorted([S("14"), S("123"), S("234")])
    assert sorted(m.enumerate("bases")) == sorted(S(b) for b in ["12", "13", "23", "24", "34"])
    assert len(m.enumerate("independents")) == 10
    u = uniform_matroid(2, 4)
    assert sorted(u.enumerate("independents")) == sorted(a for a in range(16) if popcount(a) <= 2)


def test_basic_circuit_and_bond():
    m = fig1()
    assert m.basic_circuit(S("34"), 1) == S("234")
    assert m.basic_circuit(S("34"), 0) == S("14")
    assert m.basic_circuit(S("24"), 2) == S("234")
    assert m.basic_bond(S("34"), 2) == S("23")
    assert m.basic_bond(S("34"), 3) == S("124")
    assert m.basic_bond(S("24"), 3) == S("134")


def test_basic_circuit_rejects_dependent():
    with pytest.raises(UndefinedInputError):
        fig1().basic_circuit(S("14"), 1)


def test_dual():
    u = uniform_matroid(2, 4)
    assert u.dual().same_independence(u)
    m = fig1()
    assert sorted(m.dual().enumerate("bases")) == sorted(full(4) & ~b for b in m.enumerate("bases"))
    assert m.dual().rank(full(4)) == 2


def test_minors():
    m = fig1()
    assert m.delete(S("4")).enumerate("circuits") == [S("123")]
    assert sorted(m.contract(S("1")).enumerate("circuits")) == sorted([S("4"), S("23")])
    assert m.minor().same_independence(m)


def test_lex_max_basis():
    m = fig1()
    assert m.lex_max_basis() == S("34")
    assert m.lex_max_basis(S("4")) == S("23")
    assert m.lex_max_basis(S("34")) == S("12")


def test_ground_order():
    o = GroundOrder((3, 2, 1, 0))
    assert o.min(S("14")) == 3
    assert o.max(S("14")) == 0
    assert o.reversed() == GroundOrder.identity(4)
    with pytest.raises(ValidationError):
        GroundOrder((0, 0, 1))


def test_constructors_agree_on_k4():
    m = k4()
    assert matroid_from_bases(6, m.enumerate("bases")).same_independence(m)
    assert matroid_from_circuits(6, m.enumerate("circuits")).same_independence(m)
    assert len(m.enumerate("bases")) == 16


def test_graphic_loop_and_linear_fields():
    m = graphic_matroid([(1, 1), (1, 2)])
    assert m.loops == S("1")
    assert linear_matroid([[1, 2]], 3).rank(full(2)) == 1


def test_invalid_bases_rejected():
    with pytest.raises(ValidationError):
        matroid_from_bases(3, [S("12"), S("3")])
