"""Generalized matroid activity and the Tutte polynomial."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .bits import bits, fmt, is_subset, popcount, submasks
from .errors import UndefinedInputError
from .matroid import Matroid


@dataclass(frozen=True)
class ActivityReport:
    subject: int
    act: int
    ea: int
    ep: int
    ia: int
    ip: int

    def describe(self, labels: tuple[str, ...] | None = None) -> dict[str, str]:
        return {k: fmt(getattr(self, k), labels) for k in ("subject", "act", "ea", "ep", "ia", "ip")}


def active_set(m: Matroid, a: int) -> int:
    """Act_M(A): elements x that are the order-minimum of some circuit inside A + x."""
    if m.is_independent(a):
        act = 0
        for x in bits(m.closure(a) & ~a):
            if m.order.min(m.basic_circuit(a, x)) == x:
                act |= 1 << x
        return act
    return active_set_by_circuits(m, a)


def active_set_by_circuits(m: Matroid, a: int) -> int:
    act = 0
    for c in m.enumerate("circuits"):
        x = m.order.min(c)
        if is_subset(c & ~(1 << x), a):
            act |= 1 << x
    return act


def external_passive(m: Matroid, a: int) -> int:
    """EP_M(A), the only piece of the report the external order needs."""
    return m.ground & ~a & ~active_set(m, a)


def activity_report(m: Matroid, a: int) -> ActivityReport:
    act = active_set(m, a)
    ea = act & ~a
    ep = m.ground & ~a & ~ea
    d = m.dual()
    ia = active_set(d, m.ground & ~a) & a
    return ActivityReport(subject=a, act=act, ea=ea, ep=ep, ia=ia, ip=a & ~ia)


def classical_basis_activity(m: Matroid, basis: int) -> tuple[int, int]:
    """(IA, EA) of a basis straight from basic circuits and bonds."""
    ea = 0
    for x in bits(m.ground & ~basis):
        if m.order.min(m.basic_circuit(basis, x)) == x:
            ea |= 1 << x
    ia = 0
    for b in bits(basis):
        bond = basis_bond(m, basis, b)
        if m.order.min(bond) == b:
            ia |= 1 << b
    return ia, ea


def basis_bond(m: Matroid, basis: int, b: int) -> int:
    """Unique cocircuit inside (E \\ B) + b, via the exchange characterization."""
    rest = basis & ~(1 << b)
    bond = 1 << b
    for x in bits(m.ground & ~basis):
        if m.is_independent(rest | (1 << x)):
            bond |= 1 << x
    return bond


def active_chain(m: Matroid, indep: int, a: int) -> int:
    if not indep >> a & 1:
        raise UndefinedInputError(f"element {a + 1} is not in I")
    ea = active_set(m, indep) & ~indep
    return ea & m.basic_bond(indep, a)


# --------------------------------------------------------------------------- Tutte polynomial


@dataclass(frozen=True)
class TuttePolynomial:
    coeffs: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", {k: v for k, v in sorted(self.coeffs.items()) if v})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TuttePolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __call__(self, x: int, y: int) -> int:
        return sum(c * x**i * y**j for (i, j), c in self.coeffs.items())

    def __str__(self) -> str:
        terms = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
            mono = "".join(v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e)
            terms.append(f"{c}{mono}" if c != 1 or not mono else mono)
        return " + ".join(terms) or "0"


def tutte(m: Matroid, method: str = "activity") -> TuttePolynomial:
    if method == "activity":
        return _tutte_activity(m)
    if method == "corank_nullity":
        return _tutte_corank_nullity(m)
    raise ValueError(f"unknown method {method!r}")


def _tutte_activity(m: Matroid) -> TuttePolynomial:
    coeffs: dict[tuple[int, int], int] = {}
    for b in m.enumerate("bases"):
        rep = activity_report(m, b)
        key = (popcount(rep.ia), popcount(rep.ea))
        coeffs[key] = coeffs.get(key, 0) + 1
    return TuttePolynomial(coeffs)


def _tutte_corank_nullity(m: Matroid) -> TuttePolynomial:
    r_full = m.full_rank
    coeffs: dict[tuple[int, int], int] = {}
    for a in submasks(m.ground):
        r = m.rank(a)
        p, q = r_full - r, popcount(a) - r
        # (x-1)^p (y-1)^q expanded binomially
        for i in range(p + 1):
            ci = comb(p, i) * (-1) ** (p - i)
            for j in range(q + 1):
                key = (i, j)
                coeffs[key] = coeffs.get(key, 0) + ci * comb(q, j) * (-1) ** (q - j)
    return TuttePolynomial(coeffs)
