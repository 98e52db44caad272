"""Ordered matroids over small ground sets.

A :class:`Matroid` is an independence oracle on element-ids ``0..n-1`` together
with a ground mask (elements removed by a minor simply leave the mask) and a
:class:`GroundOrder`.  Everything that does not depend on the order is cached
and shared between reorderings of the same matroid.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .bits import MAX_ELEMENTS, bits, full, is_subset, mask_of, popcount, sort_key, submasks
from .errors import OverlapError, UndefinedInputError, ValidationError

TABLE_LIMIT = 20
FIELDS = (2, 3, 5, 7)


@dataclass(frozen=True)
class GroundOrder:
    """A total order on element-ids; ``permutation[k]`` is the element at position ``k``."""

    permutation: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(self.permutation)
        object.__setattr__(self, "permutation", perm)
        if len(perm) > MAX_ELEMENTS:
            raise ValidationError(f"at most {MAX_ELEMENTS} elements supported, got {len(perm)}")
        if sorted(perm) != list(range(len(perm))):
            raise ValidationError(f"order is not a permutation of 0..{len(perm) - 1}: {perm}")
        pos = [0] * len(perm)
        for k, e in enumerate(perm):
            pos[e] = k
        object.__setattr__(self, "_pos", tuple(pos))

    @classmethod
    def identity(cls, n: int) -> GroundOrder:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.permutation)

    @property
    def positions(self) -> tuple[int, ...]:
        return self._pos  # type: ignore[attr-defined]

    def reversed(self) -> GroundOrder:
        return GroundOrder(tuple(reversed(self.permutation)))

    def position(self, e: int) -> int:
        return self._pos[e]  # type: ignore[attr-defined]

    def less(self, a: int, b: int) -> bool:
        return self._pos[a] < self._pos[b]  # type: ignore[attr-defined]

    def min(self, mask: int) -> int:
        if not mask:
            raise UndefinedInputError("min of the empty set")
        return min(bits(mask), key=self._pos.__getitem__)  # type: ignore[attr-defined]

    def max(self, mask: int) -> int:
        if not mask:
            raise UndefinedInputError("max of the empty set")
        return max(bits(mask), key=self._pos.__getitem__)  # type: ignore[attr-defined]

    def ascending(self, mask: int) -> list[int]:
        return sorted(bits(mask), key=self._pos.__getitem__)  # type: ignore[attr-defined]

    def descending(self, mask: int) -> list[int]:
        return sorted(bits(mask), key=self._pos.__getitem__, reverse=True)  # type: ignore[attr-defined]

    def lex_key(self, mask: int, descending: bool = False) -> tuple[int, ...]:
        """Position sequence of ``mask``; tuple comparison treats prefixes as small."""
        return tuple(sorted((self._pos[e] for e in bits(mask)), reverse=descending))  # type: ignore[attr-defined]


# --------------------------------------------------------------------------- representations


def gf_rank(vectors: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a list of vectors over GF(p) by Gaussian elimination.

    Pivot choice is the lowest-index remaining vector with a nonzero entry, so
    the elimination is deterministic.
    """
    inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
    rows = [[x % p for x in v] for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        scale = inv[rows[rank][col]]
        prow = [(x * scale) % p for x in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


class LinearRep:
    kind = "linear"

    def __init__(self, matrix: Sequence[Sequence[int]], field: int = 2) -> None:
        if field not in FIELDS:
            raise ValidationError(f"field must be one of {FIELDS}, got {field}")
        rows = [list(r) for r in matrix]
        if rows and len({len(r) for r in rows}) != 1:
            raise ValidationError("matrix rows have different lengths")
        self.field = field
        self.matrix = tuple(tuple(x % field for x in r) for r in rows)
        self.n = len(rows[0]) if rows else 0
        self.columns = [tuple(r[j] for r in self.matrix) for j in range(self.n)]

    def independent(self, mask: int) -> bool:
        cols = [self.columns[j] for j in bits(mask)]
        return gf_rank(cols, self.field) == len(cols)


class GraphicRep:
    kind = "graphic"

    def __init__(self, edges: Sequence[tuple[object, object]]) -> None:
        self.edges = tuple((u, v) for u, v in edges)
        self.n = len(self.edges)

    def independent(self, mask: int) -> bool:
        parent: dict[object, object] = {}

        def find(v: object) -> object:
            parent.setdefault(v, v)
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for j in bits(mask):
            u, v = self.edges[j]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True


class UniformRep:
    kind = "uniform"

    def __init__(self, r: int, n: int) -> None:
        if not 0 <= r <= n:
            raise ValidationError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
        self.r, self.n = r, n

    def independent(self, mask: int) -> bool:
        return popcount(mask) <= self.r


class ExplicitRep:
    """Matroid given by its list of bases or its list of circuits; axioms checked exhaustively."""

    kind = "explicit"

    def __init__(self, n: int, *, bases: Iterable[int] | None = None, circuits: Iterable[int] | None = None) -> None:
        if (bases is None) == (circuits is None):
            raise ValidationError("give exactly one of bases= or circuits=")
        self.n = n
        limit = full(n)
        if bases is not None:
            self.bases: tuple[int, ...] | None = tuple(sorted(set(bases), key=sort_key))
            self.circuits: tuple[int, ...] | None = None
            _check_within(self.bases, limit)
            _validate_bases(self.bases)
        else:
            self.circuits = tuple(sorted(set(circuits), key=sort_key))  # type: ignore[arg-type]
            self.bases = None
            _check_within(self.circuits, limit)
            _validate_circuits(self.circuits)

    @property
    def kind_detail(self) -> str:
        return "bases" if self.bases is not None else "circuits"

    def independent(self, mask: int) -> bool:
        if self.bases is not None:
            return any(is_subset(mask, b) for b in self.bases)
        return not any(is_subset(c, mask) for c in self.circuits)  # type: ignore[union-attr]


def _check_within(sets: Iterable[int], limit: int) -> None:
    for s in sets:
        if s & ~limit:
            raise ValidationError(f"set {s:#b} uses elements outside the ground set")


def _validate_bases(bases: tuple[int, ...]) -> None:
    if not bases:
        raise ValidationError("a matroid has at least one basis")
    if len({popcount(b) for b in bases}) != 1:
        raise ValidationError("bases have different cardinalities")
    present = set(bases)
    for b1 in bases:
        for b2 in bases:
            for x in bits(b1 & ~b2):
                if not any((b1 & ~(1 << x)) | (1 << y) in present for y in bits(b2 & ~b1)):
                    raise ValidationError(f"basis exchange fails for {b1:#b}, {b2:#b} at element {x + 1}")


def _validate_circuits(circuits: tuple[int, ...]) -> None:
    if 0 in circuits:
        raise ValidationError("the empty set is not a circuit")
    for c1 in circuits:
        for c2 in circuits:
            if c1 != c2 and is_subset(c1, c2):
                raise ValidationError(f"circuits {c1:#b} and {c2:#b} are nested; not a clutter")
    for c1, c2 in itertools.combinations(circuits, 2):
        for e in bits(c1 & c2):
            rest = (c1 | c2) & ~(1 << e)
            if not any(is_subset(c3, rest) for c3 in circuits):
                raise ValidationError(f"circuit elimination fails for {c1:#b}, {c2:#b} at element {e + 1}")


class _DualRep:
    kind = "dual"

    def __init__(self, m: Matroid) -> None:
        self.m = m
        self.full_rank = m.rank(m.ground)

    def independent(self, mask: int) -> bool:
        return self.m.rank(self.m.ground & ~mask) == self.full_rank


class _MinorRep:
    kind = "minor"

    def __init__(self, m: Matroid, contract_basis: int) -> None:
        self.m = m
        self.contract_basis = contract_basis

    def independent(self, mask: int) -> bool:
        return self.m.is_independent(mask | self.contract_basis)


# --------------------------------------------------------------------------- matroid


class _Shared:
    """Order-independent caches, shared by all reorderings of one matroid."""

    def __init__(self) -> None:
        self.lock = threading.RLock()
        self.values: dict[object, object] = {}

    def get(self, key: object, compute: Callable[[], object]) -> object:
        try:
            return self.values[key]
        except KeyError:
            pass
        with self.lock:
            if key not in self.values:
                self.values[key] = compute()
            return self.values[key]


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n))


class Matroid:
    """An ordered matroid on element-ids ``0..n-1`` restricted to ``ground``."""

    def __init__(
        self,
        n: int,
        rep: object,
        *,
        ground: int | None = None,
        order: GroundOrder | None = None,
        labels: Sequence[str] | None = None,
        _shared: _Shared | None = None,
    ) -> None:
        if not 0 <= n <= MAX_ELEMENTS:
            raise ValidationError(f"ground set size must be in 0..{MAX_ELEMENTS}, got {n}")
        self.n = n
        self.rep = rep
        self.ground = full(n) if ground is None else ground
        if self.ground & ~full(n):
            raise ValidationError("ground mask exceeds element range")
        self.order = order if order is not None else GroundOrder.identity(n)
        if self.order.n != n:
            raise ValidationError(f"order has {self.order.n} elements, matroid has {n}")
        self.labels = tuple(labels) if labels is not None else default_labels(n)
        self._shared = _shared if _shared is not None else _Shared()

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rep={getattr(self.rep, 'kind', '?')}, ground={self.ground:#b}, rank={self.rank(self.ground)})"

    # -- construction helpers
    def with_order(self, order: GroundOrder | Sequence[int]) -> Matroid:
        if not isinstance(order, GroundOrder):
            order = GroundOrder(tuple(order))
        return Matroid(self.n, self.rep, ground=self.ground, order=order, labels=self.labels, _shared=self._shared)

    def _check(self, mask: int) -> None:
        if mask & ~self.ground:
            raise UndefinedInputError(f"set {mask:#b} is not within the ground set {self.ground:#b}")

    # -- oracles
    def _table(self) -> bytearray | None:
        if self.n > TABLE_LIMIT:
            return None

        def build() -> bytearray:
            table = bytearray(1 << self.n)
            for a in sorted(submasks(self.ground)):
                if a == 0:
                    table[a] = 1
                    continue
                low = a & -a
                if table[a ^ low] and all(table[a ^ (1 << e)] for e in bits(a)):
                    table[a] = 1 if self.rep.independent(a) else 0  # type: ignore[attr-defined]
            return table

        return self._shared.get("table", build)  # type: ignore[return-value]

    def is_independent(self, mask: int) -> bool:
        self._check(mask)
        table = self._table()
        if table is not None:
            return bool(table[mask])
        return bool(self.rep.independent(mask))  # type: ignore[attr-defined]

    def _max_indep_subset(self, mask: int) -> int:
        cur = 0
        for e in bits(mask):
            if self.is_independent(cur | (1 << e)):
                cur |= 1 << e
        return cur

    def rank(self, mask: int) -> int:
        self._check(mask)
        return popcount(self._max_indep_subset(mask))

    def closure(self, mask: int) -> int:
        self._check(mask)
        basis = self._max_indep_subset(mask)
        cl = mask
        for e in bits(self.ground & ~mask):
            if not self.is_independent(basis | (1 << e)):
                cl |= 1 << e
        return cl

    @property
    def full_rank(self) -> int:
        return self.rank(self.ground)

    @property
    def loops(self) -> int:
        return self.closure(0)

    # -- enumeration
    def enumerate(self, kind: str) -> list[int]:
        """All circuits, bases, independents or flats, sorted by (cardinality, mask)."""
        if kind == "independents":
            return list(self._shared.get("independents", self._independents))  # type: ignore[arg-type]
        if kind == "circuits":
            return list(self._shared.get("circuits", self._circuits))  # type: ignore[arg-type]
        if kind == "bases":
            r = self.full_rank
            return [a for a in self.enumerate("independents") if popcount(a) == r]
        if kind == "flats":
            return list(self._shared.get("flats", self._flats))  # type: ignore[arg-type]
        raise ValueError(f"unknown kind {kind!r}")

    def _independents(self) -> tuple[int, ...]:
        found = [0]
        frontier = [0]
        elems = list(bits(self.ground))
        while frontier:
            nxt = []
            for a in frontier:
                top = a.bit_length()
                for e in elems:
                    if e >= top and self.is_independent(a | (1 << e)):
                        nxt.append(a | (1 << e))
            found.extend(nxt)
            frontier = nxt
        return tuple(sorted(found, key=sort_key))

    def _circuits(self) -> tuple[int, ...]:
        elems = list(bits(self.ground))
        found: list[int] = []
        for k in range(1, self.full_rank + 2):
            for combo in itertools.combinations(elems, k):
                c = mask_of(combo)
                if any(is_subset(f, c) for f in found):
                    continue
                if not self.is_independent(c):
                    found.append(c)
        return tuple(sorted(found, key=sort_key))

    def _flats(self) -> tuple[int, ...]:
        return tuple(sorted({self.closure(a) for a in self.enumerate("independents")}, key=sort_key))

    # -- basic circuits and bonds
    def basic_circuit(self, indep: int, x: int) -> int:
        """The unique circuit inside ``indep + x``; defined only for ``x`` in the span of ``indep``."""
        if not self.is_independent(indep):
            raise UndefinedInputError("basic circuit needs an independent set")
        xb = 1 << x
        if indep & xb or not self.ground & xb or self.is_independent(indep | xb):
            raise UndefinedInputError(f"element {x + 1} is not in closure(I) \\ I")
        c = xb
        for y in bits(indep):
            if self.is_independent((indep | xb) & ~(1 << y)):
                c |= 1 << y
        return c

    def basic_bond(self, indep: int, y: int) -> int:
        """Basic cocircuit of ``y`` in ``indep``, computed inside the flat spanned by ``indep``."""
        if not self.is_independent(indep):
            raise UndefinedInputError("basic bond needs an independent set")
        yb = 1 << y
        if not indep & yb:
            raise UndefinedInputError(f"element {y + 1} is not in I")
        base = indep & ~yb
        bond = yb
        for z in bits(self.closure(indep) & ~indep):
            if self.is_independent(base | (1 << z)):
                bond |= 1 << z
        return bond

    # -- derived matroids
    def dual(self) -> Matroid:
        return Matroid(self.n, _DualRep(self), ground=self.ground, order=self.order, labels=self.labels)

    def minor(self, delete: int = 0, contract: int = 0) -> Matroid:
        if delete & contract:
            raise OverlapError("deletion and contraction sets overlap")
        self._check(delete | contract)
        if not delete and not contract:
            return self
        basis = self._max_indep_subset(contract)
        return Matroid(
            self.n,
            _MinorRep(self, basis),
            ground=self.ground & ~(delete | contract),
            order=self.order,
            labels=self.labels,
        )

    def delete(self, mask: int) -> Matroid:
        return self.minor(delete=mask)

    def contract(self, mask: int) -> Matroid:
        return self.minor(contract=mask)

    def restrict(self, flat: int) -> Matroid:
        return self.minor(delete=self.ground & ~flat)

    def lex_max_basis(self, forbidden: int = 0) -> int:
        """Lexicographically greatest basis of the deletion ``M \\ forbidden``.

        Greedy in descending ground order; the result Gale-dominates every
        basis, so it is maximal for both ascending and descending lex order.
        """
        self._check(forbidden)
        cur = 0
        for e in self.order.descending(self.ground & ~forbidden):
            if self.is_independent(cur | (1 << e)):
                cur |= 1 << e
        return cur

    def same_independence(self, other: Matroid) -> bool:
        if self.ground != other.ground:
            return False
        return all(self.is_independent(a) == other.is_independent(a) for a in submasks(self.ground))


# --------------------------------------------------------------------------- constructors


def linear_matroid(matrix: Sequence[Sequence[int]], field: int = 2, order: Sequence[int] | None = None) -> Matroid:
    rep = LinearRep(matrix, field)
    return _make(rep.n, rep, order)


def graphic_matroid(edges: Sequence[tuple[object, object]], order: Sequence[int] | None = None) -> Matroid:
    rep = GraphicRep(edges)
    return _make(rep.n, rep, order)


def uniform_matroid(r: int, n: int, order: Sequence[int] | None = None) -> Matroid:
    return _make(n, UniformRep(r, n), order)


def matroid_from_bases(n: int, bases: Iterable[int], order: Sequence[int] | None = None) -> Matroid:
    return _make(n, ExplicitRep(n, bases=bases), order)


def matroid_from_circuits(n: int, circuits: Iterable[int], order: Sequence[int] | None = None) -> Matroid:
    return _make(n, ExplicitRep(n, circuits=circuits), order)


def _make(n: int, rep: object, order: Sequence[int] | None) -> Matroid:
    go = GroundOrder(tuple(order)) if order is not None else None
    return Matroid(n, rep, order=go)
