"""Fixtures and seeded generators for the test corpus."""

from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

from .antimatroid import Antimatroid, Clutter, minimal_sets
from .bits import full, mask_of
from .lattice import JDLattice
from .matroid import GroundOrder, Matroid, graphic_matroid, linear_matroid, uniform_matroid
from .wire import parse_spec

SEED = 20240601


def fixture_text(name: str) -> str:
    return resources.files("extorder.fixtures").joinpath(f"{name}.json").read_text()


def fig1() -> Matroid:
    m = parse_spec(fixture_text("fig1")).obj
    assert isinstance(m, Matroid)
    return m


def u24ce() -> Antimatroid:
    a = parse_spec(fixture_text("u24ce")).obj
    assert isinstance(a, Antimatroid)
    return a


def jdb() -> Antimatroid:
    a = parse_spec(fixture_text("jdb")).obj
    assert isinstance(a, Antimatroid)
    return a


def jdb_lattice() -> JDLattice:
    lat = parse_spec(fixture_text("jdb_lattice")).obj
    assert isinstance(lat, JDLattice)
    return lat


K4_EDGES = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def k4() -> Matroid:
    return graphic_matroid(K4_EDGES)


def k4_parallel() -> Matroid:
    return graphic_matroid(K4_EDGES + [(1, 2)])


def uniform_family(max_n: int = 7) -> list[tuple[str, Matroid]]:
    return [(f"U{r},{n}", uniform_matroid(r, n)) for n in range(max_n + 1) for r in range(n + 1)]


def random_gf2(count: int = 50, max_cols: int = 6, seed: int = SEED) -> list[tuple[str, Matroid]]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        cols = rng.randint(1, max_cols)
        rows = rng.randint(1, 4)
        matrix = [[rng.randint(0, 1) for _ in range(cols)] for _ in range(rows)]
        out.append((f"gf2-{k}", linear_matroid(matrix, 2)))
    return out


@lru_cache(maxsize=None)
def corpus_matroids() -> tuple[tuple[str, Matroid], ...]:
    """Uniform U_{r,n} (r <= n <= 7), K4, K4 plus a parallel edge, and 50 random GF(2) matroids."""
    return tuple(uniform_family() + [("K4", k4()), ("K4+e", k4_parallel())] + random_gf2())


def orderings(n: int, count: int = 20, seed: int = SEED) -> list[GroundOrder]:
    rng = random.Random(seed * 7919 + n)
    out = []
    for _ in range(count):
        perm = list(range(n))
        rng.shuffle(perm)
        out.append(GroundOrder(tuple(perm)))
    return out


def fuzz_antimatroids(count: int = 100, max_n: int = 8, seed: int = SEED) -> list[Antimatroid]:
    """Union-closures of the prefixes of a few random words; unused letters become loops."""
    rng = random.Random(seed + 1)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        fam = {0}
        for _ in range(rng.randint(1, 4)):
            word = rng.sample(range(n), rng.randint(0, n))
            pre = 0
            for e in word:
                pre |= 1 << e
                fam |= {f | pre for f in fam}
        out.append(Antimatroid(n, fam))
    return out


def fuzz_clutters(count: int = 200, max_n: int = 7, seed: int = SEED) -> list[Clutter]:
    rng = random.Random(seed + 2)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        sets = [mask_of(e for e in range(n) if rng.random() < 0.4) for _ in range(rng.randint(0, 6))]
        out.append(Clutter(n, minimal_sets(sets)))
    return out


def boolean_antimatroid(n: int) -> Antimatroid:
    return Antimatroid(n, range(1 << n))


def chain_antimatroid(n: int) -> Antimatroid:
    return Antimatroid(n, [full(k) for k in range(n + 1)])
