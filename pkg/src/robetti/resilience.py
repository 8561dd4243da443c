"""Attack cofiltrations and the resilience ladders built on top of them.

A cofiltration is a descending chain of complexes modelling simplex
removal.  Attacks delete a chosen simplex together with its star, the
minimal deletion preserving the subcomplex property.  Six-packs collect
the bottom/top/image/kernel/cokernel barcodes of the thick or cohesive
ladder over a cofiltration; the biparameter grid crosses attack time
with coskeleton depth.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .cohomology import betti, inclusion_map, induced_map_on_cohomology, tower_steps
from .complexes import (SimplicialComplex, Simplex, barycentric_subdivision,
                        barycentric_vertex_ids, coskeleton,
                        h_barycentric_subdivision, normalize_strata, star)
from .errors import InternalConsistencyError
from .invariants import last_vertex_map
from .persistence import (Barcode, BiGrid, Ladder, Tower, barcode,
                          ladder_cokernel, ladder_image, ladder_kernel)

__all__ = [
    "Cofiltration",
    "SixPack",
    "attack_random",
    "attack_targeted",
    "thick_sixpack",
    "cohesive_sixpack",
    "thick_bigrid",
]


@dataclass(frozen=True)
class Cofiltration:
    """A descending chain of complexes X^0 >= X^1 >= ... >= X^N."""

    steps: tuple[SimplicialComplex, ...]
    seed: int | None = None
    removed: tuple[Simplex, ...] | None = None

    def __post_init__(self):
        if not self.steps:
            raise ValueError("a cofiltration needs at least one step")
        for i in range(len(self.steps) - 1):
            if not self.steps[i + 1].is_subcomplex_of(self.steps[i]):
                raise ValueError(f"step {i + 1} is not a subcomplex of step {i}")

    @property
    def length(self) -> int:
        return len(self.steps)


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    """Order-preserving map, optionally over a thread pool."""
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def attack_random(x: SimplicialComplex, steps: int, seed: int,
                  target_dims: Iterable[int] | None = None) -> Cofiltration:
    """Remove one uniformly chosen simplex (plus star) per step.

    Candidates may be restricted to the given dimensions.  The result is
    deterministic per seed and records both the seed and the removal
    trace.
    """
    if steps < 1:
        raise ValueError("need at least one attack step")
    dims = None if target_dims is None else set(target_dims)
    rng = random.Random(seed)
    chain = [x]
    removed = []
    cur = x
    for _ in range(steps):
        candidates = [s for s in cur.all_simplices()
                      if dims is None or len(s) - 1 in dims]
        if not candidates:
            raise ValueError("complex already empty (no removable simplex)")
        choice = candidates[rng.randrange(len(candidates))]
        removed.append(choice)
        cur = cur.without_star(choice)
        chain.append(cur)
    return Cofiltration(tuple(chain), seed=seed, removed=tuple(removed))


def attack_targeted(x: SimplicialComplex, steps: int,
                    score: str = "max_dim") -> Cofiltration:
    """Greedy removal of the highest-scoring simplex (plus star) per step.

    Scores: "max_dim" prefers high-dimensional simplices, "max_cofaces"
    prefers simplices with the largest star.  Ties break lexicographically
    on the vertex tuple.
    """
    if steps < 1:
        raise ValueError("need at least one attack step")
    if score not in ("max_dim", "max_cofaces"):
        raise ValueError(f"unknown score {score!r}")
    chain = [x]
    removed = []
    cur = x
    for _ in range(steps):
        candidates = cur.all_simplices()
        if not candidates:
            raise ValueError("complex already empty (no removable simplex)")
        if score == "max_dim":
            key = lambda s: (-(len(s) - 1), s)
        else:
            key = lambda s: (-len(star(cur, s)), s)
        choice = min(candidates, key=key)
        removed.append(choice)
        cur = cur.without_star(choice)
        chain.append(cur)
    return Cofiltration(tuple(chain), removed=tuple(removed))


@dataclass(frozen=True)
class SixPack:
    """Bottom/top/image/kernel/cokernel barcodes of a resilience ladder.

    The relative-cohomology member is intentionally absent.  Pointwise,
    kernel + image dims reconstruct the bottom and image + cokernel dims
    reconstruct the top (verified).
    """

    degree: int
    mode: str                       # "thick" or "cohesive"
    parameter: tuple[int, ...]      # (h,) or the strata tuple
    bottom: Barcode
    top: Barcode
    image: Barcode
    kernel: Barcode
    cokernel: Barcode

    def __post_init__(self):
        bot = self.bottom.dims()
        top = self.top.dims()
        img = self.image.dims()
        ker = self.kernel.dims()
        cok = self.cokernel.dims()
        for i in range(len(bot)):
            if ker[i] + img[i] != bot[i] or img[i] + cok[i] != top[i]:
                raise InternalConsistencyError(
                    f"six-pack exactness fails at index {i}")


def _sixpack_from_ladder(ladder: Ladder, degree: int, mode: str,
                         parameter: tuple[int, ...]) -> SixPack:
    return SixPack(
        degree=degree,
        mode=mode,
        parameter=parameter,
        bottom=barcode(ladder.bottom),
        top=barcode(ladder.top),
        image=barcode(ladder_image(ladder)),
        kernel=barcode(ladder_kernel(ladder)),
        cokernel=barcode(ladder_cokernel(ladder)),
    )


def thick_ladder(cofiltration: Cofiltration, n: int, h: int, p: int,
                 threads: int = 1) -> Ladder:
    """The ladder H^n(X^i) -> H^n(coskeleton(X^i, h)) over attack time."""
    if n < 0 or h < 0:
        raise ValueError("degree and coskeleton index must be non-negative")
    bottoms = cofiltration.steps
    tops = [coskeleton(s, h) for s in bottoms]
    bdims, bsteps = tower_steps(bottoms, n, p)
    tdims, tsteps = tower_steps(tops, n, p)
    rungs = tuple(_pmap(
        lambda pair: induced_map_on_cohomology(inclusion_map(pair[1], pair[0]), n, p),
        list(zip(bottoms, tops)), threads))
    return Ladder(Tower(p, bdims, bsteps), Tower(p, tdims, tsteps), rungs)


def thick_sixpack(cofiltration: Cofiltration, n: int, h: int, p: int,
                  threads: int = 1) -> SixPack:
    ladder = thick_ladder(cofiltration, n, h, p, threads)
    return _sixpack_from_ladder(ladder, n, "thick", (h,))


def cohesive_ladder(cofiltration: Cofiltration, n: int,
                    strata: Iterable[int], p: int,
                    threads: int = 1) -> Ladder:
    """The ladder H^n(K(X^i)) -> H^n(K(X^i)^strata) over attack time.

    Subdivision vertex ids come from the initial complex so that the
    subdivisions of later steps stay nested.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    hs = normalize_strata(strata)
    ids = barycentric_vertex_ids(cofiltration.steps[0])
    bottoms = [barycentric_subdivision(s, ids) for s in cofiltration.steps]
    tops = [h_barycentric_subdivision(s, hs, ids) for s in cofiltration.steps]
    bdims, bsteps = tower_steps(bottoms, n, p)
    tdims, tsteps = tower_steps(tops, n, p)
    rungs = tuple(_pmap(
        lambda pair: induced_map_on_cohomology(inclusion_map(pair[1], pair[0]), n, p),
        list(zip(bottoms, tops)), threads))
    return Ladder(Tower(p, bdims, bsteps), Tower(p, tdims, tsteps), rungs)


def cohesive_sixpack(cofiltration: Cofiltration, n: int,
                     strata: Iterable[int], p: int,
                     threads: int = 1) -> SixPack:
    hs = normalize_strata(strata)
    ladder = cohesive_ladder(cofiltration, n, hs, p, threads)
    return _sixpack_from_ladder(ladder, n, "cohesive", hs)


def thick_bigrid(cofiltration: Cofiltration, n: int, p: int,
                 threads: int = 1) -> BiGrid:
    """The (attack step x coskeleton depth) grid of H^n spaces and maps.

    Levels run h = 0..dim(X^0)+1 so dropped dimensions pad with zero
    spaces and the grid stays rectangular.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    n_levels = max(cofiltration.steps[0].dim, 0) + 2
    cells = [[coskeleton(s, h) for h in range(n_levels)]
             for s in cofiltration.steps]
    dims = [[betti(c, n, p) for c in col] for col in cells]

    def right_map(args):
        i, h = args
        return induced_map_on_cohomology(
            inclusion_map(cells[i + 1][h], cells[i][h]), n, p)

    def up_map(args):
        i, h = args
        return induced_map_on_cohomology(
            inclusion_map(cells[i][h + 1], cells[i][h]), n, p)

    n_cols = len(cells)
    right_keys = [(i, h) for i in range(n_cols - 1) for h in range(n_levels)]
    up_keys = [(i, h) for i in range(n_cols) for h in range(n_levels - 1)]
    right_vals = _pmap(right_map, right_keys, threads)
    up_vals = _pmap(up_map, up_keys, threads)
    right = dict(zip(right_keys, right_vals))
    up = dict(zip(up_keys, up_vals))
    return BiGrid(p, dims, right, up)
