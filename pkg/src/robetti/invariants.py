"""Thick and cohesive Betti numbers and their persistent refinements.

Thick invariants come from the coskeletal cofiltration; cohesive
invariants from constant-sheaf cohomology of strata-restricted face
posets, computed through two independent routes that are asserted to
agree.  The comparison map into the strata world is realized through the
last-vertex simplicial map from the barycentric subdivision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .cohomology import (SimplicialMap, betti, inclusion_map,
                         induced_map_on_cohomology, poset_betti, tower_steps)
from .complexes import (SimplicialComplex, barycentric_subdivision,
                        barycentric_vertex_ids, connected_components,
                        coskeleton, h_barycentric_subdivision, h_face_poset,
                        normalize_strata)
from .errors import InternalConsistencyError
from .fieldmath import FpMatrix, rank
from .persistence import Barcode, Tower, barcode

__all__ = [
    "ThickProfile",
    "CohesiveReport",
    "thick_betti",
    "coskeletal_tower",
    "thick_persistent_betti",
    "thick_profile",
    "cohesive_betti",
    "gamma_dimension",
    "cohesive_map",
    "persistent_cohesive_betti",
    "cohesive_relation_check",
    "cohesive_report",
    "last_vertex_map",
]


# -- thick side ---------------------------------------------------------


def thick_betti(x: SimplicialComplex, n: int, h: int, p: int) -> int:
    """dim H^n of the h-coskeleton; zero once h exceeds dim(x)."""
    if n < 0 or h < 0:
        raise ValueError("degree and coskeleton index must be non-negative")
    return betti(coskeleton(x, h), n, p)


def coskeletal_tower(x: SimplicialComplex, n: int, p: int) -> Tower:
    """H^n along the coskeleton cofiltration, terminal empty complex included."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    complexes = [coskeleton(x, h) for h in range(max(x.dim, 0) + 2)]
    dims, steps = tower_steps(complexes, n, p)
    return Tower(p, dims, steps)


def thick_persistent_betti(x: SimplicialComplex, n: int, b: int, d: int,
                           p: int) -> int:
    """Multiplicity of the bar [b, d) in the coskeletal tower of degree n."""
    if not 0 <= b < d:
        raise ValueError("need 0 <= b < d")
    code = barcode(coskeletal_tower(x, n, p))
    return code.multiplicity(b, d)


@dataclass(frozen=True)
class ThickProfile:
    """All thick Betti data of a complex: the (n, h) table plus barcodes."""

    p: int
    dim: int
    table: tuple[tuple[int, ...], ...]        # [n][h], h = 0..dim+1
    barcodes: tuple[Barcode, ...]             # per degree n = 0..dim

    def thick(self, n: int, h: int) -> int:
        if 0 <= n <= self.dim and 0 <= h <= self.dim + 1:
            return self.table[n][h]
        return 0

    def persistent(self, n: int, b: int, d: int) -> int:
        if 0 <= n <= self.dim:
            return self.barcodes[n].multiplicity(b, d)
        return 0


def thick_profile(x: SimplicialComplex, p: int) -> ThickProfile:
    dim = x.dim
    if dim < 0:
        return ThickProfile(p, -1, (), ())
    table = []
    codes = []
    for n in range(dim + 1):
        tower = coskeletal_tower(x, n, p)
        code = barcode(tower)
        table.append(tower.dims)
        codes.append(code)
        # stratification of H^n over the birth-0 bars
        born_zero = sum(m for b, d, m in code if b == 0)
        if born_zero != tower.dims[0]:
            raise InternalConsistencyError(
                "birth-0 bars do not stratify the Betti number")
    return ThickProfile(p, dim, tuple(table), tuple(codes))


# -- cohesive side ------------------------------------------------------


def cohesive_betti(x: SimplicialComplex, n: int,
                   strata: Iterable[int], p: int) -> int:
    """dim H^n of the constant sheaf on the strata face poset.

    Computed through both the poset standard resolution and the
    strata-restricted barycentric subdivision; the two must agree.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    hs = normalize_strata(strata)
    via_poset = poset_betti(h_face_poset(x, hs), n, p)
    via_subdivision = betti(h_barycentric_subdivision(x, hs), n, p)
    if via_poset != via_subdivision:
        raise InternalConsistencyError(
            f"cohesive routes disagree in degree {n}: "
            f"poset {via_poset} vs subdivision {via_subdivision}")
    return via_poset


def gamma_dimension(x: SimplicialComplex, h0: int, h1: int, p: int) -> int:
    """Number of (h0, h1)-connected components of x.

    Agrees with the degree-0 cohesive Betti number for strata starting
    (h0, h1); the agreement is asserted.
    """
    classes = connected_components(x, h0, h1)
    count = len(classes)
    if count != cohesive_betti(x, 0, (h0, h1), p):
        raise InternalConsistencyError(
            "component count disagrees with cohesive Betti number")
    return count


def last_vertex_map(x: SimplicialComplex,
                    subdivision: SimplicialComplex,
                    ids: dict[tuple[int, ...], int]) -> SimplicialMap:
    """The simplicial map K(x) -> x sending each simplex-vertex to max."""
    simplex_of = {i: s for s, i in ids.items()}
    vmap = {v: simplex_of[v][-1] for v in subdivision.vertices}
    return SimplicialMap.from_dict(subdivision, x, vmap)


def cohesive_map(x: SimplicialComplex, n: int,
                 strata: Iterable[int], p: int) -> FpMatrix:
    """Matrix of H^n(x) -> H^n of the strata poset, via the subdivision.

    The comparison isomorphism H^n(x) = H^n(K(x)) is realized by the
    last-vertex map and asserted to be invertible; the result is its
    composition with the restriction to the strata subdivision.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    hs = normalize_strata(strata)
    if x.dim < 0:
        raise ValueError("cohesive map needs a non-empty complex")
    ids = barycentric_vertex_ids(x)
    subdiv = barycentric_subdivision(x, ids)
    sub_h = h_barycentric_subdivision(x, hs, ids)
    comparison = induced_map_on_cohomology(last_vertex_map(x, subdiv, ids), n, p)
    if comparison.rows != comparison.cols or rank(comparison) != comparison.rows:
        raise InternalConsistencyError(
            "last-vertex comparison map is not an isomorphism")
    restriction = induced_map_on_cohomology(
        inclusion_map(sub_h, subdiv), n, p)
    phi = restriction @ comparison
    if rank(phi) != rank(restriction):
        raise InternalConsistencyError("composition with isomorphism lost rank")
    return phi


def persistent_cohesive_betti(x: SimplicialComplex, n: int,
                              strata: Iterable[int], p: int) -> int:
    """dim of the image of the cohesive map (holes surviving the strata)."""
    return rank(cohesive_map(x, n, strata, p))


def cohesive_relation_check(x: SimplicialComplex, strata: Iterable[int],
                            p: int) -> tuple[int, int]:
    """Both sides of the degree-0 cohesive/thick relation, asserted equal.

    For strata (0, h1, ...): cohesive beta^0 equals thick beta^{0,h1}
    plus the number of vertices in no simplex of dimension >= h1.
    """
    hs = normalize_strata(strata)
    if hs[0] != 0 or len(hs) < 2:
        raise ValueError("strata must start with 0 and have a second member")
    h1 = hs[1]
    lhs = cohesive_betti(x, 0, hs, p)
    covered: set[int] = set()
    for d in range(h1, x.dim + 1):
        for s in x.simplices(d):
            covered.update(s)
    isolated = sum(1 for v in x.vertices if v not in covered)
    rhs = thick_betti(x, 0, h1, p) + isolated
    if lhs != rhs:
        raise InternalConsistencyError(
            f"cohesive relation violated: {lhs} != {rhs}")
    return lhs, rhs


@dataclass(frozen=True)
class CohesiveReport:
    """Per-degree cohesive invariants of a complex for one strata set."""

    p: int
    strata: tuple[int, ...]
    degrees: tuple[int, ...]
    classical: tuple[int, ...]     # beta^n(x)
    cohesive: tuple[int, ...]      # beta^{n, strata}
    image: tuple[int, ...]         # dim img phi
    kernel: tuple[int, ...]
    cokernel: tuple[int, ...]


def cohesive_report(x: SimplicialComplex, strata: Iterable[int],
                    p: int) -> CohesiveReport:
    hs = normalize_strata(strata)
    degrees = tuple(range(max(x.dim, 0) + 1))
    classical = []
    cohesive = []
    image = []
    kernel = []
    cokernel = []
    for n in degrees:
        bn = betti(x, n, p)
        bh = cohesive_betti(x, n, hs, p)
        phi = cohesive_map(x, n, hs, p)
        img = rank(phi)
        if img > min(bn, bh):
            raise InternalConsistencyError("image exceeds its bounds")
        classical.append(bn)
        cohesive.append(bh)
        image.append(img)
        kernel.append(bn - img)
        cokernel.append(bh - img)
    return CohesiveReport(p, hs, degrees, tuple(classical), tuple(cohesive),
                          tuple(image), tuple(kernel), tuple(cokernel))
