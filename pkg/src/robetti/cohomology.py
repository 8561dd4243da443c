"""Simplicial and poset cochain complexes over Z_p and their induced maps.

Coboundaries use the alternating face-deletion sign convention; cochain
maps of simplicial morphisms carry the sign of the permutation sorting
the image vertices and vanish on collapsed simplices.  Cohomology bases
are explicit cocycle representatives so induced maps come out as honest
matrices between the chosen bases.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Mapping

from .complexes import Poset, SimplicialComplex
from .errors import InternalConsistencyError
from .fieldmath import (FpMatrix, SubspaceBasis, _Echelon, _ImageSolver,
                        _submul, image_basis, kernel_basis, rank)

__all__ = [
    "CochainComplexRep",
    "CohomologyBasis",
    "SimplicialMap",
    "simplicial_cochain_complex",
    "poset_cochain_complex",
    "coboundary_matrix",
    "betti",
    "poset_betti",
    "cochain_map",
    "cohomology_basis",
    "induced_map_on_cohomology",
    "inclusion_map",
    "tower_steps",
]


@dataclass(frozen=True)
class SimplicialMap:
    """A vertex map carrying simplices of source into simplices of target."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, source: SimplicialComplex, target: SimplicialComplex,
                  vertex_map: Mapping[int, int]) -> "SimplicialMap":
        m = cls(source, target, tuple(sorted(vertex_map.items())))
        m.validate()
        return m

    def validate(self) -> None:
        vmap = self.mapping
        for v in self.source.vertices:
            if v not in vmap:
                raise ValueError(f"vertex {v} has no image")
        # facet images determine all simplex images
        for f in self.source.facets:
            image = tuple(sorted({vmap[v] for v in f}))
            if not self.target.has(image):
                raise ValueError(f"image of facet {f} is not a simplex of target")

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.vertex_map)

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other (other.source -> self.target)."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        vmap = self.mapping
        composed = {v: vmap[w] for v, w in other.vertex_map}
        return SimplicialMap.from_dict(other.source, self.target, composed)


def inclusion_map(sub: SimplicialComplex, sup: SimplicialComplex) -> SimplicialMap:
    """The inclusion of a subcomplex, identity on vertex ids."""
    if not sub.is_subcomplex_of(sup):
        raise ValueError("not a subcomplex")
    return SimplicialMap.from_dict(sub, sup, {v: v for v in sub.vertices})


def _inversion_sign(values: tuple[int, ...]) -> int:
    """Sign of the permutation sorting a tuple of distinct values."""
    inv = 0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] > values[j]:
                inv += 1
    return -1 if inv % 2 else 1


class CochainComplexRep:
    """A cochain complex of Z_p-spaces with verified deltas and fixed bases.

    dims[n] is the dimension of degree n, deltas[n] the matrix of
    delta^n into degree n+1 (the top delta has zero rows), bases[n] the
    labels indexing the coordinates.  delta(n+1) @ delta(n) == 0 is
    checked at construction.
    """

    __slots__ = ("p", "dims", "deltas", "bases", "_cohomology", "_solvers")

    def __init__(self, p: int, dims: tuple[int, ...],
                 deltas: tuple[FpMatrix, ...], bases: tuple[tuple, ...]):
        if len(deltas) != len(dims) or len(bases) != len(dims):
            raise ValueError("dims/deltas/bases length mismatch")
        for n, d in enumerate(deltas):
            if d.cols != dims[n]:
                raise ValueError(f"delta^{n} has {d.cols} columns, want {dims[n]}")
            want_rows = dims[n + 1] if n + 1 < len(dims) else 0
            if d.rows != want_rows:
                raise ValueError(f"delta^{n} has {d.rows} rows, want {want_rows}")
        for n in range(len(deltas) - 1):
            if not (deltas[n + 1] @ deltas[n]).is_zero():
                raise InternalConsistencyError(
                    f"delta^{n + 1} o delta^{n} != 0")
        self.p = p
        self.dims = dims
        self.deltas = deltas
        self.bases = bases
        self._cohomology: dict[int, CohomologyBasis] = {}
        self._solvers: dict[int, _ImageSolver] = {}

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def dim(self, n: int) -> int:
        if 0 <= n < len(self.dims):
            return self.dims[n]
        return 0

    def delta(self, n: int) -> FpMatrix:
        if 0 <= n < len(self.deltas):
            return self.deltas[n]
        return FpMatrix.zeros(self.dim(n + 1), self.dim(n), self.p)

    def betti(self, n: int) -> int:
        if n < 0 or self.dim(n) == 0:
            return 0
        return self.dim(n) - rank(self.delta(n)) - rank(self.delta(n - 1))

    def cohomology_basis(self, n: int) -> "CohomologyBasis":
        if n not in self._cohomology:
            self._cohomology[n] = _extract_cohomology_basis(self, n)
        return self._cohomology[n]

    def class_coordinates(self, n: int, cocycles: FpMatrix) -> FpMatrix:
        """Coordinates of cocycle columns in the degree-n cohomology basis."""
        basis = self.cohomology_basis(n)
        k = basis.reps.dim
        if cocycles.cols and not (self.delta(n) @ cocycles).is_zero():
            raise InternalConsistencyError("input column is not a cocycle")
        if n not in self._solvers:
            aug = basis.reps.basis_columns.hstack(self.delta(n - 1))
            self._solvers[n] = _ImageSolver(aug)
        solver = self._solvers[n]
        cols = []
        for j in range(cocycles.cols):
            x = solver.solve(cocycles.col(j))
            if x is None:
                raise InternalConsistencyError(
                    "cocycle not expressible against the cohomology basis")
            cols.append({i: v for i, v in x.items() if i < k})
        return FpMatrix.from_columns(k, self.p, cols)


@dataclass(frozen=True)
class CohomologyBasis:
    """Cocycle representatives projecting to a basis of Ker/Im in a degree."""

    degree: int
    reps: SubspaceBasis


def _extract_cohomology_basis(rep: CochainComplexRep, n: int) -> CohomologyBasis:
    p = rep.p
    if rep.dim(n) == 0:
        return CohomologyBasis(n, SubspaceBasis(0, FpMatrix.zeros(0, 0, p)))
    kernel = kernel_basis(rep.delta(n))
    boundary = image_basis(rep.delta(n - 1))
    # extend the boundary basis to the kernel; the added columns represent
    # a basis of the cohomology quotient
    span = _Echelon(boundary.basis_columns, track_companion=False)
    added = []
    for j in range(kernel.basis_columns.cols):
        col = kernel.basis_columns.col(j)
        work = dict(col)
        while work:
            r = min(work)
            k = span._by_row.get(r)
            if k is None:
                break
            _submul(work, span.reduced[k], work[r], p)
        if work:
            r = min(work)
            inv = pow(work[r], -1, p)
            if inv != 1:
                work = {row: (v * inv) % p for row, v in work.items()}
            span._by_row[r] = len(span.reduced)
            span.reduced.append(work)
            added.append(col)
    mat = FpMatrix.from_columns(rep.dim(n), p, [dict(c) for c in added])
    if mat.cols != rep.betti(n):
        raise InternalConsistencyError("cohomology basis size != betti number")
    return CohomologyBasis(n, SubspaceBasis(rep.dim(n), mat))


# -- simplicial side ---------------------------------------------------


@functools.lru_cache(maxsize=512)
def simplicial_cochain_complex(x: SimplicialComplex, p: int) -> CochainComplexRep:
    """The simplicial cochain complex of x over Z_p, degrees 0..dim."""
    top = x.dim
    if top < 0:
        return CochainComplexRep(p, (), (), ())
    bases = tuple(x.simplices(n) for n in range(top + 1))
    dims = tuple(len(b) for b in bases)
    deltas = []
    for n in range(top + 1):
        lower = {s: i for i, s in enumerate(bases[n])}
        upper = bases[n + 1] if n + 1 <= top else ()
        cols: list[list[tuple[int, int]]] = [[] for _ in range(dims[n])]
        for r, sigma in enumerate(upper):
            for j in range(len(sigma)):
                face = sigma[:j] + sigma[j + 1:]
                sign = 1 if j % 2 == 0 else -1
                cols[lower[face]].append((r, sign))
        deltas.append(FpMatrix(len(upper), dims[n], p,
                               [tuple(c) for c in cols]))
    return CochainComplexRep(p, dims, tuple(deltas), bases)


def coboundary_matrix(x: SimplicialComplex, n: int, p: int) -> FpMatrix:
    """Matrix of delta^n on the lexicographic simplex bases."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return simplicial_cochain_complex(x, p).delta(n)


def betti(x: SimplicialComplex, n: int, p: int) -> int:
    """dim H^n(x; Z_p); zero above the dimension of x."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return simplicial_cochain_complex(x, p).betti(n)


def cohomology_basis(rep: CochainComplexRep, n: int) -> CohomologyBasis:
    return rep.cohomology_basis(n)


def cochain_map(f: SimplicialMap, n: int, p: int) -> FpMatrix:
    """Matrix of f^n : C^n(target) -> C^n(source).

    Simplices whose image collapses give zero rows; otherwise the entry is
    the sign of the permutation sorting the image vertices.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    src = simplicial_cochain_complex(f.source, p)
    tgt = simplicial_cochain_complex(f.target, p)
    vmap = f.mapping
    tgt_index = {s: i for i, s in enumerate(tgt.bases[n])} \
        if n <= tgt.top_degree else {}
    entries = []
    for r, sigma in enumerate(src.bases[n] if n <= src.top_degree else ()):
        image = tuple(vmap[v] for v in sigma)
        if len(set(image)) != len(image):
            continue
        tau = tuple(sorted(image))
        entries.append((r, tgt_index[tau], _inversion_sign(image)))
    cols: list[list[tuple[int, int]]] = [[] for _ in range(tgt.dim(n))]
    for r, c, v in entries:
        cols[c].append((r, v))
    return FpMatrix(src.dim(n), tgt.dim(n), p, [tuple(c) for c in cols])


def induced_map_on_cohomology(f: SimplicialMap, n: int, p: int) -> FpMatrix:
    """Matrix of H^n(f) : H^n(target) -> H^n(source) in the fixed bases."""
    src = simplicial_cochain_complex(f.source, p)
    tgt = simplicial_cochain_complex(f.target, p)
    reps = tgt.cohomology_basis(n).reps.basis_columns
    mapped = cochain_map(f, n, p) @ reps
    return src.class_coordinates(n, mapped)


def tower_steps(complexes, n: int, p: int) -> tuple[tuple[int, ...], tuple[FpMatrix, ...]]:
    """Dims and step matrices of H^n along a descending chain of complexes."""
    dims = tuple(betti(c, n, p) for c in complexes)
    steps = []
    for big, small in zip(complexes, complexes[1:]):
        steps.append(induced_map_on_cohomology(inclusion_map(small, big), n, p))
    return dims, tuple(steps)


# -- poset side --------------------------------------------------------


@functools.lru_cache(maxsize=512)
def poset_cochain_complex(poset: Poset, p: int) -> CochainComplexRep:
    """Standard-resolution cochain complex of the constant sheaf on a poset.

    The degree-n basis consists of the strictly increasing chains of n+1
    points; the coboundary is the alternating chain-deletion sum.
    """
    if len(poset) == 0:
        return CochainComplexRep(p, (), (), ())
    bases = []
    k = 1
    while True:
        level = poset.chains(k)
        if not level:
            break
        bases.append(level)
        k += 1
    dims = tuple(len(b) for b in bases)
    deltas = []
    for n in range(len(bases)):
        lower = {c: i for i, c in enumerate(bases[n])}
        upper = bases[n + 1] if n + 1 < len(bases) else ()
        cols: list[list[tuple[int, int]]] = [[] for _ in range(dims[n])]
        for r, chain in enumerate(upper):
            # every one-point deletion of a chain is again a chain
            for j in range(len(chain)):
                sub = chain[:j] + chain[j + 1:]
                sign = 1 if j % 2 == 0 else -1
                cols[lower[sub]].append((r, sign))
        deltas.append(FpMatrix(len(upper), dims[n], p,
                               [tuple(c) for c in cols]))
    return CochainComplexRep(p, dims, tuple(deltas), tuple(bases))


def poset_betti(poset: Poset, n: int, p: int) -> int:
    """dim H^n of the constant sheaf on the poset."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    return poset_cochain_complex(poset, p).betti(n)
