"""Finite abstract simplicial complexes and their combinatorial constructions.

Simplices are canonical tuples of strictly increasing non-negative vertex
ids.  A complex stores its full face closure; facets, per-dimension
simplex lists (lexicographic) and the derived posets/subdivisions are all
deterministic functions of that set, so every operation here is pure and
relabel-equivariant.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Simplex",
    "SimplicialComplex",
    "Poset",
    "make_simplex",
    "normalize_strata",
    "build_complex",
    "coskeleton",
    "lower_adjacent",
    "connected_components",
    "star",
    "without_star",
    "barycentric_vertex_ids",
    "barycentric_subdivision",
    "h_barycentric_subdivision",
    "face_poset",
    "h_face_poset",
]

Simplex = tuple[int, ...]


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Canonicalize a vertex collection into a simplex tuple."""
    vs = tuple(vertices)
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"malformed vertex id {v!r}")
    out = tuple(sorted(vs))
    for a, b in zip(out, out[1:]):
        if a == b:
            raise ValueError(f"repeated vertex {a} in simplex {vs!r}")
    return out


def normalize_strata(strata: Iterable[int]) -> tuple[int, ...]:
    """Canonicalize a strata set: sorted, distinct, non-negative, non-empty."""
    vals = list(strata)
    if not vals:
        raise ValueError("strata set must be non-empty")
    for h in vals:
        if not isinstance(h, int) or isinstance(h, bool) or h < 0:
            raise ValueError(f"malformed stratum {h!r}")
    out = tuple(sorted(vals))
    for a, b in zip(out, out[1:]):
        if a == b:
            raise ValueError(f"repeated stratum {a}")
    return out


class SimplicialComplex:
    """A finite simplicial complex, closed under taking faces.

    The empty complex is allowed and has dimension -1.
    """

    __slots__ = ("_simplices", "_facets", "_by_dim", "_hash")

    def __init__(self, simplices: frozenset[Simplex], facets: tuple[Simplex, ...]):
        # internal: use build_complex / from_simplices
        self._simplices = simplices
        self._facets = facets
        self._by_dim: dict[int, tuple[Simplex, ...]] = {}
        self._hash = None

    @classmethod
    def from_simplices(cls, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """Build from a face-closed simplex set (trusted, not re-closed)."""
        simp = frozenset(simplices)
        dominated: set[Simplex] = set()
        for s in simp:
            if len(s) > 1:
                for face in itertools.combinations(s, len(s) - 1):
                    dominated.add(face)
        facets = tuple(sorted((s for s in simp if s not in dominated),
                              key=lambda s: (len(s), s)))
        return cls(simp, facets)

    # -- accessors ------------------------------------------------------

    @property
    def facets(self) -> tuple[Simplex, ...]:
        return self._facets

    @property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self._facets), default=-1)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices(0))

    def simplices(self, n: int) -> tuple[Simplex, ...]:
        """All n-simplices, lexicographically sorted."""
        if n not in self._by_dim:
            self._by_dim[n] = tuple(sorted(
                s for s in self._simplices if len(s) == n + 1))
        return self._by_dim[n]

    def all_simplices(self) -> tuple[Simplex, ...]:
        """Every simplex, dimension-major then lexicographic."""
        out = []
        for n in range(self.dim + 1):
            out.extend(self.simplices(n))
        return tuple(out)

    def simplex_count(self) -> int:
        return len(self._simplices)

    def has(self, simplex: Simplex) -> bool:
        return tuple(simplex) in self._simplices

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._simplices <= other._simplices

    def without_star(self, sigma: Simplex) -> "SimplicialComplex":
        """The subcomplex obtained by deleting sigma and all its cofaces."""
        s = make_simplex(sigma)
        if s not in self._simplices:
            raise ValueError(f"simplex {s} not in complex")
        sset = set(s)
        keep = frozenset(t for t in self._simplices if not sset <= set(t))
        return SimplicialComplex.from_simplices(keep)

    def relabeled(self, mapping: Mapping[int, int]) -> "SimplicialComplex":
        """Apply an injective vertex relabeling."""
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("relabeling must be injective")
        return build_complex([[mapping[v] for v in f] for f in self._facets])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplices == other._simplices

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._simplices)
        return self._hash

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, facets={len(self._facets)})"


def build_complex(facet_list: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Complex generated by the given facets.

    Input facets are canonicalized; dominated entries and duplicates are
    silently absorbed.  Rebuilding from the facet output reproduces the
    same complex.
    """
    canon = [make_simplex(f) for f in facet_list]
    closure: set[Simplex] = set()
    for f in canon:
        for k in range(1, len(f) + 1):
            closure.update(itertools.combinations(f, k))
    return SimplicialComplex.from_simplices(frozenset(closure))


def coskeleton(x: SimplicialComplex, h: int) -> SimplicialComplex:
    """The subcomplex of simplices contained in some simplex of dim >= h."""
    if h < 0:
        raise ValueError("coskeleton index must be non-negative")
    if h == 0:
        return x
    return SimplicialComplex.from_simplices(
        s for s in x.all_simplices()
        if any(len(f) - 1 >= h and set(s) <= set(f) for f in x.facets))


def star(x: SimplicialComplex, sigma: Simplex) -> frozenset[Simplex]:
    """All cofaces of sigma in x, including sigma itself."""
    s = make_simplex(sigma)
    if not x.has(s):
        raise ValueError(f"simplex {s} not in complex")
    sset = set(s)
    return frozenset(t for t in x.all_simplices() if sset <= set(t))


def without_star(x: SimplicialComplex, sigma: Simplex) -> SimplicialComplex:
    return x.without_star(sigma)


def lower_adjacent(x: SimplicialComplex, tau: Simplex, tau2: Simplex,
                   h: int) -> bool:
    """Whether tau and tau2 share a common h-dimensional face in x."""
    a = make_simplex(tau)
    b = make_simplex(tau2)
    if not x.has(a):
        raise ValueError(f"simplex {a} not in complex")
    if not x.has(b):
        raise ValueError(f"simplex {b} not in complex")
    return len(set(a) & set(b)) >= h + 1


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def connected_components(x: SimplicialComplex, h0: int, h1: int
                         ) -> tuple[tuple[Simplex, ...], ...]:
    """Partition of the h0-simplices under (h0,h1)-walk equivalence.

    Two h0-simplices are equivalent when they are faces of the first and
    last member of a walk of h0-lower-adjacent simplices of dimension at
    least h1; singletons are kept.
    """
    if not 0 <= h0 < h1:
        raise ValueError(f"need 0 <= h0 < h1, got ({h0}, {h1})")
    base = x.simplices(h0)
    uf = _UnionFind(base)
    for d in range(h1, x.dim + 1):
        for tau in x.simplices(d):
            faces = list(itertools.combinations(tau, h0 + 1))
            for f in faces[1:]:
                uf.union(faces[0], f)
    classes: dict[Simplex, list[Simplex]] = {}
    for s in base:
        classes.setdefault(uf.find(s), []).append(s)
    return tuple(sorted(tuple(sorted(c)) for c in classes.values()))


class Poset:
    """A finite poset given by graded points and generating cover pairs.

    Points are opaque labels; covers are (lower, upper) index pairs whose
    transitive closure is the strict order.  Grades strictly increase
    along covers (checked).
    """

    __slots__ = ("points", "grades", "covers", "_succ", "_chains", "_hash")

    def __init__(self, points: Sequence, grades: Sequence[int],
                 covers: Iterable[tuple[int, int]]):
        self.points = tuple(points)
        self.grades = tuple(grades)
        if len(self.points) != len(self.grades):
            raise ValueError("points and grades must have equal length")
        cov = tuple(sorted(set((int(a), int(b)) for a, b in covers)))
        n = len(self.points)
        for a, b in cov:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("cover index out of range")
            if self.grades[a] >= self.grades[b]:
                raise ValueError("grades must strictly increase along covers")
        self.covers = cov
        self._succ: tuple[tuple[int, ...], ...] | None = None
        self._chains: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._hash = None

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return (self.points, self.grades, self.covers) == \
               (other.points, other.grades, other.covers)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.points, self.grades, self.covers))
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({len(self.points)} points, {len(self.covers)} covers)"

    def successors(self) -> tuple[tuple[int, ...], ...]:
        """Strict-order successor sets (transitive closure of covers)."""
        if self._succ is None:
            n = len(self.points)
            direct: list[set[int]] = [set() for _ in range(n)]
            for a, b in self.covers:
                direct[a].add(b)
            closed: list[set[int]] = [set() for _ in range(n)]
            # covers go up in grade, and grades follow index order is not
            # guaranteed, so close over a topological order of the DAG
            for i in sorted(range(n), key=lambda i: -self.grades[i]):
                acc = set()
                for j in direct[i]:
                    acc.add(j)
                    acc |= closed[j]
                closed[i] = acc
            self._succ = tuple(tuple(sorted(s)) for s in closed)
        return self._succ

    def le(self, a: int, b: int) -> bool:
        return a == b or b in self.successors()[a]

    def chains(self, length: int) -> tuple[tuple[int, ...], ...]:
        """All strictly increasing chains with `length` points, lex sorted."""
        if length < 1:
            raise ValueError("chain length must be >= 1")
        if length not in self._chains:
            if length == 1:
                self._chains[1] = tuple((i,) for i in range(len(self.points)))
            else:
                succ = self.successors()
                prev = self.chains(length - 1)
                out = []
                for c in prev:
                    for j in succ[c[-1]]:
                        out.append(c + (j,))
                self._chains[length] = tuple(out)
        return self._chains[length]

    def max_chain_length(self) -> int:
        k = 1
        while self.chains(k):
            k += 1
        return k - 1 if len(self.points) else 0


def face_poset(x: SimplicialComplex) -> Poset:
    """Simplices of x ordered by the face relation; grade = dimension."""
    points = x.all_simplices()
    index = {s: i for i, s in enumerate(points)}
    grades = [len(s) - 1 for s in points]
    covers = []
    for s in points:
        if len(s) > 1:
            i = index[s]
            for face in itertools.combinations(s, len(s) - 1):
                covers.append((index[face], i))
    return Poset(points, grades, covers)


def h_face_poset(x: SimplicialComplex, strata: Iterable[int]) -> Poset:
    """The subposet of the face poset on simplices with dimension in strata.

    Covers are the consecutive-strata containments; their transitive
    closure is containment restricted to the strata (strata may skip
    dimensions).
    """
    hs = [h for h in normalize_strata(strata) if h <= x.dim]
    points = []
    for h in hs:
        points.extend(x.simplices(h))
    index = {s: i for i, s in enumerate(points)}
    grades = [len(s) - 1 for s in points]
    covers = []
    for lo, hi in zip(hs, hs[1:]):
        for tau in x.simplices(hi):
            i = index[tau]
            for face in itertools.combinations(tau, lo + 1):
                covers.append((index[face], i))
    return Poset(points, grades, covers)


def barycentric_vertex_ids(x: SimplicialComplex) -> dict[Simplex, int]:
    """Fresh vertex ids for the simplices of x, dimension-major then lex."""
    return {s: i for i, s in enumerate(x.all_simplices())}


def barycentric_subdivision(x: SimplicialComplex,
                            ids: Mapping[Simplex, int] | None = None
                            ) -> SimplicialComplex:
    """The complex of chains of the face poset of x.

    Vertices are the simplices of x re-identified through `ids` (defaults
    to `barycentric_vertex_ids(x)`); simplices are the totally ordered
    chains.  Passing the ids of a larger complex keeps subdivisions of
    its subcomplexes nested.
    """
    if ids is None:
        ids = barycentric_vertex_ids(x)
    flags = []
    for f in x.facets:
        for perm in itertools.permutations(f):
            flags.append([ids[tuple(sorted(perm[:k]))]
                          for k in range(1, len(f) + 1)])
    return build_complex(flags)


def h_barycentric_subdivision(x: SimplicialComplex, strata: Iterable[int],
                              ids: Mapping[Simplex, int] | None = None
                              ) -> SimplicialComplex:
    """Subcomplex of the barycentric subdivision spanned by strata chains.

    Equals the full subdivision when strata covers 0..dim(x); removing a
    dimension removes the stars of the corresponding vertices.
    """
    if ids is None:
        ids = barycentric_vertex_ids(x)
    poset = h_face_poset(x, strata)
    chains: list[Simplex] = []
    k = 1
    while True:
        level = poset.chains(k)
        if not level:
            break
        for c in level:
            chains.append(tuple(sorted(ids[poset.points[i]] for i in c)))
        k += 1
    return SimplicialComplex.from_simplices(frozenset(chains))
