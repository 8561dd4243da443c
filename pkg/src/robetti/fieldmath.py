"""Exact sparse linear algebra over prime fields Z_p.

Matrices are immutable and stored column-major: each column is a sorted
tuple of (row, value) pairs with values in [1, p).  Every reduction in
this module follows one deterministic pivot rule: the pivot of a column
is its nonzero entry with the lowest row index, and columns are
processed left to right.  Identical inputs therefore always produce
identical pivot sequences, bases and solutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InternalConsistencyError

__all__ = [
    "FpMatrix",
    "SubspaceBasis",
    "rank",
    "kernel_basis",
    "image_basis",
    "solve_in_image",
    "quotient_map",
    "restrict_map",
]


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool):
        raise ValueError(f"modulus must be an int, got {p!r}")
    if p < 2 or p >= 2**31:
        raise ValueError(f"modulus must satisfy 2 <= p < 2^31, got {p}")
    if p == 2:
        return
    if p % 2 == 0:
        raise ValueError(f"modulus {p} is not prime")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"modulus {p} is not prime")
        d += 2


class FpMatrix:
    """Sparse matrix over Z_p with canonical column-major storage."""

    __slots__ = ("rows", "cols", "p", "_columns", "_hash")

    def __init__(self, rows: int, cols: int, p: int,
                 columns: Iterable[Iterable[tuple[int, int]]]):
        _require_prime(p)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        normalized = []
        for col in columns:
            acc: dict[int, int] = {}
            for r, v in col:
                if not 0 <= r < rows:
                    raise ValueError(f"row index {r} out of range for {rows} rows")
                v %= p
                if v:
                    w = (acc.get(r, 0) + v) % p
                    if w:
                        acc[r] = w
                    else:
                        acc.pop(r, None)
            normalized.append(tuple(sorted(acc.items())))
        if len(normalized) != cols:
            raise ValueError(f"expected {cols} columns, got {len(normalized)}")
        self.rows = rows
        self.cols = cols
        self.p = p
        self._columns = tuple(normalized)
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(rows, cols, p, [()] * cols)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(n, n, p, [((i, 1),) for i in range(n)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], p: int,
                   cols: int | None = None) -> "FpMatrix":
        """Build from a row-major list of lists (cols needed when empty)."""
        rows = len(data)
        if rows:
            ncols = len(data[0])
            if any(len(r) != ncols for r in data):
                raise ValueError("ragged dense matrix")
        else:
            ncols = 0 if cols is None else cols
        columns = [[(i, data[i][j]) for i in range(rows)] for j in range(ncols)]
        return cls(rows, ncols, p, columns)

    @classmethod
    def from_columns(cls, rows: int, p: int,
                     cols: Sequence[dict[int, int]]) -> "FpMatrix":
        return cls(rows, len(cols), p, [tuple(c.items()) for c in cols])

    # -- accessors ----------------------------------------------------

    @property
    def entries(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Canonical sparse form: per column, (row, value) sorted by row."""
        return self._columns

    def col(self, j: int) -> dict[int, int]:
        return dict(self._columns[j])

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for r, v in col:
                out[r][j] = v
        return out

    def is_zero(self) -> bool:
        return all(not c for c in self._columns)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(c == ((j, 1),) for j, c in enumerate(self._columns))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.p, self._columns) == \
               (other.rows, other.cols, other.p, other._columns)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.p, self._columns))
        return self._hash

    def __repr__(self) -> str:
        return f"FpMatrix({self.rows}x{self.cols} mod {self.p})"

    # -- arithmetic ---------------------------------------------------

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if not isinstance(other, FpMatrix):
            return NotImplemented
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} != {other.rows}")
        p = self.p
        out_cols = []
        for col in other._columns:
            acc: dict[int, int] = {}
            for r, v in col:
                for rr, vv in self._columns[r]:
                    w = (acc.get(rr, 0) + v * vv) % p
                    if w:
                        acc[rr] = w
                    else:
                        acc.pop(rr, None)
            out_cols.append(acc)
        return FpMatrix.from_columns(self.rows, p, out_cols)

    def mul_vector(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        p = self.p
        out = [0] * self.rows
        for j, x in enumerate(vec):
            x %= p
            if not x:
                continue
            for r, v in self._columns[j]:
                out[r] = (out[r] + x * v) % p
        return out

    def hstack(self, other: "FpMatrix") -> "FpMatrix":
        if self.rows != other.rows or self.p != other.p:
            raise ValueError("hstack shape/modulus mismatch")
        return FpMatrix(self.rows, self.cols + other.cols, self.p,
                        self._columns + other._columns)


@dataclass(frozen=True)
class SubspaceBasis:
    """Independent columns spanning a subspace of Z_p^ambient_dim."""

    ambient_dim: int
    basis_columns: FpMatrix

    def __post_init__(self):
        m = self.basis_columns
        if m.rows != self.ambient_dim:
            raise ValueError("basis rows do not match ambient dimension")
        if rank(m) != m.cols:
            raise ValueError("basis columns are not linearly independent")

    @property
    def dim(self) -> int:
        return self.basis_columns.cols

    @property
    def p(self) -> int:
        return self.basis_columns.p


# -- elimination core --------------------------------------------------


def _submul(target: dict[int, int], src: dict[int, int], f: int, p: int) -> None:
    """target -= f * src (in place, dropping zeros)."""
    for r, v in src.items():
        w = (target.get(r, 0) - f * v) % p
        if w:
            target[r] = w
        else:
            target.pop(r, None)


class _Echelon:
    """Column echelon form of a matrix with optional companion tracking.

    After construction, ``reduced[k]`` are the pivot columns (pivot value
    1, pivot row = lowest nonzero row, all pivot rows distinct) and, when
    tracked, ``companion[k]`` holds the source-column combination with
    ``M @ companion[k] == reduced[k]``; ``kernel`` holds combinations
    mapping to zero.
    """

    __slots__ = ("p", "rows", "cols", "pivot_rows", "pivot_cols",
                 "reduced", "companion", "kernel", "_by_row")

    def __init__(self, m: FpMatrix, track_companion: bool = True):
        p = m.p
        self.p = p
        self.rows = m.rows
        self.cols = m.cols
        self.pivot_rows: list[int] = []
        self.pivot_cols: list[int] = []
        self.reduced: list[dict[int, int]] = []
        self.companion: list[dict[int, int]] = []
        self.kernel: list[dict[int, int]] = []
        self._by_row: dict[int, int] = {}
        n_zero = 0
        for j in range(m.cols):
            col = m.col(j)
            cmb = {j: 1} if track_companion else None
            while col:
                r = min(col)
                k = self._by_row.get(r)
                if k is None:
                    break
                f = col[r]
                _submul(col, self.reduced[k], f, p)
                if cmb is not None:
                    _submul(cmb, self.companion[k], f, p)
            if col:
                r = min(col)
                inv = pow(col[r], -1, p)
                if inv != 1:
                    col = {row: (v * inv) % p for row, v in col.items()}
                    if cmb is not None:
                        cmb = {row: (v * inv) % p for row, v in cmb.items()}
                self._by_row[r] = len(self.reduced)
                self.pivot_rows.append(r)
                self.pivot_cols.append(j)
                self.reduced.append(col)
                if cmb is not None:
                    self.companion.append(cmb)
            else:
                n_zero += 1
                if cmb is not None:
                    self.kernel.append(cmb)
        # rank-nullity, structural
        if len(self.reduced) + n_zero != m.cols:
            raise InternalConsistencyError("rank-nullity violated in echelon")

    @property
    def rank(self) -> int:
        return len(self.reduced)

    def reduce_vector(self, b: dict[int, int]):
        """Reduce b against the pivot columns.

        Returns (residual, combination) with
        ``b == M @ combination + residual`` and residual having no entry
        at any pivot row.
        """
        col = dict(b)
        cmb: dict[int, int] = {}
        p = self.p
        while col:
            r = min(col)
            k = self._by_row.get(r)
            if k is None:
                break
            f = col[r]
            _submul(col, self.reduced[k], f, p)
            _submul(cmb, self.companion[k], -f % p, p)
        return col, cmb

    def canonical_image(self) -> list[dict[int, int]]:
        """Fully back-substituted pivot columns, sorted by pivot row.

        The result is the unique reduced column-echelon basis of the
        column space, so matrices with equal column spans yield equal
        bases.
        """
        order = sorted(range(len(self.reduced)), key=lambda k: self.pivot_rows[k])
        cols = [dict(self.reduced[k]) for k in order]
        prows = [self.pivot_rows[k] for k in order]
        by_row = {r: i for i, r in enumerate(prows)}
        # clean in descending pivot-row order so the eliminator is already clean
        for i in range(len(cols) - 1, -1, -1):
            c = cols[i]
            hits = [r for r in c if r in by_row and by_row[r] != i]
            for r in sorted(hits, reverse=True):
                if r in c:
                    _submul(c, cols[by_row[r]], c[r], self.p)
        return cols


def rank(m: FpMatrix) -> int:
    """Rank of m over Z_p."""
    return _Echelon(m, track_companion=False).rank


def kernel_basis(m: FpMatrix) -> SubspaceBasis:
    """Deterministic basis of the null space of m."""
    ech = _Echelon(m)
    mat = FpMatrix.from_columns(m.cols, m.p, ech.kernel)
    return SubspaceBasis(m.cols, mat)


def image_basis(m: FpMatrix) -> SubspaceBasis:
    """Canonical reduced column-echelon basis of the column space of m."""
    ech = _Echelon(m, track_companion=False)
    mat = FpMatrix.from_columns(m.rows, m.p, ech.canonical_image())
    return SubspaceBasis(m.rows, mat)


def solve_in_image(m: FpMatrix, b: Sequence[int]) -> list[int] | None:
    """Some x with m @ x = b, or None when b is not in the column space.

    The solution is deterministic: free variables are zero under the
    fixed pivot order.
    """
    if len(b) != m.rows:
        raise ValueError(f"vector length {len(b)} != {m.rows} rows")
    ech = _Echelon(m)
    bd = {i: v % m.p for i, v in enumerate(b) if v % m.p}
    residual, cmb = ech.reduce_vector(bd)
    if residual:
        return None
    out = [0] * m.cols
    for j, v in cmb.items():
        out[j] = v
    return out


class _ImageSolver:
    """Echelonizes a matrix once and answers many solve_in_image queries."""

    __slots__ = ("m", "_ech")

    def __init__(self, m: FpMatrix):
        self.m = m
        self._ech = _Echelon(m)

    def solve(self, b: dict[int, int]) -> dict[int, int] | None:
        residual, cmb = self._ech.reduce_vector(b)
        if residual:
            return None
        return cmb


def quotient_map(ambient_dim: int, sub: SubspaceBasis) -> FpMatrix:
    """Surjection Q of Z_p^ambient onto a complement of sub, Ker Q = sub.

    Uses the pivot-complement convention: the canonical reduced basis of
    sub has pivot rows P; the quotient coordinates are the remaining rows
    and Q clears the pivot coordinates through the basis columns.
    """
    q, _ = _quotient_and_section(ambient_dim, sub)
    return q


def _quotient_and_section(ambient_dim: int, sub: SubspaceBasis):
    """Quotient map Q plus a section S with Q @ S = identity."""
    if sub.ambient_dim != ambient_dim:
        raise ValueError("subspace ambient dimension mismatch")
    p = sub.p
    canon = image_basis(sub.basis_columns)
    canon_cols = [dict(col) for col in canon.basis_columns.entries]
    pivot_set = {min(c) for c in canon_cols}
    complement = [r for r in range(ambient_dim) if r not in pivot_set]
    row_of = {r: i for i, r in enumerate(complement)}
    cols: list[dict[int, int]] = []
    by_pivot = {min(c): c for c in canon_cols}
    for c in range(ambient_dim):
        if c in pivot_set:
            s = by_pivot[c]
            cols.append({row_of[r]: (-v) % p for r, v in s.items() if r in row_of})
        else:
            cols.append({row_of[c]: 1})
    q = FpMatrix.from_columns(len(complement), p, cols)
    section = FpMatrix.from_columns(
        ambient_dim, p, [{r: 1} for r in complement])
    return q, section


def restrict_map(m: FpMatrix, domain_sub: SubspaceBasis,
                 codomain_sub: SubspaceBasis) -> FpMatrix:
    """Matrix of m restricted to span(domain_sub) in the given bases.

    Raises InternalConsistencyError when the image of some basis vector
    escapes span(codomain_sub) -- that signals a broken commutativity
    assumption upstream, never user error.
    """
    if m.cols != domain_sub.ambient_dim:
        raise ValueError("domain ambient dimension mismatch")
    if m.rows != codomain_sub.ambient_dim:
        raise ValueError("codomain ambient dimension mismatch")
    images = m @ domain_sub.basis_columns
    solver = _ImageSolver(codomain_sub.basis_columns)
    out_cols = []
    for j in range(images.cols):
        x = solver.solve(images.col(j))
        if x is None:
            raise InternalConsistencyError(
                "restricted image escapes the codomain subspace")
        out_cols.append(x)
    return FpMatrix.from_columns(codomain_sub.dim, m.p, out_cols)
