"""One-parameter persistence towers, barcodes, ladders and biparameter grids.

A Tower is a finite sequence of Z_p-spaces with composable step matrices
and an implicit terminal zero space.  Barcodes are computed from the rank
invariant by inclusion-exclusion; negative multiplicities are a hard
error because they can only arise from upstream bugs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError
from .fieldmath import (FpMatrix, _quotient_and_section, image_basis,
                        kernel_basis, rank, restrict_map)

__all__ = [
    "Tower",
    "Barcode",
    "Ladder",
    "BiGrid",
    "composite_rank",
    "barcode",
    "ladder_image",
    "ladder_kernel",
    "ladder_cokernel",
    "hilbert_function",
    "line_restriction",
]


@dataclass(frozen=True)
class Tower:
    """dims M_0..M_N and step matrices M_i -> M_{i+1}; M_{N+1} = 0 implicit."""

    p: int
    dims: tuple[int, ...]
    steps: tuple[FpMatrix, ...]

    def __post_init__(self):
        if not self.dims:
            raise ValueError("a tower needs at least one space")
        if len(self.steps) != len(self.dims) - 1:
            raise ValueError("need exactly one step per consecutive pair")
        for i, s in enumerate(self.steps):
            if s.p != self.p:
                raise ValueError("step modulus mismatch")
            if s.cols != self.dims[i] or s.rows != self.dims[i + 1]:
                raise ValueError(f"step {i} has shape {s.rows}x{s.cols}, "
                                 f"want {self.dims[i + 1]}x{self.dims[i]}")

    @property
    def length(self) -> int:
        """Number of indices (N + 1)."""
        return len(self.dims)


def composite_rank(tower: Tower, i: int, j: int) -> int:
    """Rank of the composed map M_i -> M_j (dims[i] when i == j)."""
    n = tower.length - 1
    if not 0 <= i <= j <= n:
        raise ValueError(f"indices ({i}, {j}) out of range 0..{n}")
    if i == j:
        return tower.dims[i]
    m = tower.steps[i]
    for k in range(i + 1, j):
        m = tower.steps[k] @ m
    return rank(m)


@dataclass(frozen=True)
class Barcode:
    """Multiset of half-open integer bars [b, d) with multiplicities.

    `length` is the number of tower indices; every bar satisfies
    0 <= b < d <= length and the per-index multiplicity sums reconstruct
    the tower dimensions.
    """

    length: int
    bars: tuple[tuple[int, int, int], ...]  # (birth, death, multiplicity)

    def __post_init__(self):
        prev = None
        for b, d, m in self.bars:
            if not (0 <= b < d <= self.length):
                raise ValueError(f"bar [{b},{d}) out of range")
            if m < 1:
                raise ValueError("bar multiplicity must be positive")
            if prev is not None and (b, d) <= prev:
                raise ValueError("bars must be sorted strictly by (birth, death)")
            prev = (b, d)

    def dims(self) -> tuple[int, ...]:
        out = [0] * self.length
        for b, d, m in self.bars:
            for i in range(b, d):
                out[i] += m
        return tuple(out)

    def multiplicity(self, b: int, d: int) -> int:
        for bb, dd, m in self.bars:
            if (bb, dd) == (b, d):
                return m
        return 0

    def total(self) -> int:
        return sum(m for _, _, m in self.bars)

    def as_multiset(self) -> dict[tuple[int, int], int]:
        return {(b, d): m for b, d, m in self.bars}

    @classmethod
    def from_multiset(cls, length: int, mults: dict[tuple[int, int], int]) -> "Barcode":
        bars = tuple(sorted((b, d, m) for (b, d), m in mults.items() if m))
        return cls(length, bars)

    def __iter__(self):
        return iter(self.bars)


def barcode(tower: Tower) -> Barcode:
    """Interval decomposition of the tower via the rank invariant.

    multiplicity[b, d) = r(b, d-1) - r(b-1, d-1) - r(b, d) + r(b-1, d)
    with r(i, j) the composite rank, r(-1, .) = 0 and r(., j) = 0 past
    the end.  A negative multiplicity raises InternalConsistencyError.
    """
    n = tower.length - 1
    # composite products share work: prod[i] holds ranks r(i, j) for j >= i
    table: dict[tuple[int, int], int] = {}
    for i in range(n + 1):
        table[(i, i)] = tower.dims[i]
        m = None
        for j in range(i + 1, n + 1):
            m = tower.steps[j - 1] if m is None else tower.steps[j - 1] @ m
            table[(i, j)] = rank(m)

    def r(i: int, j: int) -> int:
        if i < 0 or j > n:
            return 0
        return table[(i, j)]

    mults: dict[tuple[int, int], int] = {}
    for b in range(n + 1):
        for d in range(b + 1, n + 2):
            m = r(b, d - 1) - r(b - 1, d - 1) - r(b, d) + r(b - 1, d)
            if m < 0:
                raise InternalConsistencyError(
                    f"negative multiplicity {m} for bar [{b},{d})")
            if m:
                mults[(b, d)] = m
    out = Barcode.from_multiset(n + 2, mults)
    # reconstruction identity, cheap and load-bearing
    if out.dims()[:n + 1] != tower.dims:
        raise InternalConsistencyError("barcode does not reconstruct tower dims")
    return out


@dataclass(frozen=True)
class Ladder:
    """Two parallel towers joined by commuting vertical maps (rungs)."""

    bottom: Tower
    top: Tower
    rungs: tuple[FpMatrix, ...]

    def __post_init__(self):
        if self.bottom.length != self.top.length:
            raise ValueError("towers must have equal length")
        if len(self.rungs) != self.bottom.length:
            raise ValueError("need one rung per index")
        for i, phi in enumerate(self.rungs):
            if phi.cols != self.bottom.dims[i] or phi.rows != self.top.dims[i]:
                raise ValueError(f"rung {i} has wrong shape")
        for i in range(self.bottom.length - 1):
            lhs = self.top.steps[i] @ self.rungs[i]
            rhs = self.rungs[i + 1] @ self.bottom.steps[i]
            if lhs != rhs:
                raise InternalConsistencyError(
                    f"ladder square {i} does not commute")

    @property
    def p(self) -> int:
        return self.bottom.p


def ladder_image(ladder: Ladder) -> Tower:
    """Tower of the images of the rungs with restricted top steps."""
    bases = [image_basis(phi) for phi in ladder.rungs]
    steps = tuple(
        restrict_map(ladder.top.steps[i], bases[i], bases[i + 1])
        for i in range(len(bases) - 1))
    return Tower(ladder.p, tuple(b.dim for b in bases), steps)


def ladder_kernel(ladder: Ladder) -> Tower:
    """Tower of the kernels of the rungs with restricted bottom steps."""
    bases = [kernel_basis(phi) for phi in ladder.rungs]
    steps = tuple(
        restrict_map(ladder.bottom.steps[i], bases[i], bases[i + 1])
        for i in range(len(bases) - 1))
    return Tower(ladder.p, tuple(b.dim for b in bases), steps)


def ladder_cokernel(ladder: Ladder) -> Tower:
    """Tower of the cokernels of the rungs with the induced quotient steps."""
    p = ladder.p
    quots = []
    sections = []
    for i, phi in enumerate(ladder.rungs):
        q, s = _quotient_and_section(ladder.top.dims[i], image_basis(phi))
        quots.append(q)
        sections.append(s)
    steps = []
    for i in range(len(quots) - 1):
        step = quots[i + 1] @ ladder.top.steps[i] @ sections[i]
        # well-definedness of the induced map on the quotient
        if step @ quots[i] != quots[i + 1] @ ladder.top.steps[i]:
            raise InternalConsistencyError("cokernel step is not well defined")
        steps.append(step)
    return Tower(p, tuple(q.rows for q in quots), tuple(steps))


class BiGrid:
    """A commuting (attack x structure) grid of spaces and maps.

    Cell (i, h) has dimension dims[i][h]; right maps go (i, h)->(i+1, h)
    and up maps go (i, h)->(i, h+1).  Every square is verified to commute
    at construction.
    """

    __slots__ = ("p", "n_cols", "n_rows", "dims", "right", "up")

    def __init__(self, p: int, dims: list[list[int]],
                 right: dict[tuple[int, int], FpMatrix],
                 up: dict[tuple[int, int], FpMatrix]):
        self.p = p
        self.n_cols = len(dims)           # attack indices i
        self.n_rows = len(dims[0]) if dims else 0  # structural indices h
        if any(len(col) != self.n_rows for col in dims):
            raise ValueError("ragged grid")
        self.dims = tuple(tuple(col) for col in dims)
        self.right = dict(right)
        self.up = dict(up)
        for i in range(self.n_cols):
            for h in range(self.n_rows):
                if i + 1 < self.n_cols:
                    m = self.right[(i, h)]
                    if m.cols != self.dims[i][h] or m.rows != self.dims[i + 1][h]:
                        raise ValueError(f"right map ({i},{h}) has wrong shape")
                if h + 1 < self.n_rows:
                    m = self.up[(i, h)]
                    if m.cols != self.dims[i][h] or m.rows != self.dims[i][h + 1]:
                        raise ValueError(f"up map ({i},{h}) has wrong shape")
        for i in range(self.n_cols - 1):
            for h in range(self.n_rows - 1):
                lhs = self.up[(i + 1, h)] @ self.right[(i, h)]
                rhs = self.right[(i, h + 1)] @ self.up[(i, h)]
                if lhs != rhs:
                    raise InternalConsistencyError(
                        f"grid square ({i},{h}) does not commute")

    def dim(self, i: int, h: int) -> int:
        return self.dims[i][h]


def hilbert_function(grid: BiGrid) -> tuple[tuple[int, ...], ...]:
    """Pointwise dimensions, rows indexed by the structural level h."""
    return tuple(tuple(grid.dims[i][h] for i in range(grid.n_cols))
                 for h in range(grid.n_rows))


def line_restriction(grid: BiGrid, direction: str, index: int) -> Tower:
    """A horizontal (fixed h) or vertical (fixed i) line as a Tower."""
    if direction == "horizontal":
        if not 0 <= index < grid.n_rows:
            raise ValueError(f"row {index} out of range")
        dims = tuple(grid.dims[i][index] for i in range(grid.n_cols))
        steps = tuple(grid.right[(i, index)] for i in range(grid.n_cols - 1))
        return Tower(grid.p, dims, steps)
    if direction == "vertical":
        if not 0 <= index < grid.n_cols:
            raise ValueError(f"column {index} out of range")
        dims = tuple(grid.dims[index][h] for h in range(grid.n_rows))
        steps = tuple(grid.up[(index, h)] for h in range(grid.n_rows - 1))
        return Tower(grid.p, dims, steps)
    raise ValueError(f"direction must be 'horizontal' or 'vertical', got {direction!r}")
