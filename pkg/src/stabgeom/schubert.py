"""Schubert cells of Gr(l, k) and of the Lagrangian Grassmannian, and
exhaustive enumeration oracles for small parameters.

Cell labels follow the signed-permutation notation: type-A columns are a
subset of {1..l}, type-C negatives a subset of {1..l}.  Coordinates of
vectors stay 0-based as everywhere else in the package.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterator

from .counts import grassmannian_count
from .errors import TooLarge
from .field import FieldSpec, field_of_order
from .linalg import (
    Subspace,
    flag_subspace,
    intersect,
    intersect_coordinate,
    is_isotropic,
    is_lagrangian,
    pack,
    subspace_from_packed,
)

MAX_CELLS = 2**20
MAX_ENUMERATION = 10**7


def _as_field(q: int | FieldSpec) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field_of_order(q)


@dataclass(frozen=True)
class CellIndexA:
    """Cell of Gr(l, k) labelled by the k special rows sigma(1) < ... < sigma(k)."""

    l: int
    k: int
    columns: tuple[int, ...]

    def __post_init__(self):
        cols = self.columns
        if len(cols) != self.k or any(a >= b for a, b in zip(cols, cols[1:])):
            raise ValueError(f"columns {cols} are not a strictly increasing {self.k}-subset")
        if cols and not (1 <= cols[0] and cols[-1] <= self.l):
            raise ValueError(f"columns {cols} outside 1..{self.l}")

    @property
    def dimension(self) -> int:
        """Pairs (a, b) with a special, b non-special and sigma(a) > sigma(b)."""
        others = [c for c in range(1, self.l + 1) if c not in self.columns]
        return sum(1 for a in self.columns for b in others if a > b)

    def flag_dims(self) -> tuple[int, ...]:
        """dim L ∩ F^j for j = 0..l, for any L in the cell."""
        return tuple(self.k - sum(1 for a in self.columns if a > j) for j in range(self.l + 1))


@dataclass(frozen=True)
class CellIndexC:
    """Cell of LGr(2l) labelled by the set of negated values among sigma(1..l)."""

    l: int
    negatives: tuple[int, ...]

    def __post_init__(self):
        neg = self.negatives
        if any(a >= b for a, b in zip(neg, neg[1:])) or (neg and not (1 <= neg[0] and neg[-1] <= self.l)):
            raise ValueError(f"negatives {neg} must be increasing inside 1..{self.l}")

    @property
    def signed(self) -> tuple[int, ...]:
        """The normalised representative sigma(1) < ... < sigma(l)."""
        return tuple(sorted(-m if m in self.negatives else m for m in range(1, self.l + 1)))

    @property
    def dimension(self) -> int:
        s = self.signed
        return sum(1 for a in range(self.l) for b in range(a, self.l) if s[a] + s[b] < 0)


@dataclass(frozen=True)
class CellProfile:
    dims: tuple[int, ...]

    def __post_init__(self):
        d = self.dims
        if not d or d[0] != 0 or any(b - a not in (0, 1) for a, b in zip(d, d[1:])):
            raise ValueError(f"{d} is not a flag intersection profile")


def cells_A(l: int, k: int) -> list[tuple[CellIndexA, int]]:
    """All cells of Gr(l, k) with their dimensions, in colex order of the column set."""
    if not 0 <= k <= l:
        raise ValueError(f"need 0 <= k <= l, got l={l}, k={k}")
    if comb(l, k) > MAX_CELLS:
        raise TooLarge(f"C({l},{k}) cells exceed {MAX_CELLS}")
    subsets = sorted(itertools.combinations(range(1, l + 1), k), key=lambda c: c[::-1])
    out = []
    for cols in subsets:
        cell = CellIndexA(l, k, cols)
        out.append((cell, cell.dimension))
    return out


def cells_C(l: int) -> list[tuple[CellIndexC, int]]:
    """All 2^l cells of LGr(2l) with their dimensions."""
    if l < 0 or l > 20:
        raise TooLarge(f"l={l} outside the supported range 0..20")
    out = []
    for mask in range(2**l):
        neg = tuple(m for m in range(1, l + 1) if mask >> (m - 1) & 1)
        cell = CellIndexC(l, neg)
        out.append((cell, cell.dimension))
    return out


def cell_profile(L: Subspace) -> CellProfile:
    """dim L ∩ F^j for j = 0..ambient, intersecting with the standard flag."""
    return CellProfile(tuple(intersect(L, flag_subspace(L.field, L.ambient, j)).dim
                             for j in range(L.ambient + 1)))


def cell_of_subspace_A(L: Subspace) -> CellIndexA:
    d = cell_profile(L).dims
    cols = tuple(j for j in range(1, len(d)) if d[j] > d[j - 1])
    return CellIndexA(L.ambient, L.dim, cols)


def isotropic_flag_order(l: int) -> list[int]:
    """Coordinates x_1..x_l, z_l..z_1 as 0-based indices; prefixes form an isotropic flag."""
    return list(range(l)) + list(range(2 * l - 1, l - 1, -1))


def cell_of_lagrangian(L: Subspace) -> CellIndexC:
    """Type-C cell of a Lagrangian, read off its jumps along the isotropic flag."""
    l = L.ambient // 2
    order = isotropic_flag_order(l)
    negatives = []
    prev = 0
    for pos in range(1, 2 * l + 1):
        d = intersect_coordinate(L, order[:pos]).dim
        if d > prev and pos > l:
            negatives.append(pos - l)
        prev = d
    return CellIndexC(l, tuple(sorted(negatives)))


def _cell_vectors(field: FieldSpec, cell: CellIndexA) -> Iterator[list[int]]:
    """Packed spanning rows of every subspace in the cell (odometer order on free entries)."""
    special = set(c - 1 for c in cell.columns)
    stars = [(a, r) for a, c in enumerate(cell.columns) for r in range(c - 1) if r not in special]
    for values in itertools.product(range(field.q), repeat=len(stars)):
        cols = [[0] * cell.l for _ in cell.columns]
        for a, c in enumerate(cell.columns):
            cols[a][c - 1] = 1
        for (a, r), v in zip(stars, values):
            cols[a][r] = v
        yield [pack(field, c) for c in cols]


def enumerate_grassmannian(l: int, k: int, q: int | FieldSpec) -> Iterator[Subspace]:
    """Every k-dimensional subspace of F_q^l exactly once, in canonical form."""
    field = _as_field(q)
    if grassmannian_count(l, k, field.q) > MAX_ENUMERATION:
        raise TooLarge(f"Gr({l},{k}) over {field} has more than {MAX_ENUMERATION} points")
    for cell, _ in cells_A(l, k):
        for rows in _cell_vectors(field, cell):
            yield subspace_from_packed(field, l, rows)


def enumerate_lagrangians(l: int, q: int | FieldSpec) -> Iterator[Subspace]:
    """Every Lagrangian of F_q^{2l} exactly once (isotropy filter on Gr(2l, l))."""
    field = _as_field(q)
    if grassmannian_count(2 * l, l, field.q) > MAX_ENUMERATION:
        raise TooLarge(f"Gr({2 * l},{l}) over {field} has more than {MAX_ENUMERATION} points")
    for L in enumerate_grassmannian(2 * l, l, field):
        if is_lagrangian(L):
            yield L


def enumerate_isotropic(l: int, k: int, q: int | FieldSpec) -> Iterator[Subspace]:
    field = _as_field(q)
    for L in enumerate_grassmannian(2 * l, k, field):
        if is_isotropic(L):
            yield L


# --------------------------------------------------------------------------
# brute-force tallies


@dataclass
class TallyA:
    total: int
    avoid: dict[int, int]                 # j -> #{L : dim L∩F^j generic}
    meet: dict[tuple[int, int], int]      # (j, s) -> #{L : dim L∩F^j = s}
    cells: Counter                        # CellIndexA -> count


def brute_tally_A(l: int, k: int, q: int | FieldSpec) -> TallyA:
    field = _as_field(q)
    total = 0
    avoid: Counter = Counter()
    meet: Counter = Counter()
    cells: Counter = Counter()
    for L in enumerate_grassmannian(l, k, field):
        total += 1
        prof = cell_profile(L).dims
        for j in range(l + 1):
            meet[(j, prof[j])] += 1
            if prof[j] == max(0, j + k - l):
                avoid[j] += 1
        cells[cell_of_subspace_A(L)] += 1
    return TallyA(total, dict(avoid), dict(meet), cells)


@dataclass
class TallyC:
    total: int
    avoid_E: dict[int, int]               # j -> #{L : L∩E^j = 0}
    avoid_EF: dict[int, int]              # j -> #{L : dim L∩(E^j+F^j) minimal}
    meet_EF: dict[tuple[int, int], int]   # (j, s) -> #{L : dim L∩(E^j+F^j) = s}
    cells: Counter                        # CellIndexC -> count


def brute_tally_C(l: int, q: int | FieldSpec) -> TallyC:
    field = _as_field(q)
    total = 0
    avoid_E: Counter = Counter()
    avoid_EF: Counter = Counter()
    meet_EF: Counter = Counter()
    cells: Counter = Counter()
    for L in enumerate_lagrangians(l, field):
        total += 1
        for j in range(l + 1):
            if intersect_coordinate(L, range(j)).dim == 0:
                avoid_E[j] += 1
            s = intersect_coordinate(L, list(range(j)) + list(range(l, l + j))).dim
            meet_EF[(j, s)] += 1
            if s == max(0, 2 * j - l):
                avoid_EF[j] += 1
        cells[cell_of_lagrangian(L)] += 1
    return TallyC(total, dict(avoid_E), dict(avoid_EF), dict(meet_EF), cells)
