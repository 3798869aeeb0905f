"""Exact linear algebra over F_q.

Rows are stored packed: over F_2 a row is a Python int whose bit ``i`` is
coordinate ``i``; over any other field a row is a tuple of field elements.
All coordinates and indices are 0-based.

A :class:`Subspace` keeps its basis in reduced row echelon form (pivot =
first nonzero coordinate), so two subspaces are equal iff their stored rows
are identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import AmbientMismatch, FieldMismatch, IndexOutOfRange, OddAmbient
from .field import GF2, FieldSpec

Row = "int | tuple[int, ...]"


# --------------------------------------------------------------------------
# packed row helpers


def pack(field: FieldSpec, entries: Sequence[int]) -> Row:
    if field.q == 2:
        out = 0
        for i, x in enumerate(entries):
            if x & 1:
                out |= 1 << i
        return out
    return tuple(int(x) for x in entries)


def unpack(field: FieldSpec, row: Row, n: int) -> list[int]:
    if field.q == 2:
        return [(row >> i) & 1 for i in range(n)]
    return list(row)


def row_get(field: FieldSpec, row: Row, i: int) -> int:
    if field.q == 2:
        return (row >> i) & 1
    return row[i]


def row_is_zero(row: Row) -> bool:
    if isinstance(row, int):
        return row == 0
    return not any(row)


def row_axpy(field: FieldSpec, c: int, x: Row, y: Row) -> Row:
    """Return ``y + c*x``."""
    if field.q == 2:
        return y ^ x if c & 1 else y
    if c == 0:
        return y
    if field.e == 1:
        p = field.p
        return tuple((b + c * a) % p for a, b in zip(x, y))
    add, mul = field._add, field._mul[c]
    return tuple(add[b][mul[a]] for a, b in zip(x, y))


def row_scale(field: FieldSpec, c: int, x: Row) -> Row:
    if field.q == 2:
        return x if c & 1 else 0
    if field.e == 1:
        p = field.p
        return tuple(c * a % p for a in x)
    mul = field._mul[c]
    return tuple(mul[a] for a in x)


def row_dot(field: FieldSpec, x: Row, y: Row) -> int:
    if field.q == 2:
        return (x & y).bit_count() & 1
    acc = 0
    for a, b in zip(x, y):
        if a and b:
            acc = field.add(acc, field.mul(a, b))
    return acc


def zero_row(field: FieldSpec, n: int) -> Row:
    return 0 if field.q == 2 else (0,) * n


def unit_row(field: FieldSpec, n: int, i: int) -> Row:
    if field.q == 2:
        return 1 << i
    return tuple(1 if t == i else 0 for t in range(n))


def _lead(row: Row) -> int:
    if isinstance(row, int):
        return (row & -row).bit_length() - 1
    for i, x in enumerate(row):
        if x:
            return i
    return -1


# --------------------------------------------------------------------------
# elimination kernels


def _echelon_gf2(rows: Iterable[int]) -> dict[int, int]:
    """Insert rows into an echelon table keyed by lowest set bit."""
    piv: dict[int, int] = {}
    for r in rows:
        while r:
            lb = r & -r
            other = piv.get(lb)
            if other is None:
                piv[lb] = r
                break
            r ^= other
    return piv


def _rref_gf2(rows: Iterable[int]) -> tuple[int, ...]:
    piv = _echelon_gf2(rows)
    keys = sorted(piv)
    for kb in keys:
        pr = piv[kb]
        for other in keys:
            if other >= kb:
                break
            if piv[other] & kb:
                piv[other] ^= pr
    return tuple(piv[k] for k in keys)


def _rref_gfq(field: FieldSpec, rows: Iterable[Row], n: int) -> tuple[Row, ...]:
    work = [r for r in rows if not row_is_zero(r)]
    out: list[Row] = []
    pivots: list[int] = []
    for c in range(n):
        idx = next((i for i, r in enumerate(work) if r[c]), None)
        if idx is None:
            continue
        r = work.pop(idx)
        r = row_scale(field, field.inv(r[c]), r)
        work = [row_axpy(field, field.neg(w[c]), r, w) if w[c] else w for w in work]
        work = [w for w in work if not row_is_zero(w)]
        out = [row_axpy(field, field.neg(o[c]), r, o) if o[c] else o for o in out]
        out.append(r)
        pivots.append(c)
        if not work:
            break
    return tuple(out)


def rref_rows(field: FieldSpec, rows: Iterable[Row], n: int) -> tuple[Row, ...]:
    """Canonical RREF of the packed ``rows`` (zero rows dropped)."""
    if field.q == 2:
        return _rref_gf2(rows)
    return _rref_gfq(field, rows, n)


def rank_rows(field: FieldSpec, rows: Iterable[Row], n: int) -> int:
    if field.q == 2:
        return len(_echelon_gf2(rows))
    return len(_rref_gfq(field, rows, n))


def kernel_on(field: FieldSpec, rows: Sequence[Row], n: int, cols: Iterable[int]) -> list[Row]:
    """Span of the combinations of ``rows`` that vanish on every coordinate in ``cols``.

    ``rows`` must be linearly independent; the returned rows are then a
    basis of the subspace of their span vanishing on ``cols``.
    """
    if field.q == 2:
        mask = 0
        for c in cols:
            mask |= 1 << c
        piv: dict[int, int] = {}
        out: list[int] = []
        for r in rows:
            while True:
                pr = r & mask
                if not pr:
                    out.append(r)
                    break
                lb = pr & -pr
                other = piv.get(lb)
                if other is None:
                    piv[lb] = r
                    break
                r ^= other
        return out
    cols = sorted(set(cols))
    pivq: dict[int, Row] = {}
    outq: list[Row] = []
    for r in rows:
        while True:
            c = next((c for c in cols if r[c]), None)
            if c is None:
                outq.append(r)
                break
            other = pivq.get(c)
            if other is None:
                pivq[c] = row_scale(field, field.inv(r[c]), r)
                break
            r = row_axpy(field, field.neg(r[c]), other, r)
    return outq


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class MatrixGF:
    """A dense matrix over ``field`` stored as packed rows."""

    field: FieldSpec
    cols: int
    rows_packed: tuple = ()

    @classmethod
    def from_lists(cls, field: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> "MatrixGF":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            for x in r:
                if not 0 <= x < field.q:
                    raise ValueError(f"{x} is not an element of {field}")
        return cls(field, cols, tuple(pack(field, r) for r in rows))

    @property
    def nrows(self) -> int:
        return len(self.rows_packed)

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat tuple of entries."""
        out: list[int] = []
        for r in self.rows_packed:
            out.extend(unpack(self.field, r, self.cols))
        return tuple(out)

    def to_lists(self) -> list[list[int]]:
        return [unpack(self.field, r, self.cols) for r in self.rows_packed]

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if self.cols != other.nrows:
            raise ValueError("shape mismatch")
        f = self.field
        out = []
        for r in self.rows_packed:
            acc = zero_row(f, other.cols)
            for i in range(self.cols):
                c = row_get(f, r, i)
                if c:
                    acc = row_axpy(f, c, other.rows_packed[i], acc)
            out.append(acc)
        return MatrixGF(f, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return all(row_is_zero(r) for r in self.rows_packed)


def rref(M: MatrixGF, field: FieldSpec | None = None) -> tuple[MatrixGF, int]:
    """Reduced row echelon form of ``M`` and its rank."""
    if field is not None and field != M.field:
        raise FieldMismatch(f"matrix over {M.field}, expected {field}")
    rows = rref_rows(M.field, M.rows_packed, M.cols)
    return MatrixGF(M.field, M.cols, rows), len(rows)


def matrix_rank(M: MatrixGF) -> int:
    return rank_rows(M.field, M.rows_packed, M.cols)


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    ambient: int
    rows: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> MatrixGF:
        return MatrixGF(self.field, self.ambient, self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_lead(r) for r in self.rows)

    def basis_lists(self) -> list[list[int]]:
        return self.basis.to_lists()

    def contains(self, v: Row) -> bool:
        """Membership test for a packed vector."""
        f = self.field
        for r, p in zip(self.rows, self.pivots):
            c = row_get(f, v, p)
            if c:
                v = row_axpy(f, f.neg(c), r, v)
        return row_is_zero(v)

    def coordinates(self, v: Row) -> list[int]:
        """Coefficients of ``v`` in the stored basis (``v`` must lie in the subspace)."""
        return [row_get(self.field, v, p) for p in self.pivots]

    def vectors(self) -> Iterator[Row]:
        """Every element of the subspace (q**dim of them)."""
        f = self.field
        vecs = [zero_row(f, self.ambient)]
        for r in self.rows:
            vecs = [row_axpy(f, c, r, v) for v in vecs for c in range(f.q)]
        return iter(vecs)

    def __le__(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        return all(other.contains(r) for r in self.rows)

    def __repr__(self) -> str:
        body = "; ".join("".join(map(str, r)) for r in self.basis_lists())
        return f"Subspace({self.field}, n={self.ambient}, dim={self.dim}, [{body}])"


def subspace_from_rows(field: FieldSpec, ambient: int, rows: Iterable[Sequence[int]]) -> Subspace:
    """Row space of the given coefficient lists."""
    packed = []
    for r in rows:
        if len(r) != ambient:
            raise AmbientMismatch(f"row of length {len(r)} in ambient {ambient}")
        packed.append(pack(field, [x % field.q if field.e == 1 else x for x in r]))
    return Subspace(field, ambient, rref_rows(field, packed, ambient))


def subspace_from_packed(field: FieldSpec, ambient: int, rows: Iterable[Row]) -> Subspace:
    return Subspace(field, ambient, rref_rows(field, rows, ambient))


def zero_subspace(field: FieldSpec, ambient: int) -> Subspace:
    return Subspace(field, ambient, ())


def full_space(field: FieldSpec, ambient: int) -> Subspace:
    return Subspace(field, ambient, tuple(unit_row(field, ambient, i) for i in range(ambient)))


def _check_compatible(A: Subspace, B: Subspace) -> None:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    if A.ambient != B.ambient:
        raise AmbientMismatch(f"ambient {A.ambient} vs {B.ambient}")


def span_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_compatible(A, B)
    return subspace_from_packed(A.field, A.ambient, A.rows + B.rows)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    """A ∩ B by the Zassenhaus sum-intersection algorithm."""
    _check_compatible(A, B)
    f, n = A.field, A.ambient
    if f.q == 2:
        stacked = [a | (a << n) for a in A.rows] + list(B.rows)
        low = (1 << n) - 1
        red = _rref_gf2(stacked)
        meet = [r >> n for r in red if not r & low]
    else:
        zero = (0,) * n
        stacked = [a + a for a in A.rows] + [b + zero for b in B.rows]
        red = _rref_gfq(f, stacked, 2 * n)
        meet = [r[n:] for r in red if not any(r[:n])]
    return subspace_from_packed(f, n, meet)


def orth_complement(A: Subspace) -> Subspace:
    """Complement with respect to the dot product sum_i u_i v_i."""
    f, n = A.field, A.ambient
    pivots = A.pivots
    pset = set(pivots)
    out = []
    for free in range(n):
        if free in pset:
            continue
        v = [0] * n
        v[free] = 1
        for r, p in zip(A.rows, pivots):
            c = row_get(f, r, free)
            if c:
                v[p] = f.neg(c)
        out.append(pack(f, v))
    return subspace_from_packed(f, n, out)


def coordinate_subspace(field: FieldSpec, ambient: int, support: Iterable[int]) -> Subspace:
    """span{e_i : i in support}."""
    support = sorted(set(support))
    for i in support:
        if not 0 <= i < ambient:
            raise IndexOutOfRange(f"coordinate {i} outside 0..{ambient - 1}")
    return Subspace(field, ambient, tuple(unit_row(field, ambient, i) for i in support))


def flag_subspace(field: FieldSpec, ambient: int, j: int) -> Subspace:
    """F^j: the span of the first ``j`` coordinate vectors."""
    if not 0 <= j <= ambient:
        raise IndexOutOfRange(f"flag index {j} outside 0..{ambient}")
    return coordinate_subspace(field, ambient, range(j))


def intersect_coordinate(L: Subspace, support: Iterable[int]) -> Subspace:
    """L ∩ span{e_i : i in support}, computed by eliminating the other coordinates."""
    support = set(support)
    for i in support:
        if not 0 <= i < L.ambient:
            raise IndexOutOfRange(f"coordinate {i} outside 0..{L.ambient - 1}")
    outside = [c for c in range(L.ambient) if c not in support]
    rows = kernel_on(L.field, L.rows, L.ambient, outside)
    return subspace_from_packed(L.field, L.ambient, rows)


# --------------------------------------------------------------------------
# symplectic structure


@dataclass(frozen=True)
class SymplecticLayout:
    """Coordinates 0..m-1 are the x-block, m..2m-1 the z-block.

    omega(u, v) = sum_i u_x[i] v_z[i] - u_z[i] v_x[i]
    """

    m: int

    @property
    def ambient(self) -> int:
        return 2 * self.m

    def omega(self, field: FieldSpec, u: Row, v: Row) -> int:
        m = self.m
        if field.q == 2:
            lo = (1 << m) - 1
            return (((u & lo) & (v >> m)) ^ ((u >> m) & (v & lo))).bit_count() & 1
        acc = 0
        for i in range(m):
            acc = field.add(acc, field.mul(u[i], v[m + i]))
            acc = field.sub(acc, field.mul(u[m + i], v[i]))
        return acc

    def twist(self, field: FieldSpec, u: Row) -> Row:
        """(u_x | u_z) -> (-u_z | u_x), so that omega(u, v) = twist(u) . v."""
        m = self.m
        if field.q == 2:
            lo = (1 << m) - 1
            return (u >> m) | ((u & lo) << m)
        return tuple(field.neg(x) for x in u[m:]) + tuple(u[:m])


def layout_for(A: Subspace, layout: SymplecticLayout | None = None) -> SymplecticLayout:
    if layout is None:
        if A.ambient % 2:
            raise OddAmbient(f"ambient dimension {A.ambient} is odd")
        return SymplecticLayout(A.ambient // 2)
    if layout.ambient != A.ambient:
        raise AmbientMismatch(f"layout has ambient {layout.ambient}, subspace {A.ambient}")
    return layout


def symplectic_complement(A: Subspace, layout: SymplecticLayout | None = None) -> Subspace:
    lay = layout_for(A, layout)
    twisted = Subspace(A.field, A.ambient, rref_rows(A.field, (lay.twist(A.field, r) for r in A.rows), A.ambient))
    return orth_complement(twisted)


def is_isotropic(A: Subspace, layout: SymplecticLayout | None = None) -> bool:
    lay = layout_for(A, layout)
    rows = A.rows
    return all(lay.omega(A.field, rows[i], rows[j]) == 0
               for i in range(len(rows)) for j in range(i + 1, len(rows)))


def is_lagrangian(A: Subspace, layout: SymplecticLayout | None = None) -> bool:
    lay = layout_for(A, layout)
    return 2 * A.dim == A.ambient and is_isotropic(A, lay)


__all__ = [
    "GF2", "MatrixGF", "Subspace", "SymplecticLayout",
    "coordinate_subspace", "flag_subspace", "full_space", "intersect",
    "intersect_coordinate", "is_isotropic", "is_lagrangian", "kernel_on",
    "matrix_rank", "orth_complement", "pack", "rank_rows", "rref", "rref_rows",
    "span_sum", "subspace_from_packed", "subspace_from_rows", "symplectic_complement",
    "unpack", "zero_subspace",
]
