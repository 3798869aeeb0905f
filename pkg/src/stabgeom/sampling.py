"""Exactly uniform samplers for Gr(l, k) and LGr(2l) over F_q.

Every draw is driven by its own generator keyed by
``(master_seed, stream_id, draw_index)``, so results do not depend on how
draws are split across workers.
"""

from __future__ import annotations

import hashlib
import random
import struct
from dataclasses import dataclass

from .counts import grassmannian_count
from .field import FieldSpec, field_of_order
from .linalg import (
    Subspace,
    SymplecticLayout,
    is_lagrangian,
    rank_rows,
    row_axpy,
    row_get,
    row_is_zero,
    row_scale,
    subspace_from_packed,
    unit_row,
    zero_row,
    _lead,
)
from .schubert import CellIndexA, CellIndexC

_MASK64 = 2**64 - 1


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    stream_id: int = 0

    def rng(self, draw_index: int) -> random.Random:
        """Generator for one draw; a pure function of (seed, stream, index)."""
        key = struct.pack("<QQQ", self.master_seed & _MASK64, self.stream_id & _MASK64, draw_index & _MASK64)
        digest = hashlib.blake2b(key, digest_size=32, person=b"stabgeom-draw").digest()
        return random.Random(int.from_bytes(digest, "little"))


def _as_field(q: int | FieldSpec) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field_of_order(q)


def random_row(field: FieldSpec, n: int, rng: random.Random):
    if field.q == 2:
        return rng.getrandbits(n) if n else 0
    return tuple(rng.randrange(field.q) for _ in range(n))


def sample_subspace_rng(field: FieldSpec, l: int, k: int, rng: random.Random) -> Subspace:
    """Row space of a uniformly random full-rank k x l matrix (rejection)."""
    if not 0 <= k <= l:
        raise ValueError(f"need 0 <= k <= l, got l={l}, k={k}")
    while True:
        rows = [random_row(field, l, rng) for _ in range(k)]
        if rank_rows(field, rows, l) == k:
            return subspace_from_packed(field, l, rows)


def sample_subspace(l: int, k: int, q: int | FieldSpec, seed: SeedSpec, draw_index: int = 0) -> Subspace:
    """Uniform random element of Gr(l, k) over F_q."""
    return sample_subspace_rng(_as_field(q), l, k, seed.rng(draw_index))


class _Echelon:
    """Incremental echelon basis used for span membership."""

    def __init__(self, field: FieldSpec):
        self.field = field
        self.piv: dict[int, object] = {}

    def reduce(self, v):
        f = self.field
        while not row_is_zero(v):
            c = _lead(v)
            r = self.piv.get(c)
            if r is None:
                return v
            v = row_axpy(f, f.neg(row_get(f, v, c)), r, v)
        return v

    def insert(self, v) -> bool:
        v = self.reduce(v)
        if row_is_zero(v):
            return False
        c = _lead(v)
        self.piv[c] = row_scale(self.field, self.field.inv(row_get(self.field, v, c)), v)
        return True


def sample_lagrangian_rng(field: FieldSpec, l: int, rng: random.Random) -> Subspace:
    """Grow an isotropic flag: v_{i+1} uniform in V_i^perp minus V_i."""
    if l < 1:
        raise ValueError(f"need l >= 1, got {l}")
    n = 2 * l
    lay = SymplecticLayout(l)
    W = [unit_row(field, n, i) for i in range(n)]  # basis of V_i^perp
    V = _Echelon(field)
    chosen = []
    for _ in range(l):
        while True:
            if field.q == 2:
                bits = rng.getrandbits(len(W))
                v = 0
                for w in W:
                    if bits & 1:
                        v ^= w
                    bits >>= 1
            else:
                v = zero_row(field, n)
                for w in W:
                    v = row_axpy(field, rng.randrange(field.q), w, v)
            if V.insert(v):
                break
        chosen.append(v)
        vals = [lay.omega(field, v, w) for w in W]
        t = next(i for i, x in enumerate(vals) if x)
        wt, inv = W[t], field.inv(vals[t])
        W = [row_axpy(field, field.neg(field.mul(x, inv)), wt, w) if x else w
             for i, (w, x) in enumerate(zip(W, vals)) if i != t]
    L = subspace_from_packed(field, n, chosen)
    assert is_lagrangian(L)
    return L


def sample_lagrangian(l: int, q: int | FieldSpec, seed: SeedSpec, draw_index: int = 0) -> Subspace:
    """Uniform random Lagrangian subspace of F_q^{2l}."""
    return sample_lagrangian_rng(_as_field(q), l, seed.rng(draw_index))


def _q_of(q: int | FieldSpec) -> int:
    return q.q if isinstance(q, FieldSpec) else q


def sample_cell_A(l: int, k: int, q: int | FieldSpec, seed: SeedSpec, draw_index: int = 0) -> CellIndexA:
    """Cell of Gr(l, k) drawn with probability q^dim / G_{lk}.

    Walks the recurrence G_{nk} = q^{n-k} G_{n-1,k-1} + G_{n-1,k}: the first
    term is the cells whose column set contains n.
    """
    q = _q_of(q)
    rng = seed.rng(draw_index)
    cols = []
    n, kk = l, k
    while 0 < kk < n:
        with_n = q ** (n - kk) * grassmannian_count(n - 1, kk - 1, q)
        if rng.randrange(grassmannian_count(n, kk, q)) < with_n:
            cols.append(n)
            kk -= 1
        n -= 1
    if kk == n:
        cols.extend(range(1, n + 1))
    return CellIndexA(l, k, tuple(sorted(cols)))


def sample_cell_C(l: int, q: int | FieldSpec, seed: SeedSpec, draw_index: int = 0) -> CellIndexC:
    """Cell of LGr(2l) drawn with probability q^dim / L_l, via L_m = q^m L_{m-1} + L_{m-1}."""
    q = _q_of(q)
    rng = seed.rng(draw_index)
    neg = [m for m in range(l, 0, -1) if rng.randrange(q**m + 1) < q**m]
    return CellIndexC(l, tuple(sorted(neg)))


def sample_cell_weighted(l: int, k: int | None, q: int | FieldSpec, seed: SeedSpec, draw_index: int = 0):
    """Type-A cell when ``k`` is given, type-C cell when ``k`` is None."""
    if k is None:
        return sample_cell_C(l, q, seed, draw_index)
    return sample_cell_A(l, k, q, seed, draw_index)
