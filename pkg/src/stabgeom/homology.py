"""Party-local chain complex of a subspace and its cohomology.

For a subspace L of the coordinate space owned by l parties,

    C^j = (+)_{|S| = j} L ∩ F^S

where F^S holds the vectors supported on the parties in S.  The coboundary
sends the S-component into every S ∪ {t} by inclusion with sign
(-1)^{#{s in S : s < t}}.  Parties are numbered 0..l-1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Literal

from .errors import AmbientMismatch, InvalidL
from .field import GF2, FieldSpec
from .linalg import (
    MatrixGF,
    Subspace,
    is_lagrangian,
    kernel_on,
    orth_complement,
    pack,
    rank_rows,
    row_get,
    subspace_from_packed,
    subspace_from_rows,
    unpack,
    zero_row,
)

Layout = Literal["plain", "symplectic"]


@dataclass(frozen=True)
class PartyStructure:
    """l parties holding N qudits each.

    plain: ambient l*N, party a owns a*N .. a*N+N-1.
    symplectic: ambient 2*l*N, party a owns those x-coordinates and the
    matching z-coordinates shifted by l*N.
    """

    l: int
    N: int
    layout: Layout = "plain"

    def __post_init__(self):
        if self.l < 2:
            raise InvalidL(f"need at least 2 parties, got {self.l}")
        if self.N < 1:
            raise ValueError(f"need N >= 1, got {self.N}")
        if self.layout not in ("plain", "symplectic"):
            raise ValueError(f"unknown layout {self.layout!r}")

    @property
    def ambient(self) -> int:
        n = self.l * self.N
        return n if self.layout == "plain" else 2 * n

    def coords(self, party: int) -> list[int]:
        base = list(range(party * self.N, (party + 1) * self.N))
        if self.layout == "plain":
            return base
        return base + [c + self.l * self.N for c in base]

    def coords_of(self, parties: Iterable[int]) -> list[int]:
        out: list[int] = []
        for a in sorted(parties):
            out.extend(self.coords(a))
        return out

    def owner(self, coord: int) -> int:
        return (coord % (self.l * self.N)) // self.N


def _check_ambient(L: Subspace, parties: PartyStructure) -> None:
    if L.ambient != parties.ambient:
        raise AmbientMismatch(f"subspace ambient {L.ambient}, party structure needs {parties.ambient}")


def local_subspace(L: Subspace, S: Iterable[int], parties: PartyStructure) -> Subspace:
    """L ∩ F^S: the vectors of L supported on the parties in S."""
    _check_ambient(L, parties)
    S = set(S)
    outside = [c for a in range(parties.l) if a not in S for c in parties.coords(a)]
    return subspace_from_packed(L.field, L.ambient, kernel_on(L.field, L.rows, L.ambient, outside))


class _Complex:
    """Lazily evaluated chain complex; subsets of parties are bitmasks."""

    def __init__(self, L: Subspace, parties: PartyStructure):
        _check_ambient(L, parties)
        self.L = L
        self.parties = parties
        self.field = L.field
        self.l = parties.l
        full = (1 << self.l) - 1
        self._local: dict[int, Subspace] = {full: L}
        self._coords = {a: parties.coords(a) for a in range(self.l)}
        self._delta_rank: dict[int, int] = {}

    def local(self, S: int) -> Subspace:
        sub = self._local.get(S)
        if sub is None:
            # cut one more party out of the next larger subset
            t = next(a for a in range(self.l) if not S >> a & 1)
            parent = self.local(S | (1 << t))
            if parent.dim == 0:
                sub = parent
            else:
                rows = kernel_on(self.field, parent.rows, parent.ambient, self._coords[t])
                sub = subspace_from_packed(self.field, parent.ambient, rows)
            self._local[S] = sub
        return sub

    def subsets(self, j: int) -> list[int]:
        return [sum(1 << a for a in c) for c in itertools.combinations(range(self.l), j)]

    def chain_dim(self, j: int) -> int:
        if j <= 0 or j > self.l:
            return 0
        return sum(self.local(S).dim for S in self.subsets(j))

    def delta_rows(self, j: int) -> tuple[list, int]:
        """Packed rows of delta_j in the chosen bases, and dim C^{j+1}."""
        f = self.field
        targets = self.subsets(j + 1) if 0 <= j < self.l else []
        offset, width = {}, 0
        for T in targets:
            offset[T] = width
            width += self.local(T).dim
        rows = []
        if j <= 0 or j >= self.l:
            return [zero_row(f, width) for _ in range(self.chain_dim(j))], width
        gf2 = f.q == 2
        for S in self.subsets(j):
            src = self.local(S)
            for v in src.rows:
                if gf2:
                    img = 0
                    for t in range(self.l):
                        if S >> t & 1:
                            continue
                        T = S | (1 << t)
                        tgt = self.local(T)
                        off = offset[T]
                        for i, p in enumerate(tgt.pivots):
                            if v >> p & 1:
                                img ^= 1 << (off + i)
                    rows.append(img)
                else:
                    img = [0] * width
                    for t in range(self.l):
                        if S >> t & 1:
                            continue
                        T = S | (1 << t)
                        sign = (S & ((1 << t) - 1)).bit_count() % 2
                        tgt = self.local(T)
                        off = offset[T]
                        for i, p in enumerate(tgt.pivots):
                            c = row_get(f, v, p)
                            img[off + i] = f.neg(c) if sign else c
                    rows.append(pack(f, img))
        return rows, width

    def delta_rank(self, j: int) -> int:
        if j <= 0 or j >= self.l:
            return 0
        r = self._delta_rank.get(j)
        if r is None:
            if self.chain_dim(j) == 0 or self.chain_dim(j + 1) == 0:
                r = 0
            else:
                rows, width = self.delta_rows(j)
                r = rank_rows(self.field, rows, width)
            self._delta_rank[j] = r
        return r

    def h(self, j: int) -> int:
        c = self.chain_dim(j)
        if c == 0:
            return 0
        return c - self.delta_rank(j) - self.delta_rank(j - 1)


@dataclass(frozen=True)
class ChainComplexData:
    chain_dims: tuple[int, ...]
    differentials: tuple[MatrixGF, ...]   # delta_j : C^j -> C^{j+1}, rows index C^j, j = 0..l-1
    local_dims: dict = field(hash=False)   # frozenset(S) -> dim L ∩ F^S


@dataclass(frozen=True)
class HomologyProfile:
    h_dims: tuple[int, ...]
    chain_dims: tuple[int, ...]
    euler: int

    @property
    def ghz_count(self) -> int:
        """dim H^2, the number of extractable all-party GHZ states."""
        return self.h_dims[2] if len(self.h_dims) > 2 else 0


def build_complex(L: Subspace, parties: PartyStructure) -> ChainComplexData:
    cx = _Complex(L, parties)
    l = parties.l
    dims = tuple(cx.chain_dim(j) for j in range(l + 1))
    deltas = []
    for j in range(l):
        rows, width = cx.delta_rows(j)
        deltas.append(MatrixGF(L.field, width, tuple(rows)))
    for a, b in zip(deltas, deltas[1:]):
        if not (a @ b).is_zero():
            raise ArithmeticError("coboundary does not square to zero")
    local_dims = {
        frozenset(a for a in range(l) if S >> a & 1): cx.local(S).dim
        for S in range(1 << l)
    }
    local_dims[frozenset()] = 0
    return ChainComplexData(dims, tuple(deltas), local_dims)


def homology_profile(L: Subspace, parties: PartyStructure) -> HomologyProfile:
    """dim H^j for j = 0..l together with the chain dimensions."""
    cx = _Complex(L, parties)
    l = parties.l
    chain = tuple(cx.chain_dim(j) for j in range(l + 1))
    h = tuple(cx.h(j) for j in range(l + 1))
    euler = sum((-1) ** j * c for j, c in enumerate(chain))
    if euler != sum((-1) ** j * x for j, x in enumerate(h)):  # pragma: no cover
        raise ArithmeticError("Euler characteristic mismatch")
    return HomologyProfile(h, chain, euler)


def homology_dim(L: Subspace, parties: PartyStructure, j: int) -> int:
    """dim H^j alone; cheaper than a full profile when C^j is usually zero."""
    return _Complex(L, parties).h(j)


def local_dim(L: Subspace, parties: PartyStructure, S: Iterable[int]) -> int:
    return local_subspace(L, S, parties).dim


# --------------------------------------------------------------------------
# constructions and fixtures


def css_double(L: Subspace) -> Subspace:
    """L (+) L^perp inside F^n (+) F^n, a Lagrangian for the standard form."""
    f, n = L.field, L.ambient
    perp = orth_complement(L)
    if f.q == 2:
        rows = list(L.rows) + [b << n for b in perp.rows]
    else:
        z = (0,) * n
        rows = [a + z for a in L.rows] + [z + b for b in perp.rows]
    out = subspace_from_packed(f, 2 * n, rows)
    assert is_lagrangian(out)
    return out


def ghz_lagrangian(l: int) -> Subspace:
    """GHZ state of l qubits (one per party): X^{(x)l} and Z_a Z_{a+1}."""
    if l < 2:
        raise InvalidL(f"GHZ needs l >= 2, got {l}")
    rows = [[1] * l + [0] * l]
    for a in range(l - 1):
        r = [0] * (2 * l)
        r[l + a] = r[l + a + 1] = 1
        rows.append(r)
    out = subspace_from_rows(GF2, 2 * l, rows)
    assert is_lagrangian(out)
    return out


def bell_pairs(count: int) -> Subspace:
    """``count`` Bell pairs shared by two parties holding ``count`` qubits each."""
    if count < 1:
        raise InvalidL(f"need at least one Bell pair, got {count}")
    n = 2 * count
    rows = []
    for i in range(count):
        x = [0] * (2 * n)
        x[i] = x[count + i] = 1
        z = [0] * (2 * n)
        z[n + i] = z[n + count + i] = 1
        rows += [x, z]
    out = subspace_from_rows(GF2, 2 * n, rows)
    assert is_lagrangian(out)
    return out


def direct_sum(L1: Subspace, P1: PartyStructure, L2: Subspace, P2: PartyStructure) -> tuple[Subspace, PartyStructure]:
    """Merge two states party by party: party a keeps its qudits from both."""
    if P1.l != P2.l or P1.layout != P2.layout or L1.field != L2.field:
        raise ValueError("direct sum needs matching party count, layout and field")
    _check_ambient(L1, P1)
    _check_ambient(L2, P2)
    P = PartyStructure(P1.l, P1.N + P2.N, P1.layout)

    def remap(Ps: PartyStructure, shift: int) -> list[int]:
        out = []
        for c in range(Ps.ambient):
            block, within = divmod(c, Ps.l * Ps.N)
            a, i = divmod(within, Ps.N)
            out.append(block * P.l * P.N + a * P.N + shift + i)
        return out

    f = L1.field
    rows = []
    for L, Ps, shift in ((L1, P1, 0), (L2, P2, P1.N)):
        m = remap(Ps, shift)
        for r in L.rows:
            ent = unpack(f, r, L.ambient)
            new = [0] * P.ambient
            for c, x in enumerate(ent):
                new[m[c]] = x
            rows.append(pack(f, new))
    return subspace_from_packed(f, P.ambient, rows), P


@dataclass(frozen=True)
class DualityRow:
    degree: int
    dim_h: int
    dual_degree: int
    dim_h_dual: int

    @property
    def ok(self) -> bool:
        return self.dim_h == self.dim_h_dual


@dataclass(frozen=True)
class DualityReport:
    rows: tuple[DualityRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)


def duality_check(L: Subspace, parties: PartyStructure) -> DualityReport:
    """Compare dim H^j L with dim H^{l-j+2} L^perp for j = 1..l+1.

    Degrees outside 0..l count as zero.  Mismatches are reported, not raised.
    """
    if parties.layout != "plain":
        raise ValueError("duality check needs the plain layout")
    l = parties.l
    h = homology_profile(L, parties).h_dims
    hd = homology_profile(orth_complement(L), parties).h_dims

    def at(dims, d):
        return dims[d] if 0 <= d <= l else 0

    rows = tuple(DualityRow(j, at(h, j), l - j + 2, at(hd, l - j + 2)) for j in range(1, l + 2))
    return DualityReport(rows)
