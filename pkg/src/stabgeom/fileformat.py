"""JSON description of a stabilizer state or classical code.

    {"q": 2, "kind": "symplectic", "l": 3, "N": 1,
     "generators": [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 0], [0, 0, 0, 0, 1, 1]]}

``plain`` rows have length l*N, ``symplectic`` rows 2*l*N in (x|z) order and
``css`` rows l*N holding a classical code L that is doubled to L (+) L^perp
on load.  Party a owns coordinates a*N .. a*N+N-1 of each block.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import StabGeomError, SubspaceFileError
from .field import FieldSpec, field_of_order
from .homology import PartyStructure, css_double
from .linalg import Subspace, SymplecticLayout, pack, rank_rows, subspace_from_packed

log = logging.getLogger(__name__)

KINDS = ("plain", "symplectic", "css")


@dataclass(frozen=True)
class SubspaceFile:
    q: int
    kind: str
    l: int
    N: int
    generators: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def row_length(self) -> int:
        return (2 if self.kind == "symplectic" else 1) * self.l * self.N

    @property
    def field(self) -> FieldSpec:
        return field_of_order(self.q)

    def validate(self) -> None:
        for name in ("q", "l", "N"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise SubspaceFileError(f"{name} must be an integer, got {v!r}")
        if self.kind not in KINDS:
            raise SubspaceFileError(f"kind must be one of {', '.join(KINDS)}, got {self.kind!r}")
        try:
            self.field
        except StabGeomError as exc:
            raise SubspaceFileError(f"q={self.q}: {exc}") from None
        if self.l < 2 or self.N < 1:
            raise SubspaceFileError(f"need l >= 2 and N >= 1, got l={self.l}, N={self.N}")
        n = self.row_length
        for i, row in enumerate(self.generators):
            if len(row) != n:
                raise SubspaceFileError(f"generator row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.q:
                    raise SubspaceFileError(f"generator row {i} has entry {x!r} outside 0..{self.q - 1}")

    def parties(self) -> PartyStructure:
        return PartyStructure(self.l, self.N, "plain" if self.kind == "plain" else "symplectic")

    def _span(self) -> Subspace:
        f = self.field
        n = self.row_length
        kept, dropped = [], []
        for i, row in enumerate(self.generators):
            v = pack(f, row)
            if rank_rows(f, kept + [v], n) > len(kept):
                kept.append(v)
            else:
                dropped.append(i)
        if dropped:
            log.warning("generator rows %s are linearly dependent on earlier rows; reducing",
                        ", ".join(map(str, dropped)))
        if self.kind == "symplectic":
            lay = SymplecticLayout(self.l * self.N)
            packed = [pack(f, r) for r in self.generators]
            for i, u in enumerate(packed):
                for j in range(i):
                    if lay.omega(f, u, packed[j]):
                        raise SubspaceFileError(
                            f"generator row {i} is not isotropic: omega(row {j}, row {i}) != 0")
        return subspace_from_packed(f, n, kept)

    def code(self) -> Subspace:
        """The subspace spanned by the generators, as written."""
        self.validate()
        return self._span()

    def subspace(self) -> Subspace:
        """The subspace the homology is taken of (css files are doubled)."""
        L = self.code()
        return css_double(L) if self.kind == "css" else L

    def to_dict(self) -> dict:
        return {"q": self.q, "kind": self.kind, "l": self.l, "N": self.N,
                "generators": [list(r) for r in self.generators]}

    @classmethod
    def from_dict(cls, data) -> SubspaceFile:
        if not isinstance(data, dict):
            raise SubspaceFileError("top level must be a JSON object")
        missing = [k for k in ("q", "kind", "l", "N", "generators") if k not in data]
        if missing:
            raise SubspaceFileError(f"missing keys: {', '.join(missing)}")
        gens = data["generators"]
        if not isinstance(gens, list) or not all(isinstance(r, list) for r in gens):
            raise SubspaceFileError("generators must be a list of rows")
        out = cls(data["q"], data["kind"], data["l"], data["N"], tuple(tuple(r) for r in gens))
        out.validate()
        return out

    @classmethod
    def from_subspace(cls, L: Subspace, kind: str, l: int, N: int) -> SubspaceFile:
        """Generators are the canonical basis of L (for css, L is the classical code)."""
        out = cls(L.field.q, kind, l, N, tuple(tuple(r) for r in L.basis_lists()))
        out.validate()
        return out


def load_subspace_file(path: str | Path) -> SubspaceFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SubspaceFileError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SubspaceFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return SubspaceFile.from_dict(data)


def dump_subspace_file(sf: SubspaceFile, path: str | Path | None = None) -> str:
    text = json.dumps(sf.to_dict()) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
