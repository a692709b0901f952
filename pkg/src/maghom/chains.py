"""Signed boundary matrices for the three chain theories, plus the snake-lemma
connecting map on chain representatives.

The differential removes an interior landmark x_i (endpoints never removed)
when the shortened tuple still has the same length; a face that shortens the
trail, or collapses two equal neighbours, is zero.  Faces landing in the
eulerian subcomplex are zero in the quotient (dmc) differential.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from .graphs import Graph
from .trails import ChainBasis, enumerate_trails, is_eulerian


def face_map(D: np.ndarray, t: tuple[int, ...], i: int) -> tuple[int, ...] | None:
    """Remove landmark i; None encodes the zero face (out-of-band)."""
    k = len(t) - 1
    if not 1 <= i <= k - 1:
        raise ValueError(f"face index {i} outside interior range 1..{k - 1}")
    a, b, c = t[i - 1], t[i], t[i + 1]
    if a == c:
        return None
    if D[a, c] != D[a, b] + D[b, c]:
        return None  # removal shortens the walk
    return t[:i] + t[i + 1 :]


@dataclass(frozen=True)
class BoundaryMatrix:
    rows: int
    cols: int
    col_entries: tuple[tuple[tuple[int, int], ...], ...]  # per column: ((row, coef), ...)

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.col_entries)

    def entries(self):
        """Sparse triplets (row, col, coef) sorted by (col, row)."""
        for c, col in enumerate(self.col_entries):
            for r, v in col:
                yield r, c, v

    def dump(self, fh: IO[str]) -> None:
        fh.write(f"{self.rows} {self.cols} {self.nnz}\n")
        for r, c, v in self.entries():
            fh.write(f"{r} {c} {v}\n")

    def to_dense(self) -> np.ndarray:
        m = np.zeros((self.rows, self.cols), dtype=np.int64)
        for r, c, v in self.entries():
            m[r, c] = v
        return m

    def column_dicts(self) -> list[dict[int, int]]:
        return [dict(col) for col in self.col_entries]


def _assemble(src: ChainBasis, dst_index: dict, dst_size: int,
              keep) -> BoundaryMatrix:
    """Build the signed matrix; keep(face_tuple) decides quotient membership."""
    cols = []
    for t in src.generators:
        acc: dict[int, int] = {}
        k = len(t) - 1
        for i in range(1, k):
            face = keep(t, i)
            if face is None:
                continue
            r = dst_index[face]
            coef = acc.get(r, 0) + (-1) ** i
            if coef:
                acc[r] = coef
            else:
                acc.pop(r, None)
        cols.append(tuple(sorted(acc.items())))
    return BoundaryMatrix(rows=dst_size, cols=len(src.generators),
                          col_entries=tuple(cols))


def boundary_matrix(G: Graph, D: np.ndarray, k: int, ell: int, theory: str,
                    src: ChainBasis | None = None,
                    dst: ChainBasis | None = None) -> BoundaryMatrix:
    """The differential (k, ell) -> (k-1, ell) for mc, emc, or dmc."""
    if src is None:
        src = enumerate_trails(G, D, k, ell, theory)
    if dst is None:
        dst = enumerate_trails(G, D, k - 1, ell, theory)

    if theory == "dmc":

        def keep(t, i):
            face = face_map(D, t, i)
            if face is None or is_eulerian(face):
                return None  # eulerian faces vanish in the quotient
            return face

    else:

        def keep(t, i):
            return face_map(D, t, i)

    return _assemble(src, dst.index, len(dst), keep)


def connecting_map(G: Graph, D: np.ndarray, k: int, ell: int,
                   src: ChainBasis | None = None,
                   dst: ChainBasis | None = None) -> BoundaryMatrix:
    """Chain-level connecting map: dmc basis (k+1, ell) -> emc basis (k, ell).

    A lifted quotient generator is differentiated in the full complex and only
    the faces that are eulerian trails of length ell survive.
    """
    if src is None:
        src = enumerate_trails(G, D, k + 1, ell, "dmc")
    if dst is None:
        dst = enumerate_trails(G, D, k, ell, "emc")

    def keep(t, i):
        face = face_map(D, t, i)
        if face is None or not is_eulerian(face):
            return None
        return face

    return _assemble(src, dst.index, len(dst), keep)


def compose(outer: BoundaryMatrix, inner: BoundaryMatrix) -> np.ndarray:
    """Dense product outer @ inner (small matrices; used by law checks)."""
    return outer.to_dense() @ inner.to_dense()
