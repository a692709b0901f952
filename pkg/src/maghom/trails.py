"""Trail enumeration and chain-group bases.

A k-trail is a tuple of k+1 landmarks with distinct, mutually reachable
consecutive entries; its length is the sum of consecutive hop distances.
Bases come in three flavours: mc (all trails), emc (pairwise-distinct
landmarks), dmc (mc minus emc, the quotient basis).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graphs import UNREACHABLE, Graph

THEORIES = ("mc", "emc", "dmc")


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration or matrix exceeds the configured cap."""


@dataclass(frozen=True)
class ChainBasis:
    theory: str
    k: int
    ell: int
    generators: tuple[tuple[int, ...], ...]
    index: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.generators)


def trail_length(D: np.ndarray, landmarks) -> int:
    """Sum of consecutive hop distances; UNREACHABLE if any pair disconnected."""
    total = 0
    for a, b in zip(landmarks, landmarks[1:]):
        if a == b:
            raise ValueError(f"repeated consecutive landmark {a}")
        d = int(D[a, b])
        if d >= UNREACHABLE:
            return UNREACHABLE
        total += d
    return total


def landmark_set(t) -> frozenset:
    return frozenset(t)


def is_eulerian(t) -> bool:
    return len(set(t)) == len(t)


def _enumerate_mc(G: Graph, D: np.ndarray, k: int, ell: int,
                  budget: int | None) -> list[tuple[int, ...]]:
    """DFS with branch-and-bound: prune when remaining steps cannot reach ell."""
    n = G.n
    out: list[tuple[int, ...]] = []
    path = [0] * (k + 1)

    def rec(t: int, length: int) -> None:
        u = path[t]
        remaining = k - t - 1
        for v in range(n):
            if v == u:
                continue
            d = int(D[u, v])
            if d >= UNREACHABLE or length + d + remaining > ell:
                continue
            path[t + 1] = v
            if t + 1 == k:
                if length + d == ell:
                    out.append(tuple(path))
                    if budget is not None and len(out) > budget:
                        raise BudgetExceededError(
                            f"trail basis exceeds budget {budget}")
            else:
                rec(t + 1, length + d)

    for s in range(n):
        path[0] = s
        if k == 0:
            if ell == 0:
                out.append((s,))
        else:
            rec(0, 0)
    return out


def enumerate_trails(G: Graph, D: np.ndarray, k: int, ell: int, theory: str,
                     budget: int | None = None) -> ChainBasis:
    """All length-ell trails of the requested theory, lexicographic order."""
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}")
    if k < 0 or ell < 0 or k > ell:
        gens: list[tuple[int, ...]] = []
    elif theory == "emc" and k == ell:
        # diagonal fast path: eulerian diagonal trails are simple paths
        arr = kernels.simple_paths(G.adj, k)
        if budget is not None and arr.shape[0] > budget:
            raise BudgetExceededError(f"trail basis exceeds budget {budget}")
        gens = [tuple(int(x) for x in row) for row in arr]
    else:
        gens = _enumerate_mc(G, D, k, ell, budget)
        if theory == "emc":
            gens = [t for t in gens if is_eulerian(t)]
        elif theory == "dmc":
            gens = [t for t in gens if not is_eulerian(t)]
    return ChainBasis(theory=theory, k=k, ell=ell, generators=tuple(gens),
                      index={t: i for i, t in enumerate(gens)})


def count_diagonal_eulerian(G: Graph, k: int) -> int:
    """|ET_{k,k}|: number of ordered simple paths on k+1 vertices."""
    return int(kernels.simple_paths(G.adj, k).shape[0])
