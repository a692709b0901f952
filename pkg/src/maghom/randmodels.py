"""Seeded samplers for Erdős–Rényi graphs and torus random geometric graphs.

Counter-based RNG (numpy Philox) keyed by (seed, trial): trials are
reproducible and order-independent, so Monte Carlo sweeps can distribute
trials across workers without changing the stream any trial sees.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graphs import Graph, build_graph


@dataclass(frozen=True)
class ErParams:
    n: int
    p: float
    seed: int
    trial: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")


@dataclass(frozen=True)
class RggParams:
    n: int
    r: float
    A: float
    seed: int
    trial: int = 0

    def __post_init__(self):
        if self.r < 0 or self.A <= 0:
            raise ValueError("radius and area must be positive")
        if math.pi * self.r**2 > self.A:
            raise ValueError("radius too large for homogeneity (pi r^2 > A)")


def p_from_q(n: int, q: float) -> float:
    return float(n) ** (-q)


def _rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.array(
        [seed, trial], dtype=np.uint64)))


def sample_er(params: ErParams) -> Graph:
    """Each of the C(n,2) edges independently present with probability p,
    drawn in canonical pair order."""
    rng = _rng(params.seed, params.trial)
    pairs = list(combinations(range(params.n), 2))
    draws = rng.random(len(pairs))
    edges = [e for e, u in zip(pairs, draws) if u < params.p]
    return build_graph(params.n, edges)


def torus_distance(a, b, A: float) -> float:
    """Euclidean distance on the flat torus [0, sqrt(A))^2, minimized over
    the nine integer shifts."""
    side = math.sqrt(A)
    best = math.inf
    for sx in (-side, 0.0, side):
        for sy in (-side, 0.0, side):
            dx = a[0] - b[0] + sx
            dy = a[1] - b[1] + sy
            best = min(best, math.hypot(dx, dy))
    return best


def sample_rgg(params: RggParams) -> tuple[Graph, np.ndarray]:
    """Uniform i.i.d. points on the torus; edge iff torus distance <= r."""
    rng = _rng(params.seed, params.trial)
    side = math.sqrt(params.A)
    pts = rng.random((params.n, 2)) * side
    edges = [
        (i, j) for i, j in combinations(range(params.n), 2)
        if torus_distance(pts[i], pts[j], params.A) <= params.r
    ]
    return build_graph(params.n, edges), pts


def edge_probability_rgg(params: RggParams, k: int = 1) -> float:
    """Exact probability that the k edges of a fixed k-trail all appear:
    (pi r^2 / A)^k."""
    base = math.pi * params.r**2 / params.A
    return base**k


def write_point_cloud(pts: np.ndarray, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("idx,x,y\n")
        for i, (x, y) in enumerate(pts):
            fh.write(f"{i},{float(x)!r},{float(y)!r}\n")
