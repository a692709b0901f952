"""Immutable simple graphs, shortest-path distances, and small-subgraph counting.

Vertices are 0..n-1.  The distance matrix stores hop counts with the sentinel
UNREACHABLE for disconnected pairs; callers must branch on it, never do
arithmetic with it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

# Strictly larger than any finite hop distance on a desk-scale graph.
UNREACHABLE = 1 << 30


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with a boolean adjacency matrix."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: np.ndarray = field(repr=False, compare=False)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Normalize (min,max), deduplicate, validate; reject self-loops."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    norm = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        norm.add((min(u, v), max(u, v)))
    adj = np.zeros((n, n), dtype=bool)
    for u, v in norm:
        adj[u, v] = adj[v, u] = True
    adj.setflags(write=False)
    return Graph(n=n, edges=tuple(sorted(norm)), adj=adj)


def all_pairs_distances(G: Graph) -> np.ndarray:
    """BFS hop distances; UNREACHABLE across components.  Shape (n, n), int64."""
    n = G.n
    d = np.full((n, n), UNREACHABLE, dtype=np.int64)
    for s in range(n):
        d[s, s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            du = d[s, u]
            for v in np.flatnonzero(G.adj[u]):
                if d[s, v] == UNREACHABLE:
                    d[s, v] = du + 1
                    q.append(v)
    d.setflags(write=False)
    return d


def complete_graph(m: int) -> Graph:
    return build_graph(m, combinations(range(m), 2))


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return build_graph(m, [(i, (i + 1) % m) for i in range(m)])


def f4_graph() -> Graph:
    """4-cycle 0-1-2-3 with the diagonal {0,2}: degree sequence (3,3,2,2)."""
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def count_full_subgraphs(G: Graph, H: Graph) -> int:
    """Number of vertex subsets W with induced subgraph G|_W isomorphic to H."""
    h = H.n
    if h > 8:
        raise ValueError("pattern graph limited to 8 vertices")
    if h > G.n:
        return 0
    hx = H.to_networkx()
    h_degs = sorted(d for _, d in hx.degree())
    gx = G.to_networkx()
    count = 0
    for W in combinations(range(G.n), h):
        sub = gx.subgraph(W)
        if sorted(d for _, d in sub.degree()) != h_degs:
            continue
        if nx.is_isomorphic(sub, hx):
            count += 1
    return count


def write_graph(G: Graph, path: str, header_comment: str | None = None) -> None:
    with open(path, "w") as fh:
        if header_comment:
            for line in header_comment.splitlines():
                fh.write(f"# {line}\n")
        fh.write(f"{G.n} {len(G.edges)}\n")
        for u, v in G.edges:
            fh.write(f"{u} {v}\n")


def read_graph(path: str) -> Graph:
    """Read the `n m` / `u v` text format; `#` starts a comment."""
    tokens: list[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                tokens.extend(line.split())
    if len(tokens) < 2:
        raise ValueError(f"{path}: missing 'n m' header")
    n, m = int(tokens[0]), int(tokens[1])
    coords = [int(t) for t in tokens[2:]]
    if len(coords) != 2 * m:
        raise ValueError(f"{path}: expected {m} edges, found {len(coords) // 2}")
    edges = list(zip(coords[0::2], coords[1::2]))
    return build_graph(n, edges)
