"""Combinatorics of diagonal eulerian cycles: fan subgraphs, the (2,2) rank
formula, clique bounds, local collections and their structure graphs, minimal
class graphs, cycle decomposition, and restricted Y-class verification.

Vertex pairs are canonical (min, max) tuples throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial

import networkx as nx
import numpy as np

from .graphs import Graph, build_graph, complete_graph, count_full_subgraphs
from .homology import kernel_basis, matrix_rank_exact
from .chains import BoundaryMatrix
from .trails import enumerate_trails


def pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# ---------------------------------------------------------------------------
# class graphs

@dataclass(frozen=True)
class ClassGraph:
    """Vertices with mandatory (solid) and optional (dashed) edge sets."""

    V: tuple[int, ...]
    E_S: frozenset[tuple[int, int]]
    E_B: frozenset[tuple[int, int]]

    def __post_init__(self):
        allp = {pair(u, v) for u, v in combinations(self.V, 2)}
        if not self.E_S <= allp or not self.E_B <= allp:
            raise ValueError("edge outside vertex set")
        if self.E_S & self.E_B:
            raise ValueError("solid and dashed edge sets must be disjoint")

    def alpha_edges(self) -> frozenset:
        return self.E_S

    def omega_edges(self) -> frozenset:
        return self.E_S | self.E_B

    def is_complete(self) -> bool:
        return len(self.omega_edges()) == len(self.V) * (len(self.V) - 1) // 2

    def alpha_is_tree(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(self.V)
        g.add_edges_from(self.E_S)
        return nx.is_tree(g)


def graph_in_class(G: Graph, H: ClassGraph, labeling: dict[int, int]) -> bool:
    """Is the labeled graph a realization: E_S <= E <= E_S | E_B?"""
    if set(labeling) != set(H.V):
        raise ValueError("labeling must cover the class-graph vertices")
    if len(set(labeling.values())) != len(labeling):
        raise ValueError("labeling must be injective")
    for u, v in combinations(H.V, 2):
        e = pair(u, v)
        present = G.has_edge(labeling[u], labeling[v])
        if e in H.E_S and not present:
            return False
        if e not in H.E_S and e not in H.E_B and present:
            return False
    return True


def full_class_subgraph(H: ClassGraph, verts) -> ClassGraph:
    vs = tuple(sorted(verts))
    keep = set(vs)
    sub = lambda es: frozenset(e for e in es if e[0] in keep and e[1] in keep)
    return ClassGraph(V=vs, E_S=sub(H.E_S), E_B=sub(H.E_B))


def _contract_once(H: ClassGraph, part: tuple[int, ...]) -> ClassGraph:
    pset = set(part)
    rep = min(part)
    rest = [v for v in H.V if v not in pset]
    new_v = tuple(sorted(rest + [rep]))
    es, eb = set(), set()
    for u, v in H.E_S:
        if u in pset and v in pset:
            continue
        if u in pset or v in pset:
            out = v if u in pset else u
            es.add(pair(out, rep))
        else:
            es.add((u, v))
    for u, v in H.E_B:
        if u in pset and v in pset:
            continue
        if u in pset or v in pset:
            out = v if u in pset else u
            # solid beats dashed on merged edges
            if pair(out, rep) not in es:
                eb.add(pair(out, rep))
        else:
            eb.add((u, v))
    eb -= es
    return ClassGraph(V=new_v, E_S=frozenset(es), E_B=frozenset(eb))


def contract_class_graph(H: ClassGraph, parts) -> ClassGraph:
    """Sequential contraction along disjoint vertex subsets."""
    parts = [tuple(sorted(p)) for p in parts]
    seen: set[int] = set()
    for p in parts:
        if seen & set(p):
            raise ValueError("parts must be disjoint")
        if not set(p) <= set(H.V):
            raise ValueError("part outside vertex set")
        seen |= set(p)
    out = H
    for p in parts:
        out = _contract_once(out, p)
    return out


# The nine complete four-vertex base-case class graphs (solid sets on
# vertices 0..3; dashed = all remaining pairs).
BASE4_SOLID: dict[str, frozenset[tuple[int, int]]] = {
    "G1": frozenset({(0, 1), (0, 3), (1, 3)}),
    "G2": frozenset({(0, 3), (1, 3)}),
    "G3": frozenset({(1, 3)}),
    "G4": frozenset(),
    "G5": frozenset({(0, 2), (1, 3)}),
    "G6": frozenset({(0, 3), (1, 2), (1, 3)}),
    "G7": frozenset({(0, 1), (1, 2), (1, 3)}),
    "G8": frozenset({(0, 1), (0, 2), (1, 2), (2, 3)}),
    "G10": frozenset({(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)}),
}


def verify_restricted_y_class(H: ClassGraph, recipe: dict) -> bool:
    """Check a nested contraction certificate against the base-case rules.

    recipe is one of
      {"kind": "base3"}
      {"kind": "base4", "case": <BASE4 name>, "labels": (v0, v1, v2, v3)}
      {"kind": "contract", "parts": [{"vertices": [...], "recipe": {...}}, ...]}
    """
    kind = recipe.get("kind")
    if kind == "base3":
        return len(H.V) == 3
    if kind == "base4":
        case, labels = recipe["case"], tuple(recipe["labels"])
        if case not in BASE4_SOLID:
            raise ValueError(f"unknown base case {case!r}")
        if len(H.V) != 4 or set(labels) != set(H.V):
            return False
        if not H.is_complete():
            return False
        solid = frozenset(pair(labels[u], labels[v]) for u, v in BASE4_SOLID[case])
        return H.E_S == solid
    if kind == "contract":
        parts = [tuple(sorted(p["vertices"])) for p in recipe["parts"]]
        seen: set[int] = set()
        for p in parts:
            if seen & set(p):
                raise ValueError("recipe parts overlap")
            seen |= set(p)
        for p in recipe["parts"]:
            sub = full_class_subgraph(H, p["vertices"])
            if not verify_restricted_y_class(sub, p["recipe"]):
                return False
        phi = contract_class_graph(H, parts)
        return phi.alpha_is_tree() and phi.is_complete()
    raise ValueError(f"malformed recipe kind {kind!r}")


# ---------------------------------------------------------------------------
# fans, rank formula, clique bound

def fan_subgraph(G: Graph, D: np.ndarray, p: tuple[int, int]):
    """Common distance-1 neighbours of a non-adjacent pair, plus the induced
    full subgraph on the pair and those neighbours (relabeled 0..)."""
    x, y = p
    if G.has_edge(x, y):
        raise ValueError(f"pair {p} is an edge")
    common = frozenset(
        v for v in range(G.n)
        if v != x and v != y and G.has_edge(x, v) and G.has_edge(v, y))
    verts = sorted({x, y} | common)
    relabel = {v: i for i, v in enumerate(verts)}
    edges = [(relabel[u], relabel[v]) for u, v in G.edges
             if u in relabel and v in relabel]
    return common, build_graph(len(verts), edges)


def emh22_rank(G: Graph, D: np.ndarray) -> int:
    """6 * (#triangles) + sum over non-adjacent pairs of 2*(fan size - 1)."""
    total = 6 * count_full_subgraphs(G, complete_graph(3))
    for x, y in combinations(range(G.n), 2):
        if G.has_edge(x, y):
            continue
        common, _ = fan_subgraph(G, D, (x, y))
        if common:
            total += 2 * (len(common) - 1)
    return total


def emh22_upper_bound(G: Graph) -> int:
    from .graphs import cycle_graph, f4_graph

    return (6 * count_full_subgraphs(G, complete_graph(3))
            + 4 * count_full_subgraphs(G, cycle_graph(4))
            + 2 * count_full_subgraphs(G, f4_graph()))


@dataclass(frozen=True)
class CliqueBoundReport:
    z_count: int
    bound: int
    clique_count: int
    ok: bool


def clique_lower_bound(G: Graph, k: int, D: np.ndarray | None = None) -> CliqueBoundReport:
    """Z = diagonal eulerian trails with zero differential (all skip edges
    present); #(k+1)-cliques <= |Z| / (k+1)!."""
    from .graphs import all_pairs_distances

    if D is None:
        D = all_pairs_distances(G)
    basis = enumerate_trails(G, D, k, k, "emc")
    z = sum(
        1 for t in basis.generators
        if all(G.has_edge(t[i - 1], t[i + 1]) for i in range(1, k)))
    bound = z // factorial(k + 1)
    cliques = count_full_subgraphs(G, complete_graph(k + 1))
    return CliqueBoundReport(z_count=z, bound=bound, clique_count=cliques,
                             ok=cliques <= bound)


# ---------------------------------------------------------------------------
# local collections and structure graphs

@dataclass(frozen=True)
class LocalCollection:
    k: int
    start: int
    end: int
    trails: tuple[tuple[int, ...], ...]
    graph: Graph = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.trails)


@dataclass(frozen=True)
class StructureGraph:
    m: int  # number of trails
    edges: frozenset[tuple[int, int]]
    differing_index: dict = field(repr=False, compare=False)  # edge -> landmark

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.m))
        g.add_edges_from(self.edges)
        return g


def _diff_position(a: tuple[int, ...], b: tuple[int, ...]) -> int | None:
    """Index of the unique differing landmark, or None."""
    idx = None
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            if idx is not None:
                return None
            idx = i
    return idx


def local_collections(G: Graph, D: np.ndarray, k: int) -> list[LocalCollection]:
    """Partition diagonal eulerian trails by endpoints, then by connectivity
    under the one-landmark-difference relation."""
    basis = enumerate_trails(G, D, k, k, "emc")
    groups: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for t in basis.generators:
        groups.setdefault((t[0], t[-1]), []).append(t)
    out = []
    for (s, e), ts in sorted(groups.items()):
        g = nx.Graph()
        g.add_nodes_from(range(len(ts)))
        for i, j in combinations(range(len(ts)), 2):
            if _diff_position(ts[i], ts[j]) is not None:
                g.add_edge(i, j)
        comps = sorted(nx.connected_components(g), key=min)
        for comp in comps:
            trails = tuple(sorted(ts[i] for i in comp))
            out.append(LocalCollection(k=k, start=s, end=e, trails=trails,
                                       graph=G))
    return out


def structure_graph(X: LocalCollection) -> StructureGraph:
    edges = set()
    diffidx = {}
    for i, j in combinations(range(len(X.trails)), 2):
        b = _diff_position(X.trails[i], X.trails[j])
        if b is not None:
            edges.add((i, j))
            diffidx[(i, j)] = b
    return StructureGraph(m=len(X.trails), edges=frozenset(edges),
                          differing_index=diffidx)


def maximal_cliques(S: StructureGraph) -> list[tuple[int, ...]]:
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(S.to_networkx()))


def is_clique_forest(S: StructureGraph) -> tuple[bool, list[tuple[int, ...]]]:
    """True iff every minimal simple circuit is a triangle (chordal)."""
    return nx.is_chordal(S.to_networkx()), maximal_cliques(S)


# ---------------------------------------------------------------------------
# minimal class graph

@dataclass(frozen=True)
class MinimalClassGraph:
    W: tuple[int, ...]
    E_supp: frozenset[tuple[int, int]]
    E_diff: frozenset[tuple[int, int]]
    E_rem: frozenset[tuple[int, int]]
    compatible: bool

    def class_graph(self) -> ClassGraph:
        if not self.compatible:
            raise ValueError("incompatible collection has no class graph")
        e_s = (self.E_supp | self.E_diff) - self.E_rem
        allp = frozenset(pair(u, v) for u, v in combinations(self.W, 2))
        e_b = allp - self.E_rem - e_s
        return ClassGraph(V=self.W, E_S=frozenset(e_s), E_B=e_b)


def minimal_class_graph(X: LocalCollection) -> MinimalClassGraph:
    k = X.k
    e_supp = {pair(t[a], t[a + 1]) for t in X.trails for a in range(k)}
    e_diff = {pair(t[a], t[a + 2]) for t in X.trails for a in range(k - 1)}
    s = structure_graph(X)
    e_rem = set()
    for clique in maximal_cliques(s):
        if len(clique) < 2:
            continue
        i, j = clique[0], clique[1]
        b = s.differing_index[pair(i, j)]
        t = X.trails[i]
        e_rem.add(pair(t[b - 1], t[b + 1]))
    w = tuple(sorted({v for t in X.trails for v in t}))
    return MinimalClassGraph(W=w, E_supp=frozenset(e_supp),
                             E_diff=frozenset(e_diff),
                             E_rem=frozenset(e_rem),
                             compatible=not (e_supp & e_rem))


# ---------------------------------------------------------------------------
# cycles on collections and their decomposition

def _active(G: Graph, t: tuple[int, ...], b: int) -> bool:
    """Face b of a diagonal trail is nonzero iff the skip edge is absent."""
    return not G.has_edge(t[b - 1], t[b + 1])


def _differential(gamma: dict[int, int], X: LocalCollection) -> dict:
    """True ambient differential of a chain supported on X (diagonal grade)."""
    acc: dict[tuple[int, ...], int] = {}
    for idx, a in gamma.items():
        if not a:
            continue
        t = X.trails[idx]
        for b in range(1, X.k):
            if not _active(X.graph, t, b):
                continue
            face = t[:b] + t[b + 1 :]
            w = acc.get(face, 0) + a * (-1) ** b
            if w:
                acc[face] = w
            else:
                acc.pop(face, None)
    return acc


def collection_matrix(X: LocalCollection) -> BoundaryMatrix:
    """Ambient diagonal differential restricted to the collection's columns."""
    faces = sorted({t[:b] + t[b + 1 :]
                    for t in X.trails for b in range(1, X.k)
                    if _active(X.graph, t, b)})
    row = {f: i for i, f in enumerate(faces)}
    cols = []
    for t in X.trails:
        acc: dict[int, int] = {}
        for b in range(1, X.k):
            if _active(X.graph, t, b):
                r = row[t[:b] + t[b + 1 :]]
                acc[r] = acc.get(r, 0) + (-1) ** b
        cols.append(tuple(sorted((r, v) for r, v in acc.items() if v)))
    return BoundaryMatrix(rows=len(faces), cols=len(X.trails),
                          col_entries=tuple(cols))


def collection_kernel_basis(X: LocalCollection) -> list[tuple[tuple[int, int], ...]]:
    return kernel_basis(collection_matrix(X))


def active_structure_graph(X: LocalCollection) -> StructureGraph:
    """Structure graph keeping only edges whose shared face is nonzero."""
    s = structure_graph(X)
    edges, diffidx = set(), {}
    for e in s.edges:
        b = s.differing_index[e]
        t = X.trails[e[0]]
        if _active(X.graph, t, b):
            edges.add(e)
            diffidx[e] = b
    return StructureGraph(m=s.m, edges=frozenset(edges),
                          differing_index=diffidx)


@dataclass(frozen=True)
class CycleComponent:
    kind: str  # singleton | clique_tree | even_circuit | mixed
    coeffs: tuple[tuple[int, int], ...]  # sparse (trail index, coefficient)
    ok: bool


@dataclass(frozen=True)
class Decomposition:
    components: tuple[CycleComponent, ...]
    ok: bool


def _clique_sums_zero(gamma: dict[int, int], X: LocalCollection,
                      S: StructureGraph) -> bool:
    for clique in maximal_cliques(S):
        if len(clique) < 2:
            continue
        if sum(gamma.get(i, 0) for i in clique) != 0:
            return False
    return True


def _even_circuits(g: nx.Graph) -> list[list[int]]:
    cyc = [c for c in nx.chordless_cycles(g) if len(c) >= 4 and len(c) % 2 == 0]
    return sorted(cyc, key=lambda c: (len(c), tuple(sorted(c))))


def _extract_circuit(gamma: dict[int, int], X: LocalCollection):
    """Try to peel one even chordless circuit cycle off gamma."""
    support = {i for i, a in gamma.items() if a}
    sub = structure_graph(X).to_networkx().subgraph(support)
    for circ in _even_circuits(nx.Graph(sub)):
        # orient from the least vertex toward its smaller neighbour
        a0 = min(circ)
        p = circ.index(a0)
        order = circ[p:] + circ[:p]
        if order[-1] < order[1]:
            order = [order[0]] + order[1:][::-1]
        a = gamma[a0]
        cand = {v: a * (-1) ** i for i, v in enumerate(order)}
        if a and not _differential(cand, X):
            return cand
    return None


def _component_pieces(gamma: dict[int, int], X: LocalCollection):
    """Split a chain along connected components of the structure graph."""
    support = {i for i, a in gamma.items() if a}
    if not support:
        return []
    g = structure_graph(X).to_networkx().subgraph(support)
    return [
        {i: gamma[i] for i in comp}
        for comp in sorted(nx.connected_components(g), key=min)
    ]


def _sparse(gamma: dict[int, int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((i, a) for i, a in gamma.items() if a))


def _subset_kernel(X: LocalCollection, subset) -> list[dict[int, int]]:
    """Integer kernel vectors of the collection matrix restricted to subset."""
    idx = sorted(subset)
    full = collection_matrix(X)
    sub = BoundaryMatrix(rows=full.rows, cols=len(idx),
                         col_entries=tuple(full.col_entries[i] for i in idx))
    return [{idx[j]: a for j, a in vec} for vec in kernel_basis(sub)]


def _minimalize(w: dict[int, int], X: LocalCollection) -> dict[int, int]:
    """Shrink a cycle until no proper subset of its support carries one."""
    while True:
        support = sorted(i for i, a in w.items() if a)
        for i in support:
            kb = _subset_kernel(X, [j for j in support if j != i])
            if kb:
                w = kb[0]
                break
        else:
            return w


def _proper_subcycle(X: LocalCollection, support) -> dict[int, int] | None:
    for i in sorted(support):
        kb = _subset_kernel(X, [j for j in support if j != i])
        if kb:
            return _minimalize(kb[0], X)
    return None


def _split_nonminimal(gamma: dict[int, int],
                      X: LocalCollection) -> Decomposition:
    """Peel integer multiples of minimally supported sub-cycles off gamma."""
    support = {i for i, a in gamma.items() if a}
    if not support:
        return Decomposition(components=(), ok=True)
    w = _proper_subcycle(X, support)
    if w is not None:
        for j in sorted(w):
            if gamma.get(j) and gamma[j] % w[j] == 0:
                lam = gamma[j] // w[j]
                part = {i: lam * a for i, a in w.items()}
                rest = {i: gamma.get(i, 0) - part.get(i, 0)
                        for i in set(gamma) | set(part)}
                rest = {i: a for i, a in rest.items() if a}
                head = _decompose_connected(part, X)
                tail = _split_nonminimal(rest, X)
                return Decomposition(
                    components=head.components + tail.components,
                    ok=head.ok and tail.ok)
    # no usable split: report as-is
    return Decomposition(
        components=(CycleComponent("mixed", _sparse(gamma), False),),
        ok=False)


def decompose_cycle(gamma, X: LocalCollection) -> Decomposition:
    """Split a kernel chain into even-circuit and clique-forest cycles.

    gamma may be a dict {trail index: coefficient} or a sparse tuple as
    produced by collection_kernel_basis.  Chains whose greedy decomposition
    fails (not minimally supported in the required sense) are first split
    into integer multiples of minimally supported sub-cycles.
    """
    if not isinstance(gamma, dict):
        gamma = dict(gamma)
    gamma = {i: a for i, a in gamma.items() if a}
    if _differential(gamma, X):
        raise ValueError("input chain is not a cycle")
    dec = _decompose_connected(gamma, X)
    if not dec.ok:
        alt = _split_nonminimal(gamma, X)
        if alt.ok:
            dec = alt
    # exact reassembly check
    total: dict[int, int] = {}
    for comp in dec.components:
        for i, a in comp.coeffs:
            total[i] = total.get(i, 0) + a
    total = {i: a for i, a in total.items() if a}
    return Decomposition(components=dec.components,
                         ok=dec.ok and total == gamma)


def _decompose_connected(gamma: dict[int, int],
                         X: LocalCollection) -> Decomposition:
    components: list[CycleComponent] = []
    ok = True
    for piece in _component_pieces(gamma, X):
        if _differential(piece, X):
            # faces leaking across structure-graph components: no decomposition
            components.append(CycleComponent("mixed", _sparse(piece), False))
            ok = False
            continue
        cur = dict(piece)
        while True:
            support = {i for i, a in cur.items() if a}
            if not support:
                break
            sub = structure_graph(X).to_networkx().subgraph(support)
            if len(support) == 1:
                components.append(CycleComponent("singleton", _sparse(cur), True))
                break
            if nx.is_chordal(nx.Graph(sub)):
                for part in _component_pieces(cur, X):
                    # coefficient relations live on cliques whose shared face
                    # is nonzero in the ambient graph
                    sg = active_structure_graph(X).to_networkx().subgraph(part)
                    cliq = sorted(tuple(sorted(c)) for c in nx.find_cliques(nx.Graph(sg)))
                    good = all(
                        sum(part.get(i, 0) for i in c) == 0
                        for c in cliq if len(c) >= 2) and not _differential(part, X)
                    kind = "singleton" if len(part) == 1 else "clique_tree"
                    components.append(CycleComponent(kind, _sparse(part), good))
                    ok = ok and good
                break
            circ = _extract_circuit(cur, X)
            if circ is None:
                components.append(CycleComponent("mixed", _sparse(cur), False))
                ok = False
                break
            components.append(CycleComponent("even_circuit", _sparse(circ), True))
            for i, a in circ.items():
                w = cur.get(i, 0) - a
                if w:
                    cur[i] = w
                else:
                    cur.pop(i, None)
            if _differential(cur, X):  # peeled a non-cycle remainder: bail out
                components.append(CycleComponent("mixed", _sparse(cur), False))
                ok = False
                break
    # exact reassembly check
    total: dict[int, int] = {}
    for comp in components:
        for i, a in comp.coeffs:
            total[i] = total.get(i, 0) + a
    total = {i: a for i, a in total.items() if a}
    ok = ok and total == gamma
    return Decomposition(components=tuple(components), ok=ok)


def classify_collection(X: LocalCollection) -> str:
    """Coarse shape of the structure graph for reporting."""
    if len(X.trails) == 1:
        return "singleton"
    g = structure_graph(X).to_networkx()
    if nx.is_chordal(g):
        return "clique_tree"
    degs = [d for _, d in g.degree()]
    if (nx.is_connected(g) and all(d == 2 for d in degs)
            and g.number_of_nodes() % 2 == 0):
        return "even_circuit"
    return "mixed"
