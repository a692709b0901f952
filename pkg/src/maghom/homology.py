"""Exact homology over Q with a two-prime modular fast path.

Rank pipeline: sparse elimination modulo two fixed 31-bit primes; on
disagreement (or by request) escalate to exact Fraction elimination.  Kernel
bases are exact integer vectors with content 1 and positive leading entry.
Torsion comes from Smith normal form of the incoming differential.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np
import sympy
from sympy.matrices.normalforms import smith_normal_form

from . import kernels
from .chains import BoundaryMatrix, boundary_matrix, connecting_map
from .graphs import Graph, all_pairs_distances
from .trails import BudgetExceededError, ChainBasis, enumerate_trails, is_eulerian

PRIME_A = 2147483629
PRIME_B = 2147483587

DEFAULT_BUDGET = 5_000_000
_DENSE_CELL_LIMIT = 4_000_000
_SNF_DIM_LIMIT = 2000


# ---------------------------------------------------------------------------
# rank machinery

def _rank_sparse_mod_p(columns: list[dict[int, int]], p: int) -> int:
    """Incremental sparse echelon over GF(p); pivot = least row index."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        cur = {r: v % p for r, v in col.items() if v % p}
        while cur:
            r = min(cur)
            piv = pivots.get(r)
            if piv is None:
                inv = pow(cur[r], p - 2, p)
                pivots[r] = {i: (v * inv) % p for i, v in cur.items()}
                rank += 1
                break
            f = cur[r]
            for i, v in piv.items():
                w = (cur.get(i, 0) - f * v) % p
                if w:
                    cur[i] = w
                else:
                    cur.pop(i, None)
        # empty column: linearly dependent
    return rank


def _rank_sparse_exact(columns: list[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for col in columns:
        cur = {r: Fraction(v) for r, v in col.items() if v}
        while cur:
            r = min(cur)
            piv = pivots.get(r)
            if piv is None:
                lead = cur[r]
                pivots[r] = {i: v / lead for i, v in cur.items()}
                rank += 1
                break
            f = cur[r]
            for i, v in piv.items():
                w = cur.get(i, Fraction(0)) - f * v
                if w:
                    cur[i] = w
                else:
                    cur.pop(i, None)
    return rank


def _columns_of(M: BoundaryMatrix | list[dict[int, int]]) -> list[dict[int, int]]:
    if isinstance(M, BoundaryMatrix):
        return M.column_dicts()
    return M


def matrix_rank_exact(M: BoundaryMatrix | list[dict[int, int]],
                      rows: int | None = None) -> int:
    """Rank over Q; modular certificate with exact fallback on disagreement."""
    cols = _columns_of(M)
    if not cols:
        return 0
    if isinstance(M, BoundaryMatrix):
        rows = M.rows
    if rows is None:
        rows = 1 + max((max(c) for c in cols if c), default=0)
    cells = rows * len(cols)
    if 0 < cells <= _DENSE_CELL_LIMIT and rows > 0:
        dense = np.zeros((rows, len(cols)), dtype=np.int64)
        for j, c in enumerate(cols):
            for r, v in c.items():
                dense[r, j] = v
        ra = kernels.rank_mod_p_dense(dense, PRIME_A)
        rb = kernels.rank_mod_p_dense(dense, PRIME_B)
    else:
        ra = _rank_sparse_mod_p(cols, PRIME_A)
        rb = _rank_sparse_mod_p(cols, PRIME_B)
    if ra == rb:
        return ra
    return _rank_sparse_exact(cols)


def _normalize_int_vector(vec: dict[int, Fraction]) -> tuple[tuple[int, int], ...]:
    """Clear denominators, divide by content, make leading entry positive."""
    items = sorted((i, v) for i, v in vec.items() if v)
    if not items:
        return ()
    denom = 1
    for _, v in items:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [(i, int(v * denom)) for i, v in items]
    g = 0
    for _, v in ints:
        g = gcd(g, abs(v))
    sign = 1 if ints[0][1] > 0 else -1
    return tuple((i, sign * v // g) for i, v in ints)


def kernel_basis(M: BoundaryMatrix) -> list[tuple[tuple[int, int], ...]]:
    """Exact integer kernel basis (content 1, leading entry positive).

    Each basis vector is a sparse tuple of (column index, coefficient).
    """
    pivots: dict[int, tuple[dict[int, Fraction], dict[int, Fraction]]] = {}
    out = []
    for j, raw in enumerate(M.col_entries):
        cur = {r: Fraction(v) for r, v in raw}
        comb = {j: Fraction(1)}
        while cur:
            r = min(cur)
            piv = pivots.get(r)
            if piv is None:
                lead = cur[r]
                pivots[r] = ({i: v / lead for i, v in cur.items()},
                             {i: v / lead for i, v in comb.items()})
                break
            f = cur[r]
            pcol, pcomb = piv
            for i, v in pcol.items():
                w = cur.get(i, Fraction(0)) - f * v
                if w:
                    cur[i] = w
                else:
                    cur.pop(i, None)
            for i, v in pcomb.items():
                w = comb.get(i, Fraction(0)) - f * v
                if w:
                    comb[i] = w
                else:
                    comb.pop(i, None)
        if not cur:
            out.append(_normalize_int_vector(comb))
    return out


def in_column_span(vec: dict[int, int], M: BoundaryMatrix) -> bool:
    """Is the chain vector (row-index -> coef) a combination of M's columns?"""
    cols = M.column_dicts()
    base = matrix_rank_exact(cols, rows=M.rows)
    aug = matrix_rank_exact(cols + [vec], rows=M.rows)
    return aug == base


def smith_invariant_factors(M: BoundaryMatrix) -> list[int] | None:
    """Nontrivial invariant factors; None when over the size cap."""
    if M.rows > _SNF_DIM_LIMIT or M.cols > _SNF_DIM_LIMIT:
        return None
    if M.nnz == 0:
        return []
    sm = sympy.Matrix(M.rows, M.cols, lambda r, c: 0)
    for r, c, v in M.entries():
        sm[r, c] = v
    snf = smith_normal_form(sm, domain=sympy.ZZ)
    facs = []
    for i in range(min(snf.shape)):
        v = abs(int(snf[i, i]))
        if v > 1:
            facs.append(v)
    return sorted(facs)


# ---------------------------------------------------------------------------
# homology

@dataclass(frozen=True)
class HomologyResult:
    theory: str
    k: int
    ell: int
    dim_source: int
    rank_out: int
    rank_in: int
    betti: int
    torsion: tuple[int, ...] | None = None  # None = not requested / unknown


def compute_homology(G: Graph, k: int, ell: int, theory: str,
                     want_torsion: bool = False,
                     budget: int = DEFAULT_BUDGET,
                     D: np.ndarray | None = None) -> HomologyResult:
    if D is None:
        D = all_pairs_distances(G)
    src = enumerate_trails(G, D, k, ell, theory, budget=budget)
    above = enumerate_trails(G, D, k + 1, ell, theory, budget=budget)
    below = enumerate_trails(G, D, k - 1, ell, theory, budget=budget)
    d_out = boundary_matrix(G, D, k, ell, theory, src=src, dst=below)
    d_in = boundary_matrix(G, D, k + 1, ell, theory, src=above, dst=src)
    rank_out = matrix_rank_exact(d_out)
    rank_in = matrix_rank_exact(d_in)
    betti = len(src) - rank_out - rank_in
    torsion: tuple[int, ...] | None = None
    if want_torsion:
        facs = smith_invariant_factors(d_in)
        torsion = None if facs is None else tuple(facs)
    return HomologyResult(theory=theory, k=k, ell=ell, dim_source=len(src),
                          rank_out=rank_out, rank_in=rank_in, betti=betti,
                          torsion=torsion)


# ---------------------------------------------------------------------------
# long exact sequence bookkeeping

@dataclass(frozen=True)
class LesNode:
    name: str
    dim_h: int
    rank_incoming: int
    rank_outgoing: int
    exact: bool
    composite_zero: bool


@dataclass(frozen=True)
class LesReport:
    ell: int
    nodes: tuple[LesNode, ...]
    passed: bool


def _apply_columns(M: BoundaryMatrix, vec: dict[int, int]) -> dict[int, int]:
    """M @ vec for a sparse coefficient vector over M's columns."""
    acc: dict[int, int] = {}
    cols = M.col_entries
    for j, a in vec.items():
        for r, v in cols[j]:
            w = acc.get(r, 0) + a * v
            if w:
                acc[r] = w
            else:
                acc.pop(r, None)
    return acc


def _induced_rank(image_vectors: list[dict[int, int]],
                  boundary_cols: list[dict[int, int]], rows: int) -> int:
    """Rank of cycle vectors modulo the boundary subspace."""
    base = matrix_rank_exact(boundary_cols, rows=rows)
    aug = matrix_rank_exact(boundary_cols + image_vectors, rows=rows)
    return aug - base


def les_consistency_check(G: Graph, ell: int,
                          D: np.ndarray | None = None) -> LesReport:
    """Verify rank-nullity exactness of the homology long exact sequence.

    ... -> dmh_{k+1} -δ-> emh_k -ι-> mh_k -π-> dmh_k -δ-> emh_{k-1} -> ...
    """
    if D is None:
        D = all_pairs_distances(G)
    bases = {th: {k: enumerate_trails(G, D, k, ell, th)
                  for k in range(-1, ell + 3)} for th in ("mc", "emc", "dmc")}
    bdry = {th: {k: boundary_matrix(G, D, k, ell, th, src=bases[th][k],
                                    dst=bases[th][k - 1])
                 for k in range(0, ell + 2)} for th in ("mc", "emc", "dmc")}
    conn = {k: connecting_map(G, D, k - 1, ell, src=bases["dmc"][k],
                              dst=bases["emc"][k - 1])
            for k in range(0, ell + 2)}

    kerb = {th: {k: kernel_basis(bdry[th][k]) for k in range(0, ell + 2)}
            for th in ("mc", "emc", "dmc")}

    def cycles(th, k):
        return [dict(v) for v in kerb[th][k]]

    def boundaries(th, k):
        return bdry[th][k + 1].column_dicts()

    def emc_to_mc(vec, k):
        return {bases["mc"][k].index[bases["emc"][k].generators[j]]: a
                for j, a in vec.items()}

    def mc_to_dmc(vec, k):
        out = {}
        for j, a in vec.items():
            t = bases["mc"][k].generators[j]
            if not is_eulerian(t):
                out[bases["dmc"][k].index[t]] = a
        return out

    def delta_image(vec, k):
        """Connecting map on a dmc cycle at grade k -> emc chain at k-1."""
        return _apply_columns(conn[k], vec)

    nodes = []
    ok_all = True
    for k in range(0, ell + 1):
        n_mc = len(bases["mc"][k])
        n_emc = len(bases["emc"][k])
        n_dmc = len(bases["dmc"][k])
        h = {th: len(kerb[th][k]) - matrix_rank_exact(bdry[th][k + 1])
             for th in ("mc", "emc", "dmc")}

        # induced map images
        delta_in = [delta_image(v, k + 1) for v in cycles("dmc", k + 1)]
        iota_im = [emc_to_mc(v, k) for v in cycles("emc", k)]
        pi_im = [mc_to_dmc(v, k) for v in cycles("mc", k)]
        delta_out = [delta_image(v, k) for v in cycles("dmc", k)]

        r_delta_in = _induced_rank(delta_in, boundaries("emc", k), n_emc)
        r_iota = _induced_rank(iota_im, boundaries("mc", k), n_mc)
        r_pi = _induced_rank(pi_im, boundaries("dmc", k), n_dmc)
        r_delta_out = _induced_rank(delta_out, boundaries("emc", k - 1),
                                    len(bases["emc"][k - 1]))

        # composite of consecutive maps must vanish on homology
        comp_emc = _induced_rank([emc_to_mc(v, k) for v in delta_in],
                                 boundaries("mc", k), n_mc) == 0
        comp_mc = all(not mc_to_dmc(v, k) for v in iota_im)
        comp_dmc = _induced_rank([delta_image(v, k) for v in pi_im],
                                 boundaries("emc", k - 1),
                                 len(bases["emc"][k - 1])) == 0

        checks = [
            LesNode(f"emh_{k}", h["emc"], r_delta_in, r_iota,
                    r_delta_in + r_iota == h["emc"], comp_emc),
            LesNode(f"mh_{k}", h["mc"], r_iota, r_pi,
                    r_iota + r_pi == h["mc"], comp_mc),
            LesNode(f"dmh_{k}", h["dmc"], r_pi, r_delta_out,
                    r_pi + r_delta_out == h["dmc"], comp_dmc),
        ]
        for nd in checks:
            ok_all = ok_all and nd.exact and nd.composite_zero
        nodes.extend(checks)
    return LesReport(ell=ell, nodes=tuple(nodes), passed=ok_all)


# ---------------------------------------------------------------------------
# theorem-consequence verifiers

def is_back_and_forth(t: tuple[int, ...]) -> bool:
    """(a, b, a, b, ...) pattern: exactly two landmarks, alternating."""
    return len(t) >= 2 and all(t[i] == t[i % 2] for i in range(len(t)))


@dataclass(frozen=True)
class VanishingReport:
    applicable: bool
    reason: str
    betti_mh: int | None = None
    two_e: int | None = None
    all_back_and_forth: bool | None = None
    betti_dmh: int | None = None
    iso_checked: bool = False
    passed: bool = False


def verify_vanishing_consequences(G: Graph, k: int,
                                  D: np.ndarray | None = None) -> VanishingReport:
    """Consequences of vanishing diagonal emh: mh generated by back-and-forth
    trails with rank 2|E|, and (k >= 5) mh = dmh on the diagonal."""
    if D is None:
        D = all_pairs_distances(G)
    for n_ in range(2, k + 1):
        r = compute_homology(G, n_, n_, "emc", D=D)
        if r.betti != 0:
            return VanishingReport(False, f"emh_{{{n_},{n_}}} = {r.betti} != 0")
    src = enumerate_trails(G, D, k, k, "mc")
    below = enumerate_trails(G, D, k - 1, k, "mc")
    d_kk = boundary_matrix(G, D, k, k, "mc", src=src, dst=below)
    kerb = kernel_basis(d_kk)
    bnf = all(is_back_and_forth(src.generators[j])
              for vec in kerb for j, _ in vec)
    betti_mh = len(kerb)  # diagonal: homology = kernel
    two_e = 2 * len(G.edges)
    passed = bnf and betti_mh == two_e
    betti_dmh = None
    iso_checked = False
    if k >= 5:
        betti_dmh = compute_homology(G, k, k, "dmc", D=D).betti
        iso_checked = True
        passed = passed and betti_mh == betti_dmh
    return VanishingReport(True, "preconditions hold", betti_mh=betti_mh,
                           two_e=two_e, all_back_and_forth=bnf,
                           betti_dmh=betti_dmh, iso_checked=iso_checked,
                           passed=passed)


@dataclass(frozen=True)
class TrivialityVerdict:
    trivial_in_mh: bool
    witness: tuple[int, ...] | None
    cross_check_ok: bool


def check_lesnotsplit_criterion(G: Graph, trail: tuple[int, ...],
                                D: np.ndarray | None = None) -> TrivialityVerdict:
    """A nontrivial emh class at grade (k-1, k) dies in mh iff some landmark
    x_i (i <= r-2) can be reinserted after x_r to form a diagonal k-trail."""
    if D is None:
        D = all_pairs_distances(G)
    x = tuple(trail)
    km1 = len(x) - 1  # trail grade
    k = km1 + 1
    from .trails import trail_length

    if len(set(x)) != len(x) or trail_length(D, x) != k:
        raise ValueError("trail must be eulerian of length one above its grade")
    emc_src = enumerate_trails(G, D, km1, k, "emc")
    emc_out = boundary_matrix(G, D, km1, k, "emc", src=emc_src)
    emc_in = boundary_matrix(G, D, k, k, "emc",
                             dst=emc_src)
    j = emc_src.index[x]
    if _apply_columns(emc_out, {j: 1}):
        raise ValueError("class is not a cycle in the eulerian complex")
    if in_column_span({j: 1}, emc_in):
        raise ValueError("class is already trivial in eulerian homology")

    witness = None
    for r in range(2, km1):
        for i in range(0, r - 1):
            cand = x[: r + 1] + (x[i],) + x[r + 1 :]
            if all(G.has_edge(a, b) for a, b in zip(cand, cand[1:])):
                witness = cand
                break
        if witness:
            break

    # direct triviality in the full complex
    mc_src = enumerate_trails(G, D, km1, k, "mc")
    mc_in = boundary_matrix(G, D, k, k, "mc", dst=mc_src)
    vec = {mc_src.index[x]: 1}
    trivial = in_column_span(vec, mc_in)
    return TrivialityVerdict(trivial_in_mh=trivial, witness=witness,
                             cross_check_ok=(witness is not None) == trivial)
