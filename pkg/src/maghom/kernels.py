"""Hot numeric kernels: diagonal simple-path enumeration and dense mod-p rank.

Both kernels exist in a numba-compiled and a pure numpy/Python variant with
identical semantics.  Set MAGHOM_NO_NUMBA=1 before import to force the
fallback path (used by the benchmark and by CI smoke runs).
"""
from __future__ import annotations

import os

import numpy as np

_FORCE_FALLBACK = os.environ.get("MAGHOM_NO_NUMBA", "0") == "1"

try:
    if _FORCE_FALLBACK:
        raise ImportError("numba disabled by MAGHOM_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def _simple_paths_py(adj: np.ndarray, k: int) -> np.ndarray:
    """All ordered simple paths on k+1 vertices, lexicographic order."""
    n = adj.shape[0]
    out = []
    path = [0] * (k + 1)
    used = [False] * n

    def rec(depth: int) -> None:
        u = path[depth - 1]
        for v in range(n):
            if adj[u, v] and not used[v]:
                path[depth] = v
                if depth == k:
                    out.append(tuple(path))
                else:
                    used[v] = True
                    rec(depth + 1)
                    used[v] = False

    for s in range(n):
        path[0] = s
        if k == 0:
            out.append((s,))
            continue
        used[s] = True
        rec(1)
        used[s] = False
    return np.array(out, dtype=np.int64).reshape(len(out), k + 1)


def _rank_mod_p_py(mat: np.ndarray, p: int) -> int:
    """Row-reduction rank of an integer matrix modulo prime p."""
    a = np.ascontiguousarray(mat, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = a[r + 1 :, c] != 0
        if below.any():
            a[r + 1 :, c:][below] = (
                a[r + 1 :, c:][below] - np.outer(a[r + 1 :, c][below], a[r, c:])
            ) % p
        r += 1
    return r


if HAS_NUMBA:

    @njit(cache=True)
    def _paths_pass(adj, k, out, record):  # pragma: no cover - jitted
        n = adj.shape[0]
        path = np.empty(k + 1, np.int64)
        used = np.zeros(n, np.bool_)
        nxt = np.zeros(k + 1, np.int64)
        cnt = 0
        for s in range(n):
            path[0] = s
            if k == 0:
                if record:
                    out[cnt, 0] = s
                cnt += 1
                continue
            used[s] = True
            depth = 1
            nxt[1] = 0
            while depth >= 1:
                u = path[depth - 1]
                v = nxt[depth]
                while v < n and not (adj[u, v] and not used[v]):
                    v += 1
                if v < n:
                    nxt[depth] = v + 1
                    path[depth] = v
                    if depth == k:
                        if record:
                            for j in range(k + 1):
                                out[cnt, j] = path[j]
                        cnt += 1
                    else:
                        used[v] = True
                        depth += 1
                        nxt[depth] = 0
                else:
                    depth -= 1
                    if depth >= 1:
                        used[path[depth]] = False
            used[s] = False
        return cnt

    def _simple_paths_nb(adj: np.ndarray, k: int) -> np.ndarray:
        adj = np.ascontiguousarray(adj, dtype=np.bool_)
        dummy = np.empty((0, k + 1), np.int64)
        cnt = _paths_pass(adj, k, dummy, False)
        out = np.empty((cnt, k + 1), np.int64)
        _paths_pass(adj, k, out, True)
        return out

    @njit(cache=True)
    def _rank_mod_p_nb(mat, p):  # pragma: no cover - jitted
        a = mat % p
        rows, cols = a.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            # modular inverse by binary exponentiation
            base = a[r, c] % p
            e = p - 2
            inv = 1
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r

    def _rank_mod_p_nb_wrap(mat: np.ndarray, p: int) -> int:
        return int(_rank_mod_p_nb(np.ascontiguousarray(mat, dtype=np.int64), p))

    simple_paths = _simple_paths_nb
    rank_mod_p_dense = _rank_mod_p_nb_wrap
else:
    simple_paths = _simple_paths_py
    rank_mod_p_dense = _rank_mod_p_py

# fallback variants always importable for cross-checks and benchmarks
simple_paths_fallback = _simple_paths_py
rank_mod_p_dense_fallback = _rank_mod_p_py
