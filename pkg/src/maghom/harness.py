"""Monte Carlo sweeps over random-graph ensembles.

Per trial, the diagonal Betti number is computed as |ET_{k,k}| minus the rank
of the diagonal eulerian differential (diagonal homology is the kernel).
Aggregation is associative and sorted, so worker count never changes output.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, all_pairs_distances
from .homology import matrix_rank_exact
from .chains import boundary_matrix
from .randmodels import ErParams, RggParams, p_from_q, sample_er, sample_rgg
from .trails import enumerate_trails, BudgetExceededError

DEFAULT_TRIAL_BUDGET = 5_000_000


def fmt(x: float) -> str:
    """17-significant-digit float serialization."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return f"{x:.17g}"


@dataclass(frozen=True)
class SweepConfig:
    model: str  # "er" | "rgg"
    k: int
    n_list: tuple[int, ...]
    param_name: str  # "q" | "p" (er) | "r" (rgg)
    param_values: tuple[float, ...]
    trials: int
    seed: int
    area: float = 1.0  # rgg only
    budget: int = DEFAULT_TRIAL_BUDGET
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.n_list or not self.param_values:
            raise ValueError("grids must be nonempty")
        if self.model not in ("er", "rgg"):
            raise ValueError(f"unknown model {self.model!r}")


@dataclass(frozen=True)
class ExperimentRecord:
    model: str
    n: int
    k: int
    param_name: str
    param_value: float
    trial: int
    seed: int
    beta: int | None
    t_kk: int | None
    t_km1k: int | None
    wall_ms: float
    truncated: bool


@dataclass(frozen=True)
class CellSummary:
    model: str
    n: int
    k: int
    param_name: str
    param_value: float
    trials: int
    mean_beta: float
    var_beta: float
    ci_lo: float
    ci_hi: float
    skew: float
    kurtosis: float  # excess
    truncated_count: int
    seed: int


def sample_graph(model: str, n: int, k: int, param_name: str, value: float,
                 area: float, seed: int, trial: int) -> Graph:
    if model == "er":
        p = p_from_q(n, value) if param_name == "q" else value
        return sample_er(ErParams(n=n, p=min(max(p, 0.0), 1.0), seed=seed,
                                  trial=trial))
    r = p_from_q(n, value) if param_name == "q" else value
    g, _ = sample_rgg(RggParams(n=n, r=r, A=area, seed=seed, trial=trial))
    return g


def run_trial(model: str, n: int, k: int, param_name: str, value: float,
              area: float, seed: int, trial: int,
              budget: int = DEFAULT_TRIAL_BUDGET) -> ExperimentRecord:
    t0 = time.perf_counter()
    G = sample_graph(model, n, k, param_name, value, area, seed, trial)
    D = all_pairs_distances(G)
    try:
        src = enumerate_trails(G, D, k, k, "emc", budget=budget)
        dst = enumerate_trails(G, D, k - 1, k, "emc", budget=budget)
        mat = boundary_matrix(G, D, k, k, "emc", src=src, dst=dst)
        beta = len(src) - matrix_rank_exact(mat)
        rec = ExperimentRecord(model, n, k, param_name, value, trial, seed,
                               beta, len(src), len(dst),
                               (time.perf_counter() - t0) * 1e3, False)
    except BudgetExceededError:
        rec = ExperimentRecord(model, n, k, param_name, value, trial, seed,
                               None, None, None,
                               (time.perf_counter() - t0) * 1e3, True)
    return rec


def _worker(args) -> ExperimentRecord:
    return run_trial(*args)


def _moments(xs: np.ndarray) -> tuple[float, float, float, float, float]:
    m = float(xs.mean())
    if len(xs) < 2:
        return m, float("nan"), float("nan"), float("nan"), float("nan")
    var = float(xs.var(ddof=1))
    if var == 0.0:
        return m, 0.0, 0.0, float("nan"), float("nan")
    z = (xs - m) / math.sqrt(var * (len(xs) - 1) / len(xs))
    skew = float((z**3).mean())
    kurt = float((z**4).mean()) - 3.0
    half = 1.959963984540054 * math.sqrt(var / len(xs))
    return m, var, half, skew, kurt


def summarize_cell(model: str, n: int, k: int, param_name: str, value: float,
                   seed: int, records: list[ExperimentRecord]) -> CellSummary:
    good = np.array([r.beta for r in records if not r.truncated], dtype=float)
    truncated = sum(1 for r in records if r.truncated)
    if len(good) == 0:
        mean = var = half = skew = kurt = float("nan")
    else:
        mean, var, half, skew, kurt = _moments(good)
    return CellSummary(model=model, n=n, k=k, param_name=param_name,
                       param_value=value, trials=len(records), mean_beta=mean,
                       var_beta=var, ci_lo=mean - half, ci_hi=mean + half,
                       skew=skew, kurtosis=kurt, truncated_count=truncated,
                       seed=seed)


def run_sweep(cfg: SweepConfig) -> tuple[list[CellSummary], list[ExperimentRecord]]:
    cells = [(n, v) for n in cfg.n_list for v in cfg.param_values]
    tasks = [
        (cfg.model, n, cfg.k, cfg.param_name, v, cfg.area, cfg.seed, t,
         cfg.budget)
        for n, v in cells for t in range(cfg.trials)
    ]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            results = list(ex.map(_worker, tasks, chunksize=8))
    else:
        results = [_worker(t) for t in tasks]
    # deterministic aggregation independent of completion order
    results.sort(key=lambda r: (r.n, r.param_value, r.trial))
    summaries = []
    for n, v in cells:
        recs = [r for r in results if r.n == n and r.param_value == v]
        summaries.append(summarize_cell(cfg.model, n, cfg.k, cfg.param_name,
                                        v, cfg.seed, recs))
    return summaries, results


def threshold_crossing(summaries: list[CellSummary]) -> float | None:
    """First grid value (ascending) where mean beta drops below 1."""
    for s in sorted(summaries, key=lambda s: s.param_value):
        if not math.isnan(s.mean_beta) and s.mean_beta < 1.0:
            return s.param_value
    return None


def morse_bound_check(records: list[ExperimentRecord]) -> bool:
    """t_kk - t_{k-1,k} <= beta <= t_kk on every completed trial."""
    return all(
        r.t_kk - r.t_km1k <= r.beta <= r.t_kk
        for r in records if not r.truncated)


def ratio_experiment(model: str, k: int, n_list, density: float, trials: int,
                     seed: int, area: float = 1.0,
                     workers: int = 1) -> list[dict]:
    """Normalized-ratio estimates per n against the asymptotic law.

    er:  E[beta] / (n^{k+1} p^{2k-1})        -> 1
    rgg: E[beta] / (n^{k+1} r^{2k} (pi/A)^k) -> 1
    """
    pname = "p" if model == "er" else "r"
    cfg = SweepConfig(model=model, k=k, n_list=tuple(n_list), param_name=pname,
                      param_values=(density,), trials=trials, seed=seed,
                      area=area, workers=workers)
    summaries, _ = run_sweep(cfg)
    out = []
    for s in sorted(summaries, key=lambda s: s.n):
        if model == "er":
            denom = s.n ** (k + 1) * density ** (2 * k - 1)
        else:
            denom = s.n ** (k + 1) * density ** (2 * k) * (math.pi / area) ** k
        out.append({
            "n": s.n, "ratio": s.mean_beta / denom,
            "ci_lo": s.ci_lo / denom, "ci_hi": s.ci_hi / denom,
            "mean_beta": s.mean_beta,
        })
    return out


def clt_experiment(model: str, k: int, n: int, density: float, trials: int,
                   seed: int, area: float = 1.0, workers: int = 1) -> dict:
    """Standardized-sample normality diagnostics for one cell."""
    from scipy import stats

    pname = "p" if model == "er" else "r"
    cfg = SweepConfig(model=model, k=k, n_list=(n,), param_name=pname,
                      param_values=(density,), trials=trials, seed=seed,
                      area=area, workers=workers)
    summaries, records = run_sweep(cfg)
    s = summaries[0]
    if not s.var_beta or math.isnan(s.var_beta) or s.var_beta == 0.0:
        raise ValueError("degenerate variance cell")
    xs = np.array([r.beta for r in records if not r.truncated], dtype=float)
    z = (xs - xs.mean()) / xs.std(ddof=1)
    ks = stats.kstest(z, "norm")
    hist, edges = np.histogram(z, bins=21, range=(-4.2, 4.2))
    return {
        "summary": s,
        "skew": s.skew,
        "excess_kurtosis": s.kurtosis,
        "ks_stat": float(ks.statistic),
        "ks_pvalue": float(ks.pvalue),
        "histogram": [(float(edges[i]), float(edges[i + 1]), int(hist[i]))
                      for i in range(len(hist))],
    }


# ---------------------------------------------------------------------------
# CSV serialization

SUMMARY_HEADER = ("model,n,k,param_name,param_value,trials,mean_beta,var_beta,"
                  "ci_lo,ci_hi,skew,kurtosis,truncated_count,seed")
TRIALS_HEADER = "trial,seed,beta,t_kk,t_km1k,wall_ms,truncated"


def summary_csv(summaries: list[CellSummary]) -> str:
    lines = [SUMMARY_HEADER]
    for s in summaries:
        lines.append(",".join([
            s.model, str(s.n), str(s.k), s.param_name, fmt(s.param_value),
            str(s.trials), fmt(s.mean_beta), fmt(s.var_beta), fmt(s.ci_lo),
            fmt(s.ci_hi), fmt(s.skew), fmt(s.kurtosis),
            str(s.truncated_count), str(s.seed),
        ]))
    return "\n".join(lines) + "\n"


def trials_csv(records: list[ExperimentRecord]) -> str:
    lines = [TRIALS_HEADER]
    for r in sorted(records, key=lambda r: r.trial):
        lines.append(",".join([
            str(r.trial), str(r.seed),
            "" if r.beta is None else str(r.beta),
            "" if r.t_kk is None else str(r.t_kk),
            "" if r.t_km1k is None else str(r.t_km1k),
            fmt(r.wall_ms), "1" if r.truncated else "0",
        ]))
    return "\n".join(lines) + "\n"


def histogram_csv(histogram) -> str:
    lines = ["lo,hi,count"]
    for lo, hi, c in histogram:
        lines.append(f"{fmt(lo)},{fmt(hi)},{c}")
    return "\n".join(lines) + "\n"
