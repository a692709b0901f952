"""Threshold-region and Betti-curve figures from sweep summary CSVs.

Data extraction is separated from rendering so the plotted series are pure
functions of the CSV content and can be tested without touching image
bytes.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SUMMARY_FIELDS = {"model", "n", "k", "param_name", "param_value", "trials",
                  "mean_beta", "var_beta", "ci_lo", "ci_hi", "skew",
                  "kurtosis", "truncated_count", "seed"}


@dataclass(frozen=True)
class SummaryRow:
    model: str
    n: int
    k: int
    param_name: str
    param_value: float
    trials: int
    mean_beta: float
    ci_lo: float
    ci_hi: float


def read_summary(path: str) -> list[SummaryRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not SUMMARY_FIELDS <= set(
                reader.fieldnames):
            raise ValueError(f"{path}: not a sweep summary CSV")
        rows = []
        for rec in reader:
            rows.append(SummaryRow(
                model=rec["model"], n=int(rec["n"]), k=int(rec["k"]),
                param_name=rec["param_name"],
                param_value=float(rec["param_value"]),
                trials=int(rec["trials"]),
                mean_beta=float(rec["mean_beta"]),
                ci_lo=float(rec["ci_lo"]), ci_hi=float(rec["ci_hi"])))
    if not rows:
        raise ValueError(f"{path}: summary CSV has no data rows")
    return rows


def er_boundary(k: int) -> float:
    return (k + 1) / (2 * k - 1)


def rgg_boundary(k: int) -> float:
    return (k + 1) / (2 * k)


def threshold_crossings(rows: list[SummaryRow]) -> list[dict]:
    """First q value (ascending) with mean beta < 1, per (model, n, k) cell
    group; only defined for sweeps over the exponent q."""
    out = []
    groups: dict[tuple, list[SummaryRow]] = {}
    for r in rows:
        if r.param_name != "q":
            continue
        groups.setdefault((r.model, r.n, r.k), []).append(r)
    for (model, n, k), cell in sorted(groups.items()):
        cell.sort(key=lambda r: r.param_value)
        grid = [r.param_value for r in cell]
        step = min(b - a for a, b in zip(grid, grid[1:])) if len(grid) > 1 \
            else float("nan")
        for r in cell:
            if not math.isnan(r.mean_beta) and r.mean_beta < 1.0:
                out.append({"model": model, "n": n, "k": k,
                            "q": r.param_value, "grid_step": step})
                break
    return out


def plot_threshold_region(csv_path: str, out_path: str,
                          k_list: list[int] | None = None) -> dict:
    """Boundary curves q = (k+1)/(2k-1) (er) and (k+1)/(2k) (rgg) with the
    non-vanishing region shaded below, plus empirical crossing overlays."""
    rows = read_summary(csv_path)
    ks = sorted(k_list or {r.k for r in rows} | {2, 3, 4, 5, 6, 7, 8})
    crossings = threshold_crossings(rows)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    er_curve = [er_boundary(k) for k in ks]
    rgg_curve = [rgg_boundary(k) for k in ks]
    ax.plot(ks, er_curve, "-o", color="tab:blue", label="er boundary")
    ax.plot(ks, rgg_curve, "-s", color="tab:orange", label="rgg boundary")
    ax.fill_between(ks, 0, rgg_curve, color="tab:orange", alpha=0.12)
    ax.fill_between(ks, 0, er_curve, color="tab:blue", alpha=0.12)
    marks = {"er": "x", "rgg": "+"}
    for c in crossings:
        ax.scatter([c["k"]], [c["q"]], marker=marks[c["model"]], s=80,
                   color="black",
                   label=f"{c['model']} crossing n={c['n']}")
    ax.set_xlabel("k")
    ax.set_ylabel("density exponent q")
    ax.set_title("vanishing thresholds for diagonal Betti numbers")
    handles, labels = ax.get_legend_handles_labels()
    seen: dict[str, object] = {}
    for h, l in zip(handles, labels):
        seen.setdefault(l, h)
    ax.legend(seen.values(), seen.keys(), fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"k": ks, "er_boundary": er_curve, "rgg_boundary": rgg_curve,
            "crossings": crossings}


def betti_curve_series(rows: list[SummaryRow],
                       k_list: list[int] | None = None) -> dict[int, dict]:
    ks = sorted(k_list or {r.k for r in rows})
    series = {}
    for k in ks:
        cell = sorted((r for r in rows if r.k == k),
                      key=lambda r: r.param_value)
        if not cell:
            raise ValueError(f"no rows for k={k}")
        series[k] = {
            "x": [r.param_value for r in cell],
            "mean": [r.mean_beta for r in cell],
            "ci_lo": [r.ci_lo for r in cell],
            "ci_hi": [r.ci_hi for r in cell],
            "param_name": cell[0].param_name,
        }
    return series


def plot_betti_curves(csv_path: str, out_path: str,
                      k_list: list[int] | None = None,
                      log: bool = False) -> dict[int, dict]:
    rows = read_summary(csv_path)
    series = betti_curve_series(rows, k_list)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for k, s in series.items():
        ax.plot(s["x"], s["mean"], "-o", label=f"k={k}")
        ax.fill_between(s["x"], s["ci_lo"], s["ci_hi"], alpha=0.2)
    ax.set_xlabel(next(iter(series.values()))["param_name"])
    ax.set_ylabel("mean diagonal Betti number")
    if log:
        ax.set_yscale("log", base=10)
    ax.set_title(f"mean diagonal Betti numbers (n={rows[0].n})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return series
