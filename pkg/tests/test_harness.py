from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from maghom.harness import (SweepConfig, _moments, fmt, morse_bound_check,
                            ratio_experiment, run_sweep, run_trial,
                            summarize_cell, summary_csv, threshold_crossing,
                            trials_csv)


def small_cfg(workers: int = 1) -> SweepConfig:
    return SweepConfig(model="er", k=2, n_list=(10, 12),
                       param_name="q", param_values=(0.5, 1.0), trials=6,
                       seed=42, workers=workers)


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(model="er", k=2, n_list=(), param_name="q",
                    param_values=(1.0,), trials=5, seed=0)
    with pytest.raises(ValueError):
        SweepConfig(model="nope", k=2, n_list=(5,), param_name="q",
                    param_values=(1.0,), trials=5, seed=0)


def test_fmt_17_digits():
    assert fmt(1 / 3) == f"{1/3:.17g}"
    assert fmt(float("nan")) == "nan"
    assert fmt(2.0) == "2"


def test_run_trial_morse_sandwich():
    recs = [run_trial("er", 12, 2, "p", 0.4, 1.0, 5, t) for t in range(10)]
    assert morse_bound_check(recs)
    for r in recs:
        assert not r.truncated and 0 <= r.beta <= r.t_kk


def test_run_trial_budget_truncation():
    rec = run_trial("er", 12, 2, "p", 0.9, 1.0, 0, 0, budget=3)
    assert rec.truncated and rec.beta is None


def test_moments_against_scipy():
    rng = np.random.default_rng(0)
    xs = rng.normal(3.0, 2.0, size=500)
    mean, var, half, skew, kurt = _moments(xs)
    assert mean == pytest.approx(xs.mean())
    assert var == pytest.approx(xs.var(ddof=1))
    assert skew == pytest.approx(stats.skew(xs), abs=1e-12)
    assert kurt == pytest.approx(stats.kurtosis(xs), abs=1e-12)
    assert half == pytest.approx(1.959963984540054 * math.sqrt(var / len(xs)))


def test_moments_degenerate():
    mean, var, *_ = _moments(np.array([5.0]))
    assert mean == 5.0 and math.isnan(var)
    mean, var, half, skew, kurt = _moments(np.array([2.0, 2.0, 2.0]))
    assert var == 0.0 and math.isnan(skew)


def test_run_sweep_worker_invariance():
    base_summ, base_recs = run_sweep(small_cfg(workers=1))
    for w in (2, 8):
        summ, recs = run_sweep(small_cfg(workers=w))
        assert summary_csv(summ) == summary_csv(base_summ)
        assert [(r.trial, r.beta) for r in recs] == \
            [(r.trial, r.beta) for r in base_recs]


def test_threshold_crossing_ordering():
    summ, _ = run_sweep(small_cfg())
    cross = threshold_crossing(summ)
    # q = 1.0 (p = 1/n) is far above the k=2 threshold exponent: dead cells
    assert cross == 1.0


def test_summary_csv_schema():
    summ, recs = run_sweep(small_cfg())
    lines = summary_csv(summ).strip().split("\n")
    assert lines[0] == ("model,n,k,param_name,param_value,trials,mean_beta,"
                        "var_beta,ci_lo,ci_hi,skew,kurtosis,truncated_count,"
                        "seed")
    assert len(lines) == 1 + len(summ)
    tlines = trials_csv(recs[:6]).strip().split("\n")
    assert tlines[0] == "trial,seed,beta,t_kk,t_km1k,wall_ms,truncated"


def test_ratio_experiment_er_dense():
    out = ratio_experiment("er", 2, [10, 14], 0.95, trials=20, seed=3)
    assert [row["n"] for row in out] == [10, 14]
    for row in out:
        assert 0.0 < row["ratio"] <= 1.2


def test_ratio_p1_exact():
    # p = 1: every ordered triple of distinct vertices is a kernel generator
    rec = run_trial("er", 9, 2, "p", 1.0, 1.0, 0, 0)
    assert rec.beta == 9 * 8 * 7
