"""Publication figures rendered from sweep summary CSVs.

Consumes only the public CSV contract of the experiment harness
(`model,n,k,param_name,param_value,trials,mean_beta,var_beta,ci_lo,ci_hi,
skew,kurtosis,truncated_count,seed`); no imports from the computation
package.
"""

from .figures import (betti_curve_series, er_boundary, rgg_boundary,
                      plot_betti_curves, plot_threshold_region,
                      read_summary, threshold_crossings)

__all__ = [
    "betti_curve_series", "er_boundary", "rgg_boundary",
    "plot_betti_curves", "plot_threshold_region", "read_summary",
    "threshold_crossings",
]

__version__ = "0.1.0"
