"""Report emission: canonical JSON documents, the flat CSV export, and
the census figure.

JSON is rendered with sorted keys and two-space indent so reports are
byte-stable; exact rationals are serialized as "num/den" strings and
floats are rounded to 12 significant digits before serialization.
Wall-clock fields can be redacted (zeroed) for byte-for-byte comparison
across runs and worker counts.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .irreddetect import CensusReport

CSV_HEADER = ["q", "total_hyperplanes", "very_bad", "good", "equals_x",
              "mode", "runtime_ms"]


def jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def render_json(doc: Dict) -> str:
    return json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n"


def census_document(report: CensusReport, scenario_name: str, seed: int,
                    version: str, redact_timings: bool = False) -> Dict:
    rows = []
    for row in report.rows:
        rows.append({
            "q": row.q,
            "total_hyperplanes": row.total_hyperplanes,
            "very_bad": row.very_bad,
            "good": row.good,
            "equals_x": row.equals_x,
            "mode": row.mode,
            "runtime_ms": 0.0 if redact_timings else row.runtime_ms,
            "chebyshev_bound": row.chebyshev_bound,
            "very_bad_fraction": row.very_bad_fraction,
        })
    return {
        "tool": "hyperslice",
        "version": version,
        "seed": seed,
        "scenario": scenario_name,
        "mode": report.mode,
        "theoretical_exponent": report.theoretical_exponent,
        "fitted_exponent": report.fitted_exponent,
        "fit_residual": report.fit_residual,
        "rows": rows,
    }


def write_census_csv(doc: Dict, path: str):
    """Flat table with the fixed header; the fit lives in JSON only."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for row in doc["rows"]:
            writer.writerow([row["q"], row["total_hyperplanes"],
                             row["very_bad"], row["good"], row["equals_x"],
                             row["mode"], f"{row['runtime_ms']:.0f}"])


def write_census_figure(doc: Dict, path: str):
    """Log-log plot of very-bad counts against q, with the fitted slope
    and the theoretical-exponent reference line."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    import math

    qs = [row["q"] for row in doc["rows"]]
    counts = [row["very_bad"] for row in doc["rows"]]
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.loglog(qs, counts, "o", color="tab:blue", label="very-bad count")

    usable = [(q, c) for q, c in zip(qs, counts) if c > 0]
    if usable:
        slope = doc["fitted_exponent"]
        q0, c0 = usable[0]
        grid = [min(qs) * 0.9, max(qs) * 1.1]
        scale = c0 / q0 ** slope
        ax.loglog(grid, [scale * g ** slope for g in grid], "-",
                  color="tab:blue", alpha=0.6,
                  label=f"fit slope {slope:.2f}")
        theo = doc["theoretical_exponent"]
        tscale = c0 / q0 ** theo
        ax.loglog(grid, [tscale * g ** theo for g in grid], "--",
                  color="tab:red", alpha=0.6,
                  label=f"bound slope {theo}")
    ax.set_xlabel("q")
    ax.set_ylabel("very-bad hyperplanes")
    ax.set_title(doc["scenario"])
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
