"""Tabular outputs: plot data and gate-count sweeps as pandas DataFrames."""

import logging
import math
import re

import numpy as np
import pandas as pd

from .builders import build, plan
from .circuit import GateCostReport
from .filters import amplification_schedule, available_filters, get_filter, one_norm
from .lowering import count_gates

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

_SWEEP = re.compile(r"^\s*(?P<axis>[nd])\s*=\s*(?P<start>\d+)\s*\.\.\s*(?P<stop>\d+)\s*$")


def success_amplitude_table(filters=None):
    """One row per filter: order, 1/h for square-root loading, 1/sqrt(M) for linear loading."""
    filters = filters or [get_filter(name) for name in available_filters() if name != "db1"]
    rows = []
    for f in filters:
        inv_h = 1.0 / one_norm(f)
        linear = 2.0 ** (-f.ancilla_width / 2.0)
        rows.append({
            "filter": f.name,
            "M": f.order,
            "inv_one_norm": inv_h,
            "inv_sqrt_M": 1.0 / math.sqrt(f.order),
            "linear_amplitude": linear,
            "rounds_sqrt": amplification_schedule(inv_h).rounds,
            "rounds_linear": amplification_schedule(linear).rounds,
        })
    return pd.DataFrame(rows).sort_values("M", kind="stable").reset_index(drop=True)


def coefficient_decay_table(filters):
    frames = []
    for f in filters:
        magnitude = np.abs(f.as_array())
        frames.append(pd.DataFrame({
            "filter": f.name,
            "l": np.arange(f.order),
            "abs_h": magnitude,
            "relative": magnitude / magnitude.max(),
        }))
    return pd.concat(frames, ignore_index=True)


def parse_sweep(text):
    """``n=4..10`` or ``d=1..8`` as (axis, inclusive range)."""
    match = _SWEEP.match(text or "")
    if not match:
        raise ValueError(f"sweep must look like 'n=4..10' or 'd=1..8', got '{text}'")
    start, stop = int(match["start"]), int(match["stop"])
    if start > stop:
        raise ValueError(f"empty sweep {text}")
    return match["axis"], range(start, stop + 1)


def count_row(p, strategy):
    report = count_gates(build(p), strategy)
    row = {
        "variant": p.variant,
        "filter": p.filter.name,
        "n": p.n,
        "d": p.d,
        "prep_style": p.prep_style,
        "strategy": strategy,
        "rounds": p.rounds,
    }
    row.update(report.as_dict())
    return row


def count_sweep(f, variant="single", n=None, d=1, axis="n", values=(), prep_style="sqrt", strategy="I",
                hoist_shift=False):
    """Gate counts of the lowered transform while ``axis`` runs over ``values``."""
    rows = []
    for value in values:
        size, depth = (value, d) if axis == "n" else (n, value)
        p = plan(f, size, depth, variant=variant, prep_style=prep_style, hoist_shift=hoist_shift)
        rows.append(count_row(p, strategy))
        logger.debug(f"Counted {p}: {rows[-1]['total_elementary']} gates")
    columns = ["variant", "filter", "n", "d", "prep_style", "strategy", "rounds"]
    columns += list(GateCostReport.GATE_FIELDS) + list(GateCostReport.QUBIT_FIELDS) + ["total_elementary"]
    return pd.DataFrame(rows, columns=columns)


def with_differences(frame, axis, column="total_elementary"):
    """Add first and second differences of ``column`` along ``axis``."""
    frame = frame.sort_values(axis).reset_index(drop=True)
    frame["first_difference"] = frame[column].diff()
    frame["second_difference"] = frame["first_difference"].diff()
    return frame


def affine_residual(x, y):
    """Largest residual of the least-squares line through (x, y)."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.size < 3:
        return 0.0
    slope, intercept = np.polyfit(x, y, 1)
    return float(np.max(np.abs(y - (slope * x + intercept))))


def to_csv(frame, path_or_buf=None):
    return frame.to_csv(path_or_buf, index=False, float_format=FLOAT_FORMAT)
