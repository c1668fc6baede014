"""Analysis report assembly and deterministic serialization.

Every float is rounded to 6 significant digits before it is written and keys
are sorted, so the same input and config always give the same bytes. Units
are listed in docs/report_schema.md.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .config import Config
from .errors import IncompleteFormationError
from .formations import detect_formations, forecast_levels, maturation_event, with_neckline
from .lines import find_local_extrema, line_events, role_history
from .models import Family
from .segmentation import segment_epochs
from .series import PriceSeries, acceleration_series, daily_returns

SCHEMA_VERSION = 1
SIG_DIGITS = 6


def round_sig(x, digits=SIG_DIGITS):
    """``x`` rounded to ``digits`` significant digits; non-finite -> None."""
    x = float(x)
    if not math.isfinite(x):
        return None
    if x == 0:
        return 0.0
    return float(f"{x:.{digits}g}")


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(obj)
    if hasattr(obj, "value") and isinstance(obj.value, str):
        return obj.value
    return obj


def dumps(report) -> str:
    """Canonical JSON text of ``report`` (trailing newline included)."""
    return json.dumps(_clean(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _date(series, k):
    return None if k is None else str(series.dates[int(k)])


def model_dict(model):
    d = {"family": model.family.value, "origin": model.origin, "params": model.params()}
    if model.family is Family.CYCLIC:
        d["period"] = model.period
    return d


def fit_dict(series, fit):
    a, b = fit.segment
    return {
        "start": a, "end": b,
        "start_date": _date(series, a), "end_date": _date(series, b),
        "n_points": fit.n_points,
        "model": model_dict(fit.model),
        "r_squared": fit.r_squared,
        "residual_rms": fit.residual_rms,
        "degenerate": fit.degenerate,
    }


def line_dict(series, line, events=None):
    if line is None:
        return None
    d = {
        "label": line.label,
        "geometry": line.geometry.value,
        "role": line.role.value,
        "slope": line.slope,
        "anchors": [{"ordinal": p.ordinal, "date": _date(series, p.ordinal),
                     "price": p.price, "kind": p.kind.value} for p in line.anchors],
        "model": model_dict(line.model),
    }
    if events is not None:
        d["events"] = [{"ordinal": e.ordinal, "date": _date(series, e.ordinal),
                        "kind": e.kind.value} for e in events]
        d["role_history"] = [{"ordinal": k, "date": _date(series, k), "role": r.value}
                             for k, r in role_history(line, events)]
    return d


def kinematics_summary(series):
    r = daily_returns(series).values
    out = {
        "n_days": len(series),
        "returns": {"mean": float(r.mean()), "std": float(r.std()),
                    "min": float(r.min()), "max": float(r.max())},
        "volume_mean": float(series.volume.mean()),
    }
    if len(series) >= 3:
        a = acceleration_series(series).values
        out["acceleration"] = {"mean": float(a.mean()), "std": float(a.std()),
                               "min": float(a.min()), "max": float(a.max())}
    return out


def epochs_section(series, epochs, config):
    out = []
    for e in epochs:
        lines = {}
        for key, line in (("support", e.support), ("resist", e.resist)):
            evs = None
            if line is not None:
                evs = line_events(series, line, config.band, config.confirm,
                                  start=line.anchors[-1].ordinal)
            lines[key] = line_dict(series, line, evs)
        gap = e.transition_gap
        out.append({
            "n": e.n,
            "start": e.start, "end": e.end,
            "start_date": _date(series, e.start), "end_date": _date(series, e.end),
            "ended_by": e.ended_by,
            "fit": fit_dict(series, e.fit),
            "candidates_r_squared": dict(sorted(e.candidates.items())),
            "residual_rms": float(np.sqrt(np.mean(e.residuals ** 2))),
            "lines": lines,
            "transition_gap": None if gap is None else {
                "start": gap[0], "end": gap[1],
                "start_date": _date(series, gap[0]), "end_date": _date(series, gap[1])},
        })
    return out


def formations_section(series, config, base=None):
    w = config.extrema_window_for_formations
    if len(series) <= 2 * w:
        return []
    ext = find_local_extrema(series, w)
    out = []
    for f in detect_formations(ext):
        d = {
            "kind": f.kind.value,
            "direction": f.kind.direction,
            "extrema": {name: {"ordinal": p.ordinal, "date": _date(series, p.ordinal),
                               "price": p.price}
                        for name, p in (("left", f.left), ("head", f.head), ("right", f.right))},
            "envelope": model_dict(f.envelope),
            "envelope_accel": f.envelope.accel,
        }
        try:
            f = with_neckline(f, series, ext)
        except IncompleteFormationError:
            d["neckline"] = None
            out.append(d)
            continue
        hit = maturation_event(series, f, config.band, config.confirm, ext)
        fc = forecast_levels(f, base=base)
        d["neckline"] = line_dict(series, f.neckline)
        d["maturation_level"] = f.maturation_level
        d["matured"] = None if hit is None else {
            "ordinal": hit[0].ordinal, "date": _date(series, hit[0].ordinal),
            "direction": hit[1]}
        d["forecast"] = {
            "target": fc.target,
            "base_level": fc.base_level,
            "target_ordinal": fc.target_ordinal,
            "target_date": (_date(series, fc.target_ordinal)
                            if fc.target_ordinal is not None and fc.target_ordinal < len(series)
                            else None),
        }
        out.append(d)
    return out


def header(series, config):
    return {
        "schema_version": SCHEMA_VERSION,
        "series": {
            "name": series.name,
            "n_days": len(series),
            "first_date": _date(series, 0),
            "last_date": _date(series, len(series) - 1),
            "adjusted": series.adjusted,
        },
        "config": config.to_dict(),
    }


def build_report(series: PriceSeries, config: Config = Config(), base=None, epochs=None):
    """Full analysis: epochs with lines, formations and kinematics."""
    if epochs is None:
        epochs = segment_epochs(series, config)
    rep = header(series, config)
    rep["epochs"] = epochs_section(series, epochs, config)
    rep["formations"] = formations_section(series, config, base)
    rep["kinematics"] = kinematics_summary(series)
    return rep


def plot_rows(series, epochs):
    """``(date, ordinal, close, model, residual)`` for every day.

    Days in transition gaps have empty model and residual fields. The close
    is written with ``repr`` so it reads back bit-for-bit.
    """
    model = np.full(len(series), np.nan)
    for e in epochs:
        ords = np.arange(e.start, e.end + 1)
        model[e.start:e.end + 1] = e.model.at(ords)
    rows = []
    for k in range(len(series)):
        c = float(series.close[k])
        if np.isnan(model[k]):
            rows.append((str(series.dates[k]), k, repr(c), "", ""))
        else:
            m = float(model[k])
            rows.append((str(series.dates[k]), k, repr(c), f"{m:.6g}", f"{c - m:.6g}"))
    return rows


PLOT_HEADER = ("date", "ordinal", "close", "model", "residual")
