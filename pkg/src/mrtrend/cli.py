"""Command-line entry point: ``mrtrend <command> INPUT.csv [options]``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import report as rpt
from .config import Config
from .csvio import parse_csv, parse_date, write_csv
from .errors import TrendError
from .fitting import fit_family
from .models import Family
from .segmentation import fit_best, segment_epochs
from .series import PriceSeries

log = logging.getLogger("mrtrend")

COMMANDS = ("kinematics", "fit", "segment", "formations", "plotdata", "report")


def _date_arg(text):
    try:
        return parse_date(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _family_arg(text):
    try:
        return Family.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="daily price CSV (Date, ..., Adj Close, Volume)")
    common.add_argument("--config", help="JSON file with Config fields")
    common.add_argument("--from", dest="date_from", type=_date_arg, metavar="DATE",
                        help="first date to use (inclusive)")
    common.add_argument("--to", dest="date_to", type=_date_arg, metavar="DATE",
                        help="last date to use (inclusive)")
    common.add_argument("--window", type=int, help="extrema half-window, days")
    common.add_argument("--band", type=float, help="crossing tube half-width, relative")
    common.add_argument("--confirm", type=int, help="days beyond the tube to confirm a cross")
    common.add_argument("--out", "-o", help="output file (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="mrtrend",
                                description="Piecewise trend decomposition of daily prices.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("kinematics", parents=[common],
                   help="CSV of daily return (speed) and acceleration")
    f = sub.add_parser("fit", parents=[common], help="fit one family to a date range")
    f.add_argument("--family", type=_family_arg,
                   help="linear, parabolic, exponential or cyclic (alias sinusoid); "
                        "default: best by R^2")
    sub.add_parser("segment", parents=[common], help="epoch segmentation report (JSON)")
    fm = sub.add_parser("formations", parents=[common],
                        help="SHS/RSHS formations and forecasts (JSON)")
    fm.add_argument("--base", type=float,
                    help="floor (SHS) or ceiling (RSHS) used as forecast target, $")
    sub.add_parser("plotdata", parents=[common],
                   help="CSV of date, ordinal, close, model, residual")
    r = sub.add_parser("report", parents=[common], help="full analysis (JSON)")
    r.add_argument("--base", type=float, help="forecast target for formations, $")
    return p


def load_config(args):
    cfg = Config.load(args.config) if args.config else Config()
    return cfg.with_overrides(window=args.window, band=args.band, confirm=args.confirm)


def restrict(series: PriceSeries, date_from=None, date_to=None):
    if date_from is None and date_to is None:
        return series
    lo = 0 if date_from is None else series.ordinal_of(np.datetime64(date_from, "D"), "left")
    hi = (len(series) - 1 if date_to is None
          else series.ordinal_of(np.datetime64(date_to, "D"), "right"))
    if hi - lo + 1 < 2:
        raise TrendError("date range selects fewer than two days")
    return series.slice(lo, hi)


class _Output:
    def __init__(self, path):
        self.path = path

    def __enter__(self):
        if self.path is None:
            self.fh = sys.stdout
        else:
            self.fh = open(self.path, "w", newline="")
        return self.fh

    def __exit__(self, *exc):
        if self.path is not None:
            self.fh.close()


def cmd_kinematics(series, cfg, args):
    x = series.close
    rows = []
    for k in range(len(series)):
        ret = "" if k == 0 else f"{x[k] - x[k - 1]:.6g}"
        acc = "" if k == 0 or k == len(series) - 1 else f"{x[k + 1] - 2 * x[k] + x[k - 1]:.6g}"
        rows.append((str(series.dates[k]), k, repr(float(x[k])), ret, acc))
    with _Output(args.out) as fh:
        write_csv(fh, ["date", "ordinal", "close", "return", "acceleration"], rows)


def cmd_fit(series, cfg, args):
    seg = (0, len(series) - 1)
    fits = None
    if args.family is None:
        fit, fits = fit_best(series, seg, cfg)
    else:
        grid = cfg.period_grid(len(series)) if args.family is Family.CYCLIC else None
        fit = fit_family(series, args.family, seg, grid)
    rep = rpt.header(series, cfg)
    rep["fit"] = rpt.fit_dict(series, fit)
    if fits is not None:
        rep["candidates_r_squared"] = {f.value: r.r_squared for f, r in fits.items()}
    _emit_json(rep, args.out)


def cmd_segment(series, cfg, args):
    epochs = segment_epochs(series, cfg)
    rep = rpt.header(series, cfg)
    rep["epochs"] = rpt.epochs_section(series, epochs, cfg)
    _emit_json(rep, args.out)


def cmd_formations(series, cfg, args):
    rep = rpt.header(series, cfg)
    rep["formations"] = rpt.formations_section(series, cfg, args.base)
    _emit_json(rep, args.out)


def cmd_plotdata(series, cfg, args):
    epochs = segment_epochs(series, cfg)
    with _Output(args.out) as fh:
        write_csv(fh, rpt.PLOT_HEADER, rpt.plot_rows(series, epochs))


def cmd_report(series, cfg, args):
    _emit_json(rpt.build_report(series, cfg, base=args.base), args.out)


def _emit_json(rep, out):
    with _Output(out) as fh:
        fh.write(rpt.dumps(rep))


HANDLERS = {
    "kinematics": cmd_kinematics,
    "fit": cmd_fit,
    "segment": cmd_segment,
    "formations": cmd_formations,
    "plotdata": cmd_plotdata,
    "report": cmd_report,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = load_config(args)
        series = restrict(parse_csv(args.input), args.date_from, args.date_to)
        HANDLERS[args.command](series, cfg, args)
    except (TrendError, OSError) as exc:
        print(f"mrtrend: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
