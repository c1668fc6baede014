"""CSV ingestion (Yahoo-style daily history) and CSV emission."""

from __future__ import annotations

import csv
import datetime as dt
import logging
from pathlib import Path

import numpy as np

from .errors import DomainError, EmptyInputError, ParseError
from .series import PriceSeries

log = logging.getLogger(__name__)

DATE_FORMATS = ("%Y-%m-%d", "%Y/%m/%d", "%d.%m.%Y", "%d %b %Y", "%d-%b-%Y",
                "%b %d, %Y", "%m/%d/%Y")


def parse_date(text):
    """Parse one of the accepted date spellings; ISO first."""
    text = text.strip()
    # Yahoo sometimes appends a time or timezone to the date
    if len(text) > 10 and text[4:5] == "-" and text[10:11] in (" ", "T"):
        text = text[:10]
    for fmt in DATE_FORMATS:
        try:
            return dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    raise ValueError(f"unrecognised date {text!r}")


def _number(text, what):
    try:
        v = float(text.replace(",", ""))
    except ValueError:
        raise ValueError(f"bad {what} value {text!r}") from None
    if not np.isfinite(v):
        raise ValueError(f"non-finite {what} value {text!r}")
    return v


def parse_csv(path, name=None) -> PriceSeries:
    """Read a daily price history.

    Expects a header row with ``Date`` and ``Adj Close`` (or ``Close``)
    columns; ``Volume`` is optional. The adjusted close is the price; when
    it is missing the raw close is used and the series is flagged
    ``adjusted=False``. Rows are sorted by date.
    """
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8-sig")
    except OSError as exc:
        raise ParseError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or not any(h.strip() for h in header):
            raise EmptyInputError(f"{path} is empty")
        cols = {h.strip().lower(): i for i, h in enumerate(header)}
        if "date" not in cols:
            raise ParseError("header has no Date column", line=1)
        if "adj close" in cols:
            price_col, adjusted = cols["adj close"], True
        elif "close" in cols:
            price_col, adjusted = cols["close"], False
            log.warning("%s has no 'Adj Close' column; using 'Close'", path)
        else:
            raise ParseError("header has neither 'Adj Close' nor 'Close'", line=1)
        vol_col = cols.get("volume")
        date_col = cols["date"]

        rows = []
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            try:
                d = parse_date(row[date_col])
                price = _number(row[price_col], "price")
                vol = _number(row[vol_col], "volume") if vol_col is not None else 0.0
            except (ValueError, IndexError) as exc:
                raise ParseError(str(exc) if str(exc) else "short row", line=line) from None
            if price <= 0:
                raise ParseError(f"non-positive price {price}", line=line)
            if vol < 0:
                raise ParseError(f"negative volume {vol}", line=line)
            rows.append((d, price, vol, line))
    if not rows:
        raise EmptyInputError(f"{path} has no data rows")
    rows.sort(key=lambda r: r[0])
    for prev, cur in zip(rows, rows[1:]):
        if prev[0] == cur[0]:
            raise ParseError(f"duplicate date {cur[0].isoformat()}", line=cur[3])
    if len(rows) < 2:
        raise ParseError("need at least two rows", line=rows[0][3])
    dates = np.array([r[0] for r in rows], dtype="datetime64[D]")
    try:
        return PriceSeries(dates, [r[1] for r in rows], [r[2] for r in rows],
                           adjusted=adjusted, name=name or path.stem)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def write_csv(path_or_file, header, rows):
    """Write ``rows`` under ``header``; ``path_or_file`` may be a text stream."""
    if hasattr(path_or_file, "write"):
        w = csv.writer(path_or_file, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    with open(path_or_file, "w", newline="") as fh:
        write_csv(fh, header, rows)


def write_series_csv(path, series: PriceSeries):
    """Write ``series`` in the same layout :func:`parse_csv` reads."""
    rows = [(str(d), "", "", "", repr(float(c)), repr(float(c)), repr(float(v)))
            for d, c, v in zip(series.dates, series.close, series.volume)]
    write_csv(path, ["Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"], rows)
