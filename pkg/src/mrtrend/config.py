"""Detection and fitting thresholds, loadable from JSON."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class Config:
    window: int = 10                # extrema half-window, trading days
    band: float = 0.005             # crossing tube half-width, fraction of line value
    confirm: int = 3                # consecutive days beyond the tube to confirm a cross
    period_min: float = 20.0        # sinusoid period grid, trading days
    period_max: float | None = None  # None: twice the fitted segment length
    period_step: float = 1.0
    min_epoch_length: int = 250     # trading days
    tie_delta_r2: float = 0.01      # parsimony margin when ranking families
    min_r2: float = 0.5             # best-fit R^2 a new epoch needs, else transition gap
    parallel_tolerance: float = 0.10
    formation_window: int | None = None  # extrema window for formations; None: ``window``

    def __post_init__(self):
        positive = ("window", "band", "confirm", "period_min", "period_step",
                    "min_epoch_length", "tie_delta_r2", "parallel_tolerance")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.period_min < 4:
            raise ConfigError("period_min must be at least 4 days")
        if self.period_max is not None and not self.period_max > self.period_min:
            raise ConfigError("period_max must exceed period_min")
        if self.min_epoch_length < 8:
            raise ConfigError("min_epoch_length must be at least 8 days")
        if self.formation_window is not None and self.formation_window < 1:
            raise ConfigError("formation_window must be positive")
        if self.min_r2 > 1:
            raise ConfigError("min_r2 cannot exceed 1")

    @property
    def extrema_window_for_formations(self):
        return self.formation_window or self.window

    def period_grid(self, n_points):
        """Candidate periods for an ``n_points`` segment, clipped to [4, 2n]."""
        hi = 2.0 * n_points if self.period_max is None else min(self.period_max, 2.0 * n_points)
        lo = max(4.0, float(self.period_min))
        if lo > hi:
            lo = 4.0
        return np.arange(lo, hi + self.period_step / 2.0, self.period_step)

    def with_overrides(self, **kw):
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path):
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        return cls.from_dict(data)
