"""Piecewise trend decomposition of daily price series.

Prices are modelled as a sequence of epochs, each following one trend family
(linear, parabolic, exponential or drifting sinusoid) plus residual noise.
Epoch boundaries come from confirmed crossings of supporting and resisting
lines drawn through local extrema.
"""

from ._accel import BACKEND
from .config import Config
from .csvio import parse_csv
from .errors import *  # noqa: F401,F403
from .fitting import (FitResult, fit_exponential, fit_family, fit_linear, fit_parabola,
                      fit_sinusoid, exponential_line_through_two_points,
                      linear_line_through_two_points, parabola_through_three_points,
                      r_squared)
from .formations import (Forecast, Formation, FormationKind, detect_formations,
                         enveloping_parabola, forecast_levels, maturation_event,
                         maturation_line, with_neckline)
from .lines import (Band, EventKind, ExtremumKind, ExtremumPoint, Geometry, LineEvent,
                    Role, TrendLine, band_between, find_local_extrema, line_events,
                    line_through_extrema, role_after_cross)
from .models import (Family, TrendModel, analytic_acceleration, analytic_speed,
                     classify_signature, evaluate)
from .report import build_report
from .segmentation import Epoch, decompose, fit_best, segment_epochs
from .series import (DiffSeries, PriceSeries, acceleration_series, daily_returns,
                     speed_series)

__version__ = "0.1.0"
