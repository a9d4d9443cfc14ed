"""Exact algebra over Q(x), Q(x)[t0] and Q(x, t)."""

from .quadext import QuadExtElement, kernel_series, kernel_t0
from .ratfunc import PowerSeries, Qx, RationalFunction, series_expand, x
