"""Single-slit diffraction uncertainty analysis."""

import json as _json

from ._core import (
    InvalidWindowError,
    ResolutionError,
    RouteInconsistencyError,
    ZeroOverlapError,
    __version__,
    analyze_json,
    limit_scan_csv,
    spectrum_csv,
    variational_json,
)

__all__ = [
    "InvalidWindowError",
    "ResolutionError",
    "RouteInconsistencyError",
    "ZeroOverlapError",
    "__version__",
    "analyze",
    "analyze_json",
    "limit_scan",
    "limit_scan_csv",
    "spectrum",
    "spectrum_csv",
    "variational",
    "variational_json",
]


def _merge(config, overrides):
    merged = dict(config or {})
    merged.update(overrides)
    return _json.dumps(merged)


def _parse_csv(text):
    lines = [line for line in text.split("\n") if line]
    columns = lines[0].split(",")
    rows = [[float(cell) for cell in line.split(",")] for line in lines[1:]]
    return {name: [row[i] for row in rows] for i, name in enumerate(columns)}


def analyze(config=None, **overrides):
    """Project a state through the slit; returns the report as a dict."""
    return _json.loads(analyze_json(_merge(config, overrides)))


def spectrum(config=None, **overrides):
    """Momentum spectrum as a dict of columns (p, re, im, density, p2density)."""
    return _parse_csv(spectrum_csv(_merge(config, overrides)))


def variational(n_max=8, width=1.0, hbar=1.0):
    """Sine-basis minimization result as a dict."""
    return _json.loads(variational_json(n_max, width, hbar))


def limit_scan(s_values=(), width=1.0, hbar=1.0):
    """Tapered-gaussian sweep as a dict of columns."""
    return _parse_csv(limit_scan_csv(list(s_values), width, hbar))
