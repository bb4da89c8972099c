"""Residual and suite reports, with JSON and CSV serialisation."""

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__


def _plain(obj):
    # numpy scalars/arrays -> built-in types so that json round-trips exactly
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


@dataclass
class ResidualReport:
    """Pointwise residuals of one identity or inequality.

    ``passed`` is true exactly when ``max_abs <= tolerance``. For inequality
    checks ``residuals`` holds the violations ``max(0, -margin)`` and the
    margins themselves go in ``extra``.
    """

    name: str
    points: list
    residuals: list
    tolerance: float
    settings: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    error: Optional[str] = None

    def __post_init__(self):
        self.points = _plain(list(self.points))
        self.residuals = [float(r) for r in np.abs(np.asarray(self.residuals, float)).ravel()]
        self.tolerance = float(self.tolerance)
        self.settings = _plain(self.settings)
        self.extra = _plain(self.extra)

    @property
    def max_abs(self):
        return max(self.residuals) if self.residuals else 0.0

    @property
    def passed(self):
        return self.error is None and bool(np.isfinite(self.max_abs)) and self.max_abs <= self.tolerance

    def to_dict(self):
        pts = [
            {"coords": p, "residual": r} if not isinstance(p, dict) else dict(p, residual=r)
            for p, r in zip(self.points, self.residuals)
        ]
        out = {
            "name": self.name,
            "max_abs": self.max_abs,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "points": pts,
            "settings": self.settings,
            "extra": self.extra,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    @classmethod
    def from_dict(cls, d):
        pts, res = [], []
        for p in d["points"]:
            p = dict(p)
            res.append(p.pop("residual"))
            pts.append(p["coords"] if set(p) == {"coords"} else p)
        return cls(
            d["name"],
            pts,
            res,
            d["tolerance"],
            settings=d.get("settings", {}),
            extra=d.get("extra", {}),
            error=d.get("error"),
        )

    def __eq__(self, other):
        return isinstance(other, ResidualReport) and self.to_dict() == other.to_dict()

    @classmethod
    def failed(cls, name, tolerance, message, settings=None):
        """Entry recording a computation that could not be completed."""
        return cls(name, [], [], tolerance, settings=settings or {}, error=message)


@dataclass
class SuiteReport:
    """Everything one CLI run produces.

    ``pass`` is true exactly when every entry passes; an empty suite passes.
    """

    command: str
    config: dict
    entries: list = field(default_factory=list)
    seconds: float = 0.0
    version: str = __version__
    table: Optional[list] = None

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    def to_dict(self):
        out = {
            "version": self.version,
            "command": self.command,
            "config": _plain(self.config),
            "entries": [e.to_dict() for e in self.entries],
            "pass": self.passed,
            "seconds": float(self.seconds),
        }
        if self.table is not None:
            out["table"] = _plain(self.table)
        return out

    @classmethod
    def from_dict(cls, d):
        return cls(
            command=d["command"],
            config=d["config"],
            entries=[ResidualReport.from_dict(e) for e in d["entries"]],
            seconds=d["seconds"],
            version=d["version"],
            table=d.get("table"),
        )

    def __eq__(self, other):
        return isinstance(other, SuiteReport) and self.to_dict() == other.to_dict()

    def digest(self):
        """SHA-256 of the JSON form with the wall-clock time removed."""
        d = self.to_dict()
        d.pop("seconds")
        return hashlib.sha256(_dumps(d).encode("utf-8")).hexdigest()


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def format_number(x):
    """17 significant digits, locale independent; integers stay integers."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def table_to_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buf.getvalue()


def emit_report(report, fmt="json"):
    """Serialise a :class:`SuiteReport` to UTF-8 bytes.

    JSON output has sorted keys and LF line endings. CSV output writes the
    report's table when it has one, otherwise one row per entry.
    """
    if fmt == "json":
        return _dumps(report.to_dict()).encode("utf-8")
    if fmt == "csv":
        if report.table is not None:
            header, *rows = report.table
            return table_to_csv(header, rows).encode("utf-8")
        rows = [(e.name, e.max_abs, e.tolerance, e.passed) for e in report.entries]
        return table_to_csv(["name", "max_abs", "tolerance", "pass"], rows).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data):
    """Inverse of :func:`emit_report` for JSON."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return SuiteReport.from_dict(json.loads(data))
