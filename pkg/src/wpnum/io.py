"""Coefficient files (JSON) and Beltrami sample grids (CSV).

Coefficient file::

    {"kind": "taylor" | "laurent" | "harmonic_beltrami",
     "offset": <index of the first coefficient>,
     "re": [...], "im": [...]}
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .annulus import LaurentSeries
from .diff import HarmonicBeltrami
from .schwarz import PowerSeries

KINDS = ("taylor", "laurent", "harmonic_beltrami")


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class CoefficientFile:
    kind: str
    offset: int
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParseError(f"unknown kind {self.kind!r}")
        if self.kind != "laurent" and self.offset != 0:
            raise ParseError(f"{self.kind} coefficients must have offset 0")
        object.__setattr__(self, "values", np.atleast_1d(np.asarray(self.values, dtype=complex)))
        if not np.all(np.isfinite(self.values)):
            raise ParseError("non-finite coefficient")

    def to_object(self):
        if self.kind == "taylor":
            return PowerSeries(self.values)
        if self.kind == "laurent":
            return LaurentSeries(self.values, self.offset)
        return HarmonicBeltrami(self.values)

    @classmethod
    def from_object(cls, obj) -> "CoefficientFile":
        if isinstance(obj, HarmonicBeltrami):
            return cls("harmonic_beltrami", 0, obj.coeffs)
        if isinstance(obj, LaurentSeries):
            return cls("laurent", obj.n_min, obj.coeffs)
        if isinstance(obj, PowerSeries):
            return cls("taylor", 0, obj.coeffs)
        raise TypeError(f"no coefficient file kind for {type(obj).__name__}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "offset": int(self.offset),
                "re": [float(v) for v in self.values.real],
                "im": [float(v) for v in self.values.imag]}


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def loads_coefficients(text: str) -> CoefficientFile:
    try:
        # NaN/Infinity literals are rejected here rather than later
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", 1)
    missing = {"kind", "offset", "re", "im"} - data.keys()
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}")
    re, im = data["re"], data["im"]
    if not (isinstance(re, list) and isinstance(im, list)):
        raise ParseError("re and im must be arrays")
    if len(re) != len(im):
        raise ParseError(f"re has {len(re)} entries but im has {len(im)}")
    if len(re) == 0:
        raise ParseError("empty coefficient arrays")
    if not isinstance(data["offset"], int) or isinstance(data["offset"], bool):
        raise ParseError("offset must be an integer")
    for name, arr in (("re", re), ("im", im)):
        for i, v in enumerate(arr):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"{name}[{i}] is not a number")
    return CoefficientFile(data["kind"], data["offset"], np.array(re, float) + 1j * np.array(im, float))


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name}")


def read_coefficients(path) -> CoefficientFile:
    return loads_coefficients(Path(path).read_text(encoding="utf-8"))


def write_coefficients(path, obj) -> None:
    cf = obj if isinstance(obj, CoefficientFile) else CoefficientFile.from_object(obj)
    Path(path).write_text(json.dumps(cf.to_dict()) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------- CSV

GRID_COLUMNS = ("x", "y", "re", "im")


@dataclass(frozen=True)
class BeltramiGrid:
    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray | None


def read_grid_csv(path) -> BeltramiGrid:
    """Rows ``x,y,re,im`` with an optional ``w`` (area weight) column."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError("empty file", 1) from None
        if tuple(header[:4]) != GRID_COLUMNS or header[4:] not in ([], ["w"]):
            raise ParseError(f"header must be x,y,re,im[,w], got {','.join(header)}", 1)
        width = len(header)
        rows = []
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != width:
                raise ParseError(f"expected {width} fields, got {len(row)}", line)
            try:
                vals = [float(c) for c in row]
            except ValueError as exc:
                raise ParseError(str(exc), line) from None
            if not all(math.isfinite(v) for v in vals):
                raise ParseError("non-finite value", line)
            rows.append(vals)
    if not rows:
        raise ParseError("no data rows")
    a = np.array(rows)
    return BeltramiGrid(a[:, 0] + 1j * a[:, 1], a[:, 2] + 1j * a[:, 3],
                        a[:, 4] if width == 5 else None)


def write_grid_csv(path, nodes, values, weights=None) -> None:
    nodes = np.asarray(nodes, dtype=complex)
    values = np.broadcast_to(np.asarray(values, dtype=complex), nodes.shape)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(list(GRID_COLUMNS) + (["w"] if weights is not None else []))
        for i, (z, v) in enumerate(zip(nodes, values)):
            row = [repr(float(z.real)), repr(float(z.imag)), repr(float(v.real)), repr(float(v.imag))]
            if weights is not None:
                row.append(repr(float(weights[i])))
            w.writerow(row)
