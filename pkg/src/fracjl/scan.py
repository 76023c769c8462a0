"""Parameter-space scans and their machine-readable serialization.

Grids are evaluated cell by cell in row-major order over the canonical
axis order (s, l, p) and serialized deterministically: identical inputs
produce byte-identical CSV or JSON files.  Numbers are written with 17
significant digits so a write/read/write cycle is lossless; infinite
threshold values are serialized as the string "infinite", never as an
IEEE infinity.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .criticality import (
    DEFAULT_TOL,
    ProblemParams,
    classify,
    margin_at_infinity,
    sobolev_exponent,
)
from .exponents import (
    critical_set,
    joseph_lundgren_exponent,
    order_threshold,
    order_thresholds_negative_weight,
    turning_order,
    weight_thresholds,
)
from .specfun import DomainError

__all__ = [
    "AXIS_ORDER",
    "Axis",
    "ScanSpec",
    "Cell",
    "Annotation",
    "PhaseDiagram",
    "run_scan",
    "render_csv",
    "render_json",
    "parse_json",
    "write_atomic",
]

AXIS_ORDER = ("s", "l", "p")

OUT_OF_DOMAIN = "out-of-domain"


def format_float(x: float) -> str:
    """17-significant-digit decimal rendering (lossless round trip)."""
    return f"{x:.17g}"


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self) -> None:
        if self.name not in AXIS_ORDER:
            raise DomainError(f"axis must be one of {AXIS_ORDER}, got {self.name!r}")
        if self.count < 2:
            raise DomainError(f"axis {self.name}: count must be >= 2, got {self.count}")
        if not self.lo < self.hi:
            raise DomainError(
                f"axis {self.name}: need min < max, got [{self.lo}, {self.hi}]"
            )

    def values(self) -> List[float]:
        span = self.hi - self.lo
        return [self.lo + span * i / (self.count - 1) for i in range(self.count)]


@dataclass(frozen=True)
class ScanSpec:
    """A validated scan request.

    ``axes`` holds up to two swept parameters; every parameter of
    (s, l, p) not swept must appear in ``fixed``.  A spec with no axes
    is the degenerate single-cell scan.
    """

    N: int
    axes: Tuple[Axis, ...]
    fixed: Dict[str, float]
    fmt: str = "csv"
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.fmt!r}")
        if self.tol <= 0.0:
            raise DomainError(f"tolerance must be positive, got {self.tol!r}")
        if len(self.axes) > 2:
            raise DomainError("at most two axes may be swept")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate axis: {names}")
        for name in AXIS_ORDER:
            if name not in names and name not in self.fixed:
                raise DomainError(f"parameter {name!r} is neither an axis nor fixed")
            if name in names and name in self.fixed:
                raise DomainError(f"parameter {name!r} is both an axis and fixed")
        # canonical axis order regardless of how the request listed them
        object.__setattr__(
            self, "axes", tuple(sorted(self.axes, key=lambda a: AXIS_ORDER.index(a.name)))
        )


@dataclass(frozen=True)
class Cell:
    coords: Dict[str, float]
    label: str
    margin: Optional[float]


@dataclass(frozen=True)
class Annotation:
    name: str
    value: Union[float, int, str]
    description: str


@dataclass(frozen=True)
class PhaseDiagram:
    N: int
    tol: float
    axes: Tuple[Axis, ...]
    fixed: Dict[str, float]
    cells: Tuple[Cell, ...]
    annotations: Tuple[Annotation, ...] = field(default_factory=tuple)


def _evaluate_cell(N: int, tol: float, coords: Dict[str, float]) -> Cell:
    try:
        params = ProblemParams(N, coords["s"], coords["l"], coords["p"])
        result = classify(params, tol)
    except DomainError:
        return Cell(coords=coords, label=OUT_OF_DOMAIN, margin=None)
    return Cell(coords=coords, label=result.label.value, margin=result.margin)


def _annotations(spec: ScanSpec) -> Tuple[Annotation, ...]:
    """Threshold overlays that are well-defined for the fixed parameters."""
    out: List[Annotation] = []
    fixed = spec.fixed
    N = spec.N

    def add(name: str, value: Union[float, int], description: str) -> None:
        out.append(Annotation(name=name, value=value, description=description))

    if "s" in fixed and "l" in fixed:
        try:
            add(
                "p_sobolev",
                sobolev_exponent(N, fixed["s"], fixed["l"]),
                "critical Sobolev-type exponent",
            )
        except DomainError:
            pass
        try:
            cs = critical_set(N, fixed["s"], fixed["l"], spec.tol)
            for i, c in enumerate(cs.crossings, start=1):
                add(
                    f"critical_exponent_{i}",
                    c.p,
                    "Joseph-Lundgren critical exponent"
                    + (" (tangential)" if c.tangential else ""),
                )
            if fixed["l"] <= 0.0:
                add(
                    "jl_exponent",
                    joseph_lundgren_exponent(N, fixed["s"], fixed["l"]),
                    "unique Joseph-Lundgren exponent (nonpositive weight)",
                )
        except DomainError:
            pass
    if "l" in fixed and fixed["l"] == 0.0 and N in (8, 9):
        add(
            "order_threshold",
            order_threshold(N),
            "order below which the critical exponent is finite",
        )
    if "l" in fixed and fixed["l"] == 0.0 and N >= 8:
        try:
            add(
                "turning_order",
                turning_order(N),
                "order where the endpoint margin stops decreasing",
            )
        except DomainError:
            pass
    if "l" in fixed and -2.0 < fixed["l"] < 0.0:
        try:
            lo, hi = order_thresholds_negative_weight(N, fixed["l"])
            add("order_window_lower", lo, "first endpoint-margin sign change in s")
            add("order_window_upper", hi, "last endpoint-margin sign change in s")
        except DomainError:
            pass
    if "s" in fixed and N >= 8:
        try:
            wt = weight_thresholds(N, fixed["s"])
            add("weight_threshold_1", wt.ell1, "endpoint weight threshold")
            add("weight_threshold_2", wt.ell2, "largest pointwise weight bound")
            add("weight_threshold_3", wt.ell3, "all-subcritical weight threshold")
        except DomainError:
            pass
    if "s" in fixed and "l" in fixed:
        try:
            add(
                "endpoint_margin",
                margin_at_infinity(fixed["s"], N, fixed["l"]),
                "criticality margin at infinite exponent",
            )
        except DomainError:
            pass
    return tuple(out)


def run_scan(spec: ScanSpec) -> PhaseDiagram:
    """Evaluate the grid in row-major canonical order.

    Cells outside the admissible region are emitted with the
    out-of-domain marker rather than skipped, so the cell count always
    equals the product of the axis counts.
    """
    axis_values = [a.values() for a in spec.axes]
    cells: List[Cell] = []
    if not spec.axes:
        coords = {name: spec.fixed[name] for name in AXIS_ORDER}
        cells.append(_evaluate_cell(spec.N, spec.tol, coords))
    elif len(spec.axes) == 1:
        name = spec.axes[0].name
        for v in axis_values[0]:
            coords = dict(spec.fixed)
            coords[name] = v
            cells.append(_evaluate_cell(spec.N, spec.tol, coords))
    else:
        n0, n1 = spec.axes[0].name, spec.axes[1].name
        for v0 in axis_values[0]:
            for v1 in axis_values[1]:
                coords = dict(spec.fixed)
                coords[n0] = v0
                coords[n1] = v1
                cells.append(_evaluate_cell(spec.N, spec.tol, coords))
    return PhaseDiagram(
        N=spec.N,
        tol=spec.tol,
        axes=spec.axes,
        fixed=dict(spec.fixed),
        cells=tuple(cells),
        annotations=_annotations(spec),
    )


def _csv_value(x: Optional[float]) -> str:
    if x is None:
        return ""
    return format_float(x)


def render_csv(diagram: PhaseDiagram) -> str:
    """CSV text: axis columns (canonical order), N, fixed columns, label, margin."""
    axis_names = [a.name for a in diagram.axes]
    fixed_names = [n for n in AXIS_ORDER if n not in axis_names]
    header = axis_names + ["N"] + fixed_names + ["label", "margin"]
    lines = [",".join(header)]
    for cell in diagram.cells:
        row = [format_float(cell.coords[n]) for n in axis_names]
        row.append(str(diagram.N))
        row.extend(format_float(diagram.fixed[n]) for n in fixed_names)
        row.append(cell.label)
        row.append(_csv_value(cell.margin))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _json_number(x: Union[float, int, str, None]) -> str:
    if x is None:
        return "null"
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, int):
        return str(x)
    if math.isinf(x):
        return json.dumps("infinite")
    return format_float(x)


def render_json(diagram: PhaseDiagram) -> str:
    """Deterministic JSON with the {meta, cells, annotations} schema."""
    axis_names = [a.name for a in diagram.axes]
    fixed_names = [n for n in AXIS_ORDER if n not in axis_names]
    out: List[str] = []
    out.append("{")
    out.append('  "meta": {')
    out.append(f'    "N": {diagram.N},')
    out.append(f'    "tol": {format_float(diagram.tol)},')
    axis_items = []
    for a in diagram.axes:
        axis_items.append(
            '{"name": %s, "min": %s, "max": %s, "count": %d}'
            % (json.dumps(a.name), format_float(a.lo), format_float(a.hi), a.count)
        )
    out.append('    "axes": [' + ", ".join(axis_items) + "],")
    fixed_items = ", ".join(
        f"{json.dumps(n)}: {format_float(diagram.fixed[n])}" for n in fixed_names
    )
    out.append('    "fixed": {' + fixed_items + "}")
    out.append("  },")
    out.append('  "cells": [')
    cell_lines = []
    for cell in diagram.cells:
        coord_items = ", ".join(
            f"{json.dumps(n)}: {format_float(cell.coords[n])}" for n in axis_names
        )
        cell_lines.append(
            '    {"coords": {%s}, "label": %s, "margin": %s}'
            % (coord_items, json.dumps(cell.label), _json_number(cell.margin))
        )
    out.append(",\n".join(cell_lines))
    out.append("  ],")
    out.append('  "annotations": [')
    ann_lines = []
    for ann in diagram.annotations:
        ann_lines.append(
            '    {"name": %s, "value": %s, "description": %s}'
            % (json.dumps(ann.name), _json_number(ann.value), json.dumps(ann.description))
        )
    out.append(",\n".join(ann_lines))
    out.append("  ]")
    out.append("}")
    return "\n".join(out) + "\n"


def parse_json(text: str) -> PhaseDiagram:
    """Re-ingest a JSON phase diagram (inverse of render_json)."""
    doc = json.loads(text)
    meta = doc["meta"]
    axes = tuple(
        Axis(name=a["name"], lo=float(a["min"]), hi=float(a["max"]), count=int(a["count"]))
        for a in meta["axes"]
    )
    fixed = {k: float(v) for k, v in meta["fixed"].items()}

    def from_wire(v):
        if v is None:
            return None
        if v == "infinite":
            return math.inf
        return float(v) if isinstance(v, float) else v

    cells = tuple(
        Cell(
            coords={k: float(v) for k, v in c["coords"].items()},
            label=c["label"],
            margin=from_wire(c["margin"]),
        )
        for c in doc["cells"]
    )
    annotations = tuple(
        Annotation(
            name=a["name"],
            value=math.inf if a["value"] == "infinite" else a["value"],
            description=a["description"],
        )
        for a in doc["annotations"]
    )
    return PhaseDiagram(
        N=int(meta["N"]),
        tol=float(meta["tol"]),
        axes=axes,
        fixed=fixed,
        cells=cells,
        annotations=annotations,
    )


def write_atomic(path: str, text: str) -> None:
    """Write-then-rename so a failed run never leaves a partial file."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".scan-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
