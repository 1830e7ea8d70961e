"""Problem and report files.

Both are single JSON documents tagged with ``schema_version``. Floats are
written with Python's shortest round-trip repr, so reading a file back gives
bit-identical values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import jsonschema
import numpy as np

from .driver import SolveConfig, SolveResult
from .intersect import Intersection, Line3
from .polybasis import BasisKind, TensorPoly

__all__ = [
    "SCHEMA_VERSION",
    "ProblemFile",
    "ProblemError",
    "load_problem",
    "dump_problem",
    "problem_to_dict",
    "problem_from_dict",
    "build_report",
    "dump_report",
    "load_report",
    "REPORT_SCHEMA",
]

SCHEMA_VERSION = "1.0"

_vec = {"type": "array", "items": {"type": "number"}}

PROBLEM_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "mode", "basis", "degrees", "coefficients"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "mode": {"enum": ["system2d", "surface_line"]},
        "basis": {"enum": [b.value for b in BasisKind]},
        "degrees": {"type": "array", "items": {"type": "integer", "minimum": 0},
                    "minItems": 2, "maxItems": 2},
        "coefficients": {"type": "array", "items": {"type": "array", "items": _vec}},
        "line": {"type": "object", "required": ["p", "d"],
                 "properties": {"p": {**_vec, "minItems": 3, "maxItems": 3},
                                "d": {**_vec, "minItems": 3, "maxItems": 3}},
                 "additionalProperties": False},
        "config": {"type": "object"},
        "metadata": {"type": "object"},
    },
    "additionalProperties": False,
}

_stats = {"type": "object",
          "required": ["patches_examined", "smallest_width", "max_newton_iterations"],
          "properties": {"patches_examined": {"type": "integer", "minimum": 0},
                         "smallest_width": {"type": "number"},
                         "max_newton_iterations": {"type": "integer", "minimum": 0}}}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "mode", "stats", "unresolved", "complete"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "mode": {"enum": ["system2d", "surface_line"]},
        "zeros": {"type": "array", "items": {"type": "object", "required": ["uv", "residual"]}},
        "intersections": {"type": "array",
                          "items": {"type": "object",
                                    "required": ["uv", "t", "point", "residual"]}},
        "stats": _stats,
        "cond_lb": {"type": ["number", "null"]},
        "unresolved": {"type": "array",
                       "items": {"type": "object", "required": ["center", "radius"]}},
        "complete": {"type": "boolean"},
        "budget_exhausted": {"type": "boolean"},
        "timing": {"type": "object"},
    },
    "additionalProperties": False,
}

_CONFIG_KEYS = {"min_patch_width": float, "max_patches": int, "step_tol": float,
                "max_iter": int, "zero_residual_tol": float, "duplicate_tol": float}


class ProblemError(ValueError):
    """Malformed problem file; the message names the offending field."""


@dataclass
class ProblemFile:
    mode: str
    poly: TensorPoly
    line: Optional[Line3] = None
    config: dict = field(default_factory=dict)
    name: Optional[str] = None
    metadata: dict = field(default_factory=dict)

    def solve_config(self, **overrides) -> SolveConfig:
        merged = {**self.config, **{k: v for k, v in overrides.items() if v is not None}}
        return SolveConfig(**merged)


def _field_path(err: jsonschema.ValidationError) -> str:
    return "/".join(str(p) for p in err.absolute_path) or "<root>"


def problem_from_dict(doc: Any) -> ProblemFile:
    try:
        jsonschema.validate(doc, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as err:
        raise ProblemError(f"field {_field_path(err)}: {err.message}") from None
    mode = doc["mode"]
    m, n = doc["degrees"]
    width = 2 if mode == "system2d" else 3
    coeffs = doc["coefficients"]
    if len(coeffs) != m + 1 or any(len(row) != n + 1 for row in coeffs):
        raise ProblemError(f"field coefficients: grid must be {m + 1} x {n + 1} for degrees {[m, n]}")
    for i, row in enumerate(coeffs):
        for j, c in enumerate(row):
            if len(c) != width:
                raise ProblemError(f"field coefficients/{i}/{j}: expected a {width}-vector "
                                   f"for mode {mode}, got length {len(c)}")
    line = None
    if mode == "surface_line":
        if "line" not in doc:
            raise ProblemError("field line: required for mode surface_line")
        line = Line3(doc["line"]["p"], doc["line"]["d"])
    elif "line" in doc:
        raise ProblemError("field line: only allowed for mode surface_line")
    config = {}
    for key, value in doc.get("config", {}).items():
        if key not in _CONFIG_KEYS:
            raise ProblemError(f"field config/{key}: unknown setting")
        config[key] = _CONFIG_KEYS[key](value)
    try:
        SolveConfig(**config)
    except ValueError as err:
        raise ProblemError(f"field config: {err}") from None
    poly = TensorPoly(doc["basis"], np.array(coeffs, dtype=float))
    return ProblemFile(mode, poly, line, config, doc.get("name"), doc.get("metadata", {}))


def problem_to_dict(problem: ProblemFile) -> dict:
    doc = {"schema_version": SCHEMA_VERSION}
    if problem.name is not None:
        doc["name"] = problem.name
    doc.update({
        "mode": problem.mode,
        "basis": problem.poly.basis.value,
        "degrees": [problem.poly.m, problem.poly.n],
        "coefficients": problem.poly.coeffs.tolist(),
    })
    if problem.line is not None:
        doc["line"] = {"p": problem.line.p.tolist(), "d": problem.line.d.tolist()}
    if problem.config:
        doc["config"] = dict(problem.config)
    if problem.metadata:
        doc["metadata"] = dict(problem.metadata)
    return doc


def load_problem(path) -> ProblemFile:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ProblemError(f"line {err.lineno}, column {err.colno}: {err.msg}") from None
    return problem_from_dict(doc)


def dump_problem(problem: ProblemFile) -> str:
    return json.dumps(problem_to_dict(problem), indent=2) + "\n"


def build_report(mode: str, result: SolveResult, intersections: Optional[list[Intersection]] = None,
                 poly: Optional[TensorPoly] = None, cond_lb: Optional[float] = None,
                 name: Optional[str] = None, seconds: Optional[float] = None,
                 budget_exhausted: bool = False) -> dict:
    """Report document for a finished (or budget-limited) run.

    Zero residuals are recomputed from ``poly`` when it is given.
    """
    doc: dict = {"schema_version": SCHEMA_VERSION}
    if name is not None:
        doc["name"] = name
    doc["mode"] = mode
    if mode == "system2d":
        zeros = []
        for z in result.zeros:
            res = float(np.max(np.abs(poly(z)))) if poly is not None else None
            zeros.append({"uv": [float(z[0]), float(z[1])], "residual": res})
        doc["zeros"] = zeros
    else:
        doc["intersections"] = [
            {"uv": [float(s.uv[0]), float(s.uv[1])], "t": float(s.t),
             "point": [float(x) for x in s.point], "residual": float(s.residual)}
            for s in (intersections or [])
        ]
    doc["stats"] = {"patches_examined": int(result.stats.patches_examined),
                    "smallest_width": float(result.stats.smallest_width),
                    "max_newton_iterations": int(result.stats.max_newton_iterations)}
    doc["cond_lb"] = None if cond_lb is None else float(cond_lb)
    doc["unresolved"] = [{"center": list(p.center), "radius": p.radius} for p in result.unresolved]
    doc["complete"] = not result.unresolved
    doc["budget_exhausted"] = bool(budget_exhausted)
    if seconds is not None:
        doc["timing"] = {"seconds": float(seconds)}
    jsonschema.validate(doc, REPORT_SCHEMA)
    return doc


def dump_report(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_report(path_or_text) -> dict:
    text = path_or_text
    if isinstance(path_or_text, Path) or not str(path_or_text).lstrip().startswith("{"):
        text = Path(path_or_text).read_text()
    doc = json.loads(text)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return doc
