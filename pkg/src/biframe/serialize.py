"""JSON interchange format.

Complex matrices are nested row-major lists of ``[re, im]`` pairs.

* module element: ``{"d": int, "m": int, "blocks": [m matrices of d x d]}``
* operator:       ``{"d": int, "m": int, "big": (m*d) x (m*d) matrix}``
* system file:    ``{"d", "m", "xi": [elements], "upsilon": [elements] | absent,
  "operators": {name: operator} | absent, "tolerances": {...} | absent}``

Validation errors carry the JSON path of the offending field.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .algebra import ToleranceConfig
from .frames import BiframePair, FrameFamily
from .hmodule import ModuleElement, ModuleOperator, ModuleSpace

__all__ = [
    "SchemaError",
    "SystemFile",
    "matrix_to_json",
    "matrix_from_json",
    "element_to_json",
    "element_from_json",
    "operator_to_json",
    "operator_from_json",
    "system_to_json",
    "system_from_json",
    "parse_system",
    "write_system",
    "dumps",
]


class SchemaError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _num(v) -> float:
    v = float(v)
    return 0.0 if v == 0 else v  # drop negative zero


def matrix_to_json(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [[[_num(z.real), _num(z.imag)] for z in row] for row in a]


def _complex(v: Any, path: str) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        re, im = v, 0.0
    elif isinstance(v, list) and len(v) == 2 and all(
        isinstance(t, (int, float)) and not isinstance(t, bool) for t in v
    ):
        re, im = v
    else:
        raise SchemaError(path, f"expected a [re, im] pair, got {v!r}")
    if not (math.isfinite(re) and math.isfinite(im)):
        raise SchemaError(path, "non-finite entry")
    return complex(re, im)


def matrix_from_json(obj: Any, shape: tuple[int, int], path: str = "$") -> np.ndarray:
    rows, cols = shape
    if not isinstance(obj, list) or len(obj) != rows:
        n = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise SchemaError(path, f"expected {rows} rows, got {n}")
    out = np.empty(shape, dtype=complex)
    for i, row in enumerate(obj):
        rpath = f"{path}[{i}]"
        if not isinstance(row, list) or len(row) != cols:
            n = len(row) if isinstance(row, list) else type(row).__name__
            raise SchemaError(rpath, f"expected {cols} entries, got {n}")
        for j, v in enumerate(row):
            out[i, j] = _complex(v, f"{rpath}[{j}]")
    return out


def _int_field(obj: dict, key: str, path: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise SchemaError(f"{path}.{key}", f"expected a positive integer, got {v!r}")
    return v


def _space(obj: Any, path: str, expected: Optional[ModuleSpace]) -> ModuleSpace:
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    space = ModuleSpace(_int_field(obj, "d", path), _int_field(obj, "m", path))
    if expected is not None and space != expected:
        raise SchemaError(path, f"dimensions (d={space.d}, m={space.m}) do not match "
                                f"(d={expected.d}, m={expected.m})")
    return space


def element_to_json(x: ModuleElement) -> dict:
    return {"d": x.space.d, "m": x.space.m, "blocks": [matrix_to_json(b) for b in x.blocks()]}


def element_from_json(obj: Any, path: str = "$", space: ModuleSpace | None = None) -> ModuleElement:
    space = _space(obj, path, space)
    blocks = obj.get("blocks")
    if not isinstance(blocks, list) or len(blocks) != space.m:
        raise SchemaError(f"{path}.blocks", f"expected a list of {space.m} matrices")
    mats = [matrix_from_json(b, (space.d, space.d), f"{path}.blocks[{k}]") for k, b in enumerate(blocks)]
    return ModuleElement(space, np.hstack(mats))


def operator_to_json(T: ModuleOperator) -> dict:
    return {"d": T.space.d, "m": T.space.m, "big": matrix_to_json(T.big)}


def operator_from_json(obj: Any, path: str = "$", space: ModuleSpace | None = None) -> ModuleOperator:
    space = _space(obj, path, space)
    return ModuleOperator(space, matrix_from_json(obj.get("big"), (space.n, space.n), f"{path}.big"))


@dataclass
class SystemFile:
    d: int
    m: int
    xi: FrameFamily
    upsilon: Optional[FrameFamily] = None
    operators: dict[str, ModuleOperator] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)

    @property
    def space(self) -> ModuleSpace:
        return ModuleSpace(self.d, self.m)

    def pair(self) -> BiframePair:
        """``(xi, upsilon)``, with upsilon defaulting to xi."""
        return BiframePair(self.xi, self.upsilon if self.upsilon is not None else self.xi)

    def tol(self, base: ToleranceConfig | None = None) -> ToleranceConfig:
        base = base or ToleranceConfig()
        return ToleranceConfig(**{**base.__dict__, **self.tolerances})

    def __eq__(self, other):
        if not isinstance(other, SystemFile):
            return NotImplemented
        return system_to_json(self) == system_to_json(other)

    @classmethod
    def from_pair(cls, pair: BiframePair, **kw) -> "SystemFile":
        return cls(pair.space.d, pair.space.m, pair.xi, pair.upsilon, **kw)


def _family_from_json(obj: Any, path: str, space: ModuleSpace) -> FrameFamily:
    if not isinstance(obj, list) or not obj:
        raise SchemaError(path, "expected a non-empty list of module elements")
    return FrameFamily([element_from_json(e, f"{path}[{i}]", space) for i, e in enumerate(obj)], space)


def system_from_json(obj: Any) -> SystemFile:
    if not isinstance(obj, dict):
        raise SchemaError("$", "expected a JSON object")
    space = _space(obj, "$", None)
    xi = _family_from_json(obj.get("xi"), "$.xi", space)
    upsilon = None
    if obj.get("upsilon") is not None:
        upsilon = _family_from_json(obj["upsilon"], "$.upsilon", space)
        if len(upsilon) != len(xi):
            raise SchemaError("$.upsilon", f"expected {len(xi)} elements to match xi, got {len(upsilon)}")
    operators = {}
    ops = obj.get("operators") or {}
    if not isinstance(ops, dict):
        raise SchemaError("$.operators", "expected an object mapping names to operators")
    for name, op in ops.items():
        operators[name] = operator_from_json(op, f"$.operators.{name}", space)
    tolerances = obj.get("tolerances") or {}
    if not isinstance(tolerances, dict):
        raise SchemaError("$.tolerances", "expected an object")
    for key, v in tolerances.items():
        if key not in ("eq_tol", "psd_tol", "inv_tol"):
            raise SchemaError(f"$.tolerances.{key}", "unknown tolerance")
        if not isinstance(v, (int, float)) or not (0 < v <= 1e-3):
            raise SchemaError(f"$.tolerances.{key}", f"expected a number in (0, 1e-3], got {v!r}")
    return SystemFile(space.d, space.m, xi, upsilon, operators, {k: float(v) for k, v in tolerances.items()})


def system_to_json(system: SystemFile) -> dict:
    out: dict[str, Any] = {
        "d": system.d,
        "m": system.m,
        "xi": [element_to_json(x) for x in system.xi],
    }
    if system.upsilon is not None:
        out["upsilon"] = [element_to_json(x) for x in system.upsilon]
    if system.operators:
        out["operators"] = {k: operator_to_json(v) for k, v in system.operators.items()}
    if system.tolerances:
        out["tolerances"] = dict(system.tolerances)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def parse_system(path) -> SystemFile:
    """Read and validate a system file. Raises OSError or SchemaError."""
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return system_from_json(obj)


def write_system(system: SystemFile, path) -> None:
    Path(path).write_text(dumps(system_to_json(system)))
