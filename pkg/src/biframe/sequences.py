"""Finite truncations of diagonal l^2 example pairs.

Each example is a rule ``i -> (coefficient, basis_index)`` (both 1-based)
for each family. Truncating after ``N`` elements gives a pair of families
in ``C^m`` with ``m`` the largest basis index used.

Built-in rules:

``ex32``  Xi = {e1, 2e2, 1/3 e3, 4e4, ...}, Upsilon = {2e1, e2, 4e3, 1/3 e4, ...}
``ex44``  Xi = {e1, e1, e1, e2, e2, e2, ...},
          Upsilon = {2e1, e1, -e1, 3/2 e2, e2, -e2, ...}
``ex45``  Xi = {e1, e2/sqrt2, e3, e4/2, ...}, Upsilon = {e1, sqrt2 e2, e3, 2e4, ...}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .algebra import DEFAULT_TOL, ToleranceConfig
from .frames import BiframePair, FrameFamily, biframe_check, frame_bounds
from .hmodule import ModuleElement, ModuleSpace

__all__ = [
    "DiagonalExampleSpec",
    "TruncationReport",
    "EXAMPLES",
    "get_example",
    "custom_spec",
    "load_custom_spec",
    "build_truncated",
    "bound_trajectory",
    "non_bessel_witness",
]

Rule = Callable[[int], "tuple[float, int]"]


@dataclass(frozen=True)
class DiagonalExampleSpec:
    id: str
    xi_coeff: Rule
    upsilon_coeff: Rule
    description: str = ""
    period: int = 1
    limit_lower: Optional[float] = None
    limit_upper: Optional[float] = None
    length: Optional[int] = None  # finite custom rules only


@dataclass
class TruncationReport:
    spec_id: str
    entries: list[tuple[int, float, float, float]] = field(default_factory=list)
    limit_lower: Optional[float] = None
    limit_upper: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "spec_id": self.spec_id,
            "entries": [
                {"N": n, "lower": lo, "upper": up, "parseval_defect": pd}
                for n, lo, up, pd in self.entries
            ],
            "limit_lower": self.limit_lower,
            "limit_upper": self.limit_upper,
        }


def _ex32_xi(i):
    k = (i + 1) // 2
    return (1.0 / (2 * k - 1), i) if i % 2 else (float(2 * k), i)


def _ex32_upsilon(i):
    k = (i + 1) // 2
    return (float(2 * k), i) if i % 2 else (1.0 / (2 * k - 1), i)


def _ex44_xi(i):
    return 1.0, (i + 2) // 3


def _ex44_upsilon(i):
    k = (i + 2) // 3
    return ((k + 1) / k, 1.0, -1.0)[(i - 1) % 3], k


def _ex45_xi(i):
    return (1.0, i) if i % 2 else (1.0 / math.sqrt(i), i)


def _ex45_upsilon(i):
    return (1.0, i) if i % 2 else (math.sqrt(i), i)


EXAMPLES: dict[str, DiagonalExampleSpec] = {
    "ex32": DiagonalExampleSpec(
        "ex32", _ex32_xi, _ex32_upsilon,
        "biframe from two non-Bessel sequences; bounds 1 and 2",
        period=2, limit_lower=1.0, limit_upper=2.0,
    ),
    "ex44": DiagonalExampleSpec(
        "ex44", _ex44_xi, _ex44_upsilon,
        "biframe of a frame and a non-frame; bounds 1 and 2",
        period=3, limit_lower=1.0, limit_upper=2.0,
    ),
    "ex45": DiagonalExampleSpec(
        "ex45", _ex45_xi, _ex45_upsilon,
        "Parseval biframe of a Bessel and a non-Bessel sequence",
        period=2, limit_lower=1.0, limit_upper=1.0,
    ),
}


def get_example(spec_id: str) -> DiagonalExampleSpec:
    try:
        return EXAMPLES[spec_id]
    except KeyError:
        raise ValueError(f"unknown example {spec_id!r}; choose from {sorted(EXAMPLES)}") from None


def custom_spec(xi, upsilon, description: str = "custom") -> DiagonalExampleSpec:
    """Finite spec from ``[[coeff, basis_index], ...]`` lists."""
    xi = [(float(c), int(b)) for c, b in xi]
    upsilon = [(float(c), int(b)) for c, b in upsilon]
    if len(xi) != len(upsilon):
        raise ValueError("xi and upsilon must have the same length")
    for c, b in xi + upsilon:
        if not math.isfinite(c):
            raise ValueError("coefficients must be finite")
        if b < 1:
            raise ValueError("basis indices are 1-based and must be >= 1")
    return DiagonalExampleSpec(
        "custom", lambda i: xi[i - 1], lambda i: upsilon[i - 1], description, length=len(xi)
    )


def load_custom_spec(path) -> DiagonalExampleSpec:
    data = json.loads(Path(path).read_text())
    return custom_spec(data["xi"], data["upsilon"], data.get("description", "custom"))


def build_truncated(spec: DiagonalExampleSpec, N: int) -> BiframePair:
    """First ``N`` elements of each family, realised in ``C^m``."""
    if N < 1 or N % spec.period:
        raise ValueError(f"N={N} must be a positive multiple of {spec.period} for {spec.id}")
    if spec.length is not None and N > spec.length:
        raise ValueError(f"N={N} exceeds the {spec.length} elements of {spec.id}")
    xs = [spec.xi_coeff(i) for i in range(1, N + 1)]
    ys = [spec.upsilon_coeff(i) for i in range(1, N + 1)]
    m = max(b for _, b in xs + ys)
    space = ModuleSpace(1, m)

    def _family(terms):
        out = []
        for c, b in terms:
            v = np.zeros((1, m), dtype=complex)
            v[0, b - 1] = c
            out.append(ModuleElement(space, v))
        return FrameFamily(out, space)

    return BiframePair(_family(xs), _family(ys))


def bound_trajectory(spec: DiagonalExampleSpec, Ns, tol: ToleranceConfig = DEFAULT_TOL) -> TruncationReport:
    """Optimal biframe bounds per truncation length (NaN when not a biframe)."""
    report = TruncationReport(spec.id, limit_lower=spec.limit_lower, limit_upper=spec.limit_upper)
    for N in sorted(Ns):
        r = biframe_check(build_truncated(spec, N), tol)
        if r.is_biframe:
            lo, up = r.bounds.lower, r.bounds.upper
        else:
            lo = up = float("nan")
        report.entries.append((N, lo, up, r.parseval_defect))
    return report


def non_bessel_witness(spec: DiagonalExampleSpec, N: int) -> tuple[float, float]:
    """Upper frame bounds of the truncated Xi and Upsilon; they grow with N for non-Bessel families."""
    if spec.id not in ("ex32", "ex45"):
        raise ValueError(f"non-Bessel witness is only defined for ex32 and ex45, not {spec.id!r}")
    pair = build_truncated(spec, N)
    return frame_bounds(pair.xi).upper, frame_bounds(pair.upsilon).upper
