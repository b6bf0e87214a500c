"""``biframe`` command-line interface.

Exit codes: 0 success, 2 mathematical rejection, 3 input error,
4 numerical breakdown. ``BIFRAME_TOL`` overrides the default ``eq_tol``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from . import generate, sequences
from .algebra import ToleranceConfig, operator_norm
from .constructions import (
    ConstructionError,
    FactorizationInput,
    NotABiframeError,
    ParsevalTransformInput,
    canonical_dual,
    factorize_operators,
    is_riesz_basis,
    parseval_transform,
    reconstruct,
    riesz_companion,
)
from .frames import BiframePair, FrameFamily, biframe_check, biframe_operator, is_biorthogonal, is_dual_pair
from .hmodule import ModuleSpace, adjoint_op, apply, compose, module_norm
from .serialize import (
    SchemaError,
    SystemFile,
    element_from_json,
    element_to_json,
    operator_to_json,
    parse_system,
    system_to_json,
    write_system,
)

EXIT_OK = 0
EXIT_REJECTED = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4

RESIDUAL_TOL = 1e-8


class InputError(ValueError):
    pass


@dataclass
class RunReport:
    command: list[str]
    result: dict[str, Any] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)
    exit_code: int = EXIT_OK
    lines: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "result": self.result,
            "residuals": self.residuals,
            "exit_code": self.exit_code,
        }

    def render(self, as_json: bool = False) -> str:
        if as_json:
            return json.dumps(_jsonable(self.to_dict()), indent=1, sort_keys=True) + "\n"
        out = list(self.lines)
        for k, v in self.residuals.items():
            out.append(f"residual {k}: {v:.3e}")
        out.append(f"exit code: {self.exit_code}")
        return "\n".join(out) + "\n"

    def check_residuals(self, limit: float = RESIDUAL_TOL):
        bad = {k: v for k, v in self.residuals.items() if not (v <= limit)}
        if bad and self.exit_code == EXIT_OK:
            self.exit_code = EXIT_NUMERIC
            self.lines.append("residuals above tolerance: " + ", ".join(sorted(bad)))


def _jsonable(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _fmt(v: Optional[float]) -> str:
    return "-" if v is None else f"{v:.12g}"


def _report_lines(rep) -> list[str]:
    b = rep.bounds
    return [
        f"bessel:      {rep.is_bessel}",
        f"frame (Xi):  {rep.is_frame}",
        f"pair frame:  {rep.is_pair_frame}",
        f"biframe:     {rep.is_biframe}",
        f"tight:       {_fmt(rep.is_tight)}",
        f"parseval:    {rep.is_parseval}",
        f"bounds:      {'-' if b is None else f'({_fmt(b.lower)}, {_fmt(b.upper)})'}",
        f"hermitian defect: {rep.hermitian_defect:.3e}",
        f"parseval defect:  {rep.parseval_defect:.3e}",
    ] + [f"note: {d}" for d in rep.diagnostics]


def cmd_analyze(system: SystemFile, tol: ToleranceConfig, argv=None) -> RunReport:
    pair = system.pair()
    rep = biframe_check(pair, tol)
    result = rep.to_dict()
    result["is_dual_pair"] = is_dual_pair(pair, tol)
    result["is_biorthogonal"] = is_biorthogonal(pair, tol)
    result["xi_riesz"] = is_riesz_basis(pair.xi, tol)
    lines = [f"system: d={system.d} m={system.m} elements={len(pair)}"] + _report_lines(rep)
    code = EXIT_OK if rep.is_bessel else EXIT_REJECTED
    return RunReport(argv or ["analyze"], result, {}, code, lines)


EX34_XI = [[1, 2], [3, 4]]
EX34_UPSILON = [[1, 1], [1, -1]]
DEFAULT_TRUNC = {"ex32": [2, 10, 100], "ex44": [3, 30, 300], "ex45": [2, 20, 200]}


def ex34_pair() -> BiframePair:
    return BiframePair(FrameFamily.from_scalar_rows(EX34_XI), FrameFamily.from_scalar_rows(EX34_UPSILON))


def cmd_demo(example_id: str, Ns=None, tol: ToleranceConfig | None = None, argv=None) -> RunReport:
    tol = tol or ToleranceConfig()
    argv = argv or ["demo", example_id]
    if example_id == "ex34":
        pair = ex34_pair()
        G = biframe_operator(pair.xi, pair.upsilon).big.real
        # column convention: the matrix acting on (xi, eta)^T is G^T
        mat = G.T
        det = float(np.linalg.det(mat))
        xw, yw = (-1 + math.sqrt(3)) / 2, 1.0
        form = 4 * xw**2 - 2 * yw**2 + 4 * xw * yw
        rep = biframe_check(pair, tol)
        lines = [
            "ex34: Xi = {(1,2),(3,4)}, Upsilon = {(1,1),(1,-1)}",
            f"operator matrix: {mat.tolist()}",
            f"determinant: {det:.12g}",
            f"form 4x^2 - 2y^2 + 4xy at ({xw:.12g}, {yw:g}): {form:.3e}",
        ] + _report_lines(rep)
        result = {
            "matrix": mat.tolist(),
            "determinant": det,
            "witness": [xw, yw],
            "form_at_witness": form,
            "report": rep.to_dict(),
        }
        ok = rep.is_pair_frame and not rep.is_biframe and abs(det - 4) < 1e-9 and abs(form) < 1e-9
        return RunReport(argv, result, {"form_at_witness": abs(form)}, EXIT_OK if ok else EXIT_REJECTED, lines)

    spec = sequences.get_example(example_id)
    Ns = list(Ns) if Ns else DEFAULT_TRUNC[example_id]
    traj = sequences.bound_trajectory(spec, Ns, tol)
    lines = [
        f"{spec.id}: {spec.description}",
        f"limits: lower={_fmt(spec.limit_lower)} upper={_fmt(spec.limit_upper)}",
        f"{'N':>8} {'lower':>20} {'upper':>20} {'parseval_defect':>16}",
    ] + [f"{n:>8} {lo:>20.15g} {up:>20.15g} {pd:>16.3e}" for n, lo, up, pd in traj.entries]
    code = EXIT_OK if all(np.isfinite(lo) for _, lo, _, _ in traj.entries) else EXIT_REJECTED
    report = RunReport(argv, traj.to_dict(), {}, code, lines)
    if example_id == "ex45":
        report.residuals["max_parseval_defect"] = max(e[3] for e in traj.entries)
        report.check_residuals(1e-9)
    return report


def _op(system: SystemFile, name: str, default=None):
    if name in system.operators:
        return system.operators[name]
    if default is not None:
        return default
    raise InputError(f"missing operator {name!r} in system file")


def cmd_construct(kind: str, system: SystemFile, params: dict, tol: ToleranceConfig, argv=None) -> RunReport:
    argv = argv or ["construct", kind]
    space = system.space
    ident = space.identity()
    report = RunReport(argv)
    out: SystemFile | None = None
    if kind == "parseval":
        p = params.get("p") if params.get("p") is not None else 0.5
        q = params.get("q") if params.get("q") is not None else 1.0 - p
        P = _op(system, "P", ident)
        T = _op(system, "T", ident)
        new = parseval_transform(ParsevalTransformInput(system.pair(), P, T, p, q), tol)
        rep = biframe_check(new, tol)
        report.residuals["parseval_defect"] = rep.parseval_defect
        report.lines += [f"constructed Parseval biframe with {len(new)} elements"]
        out = SystemFile.from_pair(new)
    elif kind == "factorize":
        p = params.get("p") if params.get("p") is not None else 0.5
        q = params.get("q") if params.get("q") is not None else 1.0 - p
        r = params.get("r") if params.get("r") is not None else 0.5
        s = params.get("s") if params.get("s") is not None else 1.0 - r
        inp = FactorizationInput(
            _op(system, "T1"), _op(system, "T2"), _op(system, "P", ident), _op(system, "Q", ident), p, q, r, s
        )
        try:
            S, U = factorize_operators(inp, tol)
        except ConstructionError:
            raise
        except ValueError as exc:
            raise InputError(str(exc)) from None
        lhs = compose(U, compose(inp.t1, adjoint_op(S)))
        report.residuals["U_T1_Sstar_minus_T2"] = operator_norm(lhs.big - inp.t2.big)
        report.result["S"] = operator_to_json(S)
        report.result["U"] = operator_to_json(U)
        report.lines += [f"S = {np.round(S.big, 12).tolist()}", f"U = {np.round(U.big, 12).tolist()}"]
        out = SystemFile(system.d, system.m, system.xi, system.upsilon,
                         {**system.operators, "S": S, "U": U})
    elif kind == "dual":
        dual = canonical_dual(system.xi, tol)
        G = biframe_operator(dual, system.xi).big
        report.residuals["dual_pair_defect"] = operator_norm(G - np.eye(space.n))
        report.lines += ["canonical dual:"] + [
            f"  {np.round(x.mat, 12).tolist()}" for x in dual
        ]
        out = SystemFile(system.d, system.m, system.xi, dual)
    elif kind == "riesz-check":
        pair = system.pair()
        if not is_riesz_basis(pair.xi, tol):
            report.exit_code = EXIT_REJECTED
            report.lines.append("Xi is not a Riesz basis")
            return report
        U = riesz_companion(pair, tol)
        err = max(module_norm(apply(U, space.basis(j)) - eta) for j, eta in enumerate(pair.upsilon))
        report.residuals["max_U_ej_minus_eta_j"] = err
        report.result["U"] = operator_to_json(U)
        report.result["upsilon_riesz"] = is_riesz_basis(pair.upsilon, tol)
        report.lines += ["Xi is a Riesz basis; companion operator U maps e_j to eta_j",
                         f"Upsilon Riesz: {report.result['upsilon_riesz']}"]
        out = SystemFile(system.d, system.m, system.xi, system.upsilon, {"U": U})
    else:
        raise InputError(f"unknown construct kind {kind!r}")

    if out is not None:
        report.result["system"] = system_to_json(out)
        if params.get("out"):
            write_system(out, params["out"])
            report.lines.append(f"wrote {params['out']}")
    report.check_residuals()
    return report


def _load_vector(spec: str, space: ModuleSpace):
    path = Path(spec)
    text = path.read_text() if path.exists() else spec
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"vector is neither a file nor inline JSON: {exc}") from None
    if isinstance(obj, list):
        # shorthand for d = 1: a flat list of numbers or [re, im] pairs
        obj = {"d": 1, "m": len(obj), "blocks": [[[v]] for v in obj]}
    return element_from_json(obj, "$vector", space)


def cmd_reconstruct(system: SystemFile, vector: str, side: str, tol: ToleranceConfig, argv=None) -> RunReport:
    argv = argv or ["reconstruct", side]
    x = _load_vector(vector, system.space)
    pair = system.pair()
    report = RunReport(argv)
    try:
        y = reconstruct(x, pair, side, tol)
    except NotABiframeError as exc:
        report.exit_code = EXIT_REJECTED
        report.lines.append(f"not a biframe: {exc}")
        report.result["error"] = "not a biframe"
        return report
    err = module_norm(y - x) / max(module_norm(x), 1e-300)
    report.result["reconstructed"] = element_to_json(y)
    report.residuals["relative_error"] = err
    report.lines += [f"reconstructed ({side}): {np.round(y.mat, 12).tolist()}",
                     f"relative error: {err:.3e}"]
    report.check_residuals()
    return report


def cmd_random(d: int, m: int, count: int, seed: int, kind: str, out=None, argv=None) -> RunReport:
    argv = argv or ["random", kind]
    if d < 1 or m < 1:
        raise InputError("d and m must be positive")
    if count < m:
        raise InputError(f"count={count} must be at least m={m}")
    rng = np.random.default_rng(seed)
    space = ModuleSpace(d, m)
    if kind == "frame":
        system = SystemFile(d, m, generate.random_frame(rng, space, count))
    elif kind == "biframe":
        system = SystemFile.from_pair(generate.random_biframe(rng, space, count))
    elif kind == "parseval":
        system = SystemFile.from_pair(generate.random_parseval(rng, space, count))
    else:
        raise InputError(f"unknown kind {kind!r}")
    report = RunReport(argv)
    rep = biframe_check(system.pair())
    report.result["system"] = system_to_json(system)
    report.result["report"] = rep.to_dict()
    if kind == "parseval":
        report.residuals["parseval_defect"] = rep.parseval_defect
    ok = {"frame": rep.is_frame, "biframe": rep.is_biframe, "parseval": rep.is_parseval}[kind]
    if not ok:
        report.exit_code = EXIT_NUMERIC
    if out:
        write_system(system, out)
        report.lines.append(f"wrote {out}")
    report.lines.append(f"generated {kind}: d={d} m={m} count={count} seed={seed}")
    report.check_residuals(1e-9)
    return report


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="biframe", description="Biframes in Hilbert C*-modules over matrix algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify a frame system")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")

    d = sub.add_parser("demo", help="reproduce a built-in example")
    d.add_argument("example", choices=["ex32", "ex34", "ex44", "ex45"])
    d.add_argument("--trunc", type=_int_list, default=None, help="comma separated truncation lengths")
    d.add_argument("--json", action="store_true")

    c = sub.add_parser("construct", help="build duals, factorizations and Parseval transforms")
    c.add_argument("kind", choices=["parseval", "factorize", "dual", "riesz-check"])
    c.add_argument("file")
    for name in ("p", "q", "r", "s"):
        c.add_argument(f"--{name}", type=float, default=None)
    c.add_argument("--out", default=None)
    c.add_argument("--json", action="store_true")

    r = sub.add_parser("reconstruct", help="reconstruct a vector from biframe coefficients")
    r.add_argument("file")
    r.add_argument("--vector", required=True, help="file path or inline JSON")
    r.add_argument("--side", choices=["left", "right"], default="left")
    r.add_argument("--json", action="store_true")

    g = sub.add_parser("random", help="write a seeded random system")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--kind", choices=["frame", "biframe", "parseval"], required=True)
    g.add_argument("--out", default=None)
    g.add_argument("--json", action="store_true")
    return ap


def run(argv=None) -> tuple[int, str]:
    """Run the CLI and return ``(exit_code, output_text)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        tol = ToleranceConfig.from_env()
        if args.command == "analyze":
            system = parse_system(args.file)
            report = cmd_analyze(system, system.tol(tol), argv)
        elif args.command == "demo":
            report = cmd_demo(args.example, args.trunc, tol, argv)
        elif args.command == "construct":
            system = parse_system(args.file)
            params = {"p": args.p, "q": args.q, "r": args.r, "s": args.s, "out": args.out}
            report = cmd_construct(args.kind, system, params, system.tol(tol), argv)
        elif args.command == "reconstruct":
            system = parse_system(args.file)
            report = cmd_reconstruct(system, args.vector, args.side, system.tol(tol), argv)
        else:
            report = cmd_random(args.d, args.m, args.count, args.seed, args.kind, args.out, argv)
    except (OSError, SchemaError, InputError) as exc:
        report = RunReport(argv, {"error": str(exc)}, {}, EXIT_INPUT, [f"input error: {exc}"])
    except NotABiframeError as exc:
        report = RunReport(argv, {"error": str(exc)}, {}, EXIT_REJECTED, [f"rejected: {exc}"])
    except (ConstructionError, np.linalg.LinAlgError) as exc:
        report = RunReport(argv, {"error": str(exc)}, {}, EXIT_NUMERIC, [f"numerical breakdown: {exc}"])
    except ValueError as exc:
        report = RunReport(argv, {"error": str(exc)}, {}, EXIT_INPUT, [f"input error: {exc}"])
    return report.exit_code, report.render(as_json)


def main(argv=None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
