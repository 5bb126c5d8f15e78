"""Command-line front end.

Targets are either catalog names (see ``list-examples``) or structure files.
Exit status: 0 when every requested check passes, 1 when a check fails (the
first failing identity is named), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import catalog, correspond, flow, regression, serialize, structfile
from .construct import build_circle_extension, build_product
from .g2 import G2Structure, g2_algebra
from .g2 import torsion as g2_torsion
from .su3 import SU3Structure, standard_structure
from .su3 import torsion as su3_torsion


@dataclass
class CommandResult:
    code: int
    summary: str
    report_path: Optional[str] = None


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


# target resolution -------------------------------------------------------

def _load_file(path: str) -> structfile.StructFile:
    try:
        return structfile.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except structfile.StructFileError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _is_file(target: str) -> bool:
    if target in catalog.names():
        return False
    if not os.path.exists(target):
        raise UsageError(f"{target!r} is neither a file nor an example; examples: {', '.join(catalog.names())}")
    return True


def _su3_from_file(sf: structfile.StructFile, label: str) -> SU3Structure:
    if sf.model.n != 6:
        raise UsageError("an SU(3) report needs a 6-dimensional model")
    if sf.omega is None and sf.psi_plus is None:
        return standard_structure(sf.model, label)
    if sf.omega is None or sf.psi_plus is None:
        raise UsageError("give both omega and psi+ (psi- is optional)")
    return SU3Structure(sf.model, sf.omega, sf.psi_plus, sf.psi_minus, label=label)


def resolve_su3(target: str) -> SU3Structure:
    if _is_file(target):
        return _su3_from_file(_load_file(target), os.path.basename(target))
    entry = _entry(target)
    if entry.su3 is not None:
        return entry.su3
    g = entry.structure
    if g.base is None:
        raise UsageError(f"{target} has no underlying SU(3)-structure")
    return g.base


def resolve_g2(target: str, rho_file: Optional[str] = None) -> G2Structure:
    rho = None
    if rho_file is not None:
        rf = _load_file(rho_file)
        if rf.rho is None:
            raise UsageError(f"{rho_file} has no 'rho = ...' line")
        rho = rf.rho
    if _is_file(target):
        sf = _load_file(target)
        if sf.model.n == 7:
            if sf.alpha is None or sf.omega is None or sf.psi_plus is None or sf.psi_minus is None:
                raise UsageError("a 7-dimensional file needs alpha, omega, psi+ and psi-")
            return G2Structure(sf.model, sf.alpha, sf.omega, sf.psi_plus, sf.psi_minus,
                               label=os.path.basename(target))
        s = _su3_from_file(sf, os.path.basename(target))
        rho = rho if rho is not None else sf.rho
    else:
        entry = _entry(target)
        if rho is None:
            g = entry.g2_structure()
            if g is not None:
                return g
        s = resolve_su3(target)
    if rho is not None:
        return build_circle_extension(s, rho.restrict(s.model.frame) if rho.frame != s.model.frame else rho)
    return build_product(s)


def _entry(name: str) -> catalog.CatalogEntry:
    try:
        return catalog.get_example(name)
    except catalog.UnknownExampleError as exc:
        raise UsageError(str(exc)) from None


# commands ----------------------------------------------------------------

def _fmt_classes(classes) -> str:
    return ", ".join(classes) if classes else "none (torsion-free)"


def cmd_validate(args, out) -> dict:
    sf = _load_file(args.target)
    lines = [f"model: {sf.model!r}", "Jacobi identity: ok"]
    report = {"file": args.target, "dim": sf.model.n, "jacobi": True}
    if sf.model.n == 6 and (sf.omega is not None or sf.psi_plus is not None):
        s = _su3_from_file(sf, args.target)
        lines.append("SU(3) compatibility: ok")
        report["su3"] = True
        report["psi_minus"] = serialize.form(s.psi_minus)
    if sf.model.n == 7 and sf.alpha is not None:
        resolve_g2(args.target)
        lines.append("G2 structure: ok")
        report["g2"] = True
    out.extend(lines)
    return report


def cmd_su3(args, out) -> dict:
    s = resolve_su3(args.target)
    r = su3_torsion(s)
    out.append(f"{args.target}: classes {_fmt_classes(r.classes)}")
    out.append(f"half-flat: {r.half_flat}; rank(W1, W2) = {r.rank_w12}")
    for name in ("W1+", "W1-", "W2+", "W2-", "W3", "W4", "W5"):
        v = r.component(name)
        if v:
            out.append(f"  {name} = {v}")
    return serialize.su3_report(r)


def cmd_g2(args, out) -> dict:
    g = resolve_g2(args.target)
    r = g2_torsion(g)
    out.append(f"{args.target}: classes {_fmt_classes(r.classes)}")
    out.append(f"calibrated: {r.calibrated}; cocalibrated: {r.cocalibrated}; torsion-free: {r.torsion_free}")
    return serialize.g2_report(r)


def cmd_correspondence(args, out) -> dict:
    g = resolve_g2(args.target, args.rho)
    s = g.base
    if s is None:
        raise UsageError("correspondence needs a G2-structure built from an SU(3)-structure")
    if s.model.dt_slot or s.model.warps:
        # the t-dependent metric is not a product; compare against the product at frozen t
        su = s.algebra
        frame7 = tuple(range(1, 8))
        g2a = g2_algebra(frame7, 7, *(f.embed(frame7) for f in (su.omega, su.psi_plus, su.psi_minus)))
        sample = correspond.make_sample(s.derivatives(), None, (su, g2a))
        ws, gs, rs = sample.su3, sample.g2, sample.rho
        out.append("t-dependent model: comparing with the product at frozen t")
    else:
        ws, gs = su3_torsion(s), g2_torsion(g)
        rs = correspond.split_rho(s.algebra, g.rho)
        su = s.algebra
    rep = correspond.verify_correspondence(ws, rs, gs, su=su)
    for name, ok, detail in rep.checks:
        out.append(f"[{'ok' if ok else 'FAIL'}] {name}" + (f" ({detail})" if detail and not ok else ""))
    data = {"su3": serialize.su3_report(ws), "g2": serialize.g2_report(gs),
            "checks": [{"name": n, "ok": ok} for n, ok, _ in rep.checks], "ok": rep.ok}
    if not rep.ok:
        raise CheckFailed(rep.first_failure(), data)
    return data


def cmd_flow(args, out) -> dict:
    s = resolve_su3(args.target)
    dtype = np.longdouble if args.precision == "extended" else np.float64
    try:
        res = flow.flow_run(s, args.t0, args.t1, args.dt, dtype=dtype)
    except (ValueError, flow.FlowError) as exc:
        raise CheckFailed(str(exc), {}) from None
    if args.csv:
        res.write_csv(args.csv)
    compat = max(res.max_residual("omega^psi+"), res.max_residual("psi+^psi- - 2/3 omega^3"))
    data = {"t0": str(args.t0), "t1": str(args.t1), "dt": str(args.dt), "steps": len(res.states) - 1,
            "compat_residual": compat, "closure_residual": max(res.max_residual("d psi+"),
                                                               res.max_residual("d omega^2"))}
    out.append(f"{len(res.states) - 1} steps from t={args.t0} to t={args.t1}")
    out.append(f"max compatibility residual: {compat:.3e}")
    failures = []
    if compat > args.tol_compat:
        failures.append(f"compatibility residual {compat:.3e} > {args.tol_compat:g}")
    if s.model.dt_slot:
        err, term = res.compare(s), res.terminal_error(s)
        data.update(max_error=err, terminal_error=term)
        out.append(f"terminal error vs closed form: {term:.3e} (max over steps {err:.3e})")
        if err > args.tol:
            failures.append(f"error vs closed form {err:.3e} > {args.tol:g}")
    if args.csv:
        out.append(f"trajectory written to {args.csv}")
    if failures:
        raise CheckFailed(failures[0], data)
    return data


def cmd_verify(args, out) -> dict:
    only = set(args.only) if args.only else None
    results = regression.run_all(only)
    for r in results:
        out.append(r.line())
    data = {"criteria": [{"number": r.number, "title": r.title, "ok": r.ok, "failures": r.failures}
                         for r in results]}
    bad = [r for r in results if not r.ok]
    if bad:
        raise CheckFailed(f"criterion {bad[0].number}: {bad[0].failures[0]}", data)
    out.append(f"all {len(results)} criteria passed")
    return data


def cmd_list(args, out) -> dict:
    rows = []
    for name in catalog.names():
        e = catalog.get_example(name)
        out.append(f"{name:20s} {e.note}")
        rows.append({"name": name, "note": e.note, "dim": 6 if e.su3 is not None else 7})
    return {"examples": rows}


# parser ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the structured report as JSON")
    common.add_argument("--output", metavar="PATH", help="also write the JSON report to PATH")
    p = _Parser(prog="g2su3", description="SU(3)- and G2-structure torsion toolkit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sp = sub.add_parser("validate", parents=[common], help="parse and validate a structure file")
    sp.add_argument("target")
    sp.set_defaults(func=cmd_validate)
    sp = sub.add_parser("su3-report", parents=[common], help="SU(3) torsion classes")
    sp.add_argument("target")
    sp.set_defaults(func=cmd_su3)
    sp = sub.add_parser("g2-report", parents=[common], help="G2 torsion of the product or circle extension")
    sp.add_argument("target")
    sp.set_defaults(func=cmd_g2)
    sp = sub.add_parser("correspondence", parents=[common], help="check G2 torsion against SU(3) torsion")
    sp.add_argument("target")
    sp.add_argument("--rho", metavar="FILE", help="structure file with a 'rho = ...' curvature line")
    sp.set_defaults(func=cmd_correspondence)
    sp = sub.add_parser("flow", parents=[common], help="numerical half-flat evolution")
    sp.add_argument("target")
    sp.add_argument("--t0", type=float, required=True)
    sp.add_argument("--t1", type=float, required=True)
    sp.add_argument("--dt", type=float, default=1e-3)
    sp.add_argument("--csv", metavar="PATH")
    sp.add_argument("--precision", choices=("double", "extended"), default="double")
    sp.add_argument("--tol", type=float, default=1e-6, help="bound on the error vs a t-dependent closed form")
    sp.add_argument("--tol-compat", type=float, default=1e-8)
    sp.set_defaults(func=cmd_flow)
    sp = sub.add_parser("verify-paper", parents=[common], help="run the numbered reference criteria")
    sp.add_argument("--only", type=int, nargs="+", metavar="N")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("list-examples", parents=[common], help="list the built-in examples")
    sp.set_defaults(func=cmd_list)
    return p


def run(argv: List[str] | None = None, stdout=None) -> CommandResult:
    stdout = stdout or sys.stdout
    out: List[str] = []
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return CommandResult(2, str(exc))
    except SystemExit as exc:  # --help
        return CommandResult(int(exc.code or 0), "")
    code, data, summary = 0, None, ""
    try:
        data = args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CommandResult(2, str(exc))
    except CheckFailed as exc:
        code = 1
        summary = f"FAILED: {exc.args[0]}"
        data = exc.args[1] if len(exc.args) > 1 else {}
        if isinstance(data, dict):
            data = {**data, "failure": exc.args[0]}
    except (ValueError, ArithmeticError) as exc:
        code = 1
        summary = f"FAILED: {type(exc).__name__}: {exc}"
        data = {"failure": summary}
    if args.json:
        stdout.write(serialize.dumps(data))
    else:
        for line in out:
            print(line, file=stdout)
    if summary:
        print(summary, file=sys.stderr if args.json else stdout)
    if args.output and data is not None:
        with open(args.output, "w") as fh:
            fh.write(serialize.dumps(data))
    return CommandResult(code, summary or (out[-1] if out else ""), args.output)


def main(argv: List[str] | None = None) -> int:
    return run(argv).code


if __name__ == "__main__":
    sys.exit(main())
