"""Command-line front end.

Exit status: 0 when everything checked passes, 1 when a claim, Jacobi,
cocycle or audit check fails, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import io
from .catalog import entries as catalog
from .catalog.charts import (
    corrected_torus_integrals,
    g7_algebra,
    g7_casimirs,
    get_chart_entry,
)
from .cohomology import (
    TwoCochain,
    cocycle_basis,
    cohomology_index,
    cohomology_report,
    is_cocycle,
    is_integrable,
)
from .dynamics import (
    MagneticFlow,
    Metric,
    ReducedFlow,
    closed_form_torus,
    integrals_of_motion,
    integrate,
)
from .errors import (
    DimensionMismatch,
    EntryNotFound,
    JacobiViolation,
    MissingChartData,
    NotACocycle,
    OutOfChart,
    StepRejection,
)
from .exact import as_fraction, format_fraction
from .extension import central_extension
from .lie_core import DEFAULT_TRIALS, algebra_index

DEFAULT_SEED = 42
DRIFT_TOL = 1e-8
CLOSED_FORM_TOL = 1e-6


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """Carries a report that should still be printed, with exit status 1."""

    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


# input helpers

def _load_algebra(ref: str):
    """A JSON file path, or a parameter-free catalog id such as g7."""
    path = Path(ref)
    if path.exists():
        return io.algebra_from_json(io.load_json(path))
    try:
        entry = catalog.get_entry(ref)
    except EntryNotFound:
        raise UsageError(f"{ref}: no such file or catalog entry") from None
    if entry.params:
        raise UsageError(f"catalog entry {ref} has parameters {sorted(entry.params)}; pass a JSON file instead")
    return entry.algebra({})


def _parse_inline_cochain(text: str, dim: int) -> TwoCochain:
    """'e12=1,e13=-1/2' style terms."""
    terms = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, _, val = part.partition("=")
        key = key.strip().lstrip("e")
        if len(key) != 2 or not key.isdigit() or not val:
            raise UsageError(f"cannot read cocycle term {part!r}; use e12=1/2")
        a, b = int(key[0]), int(key[1])
        if not (1 <= a < b <= dim):
            raise UsageError(f"cocycle term {part!r} out of range for dim {dim}")
        terms[(a, b)] = as_fraction(val.strip())
    return TwoCochain.from_terms(dim, terms)


def _load_cochain(ref: str, dim: int) -> TwoCochain:
    path = Path(ref)
    if path.exists():
        F = io.cochain_from_json(io.load_json(path))
    else:
        F = _parse_inline_cochain(ref, dim)
    if F.dim != dim:
        raise UsageError(f"cocycle dim {F.dim} does not match algebra dim {dim}")
    return F


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot read numbers from {text!r}") from None


def _load_vector(ref: str) -> list[float]:
    path = Path(ref)
    if path.exists():
        data = io.load_json(path) if path.suffix == ".json" else path.read_text()
        if isinstance(data, str):
            return _floats(data.strip())
        if isinstance(data, dict):
            data = data.get("init", data.get("state"))
        return [float(x) for x in data]
    return _floats(ref)


def _load_metric(ref: str | None, dim: int) -> Metric:
    if ref is None:
        return Metric.identity(dim)
    path = Path(ref)
    try:
        if path.exists():
            data = io.load_json(path)
            rows = data["G"] if isinstance(data, dict) else data
            metric = Metric.from_rows([[as_fraction(v) for v in row] for row in rows])
        else:
            metric = Metric.diagonal([as_fraction(x.strip()) for x in ref.split(",")])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad metric {ref!r}: {exc}") from None
    if metric.dim != dim:
        raise UsageError(f"metric dim {metric.dim} does not match {dim}")
    return metric


def _parse_params(text: str | None) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        key, _, val = part.partition("=")
        if not val:
            raise UsageError(f"cannot read parameter {part!r}; use name=value")
        out[key.strip()] = as_fraction(val.strip())
    return out


# commands

def cmd_algebra_validate(args):
    try:
        alg = io.algebra_from_json(io.load_json(args.file))
    except JacobiViolation as exc:
        raise CheckFailed(
            {
                "jacobi": False,
                "violation": {"a": exc.a, "b": exc.b, "c": exc.c, "component": exc.e,
                              "residual": format_fraction(exc.residual)},
                "message": str(exc),
            }
        ) from None
    return {"name": alg.name, "dim": alg.dim, "jacobi": True, "abelian": alg.is_abelian()}


def cmd_cocycle_basis(args):
    alg = _load_algebra(args.algebra)
    basis = cocycle_basis(alg)
    return {"algebra": alg.name, "dim_Z2": len(basis), "basis": [io.cochain_to_json(F) for F in basis],
            "pretty": [str(F) for F in basis]}


def cmd_cocycle_check(args):
    alg = _load_algebra(args.algebra)
    F = _load_cochain(args.cocycle, alg.dim)
    check = is_cocycle(alg, F)
    report = {
        "cocycle": bool(check),
        "residuals": [{"a": a, "b": b, "c": c, "v": format_fraction(v)} for (a, b, c), v in check.residuals.items()],
    }
    if not check:
        raise CheckFailed(report)
    return report


def cmd_cohomology(args):
    alg = _load_algebra(args.algebra)
    return {"algebra": alg.name, **cohomology_report(alg).to_json()}


def cmd_index(args):
    alg = _load_algebra(args.algebra)
    ind = algebra_index(alg, seed=args.seed, trials=args.trials, exact=args.exact)
    return {"algebra": alg.name, "index": ind, "seed": args.seed, "trials": args.trials, "exact": args.exact}


def cmd_cohomology_index(args):
    alg = _load_algebra(args.algebra)
    F = _load_cochain(args.cocycle, alg.dim)
    ind = cohomology_index(alg, F, seed=args.seed, trials=args.trials, exact=args.exact)
    return {"algebra": alg.name, "cocycle": str(F), "cohomology_index": ind}


def cmd_integrable(args):
    alg = _load_algebra(args.algebra)
    F = _load_cochain(args.cocycle, alg.dim)
    verdict = is_integrable(alg, F, seed=args.seed, trials=args.trials, exact=args.exact)
    return {"algebra": alg.name, "cocycle": str(F), **verdict.to_json()}


def cmd_extend(args):
    alg = _load_algebra(args.algebra)
    F = _load_cochain(args.cocycle, alg.dim)
    ext = central_extension(alg, F)
    return io.algebra_to_json(ext.extended, center_index=0)


def _casimir_audits(alg, F):
    """K0, K1, K2 for the g7 integrable family; empty otherwise."""
    if dict(alg.structure) != dict(g7_algebra().structure):
        return {}
    if set(F.entries) - {(1, 2), (1, 3), (2, 3)} or F.value(1, 3) != F.value(2, 3):
        return {}
    cas = g7_casimirs(F.value(1, 2), F.value(1, 3))
    return {k: cas[k] for k in ("K0", "K1", "K2")}


def _summary(traj, thresholds):
    out = {}
    for name, series in traj.audits.items():
        worst = float(np.max(series)) if len(series) else 0.0
        out[name] = {"max": worst, "threshold": thresholds[name], "ok": worst <= thresholds[name]}
    return out


def _emit_trajectory(args, traj, thresholds, meta):
    summary = _summary(traj, thresholds)
    ok = all(v["ok"] for v in summary.values())
    if args.format == "csv":
        body = io.trajectory_to_csv(traj)
    else:
        body = io.dumps({**io.trajectory_to_json(traj), "summary": summary, **meta})
    if args.out:
        Path(args.out).write_text(body)
        report = {"summary": summary, "out": str(args.out), "ok": ok, **meta}
        if not ok:
            raise CheckFailed(report)
        return report
    if not ok:
        raise CheckFailed(body)
    return body


def _audit_list(text, default):
    names = [x.strip() for x in (text or default).split(",") if x.strip()]
    if not names:
        raise UsageError("empty audit list")
    return names


def cmd_simulate_reduced(args):
    alg = _load_algebra(args.algebra)
    F = _load_cochain(args.cocycle, alg.dim) if args.cocycle else TwoCochain.zero(alg.dim)
    ext = central_extension(alg, F)
    metric = _load_metric(args.metric, alg.dim)
    flow = ReducedFlow(ext, metric)
    if args.init is None:
        raise UsageError("--init is required (momenta f1..fn)")
    init = _load_vector(args.init)
    if len(init) == alg.dim:
        init = [-args.charge] + init
    if len(init) != alg.dim + 1:
        raise UsageError(f"--init needs {alg.dim} momenta (or {alg.dim + 1} values including f0)")
    if init[0] != -args.charge:
        raise UsageError(f"f0 = {init[0]} contradicts charge {args.charge} (f0 must be -charge)")
    available = {"H": flow.hamiltonian, "f0": lambda f: f[0]}
    for name, K in _casimir_audits(alg, F).items():
        available[name] = (lambda f, K=K: K.value(f)) if name != "K2" else (lambda f, K=K: _guarded(K, f))
    audits = {}
    for name in _audit_list(args.audit, "H,f0"):
        if name not in available:
            raise UsageError(f"audit {name!r} unavailable here; choose from {sorted(available)}")
        audits[name] = available[name]
    traj = integrate(flow, np.array(init), args.t, args.dt, args.method, audits, kind="coadjoint")
    thresholds = {name: args.tol or DRIFT_TOL for name in audits}
    meta = {"mode": "reduced", "algebra": alg.name, "cocycle": str(F), "charge": args.charge, "dt": args.dt,
            "method": args.method}
    return _emit_trajectory(args, traj, thresholds, meta)


def _guarded(K, f):
    if not K.domain(f):
        return math.nan
    return K.value(f)


def cmd_simulate_chart(args):
    entry = get_chart_entry(args.chart)
    chart = entry.chart(**_parse_params(args.params))
    metric = _load_metric(args.metric, chart.dim)
    flow = MagneticFlow(chart, metric, args.charge)
    if args.init is None:
        raise UsageError("--init is required (g1..gn,p1..pn)")
    y0 = np.array(_load_vector(args.init))
    if len(y0) != 2 * chart.dim:
        raise UsageError(f"--init needs {2 * chart.dim} values (coordinates then momenta)")
    chart.require(y0[: chart.dim])
    available = {"H": flow.hamiltonian, "xi": integrals_of_motion(chart, args.charge)}
    default = "H,xi"
    if entry.id == "torus":
        default += ",closed"
        if args.audit and "xi_printed" in args.audit:
            available["xi_printed"] = lambda y: entry.references["integrals_printed"](y[:2], y[2:], args.charge)
    names = _audit_list(args.audit, default)
    for name in names:
        if name not in available and not (name == "closed" and entry.id == "torus"):
            raise UsageError(f"audit {name!r} unavailable here; choose from {sorted(available)}")
    audits = {n: available[n] for n in names if n != "closed"}
    traj = integrate(flow, y0, args.t, args.dt, args.method, audits, kind="phase")
    thresholds = {name: args.tol or DRIFT_TOL for name in audits}
    if "closed" in names:
        c = float(chart.cocycle.value(1, 2))
        err = np.array([np.max(np.abs(s - closed_form_torus(args.charge * c, y0, t)))
                        for t, s in zip(traj.times, traj.states)])
        traj.audits["closed"] = err
        thresholds["closed"] = args.tol or CLOSED_FORM_TOL
    meta = {"mode": "chart", "chart": entry.id, "charge": args.charge, "dt": args.dt, "method": args.method,
            "params": {k: format_fraction(as_fraction(v)) for k, v in sorted({**entry.params, **_parse_params(args.params)}.items())}}
    return _emit_trajectory(args, traj, thresholds, meta)


def cmd_catalog_list(args):
    return {"entries": catalog.list_entries()}


def cmd_catalog_verify(args):
    ids = [args.entry] if args.entry else None
    report = catalog.verify_all(seed=args.seed, trials=args.trials, jobs=args.jobs, ids=ids, exact=args.exact)
    out = report.to_json()
    if args.format == "csv":
        out = _verify_csv(report)
    if not report.ok:
        raise CheckFailed(out)
    return out


def _verify_csv(report) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["entry", "family", "printed", "claimed_index", "status", "verbatim_ok", "corrected"])
    for e in report.entries:
        for c in e.claims:
            w.writerow([e.id, c["family"], c["printed"], c["claimed_index"], c["status"], c["verbatim"]["ok"],
                        c.get("corrected", {}).get("condition", "")])
    return buf.getvalue()


def cmd_catalog_export(args):
    if args.entry:
        return catalog.export_entry(args.entry)
    return {"entries": [catalog.export_entry(i) for i in catalog.entry_ids()]}


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized rank tests (default 42)")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="random covectors per rank test")
    common.add_argument("--exact", action="store_true", help="deterministic symbolic rank instead of sampling")
    common.add_argument("--out", help="write the main output to this file")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="magflow", description="Magnetic geodesic flows on Lie groups.")
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="algebra utilities").add_subparsers(dest="action", required=True)
    v = alg.add_parser("validate", parents=[common], help="parse an algebra file and check Jacobi")
    v.add_argument("file")
    v.set_defaults(func=cmd_algebra_validate)

    coc = sub.add_parser("cocycle", help="2-cocycle utilities").add_subparsers(dest="action", required=True)
    b = coc.add_parser("basis", parents=[common], help="canonical basis of Z^2")
    b.add_argument("algebra")
    b.set_defaults(func=cmd_cocycle_basis)
    c = coc.add_parser("check", parents=[common], help="test the cocycle condition")
    c.add_argument("algebra")
    c.add_argument("cocycle", help="cocycle JSON file or inline terms like e12=1,e34=-1")
    c.set_defaults(func=cmd_cocycle_check)

    for name, func, help_, needs_f in (
        ("cohomology", cmd_cohomology, "dimensions of Z^2, B^2, H^2", False),
        ("index", cmd_index, "index of the algebra", False),
        ("cohomology-index", cmd_cohomology_index, "cohomology index of a cocycle class", True),
        ("integrable", cmd_integrable, "integrability verdict for a cocycle", True),
        ("extend", cmd_extend, "central extension by a cocycle", True),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("algebra", help="algebra JSON file or catalog id")
        if needs_f:
            sp.add_argument("cocycle", help="cocycle JSON file or inline terms like e12=1,e34=-1")
        sp.set_defaults(func=func)

    sim = sub.add_parser("simulate", help="integrate a flow").add_subparsers(dest="mode", required=True)
    dyn = argparse.ArgumentParser(add_help=False, parents=[common])
    dyn.add_argument("--dt", type=float, default=1e-3)
    dyn.add_argument("--t", type=float, default=10.0, help="final time")
    dyn.add_argument("--charge", type=float, default=1.0)
    dyn.add_argument("--metric", help="JSON file with G, or inline diagonal entries 1,1,2")
    dyn.add_argument("--init", help="comma separated values or a file")
    dyn.add_argument("--audit", help="comma separated conserved quantities to audit")
    dyn.add_argument("--method", choices=("rk4", "rk45"), default="rk4")
    dyn.add_argument("--tol", type=float, help="override audit thresholds")
    r = sim.add_parser("reduced", parents=[dyn], help="Lie-Poisson flow on the extension dual")
    r.add_argument("--algebra", required=True)
    r.add_argument("--cocycle")
    r.set_defaults(func=cmd_simulate_reduced)
    ch = sim.add_parser("chart", parents=[dyn], help="coordinate-level magnetic flow")
    ch.add_argument("--chart", required=True, help="g7 or torus")
    ch.add_argument("--params", help="chart parameters, e.g. alpha=1,beta=1,gamma=1 or c=1")
    ch.set_defaults(func=cmd_simulate_chart)

    cat = sub.add_parser("catalog", help="the appendix catalog").add_subparsers(dest="action", required=True)
    cl = cat.add_parser("list", parents=[common])
    cl.set_defaults(func=cmd_catalog_list)
    cv = cat.add_parser("verify", parents=[common])
    cv.add_argument("--entry")
    cv.add_argument("--jobs", type=int, default=4)
    cv.set_defaults(func=cmd_catalog_verify)
    ce = cat.add_parser("export", parents=[common])
    ce.add_argument("--entry")
    ce.set_defaults(func=cmd_catalog_export)
    return p


def _render(result) -> str:
    return result if isinstance(result, str) else io.dumps(result)


def _write(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out and getattr(args, "func", None) not in (cmd_simulate_reduced, cmd_simulate_chart):
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except CheckFailed as exc:
        _write(args, _render(exc.report))
        return 1
    except (NotACocycle, JacobiViolation, OutOfChart, StepRejection, MissingChartData) as exc:
        sys.stderr.write(f"magflow: {exc}\n")
        return 1
    except EntryNotFound as exc:
        sys.stderr.write(f"magflow: unknown entry {exc}\n")
        return 2
    except (UsageError, io.SchemaError, DimensionMismatch, ValueError, OSError) as exc:
        sys.stderr.write(f"magflow: {exc}\n")
        return 2
    _write(args, _render(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
