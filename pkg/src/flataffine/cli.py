"""flataffine command line.

One JSON report per invocation on stdout, a short summary on stderr (unless
--json).  Exit status: 0 all checks pass, 1 a mathematical check failed,
2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import algebra as A
from . import catalog as C
from . import cohomology as H
from . import developing as dv
from . import groups as G
from . import io
from . import symplectic as S
from . import yang_baxter as Y
from .expr import CoordinateMap, ExpressionError
from .linalg import format_scalar, to_scalar

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.checks: list[dict] = []
        self.residuals: dict = {}
        self.errata: list[str] = []
        self.data: dict = {}
        self._t0 = time.perf_counter()

    def check(self, name: str, ok: bool, **detail):
        self.checks.append({"name": name, "status": "pass" if ok else "fail", **detail})
        return ok

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "status": "pass" if self.ok else "fail",
            "inputs": self.inputs,
            "checks": self.checks,
            "residuals": self.residuals,
            "errata": self.errata,
            "data": self.data,
            "wall_time": round(time.perf_counter() - self._t0, 4),
        }


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_scalar(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, tuple)):
        return list(obj)
    raise TypeError(f"not serialisable: {type(obj).__name__}")


# ---- argument helpers -----------------------------------------------------------------

def parse_params(items: list[str] | None) -> dict[str, str]:
    out = {}
    for item in items or []:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise InputError(f"parameter {part!r} is not of the form key=value")
            k, v = part.split("=", 1)
            try:
                to_scalar(v.strip())
            except (TypeError, ValueError, ZeroDivisionError):
                raise InputError(f"parameter {k}={v!r} is not a rational number") from None
            out[k.strip()] = v.strip()
    return out


def parse_point(text: str | None, n: int | None = None) -> np.ndarray:
    if text is None:
        raise InputError("--point is required")
    try:
        vals = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise InputError(f"cannot read point {text!r}") from None
    if n is not None and len(vals) != n:
        raise InputError(f"point needs {n} coordinates, got {len(vals)}")
    return vals


def load_input(args) -> io.AlgebraDocument:
    params = parse_params(args.param)
    if args.file and args.catalog:
        raise InputError("give either a file or --catalog, not both")
    if args.file:
        if params:
            raise InputError("--param only applies to catalog objects")
        try:
            return io.load(args.file)
        except OSError as exc:
            raise InputError(str(exc)) from None
    if not args.catalog:
        raise InputError("an input file or --catalog NAME is required")
    try:
        entry = C.get(args.catalog, params)
    except KeyError as exc:
        raise InputError(f"{exc.args[0]}; known: {', '.join(C.names())}") from None
    doc = io.from_catalog(entry)
    if entry.bivector is not None and doc.bivector is None:
        doc.bivector = entry.bivector  # r on the underlying algebra, used by cybe
    return doc


def _table(P: A.ProductTable) -> dict:
    out = {}
    for i in range(P.dim):
        for j in range(P.dim):
            v = P.basis_product(i, j)
            if any(v):
                out[f"{P.basis[i]}{P.basis[j]}"] = A.format_vector(v, P.basis)
    return out


def _brackets(lie: A.StructureConstants) -> dict:
    n = lie.dim
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = lie.dense[i][j]
            if any(v):
                out[f"[{lie.basis[i]},{lie.basis[j]}]"] = A.format_vector(v, lie.basis)
    return out


def _matrix(m) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in m]


# ---- commands --------------------------------------------------------------------------

def cmd_validate(args, rep: Report):
    doc = load_input(args)
    rep.inputs["object"] = doc.name
    jac = A.check_jacobi(doc.lie)
    rep.check("jacobi", jac.ok, violations=[[i, j, k, l, format_scalar(r)] for i, j, k, l, r in jac.violations][:10])
    if doc.product is not None:
        P = doc.product
        ls = A.is_left_symmetric(P)
        rep.check("left_symmetric", ls.ok, violations=[
            {"triple": [P.basis[i], P.basis[j], P.basis[k]], "residual": A.format_vector(v, P.basis)}
            for i, j, k, v in ls.violations[:10]])
        rep.check("compatible", A.is_compatible(P, doc.lie))
        if jac.ok:
            rep.check("torsion_free", A.is_torsion_free(P, doc.lie))
            rep.check("flat", A.is_flat(P, doc.lie))
        rep.residuals["complete"] = A.completeness_trace_check(P)
        rep.residuals["right_traces"] = [format_scalar(t) for t in A.right_traces(P)]
    rep.residuals["unimodular"] = A.is_unimodular(doc.lie)
    for name, form in doc.forms.items():
        rep.check(f"form {name} nondegenerate", form.is_nondegenerate())
        if form.symmetry == "antisymmetric":
            rep.check(f"form {name} is a 2-cocycle", not S.cocycle_residuals(form, doc.lie))


def cmd_cohomology(args, rep: Report):
    doc = load_input(args)
    rep.inputs["object"] = doc.name
    if doc.product is None:
        raise InputError(f"{doc.name} has no product table")
    ls = A.is_left_symmetric(doc.product)
    if not rep.check("left_symmetric", ls.ok):
        return
    res = H.cohomology(doc.product)
    rep.residuals.update({"dim_H2": res.dim_H2, "rank_Z": res.Z.rank, "rank_B": res.B.rank})
    rep.data["representatives"] = [_matrix(g.matrix) for g in res.representatives]


def _bivector(args, doc) -> Y.Bivector:
    if args.r is not None:
        try:
            vals = [to_scalar(v.strip()) for v in args.r.split(",")]
        except (TypeError, ValueError, ZeroDivisionError):
            raise InputError(f"cannot read --r {args.r!r}") from None
        if doc.lie.same_as(C.oscillator_algebra()) and len(vals) == 3:
            return C.oscillator_bivector(*vals)
        n = doc.lie.dim
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if len(vals) != len(pairs):
            raise InputError(f"--r needs {len(pairs)} coefficients (pairs i<j) for {doc.name}")
        return Y.Bivector.from_entries(doc.lie, dict(zip(pairs, vals)))
    if doc.bivector is None:
        raise InputError("no bivector: pass --r or a file with a bivector block")
    return doc.bivector


def cmd_cybe(args, rep: Report):
    doc = load_input(args)
    r = _bivector(args, doc)
    rep.inputs.update({"object": doc.name, "r": {f"{r.algebra.basis[i]}^{r.algebra.basis[j]}": format_scalar(c)
                                                 for (i, j), c in r.entries().items()}})
    if not rep.check("cybe", Y.cybe_check(r), residuals={str(k): format_scalar(v) for k, v in Y.cybe_residuals(r).items()}):
        return
    pack = Y.dual_algebra(r)
    rep.data["dual_brackets"] = _brackets(pack.bracket)
    rep.data["dual_product"] = _table(pack.product)
    rep.check("dual jacobi", A.check_jacobi(pack.bracket).ok)
    rep.check("dual product left-symmetric", A.is_left_symmetric(pack.product).ok)
    rep.check("dual product compatible", A.is_compatible(pack.product, pack.bracket))
    rep.residuals["dual_unimodular"] = A.is_unimodular(pack.bracket)
    for name, ok in Y.double_checks(Y.double_algebra(r)).items():
        rep.check(f"double: {name}", ok)
    if r.algebra.same_as(C.oscillator_algebra()):
        a = [r.matrix[0][1], r.matrix[0][2], r.matrix[0][3]]
        rep.residuals["dual_group_case"] = C.dual_group_case(*a)
        rep.check("dual brackets match displayed pattern", pack.bracket.same_as(C.osc_dual_bracket_expected(*a)))
        rep.check("dual product matches displayed pattern", pack.product.same_as(C.osc_dual_product_expected(*a)))


def _flat_affine(args) -> tuple[dv.FlatAffineGroup, str, dict]:
    params = parse_params(args.param)
    family = f"{args.group}:{args.conn}"
    try:
        fa = dv.catalog_flat_affine(family, params)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return fa, family, params


def _parse_grid(text: str, n: int) -> np.ndarray:
    try:
        axes = [tuple(part.split(":")) for part in text.split(",")]
        bounds = [(float(a), float(b)) for a, b, _ in axes]
        counts = [int(k) for _, _, k in axes]
    except ValueError:
        raise InputError(f"grid must look like lo:hi:count per coordinate, got {text!r}") from None
    if len(bounds) != n:
        raise InputError(f"grid needs {n} axes")
    return dv.grid_points(bounds, counts)


def cmd_develop(args, rep: Report):
    fa, family, params = _flat_affine(args)
    n = fa.dim
    rep.inputs.update({"family": family, "params": params, "tol": args.tol})
    has_closed = family in dv.FAMILIES
    if args.point is None and not args.grid:
        if not args.geodesic:
            raise InputError("develop needs --point, --grid or --geodesic")
        _develop_geodesic(args, rep, fa)
        return
    if args.grid:
        pts = _parse_grid(args.grid, n)
    else:
        pts = parse_point(args.point, n)[None, :]
    if not np.all(fa.group.contains(pts)):
        raise InputError(f"point outside the chart of {fa.group.name}")
    res = dv.develop(fa, pts, tol=args.tol)
    rep.residuals.update({"quadrature_error": res.error, "steps": res.steps})
    closed = None
    if has_closed:
        try:
            closed = dv.closed_form_development(family, params, pts)
        except dv.BranchError as exc:
            rep.errata.append(f"closed form unavailable: {exc}")
    if closed is not None:
        dev = dv.max_deviation(res.value, closed)
        rep.residuals["deviation"] = dev
        if family == "oscillator:F4":
            if dev > 1e-6:
                rep.errata.append(f"printed D4 components differ from the numeric developing map by {dev:.3g}")
            eta = res.eta(fa.group, pts)
            J = dv.develop_jacobian(fa, pts)
            rep.check("d(develop) equals transported coframe", float(np.max(np.abs(J - eta))) < 1e-5,
                      max_abs=float(np.max(np.abs(J - eta))))
        else:
            rep.check("numeric matches closed form", dev < 1e-6)
    if args.grid:
        if not args.out:
            raise InputError("--grid needs --out FILE for the table")
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            coords = list(fa.group.coords)
            w.writerow(coords + [f"D{i}" for i in range(n)] + ([f"closed{i}" for i in range(n)] if closed is not None else []))
            for k in range(len(pts)):
                row = list(pts[k]) + list(res.value[k]) + (list(closed[k]) if closed is not None else [])
                w.writerow([f"{v:.12g}" for v in row])
        rep.data["table"] = args.out
        rep.data["rows"] = len(pts)
    else:
        rep.data["point"] = pts[0]
        rep.data["numeric"] = res.value[0]
        if closed is not None:
            rep.data["closed_form"] = closed[0]
    if args.geodesic:
        _develop_geodesic(args, rep, fa)


def _develop_geodesic(args, rep: Report, fa):
    n = fa.dim
    v0 = parse_point(args.geodesic, n)
    start = fa.group.identity if args.start is None else parse_point(args.start, n)
    rep.inputs.update({"geodesic_v0": v0, "geodesic_start": start, "T": args.T})
    try:
        tr = dv.geodesic(fa, start, v0, args.T, args.steps)
    except dv.ChartExit as exc:
        # an incompleteness witness: reported as a failed completeness check
        rep.residuals["geodesic_exit_time"] = exc.time
        rep.check("geodesic defined on [0, T]", False, error=str(exc))
        return
    rep.check("geodesic defined on [0, T]", True)
    # the first sample is the identity, where develop is exactly 0
    col = dv.collinearity_residual(dv.develop(fa, tr.points, tol=1e-11).value)
    rep.residuals["collinearity"] = col
    rep.check("geodesic develops to a line", col < 1e-7, collinearity=col)


def _sample_aff(rng, k):
    return np.column_stack([rng.uniform(0.5, 3.0, k), rng.uniform(-1.0, 1.0, k)])


def cmd_symplectic(args, rep: Report):
    sub = args.sub
    if sub == "check":
        if not args.map:
            raise InputError("symplectic check needs --map")
        try:
            f = CoordinateMap.parse(args.map, ("x", "y"))
        except ExpressionError as exc:
            raise InputError(str(exc)) from None
        if f.dim_out != 2:
            raise InputError("the map needs two components")
        rng = np.random.default_rng(args.seed)
        pts = _sample_aff(rng, args.points)
        rep.inputs.update({"map": args.map, "points": args.points, "seed": args.seed})
        try:
            res = S.symplectomorphism_residual(f, pts)
        except S.DomainError as exc:
            raise InputError(str(exc)) from None
        worst = float(np.max(np.abs(res)))
        rep.residuals["max_relative"] = worst
        rep.check("preserves -dx^dy/x^2", worst < args.tol)
        return
    doc = load_input(args) if (args.file or args.catalog) else io.from_catalog(C.get("aff"))
    rep.inputs["object"] = doc.name
    omega = doc.forms.get(args.form)
    if omega is None:
        raise InputError(f"{doc.name} has no form named {args.form!r}")
    if not rep.check("symplectic", S.symplectic_check(omega, doc.lie)):
        return
    P = S.product_from_symplectic(omega, doc.lie)
    rep.data["omega_product"] = _table(P)
    rep.check("omega product left-symmetric", A.is_left_symmetric(P).ok)
    rep.residuals["omega_product_complete"] = A.completeness_trace_check(P)
    if sub == "product":
        if doc.name.startswith("oscillator-dual"):
            entry = C.get(args.catalog, parse_params(args.param)) if args.catalog else None
            if entry is not None:
                a = [entry.params.get(k, 0) for k in ("a1", "a2", "a3")]
                mism = []
                for (x, y), printed in C.osc_symplectic_products_printed(*a).items():
                    want = [Fraction(printed.get(lbl, 0)) for lbl in P.basis]
                    got = P.basis_product(x, y)
                    if got != want:
                        mism.append(f"{x}{y}: solution {A.format_vector(got, P.basis)}, "
                                    f"printed {A.format_vector(want, P.basis)}")
                rep.errata.extend(mism)
                rep.check("printed products reproduced", not mism)
                rep.residuals["differs_from_r_dual_product"] = not P.same_as(Y.dual_product(entry.bivector))
        elif doc.lie.same_as(C.aff_algebra()):
            rep.check("matches expected table", P.same_as(C.aff_symplectic_product_expected()))
        return
    # hess
    try:
        first, second = (tuple(int(i) for i in part.split()) for part in args.split.split("|"))
        split = S.LagrangianSplit(first, second)
        Hp = S.hess_connection(omega, doc.lie, split)
    except ValueError as exc:
        raise InputError(f"bad split {args.split!r}: {exc}") from None
    rep.data["hess"] = _table(Hp)
    rep.check("flat", A.is_flat(Hp, doc.lie))
    rep.check("torsion_free", A.is_torsion_free(Hp, doc.lie))
    if doc.lie.same_as(C.aff_algebra()):
        rep.check("matches expected table", Hp.same_as(C.aff_hess_expected()))
    lor = doc.forms.get("lorentz")
    if lor is not None:
        rep.check("Lorentz compatible", Y.levi_civita_check(Hp, lor))


def cmd_report(args, rep: Report):
    from . import reproduce

    if not args.all:
        raise InputError("report needs --all")
    rep.inputs["seed"] = args.seed
    for c in reproduce.run_all(seed=args.seed):
        d = c.as_dict()
        rep.check(d.pop("name"), c.ok, **{k: v for k, v in d.items() if k not in ("status", "errata")})
        rep.errata.extend(c.errata)


def cmd_export(args, rep: Report):
    doc = load_input(args)
    text = io.dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        rep.data["written"] = args.out
    else:
        rep.data["algebra_file"] = json.loads(text)
    rep.check("round trip", io.loads(text).same_as(doc))


def cmd_list(args, rep: Report):
    rep.data["catalog"] = C.names()
    rep.data["groups"] = sorted(G.GROUPS)
    rep.data["closed_forms"] = list(dv.FAMILIES)


# ---- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--param", action="append", help="catalog parameters, k=v[,k=v]")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="suppress the stderr summary")
    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("file", nargs="?", help="AlgebraFile (JSON)")
    source.add_argument("--catalog", help="catalog name, see 'flataffine list'")

    p = argparse.ArgumentParser(prog="flataffine", description="Flat affine and symplectic structures on Lie groups.")
    sp = p.add_subparsers(dest="command", required=True)
    sp.add_parser("validate", parents=[common, source], help="Jacobi, left symmetry, flatness, completeness")
    sp.add_parser("cohomology", parents=[common, source], help="scalar cohomology H^2 of a left-symmetric algebra")
    c = sp.add_parser("cybe", parents=[common, source], help="classical Yang-Baxter pipeline")
    c.add_argument("--r", help="bivector coefficients; a1,a2,a3 on the oscillator algebra")
    d = sp.add_parser("develop", parents=[common], help="numeric developing map")
    d.add_argument("--group", required=True, choices=["aff", "oscillator"])
    d.add_argument("--conn", required=True, help="connection, e.g. nabla1, nabla2, iso1, F1..F4")
    d.add_argument("--point")
    d.add_argument("--grid", help="lo:hi:count per coordinate, comma separated")
    d.add_argument("--out", help="CSV file for --grid")
    d.add_argument("--geodesic", help="initial frame velocity for a geodesic collinearity test")
    d.add_argument("--start", help="geodesic start point (default identity)")
    d.add_argument("--T", type=float, default=1.0)
    d.add_argument("--steps", type=int, default=400)
    s = sp.add_parser("symplectic", parents=[common, source], help="symplectic structures and maps")
    s.add_argument("sub", choices=["check", "hess", "product"])
    s.add_argument("--map", help="(f1, f2) in x, y for 'check'")
    s.add_argument("--points", type=int, default=20)
    s.add_argument("--form", default="omega")
    s.add_argument("--split", default="0|1", help="Lagrangian split as index lists, e.g. '0|1'")
    r = sp.add_parser("report", parents=[common], help="full reproduction suite")
    r.add_argument("--all", action="store_true")
    e = sp.add_parser("export", parents=[common, source], help="write a catalog object as an AlgebraFile")
    e.add_argument("--out")
    sp.add_parser("list", parents=[common], help="catalog names")
    return p


COMMANDS = {"validate": cmd_validate, "cohomology": cmd_cohomology, "cybe": cmd_cybe, "develop": cmd_develop,
            "symplectic": cmd_symplectic, "report": cmd_report, "export": cmd_export, "list": cmd_list}


VALUE_OPTIONS = ("--point", "--geodesic", "--start", "--r", "--grid")


def _glue_values(argv: list[str]) -> list[str]:
    """Let '--point -1,0' through: argparse would read '-1,0' as an option."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Report(args.command, {"argv": argv})
    code = EXIT_OK
    try:
        COMMANDS[args.command](args, rep)
    except (InputError, io.AlgebraFileError, ExpressionError) as exc:
        rep.check("input", False, error=str(exc))
        code = EXIT_INPUT
    except (ValueError, KeyError) as exc:
        rep.check("input", False, error=f"{type(exc).__name__}: {exc}")
        code = EXIT_INPUT
    except (dv.ChartExit, dv.ToleranceNotMet) as exc:
        rep.check("numerics", False, error=str(exc))
        code = EXIT_FAIL
    if code == EXIT_OK and not rep.ok:
        code = EXIT_FAIL
    doc = rep.as_dict()
    sys.stdout.write(json.dumps(doc, default=_jsonable, ensure_ascii=False, indent=2) + "\n")
    if not args.json:
        failed = [c["name"] for c in rep.checks if c["status"] != "pass"]
        line = f"{args.command}: {doc['status']} ({len(rep.checks) - len(failed)}/{len(rep.checks)} checks)"
        if failed:
            line += " failed: " + ", ".join(failed)
        if rep.errata:
            line += f"; {len(rep.errata)} erratum note(s)"
        print(line, file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
