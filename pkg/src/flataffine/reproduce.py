"""The full reproduction suite behind ``flataffine report --all``.

Each ``suite_*`` function returns a list of Check records; nothing here
raises on a mathematical failure, so one broken item does not hide the rest.
"""

from __future__ import annotations

import functools
import inspect
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import algebra as A
from . import catalog as C
from . import cohomology as H
from . import developing as dv
from . import groups as G
from . import symplectic as S
from . import yang_baxter as Y


@dataclass
class Check:
    name: str
    ok: bool
    residuals: dict = field(default_factory=dict)
    errata: list = field(default_factory=list)
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "status": "pass" if self.ok else "fail", "residuals": self.residuals,
                "errata": self.errata, "seconds": round(self.seconds, 4)}


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        checks = fn(*args, **kwargs)
        dt = (time.perf_counter() - t0) / max(1, len(checks))
        for c in checks:
            c.seconds = dt
        return checks

    return wrapper


@_timed
def suite_left_symmetry() -> list[Check]:
    bad = []
    for label, P, lie in C.acceptance_tables():
        ok = (A.is_left_symmetric(P).ok and A.is_compatible(P, lie) and A.is_flat(P, lie)
              and A.is_torsion_free(P, lie))
        if not ok:
            bad.append(label)
    return [Check("left_symmetric_compatible_flat_torsion_free", not bad,
                  {"tables": len(C.acceptance_tables()), "failing": bad})]


@_timed
def suite_cohomology() -> list[Check]:
    out = []
    for label, P, dim, reps in C.h2_expected():
        res = H.cohomology(P)
        reps_ok = all(H.is_cocycle(P, g) for g in reps) and H.same_span_mod(reps, list(res.representatives), res.B)
        out.append(Check(f"H2 {label}", res.dim_H2 == dim and reps_ok,
                         {"dim_H2": res.dim_H2, "expected": dim, "rank_Z": res.Z.rank, "rank_B": res.B.rank}))
    return out


@_timed
def suite_completeness() -> list[Check]:
    rows = []
    for t, s in itertools.product(C.TS_SAMPLES, repeat=2):
        rows.append((f"F1(0,{t},{s},1/2)", C.osc_F1(t, s), True))
    rows += [("F3(1/2)", C.osc_F3(), True), ("F4(1/2)", C.osc_F4(), True)]
    for a, t in itertools.product(C.ALPHA_SAMPLES, C.TS_SAMPLES):
        rows.append((f"F2({a},{t},1/2)", C.osc_F2(a, t), False))
    wrong = [label for label, P, want in rows if A.completeness_trace_check(P) != want]
    return [Check("completeness_trace", not wrong, {"cases": len(rows), "wrong": wrong})]


GRID3 = (Fraction(-1), Fraction(1, 2), Fraction(2))


@_timed
def suite_cybe() -> list[Check]:
    metric_dual = Y.dual_metric(C.oscillator_invariant_metric())
    fails = {"cybe": [], "bracket": [], "product": [], "double": [], "levi_civita": []}
    for a in itertools.product((Fraction(0),) + GRID3[1:], repeat=3):
        r = C.oscillator_bivector(*a)
        if not Y.cybe_check(r):
            fails["cybe"].append(a)
            continue
        if not Y.dual_bracket(r).same_as(C.osc_dual_bracket_expected(*a)):
            fails["bracket"].append(a)
        P = Y.dual_product(r)
        if not P.same_as(C.osc_dual_product_expected(*a)):
            fails["product"].append(a)
        if not all(Y.double_checks(Y.double_algebra(r)).values()):
            fails["double"].append(a)
        if not Y.levi_civita_check(P, metric_dual):
            fails["levi_civita"].append(a)
    errata = []
    r = C.oscillator_bivector(1, 1, 1)
    D = Y.double_algebra(r).algebra
    for (x, y), printed in C.double_brackets_printed(1, 1, 1).items():
        got = D.bracket(A.unit(8, D.index(x)), A.unit(8, D.index(y)))
        want = [Fraction(printed.get(lbl, 0)) for lbl in D.basis]
        if got != want:
            errata.append(f"[{x},{y}] printed {A.format_vector(want, D.basis)}, invariance forces "
                          f"{A.format_vector(got, D.basis)}")
    return [Check(f"oscillator r-matrix: {k}", not v, {"failing": [tuple(map(str, a)) for a in v]},
                  errata if k == "double" else []) for k, v in fails.items()]


@_timed
def suite_symplectic() -> list[Check]:
    checks = []
    omega = C.osc_dual_omega()
    sym_bad, comp_bad, same_bad, printed_bad = [], [], [], []
    for a in itertools.product((Fraction(0),) + GRID3[1:], repeat=3):
        lie = Y.dual_bracket(C.oscillator_bivector(*a))
        if not S.symplectic_check(omega, lie):
            sym_bad.append(a)
            continue
        P = S.product_from_symplectic(omega, lie)
        if not A.completeness_trace_check(P):
            comp_bad.append(a)
        if a[2] != 0 and P.same_as(Y.dual_product(C.oscillator_bivector(*a))):
            same_bad.append(a)
        for (x, y), printed in C.osc_symplectic_products_printed(*a).items():
            want = [Fraction(printed.get(lbl, 0)) for lbl in lie.basis]
            if P.basis_product(x, y) != want:
                printed_bad.append((a, x, y, A.format_vector(P.basis_product(x, y), lie.basis),
                                    A.format_vector(want, lie.basis)))
    errata = sorted({f"{x}{y}: solution {got}, printed {want} (first at r = {tuple(map(str, a))})"
                     for a, x, y, got, want in printed_bad[:1]})
    checks.append(Check("omega is symplectic on o*(r)", not sym_bad))
    checks.append(Check("omega product reproduces the five printed products", not printed_bad,
                        {"mismatches": len(printed_bad)}, errata))
    checks.append(Check("omega product differs from r-dual product when a3 != 0", not same_bad))
    checks.append(Check("omega product complete (right traces vanish)", not comp_bad))
    return checks


@_timed
def suite_hess() -> list[Check]:
    lie, omega = C.aff_algebra(), C.aff_omega()
    Hp = S.hess_connection(omega, lie, S.LagrangianSplit((0,), (1,)))
    return [
        Check("Hess connection table", Hp.same_as(C.aff_hess_expected())),
        Check("Hess flat and torsion-free", A.is_flat(Hp, lie) and A.is_torsion_free(Hp, lie)),
        Check("Hess Lorentz compatible", Y.levi_civita_check(Hp, C.aff_lorentz())),
        Check("omega product table", S.product_from_symplectic(omega, lie).same_as(C.aff_symplectic_product_expected())),
    ]


def developing_cases():
    """(family, params, grid) for the closed-form comparisons."""
    aff_grid = dv.grid_points([(0.5, 3.0), (-1.0, 1.0)], [10, 10])
    osc_grid = dv.grid_points([(-2.0, 2.0)] * 4, [3] * 4)
    cases = [("aff:nabla1", {"alpha": a}, aff_grid) for a in ("1/2", "1", "2")]
    cases += [("aff:nabla2", {"alpha": a}, aff_grid) for a in ("-1", "0", "2")]
    for t, s in itertools.product(("0", "1", "3/2"), repeat=2):
        cases.append(("oscillator:F1", {"t": t, "s": s}, osc_grid))
    for a, t in itertools.product(("-1", "1/2", "2"), ("0", "1")):
        cases.append(("oscillator:F2", {"alpha": a, "t": t}, osc_grid))
    cases.append(("oscillator:F3", {}, osc_grid))
    return cases


@_timed
def suite_developing(tol: float = 1e-6) -> list[Check]:
    worst, per = 0.0, {}
    for fam, params, grid in developing_cases():
        fa = dv.catalog_flat_affine(fam, params)
        dev = dv.max_deviation(dv.develop(fa, grid).value, dv.closed_form_development(fam, params, grid))
        key = f"{fam}{params}"
        per[key] = dev
        worst = max(worst, dev)
    return [Check("numeric develop matches closed forms", worst < tol, {"max_deviation": worst})]


@_timed
def suite_nabla4(seed: int = 0, tol: float = 1e-5) -> list[Check]:
    rng = np.random.default_rng(seed)
    fa = dv.catalog_flat_affine("oscillator:F4")
    pts = rng.uniform(-1.5, 1.5, (20, 4))
    eta = dv.develop(fa, pts, tol=1e-11).eta(fa.group, pts)
    worst = float(np.max(np.abs(dv.develop_jacobian(fa, pts) - eta)))
    printed = dv.closed_form_development("oscillator:F4", {}, pts)
    numeric = dv.develop(fa, pts, tol=1e-10).value
    printed_dev = dv.max_deviation(printed, numeric)
    eta_dev = max(float(np.max(np.abs(dv.d4_printed_coframe(x) - e))) for x, e in zip(pts, eta))
    errata = []
    if printed_dev > 1e-6:
        errata.append(f"printed D4 components deviate from the numeric developing map by up to {printed_dev:.3g}")
    if eta_dev > 1e-6:
        errata.append(f"printed coframe for nabla4 deviates from the transported coframe by up to {eta_dev:.3g}")
    return [Check("nabla4: d(develop) equals transported coframe", worst < tol,
                  {"max_abs": worst, "printed_D4_deviation": printed_dev, "printed_eta_deviation": eta_dev}, errata)]


@_timed
def suite_geodesics(seed: int = 0, tol: float = 1e-7) -> list[Check]:
    rng = np.random.default_rng(seed)
    cases = [(dv.catalog_flat_affine("oscillator:F3"), lambda: (rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4))),
             (dv.catalog_flat_affine("aff:iso1"),
              lambda: (np.array([rng.uniform(0.5, 2.0), rng.uniform(-1, 1)]), rng.uniform(-0.5, 0.5, 2)))]
    out = []
    for fa, draw in cases:
        worst = 0.0
        for _ in range(10):
            p, v = draw()
            tr = dv.geodesic(fa, p, v, 1.0, 200)
            worst = max(worst, dv.collinearity_residual(dv.develop(fa, tr.points, tol=1e-11).value))
        out.append(Check(f"geodesics develop to lines: {fa.name}", worst < tol, {"max_collinearity": worst}))
    fa = dv.catalog_flat_affine("aff:nabla2", {"alpha": 2})
    t_exit = dv.chart_exit_time(fa, [1.0, 0.0], [-1.0, 0.0])
    out.append(Check("incompleteness witness aff:nabla2(2), v0 = -e1", t_exit is not None,
                     {"exit_time": t_exit, "exit_time_plus_e1": dv.chart_exit_time(fa, [1.0, 0.0], [1.0, 0.0])}))
    return out


@_timed
def suite_symplectomorphisms(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    pts = np.column_stack([rng.uniform(0.5, 3.0, 20), rng.uniform(-1.0, 1.0, 20)])
    maps = S.catalog_maps()
    res = {k: float(np.max(np.abs(S.symplectomorphism_residual(f, pts)))) for k, f in maps.items()}
    checks = [Check("symplectomorphism PDE residuals", max(res.values()) < 1e-8, res)]
    G1 = G.aff_r()
    fa1 = dv.FlatAffineGroup(G1, C.aff_iso1(), "iso1")
    fa2 = dv.FlatAffineGroup(G1, C.aff_iso2(), "iso2")
    AF = dv.affine_rep(fa1, maps["F"])
    AG = dv.affine_rep(fa2, maps["G"])
    rF = dv.diagram_residual(fa1, maps["F"], AF, pts)
    rG = dv.diagram_residual(fa2, maps["G"], AG, pts)
    checks.append(Check("affine_rep diagram commutes", max(rF, rG) < 1e-7, {"F_on_iso1": rF, "G_on_iso2": rG}))
    F2 = S.F_map(1.5, -1.0, 0.5)
    comp = dv.affine_rep(fa1, maps["F"].compose(F2))
    prod = AF.compose(dv.affine_rep(fa1, F2))
    dev = max(float(np.max(np.abs(comp.Q - prod.Q))), float(np.max(np.abs(comp.L - prod.L))))
    checks.append(Check("A(F o F') = A(F) A(F')", dev < 1e-7, {"max_abs": dev}))
    return checks


@_timed
def suite_groups(seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    models = [G.heisenberg(), G.oscillator(), G.euclidean_e2(), G.aff_r()]
    models += [G.dual_group(c, p) for c, p in (("abelian", (0, 0, 0)), ("heisenberg_x_line", (1, 0, 0)),
                                               ("central_ext", (1, 1, 0)), ("cplx_semidirect", (2, -1, 3)))]
    out = []
    for g in models:
        ax = G.axiom_residuals(g, rng)
        li = G.left_invariance_residual(g, rng)
        sc = G.structure_constant_residual(g, rng)
        out.append(Check(f"group model {g.name}", max(ax.values()) < 1e-12 and li < 1e-7 and sc < 1e-8,
                         {**ax, "left_invariance": li, "structure_constants": sc}))
    hom = G.homomorphism_residual(G.projection_to_e2, G.oscillator(), G.euclidean_e2(), rng)
    out.append(Check("O -> E(2) is a homomorphism", hom < 1e-9, {"max_abs": hom}))
    q = G.euclidean_e2().sample(rng, 50)
    right_inv = float(np.max(np.abs(G.projection_to_e2(G.section_from_e2(q)) - q)))
    sec = G.homomorphism_residual(G.section_from_e2, G.euclidean_e2(), G.oscillator(), rng)
    out.append(Check("section is a right inverse of the projection", right_inv < 1e-12,
                     {"max_abs": right_inv, "section_hom_defect": sec},
                     ["the section E(2) -> O is not a homomorphism"] if sec > 1e-9 else []))
    errata = []
    if not G.intertwiner_is_automorphism(1, 2):
        errata.append("z -> z^(l'/l) does not preserve the Heisenberg product, so it is not an automorphism")
    out.append(Check("lambda independence diagram (principal branch)", G.lambda_independence_check(1, 2), {}, errata))
    return out


SUITES = {
    "left_symmetry": suite_left_symmetry,
    "cohomology": suite_cohomology,
    "completeness": suite_completeness,
    "cybe": suite_cybe,
    "symplectic": suite_symplectic,
    "hess": suite_hess,
    "groups": suite_groups,
    "developing": suite_developing,
    "nabla4": suite_nabla4,
    "geodesics": suite_geodesics,
    "symplectomorphisms": suite_symplectomorphisms,
}


def run_all(seed: int = 0) -> list[Check]:
    out = []
    for name, fn in SUITES.items():
        kwargs = {"seed": seed} if "seed" in inspect.signature(fn).parameters else {}
        out.extend(fn(**kwargs))
    return out
