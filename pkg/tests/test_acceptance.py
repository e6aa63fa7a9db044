"""Acceptance criteria, one test per criterion.

Every test records a PASS/FAIL line (printed in the pytest terminal summary,
or directly when the file is run as a script) before asserting, so a failed
criterion is still reported with its residuals.
"""

import itertools
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from flataffine import algebra as A
from flataffine import catalog as C
from flataffine import cohomology as H
from flataffine import developing as dv
from flataffine import groups as G
from flataffine import io
from flataffine import symplectic as S
from flataffine import yang_baxter as Y

# pinned tolerances and time budgets (seconds)
TOL_DEVELOP = 1e-6
TOL_NABLA4 = 1e-5
TOL_COLLINEAR = 1e-7
TOL_PDE = 1e-8
TOL_DIAGRAM = 1e-7
TOL_COMPOSE = 1e-7
TOL_PATH = 1e-8
BUDGET_LEFT_SYMMETRY = 1.0
BUDGET_COHOMOLOGY = 1.0
BUDGET_CYBE = 2.0
BUDGET_DEVELOP = 30.0
BUDGET_PROPERTIES = 60.0

ALPHAS = (Fraction(-1), Fraction(1, 2), Fraction(2))
TS = (Fraction(0), Fraction(1), Fraction(3, 2))
R_GRID = list(itertools.product((Fraction(0), Fraction(1, 2), Fraction(2)), repeat=3))
SEED = 0

RESULTS: list[str] = []


def record(n: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {n:>2} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
    RESULTS.append(line)


def test_c01_left_symmetry_suite():
    t0 = time.perf_counter()
    e2, osc = C.e2_algebra(), C.oscillator_algebra()
    tables = [(f"e2:F1({a})", C.e2_F1(a), e2) for a in (Fraction(0),) + ALPHAS]
    tables += [(f"e2:F2({a})", C.e2_F2(a), e2) for a in ALPHAS]
    tables += [("e2:F3", C.e2_F3(), e2), ("e2:F4", C.e2_F4(), e2)]
    tables += [(f"o:F1(0,{t},{s},1/2)", C.osc_F1(t, s), osc) for t, s in itertools.product(TS, repeat=2)]
    tables += [(f"o:F2({a},{t},1/2)", C.osc_F2(a, t), osc) for a, t in itertools.product(ALPHAS, TS)]
    tables += [("o:F3(1/2)", C.osc_F3(), osc), ("o:F4(1/2)", C.osc_F4(), osc)]
    bad = [lbl for lbl, P, lie in tables
           if not (A.is_left_symmetric(P).ok and A.is_compatible(P, lie) and A.is_flat(P, lie)
                   and A.is_torsion_free(P, lie))]
    dt = time.perf_counter() - t0
    ok = not bad and dt < BUDGET_LEFT_SYMMETRY
    record(1, "left-symmetric, compatible, flat, torsion-free", ok, f"{len(tables)} tables, failing={bad}, {dt:.2f}s")
    assert ok


def test_c02_cohomology_dimensions():
    t0 = time.perf_counter()
    cases = [("F1(0)", C.e2_F1(0), 3), ("F3", C.e2_F3(), 1), ("F4", C.e2_F4(), 1)]
    cases += [(f"F1({a})", C.e2_F1(a), 0) for a in ALPHAS]
    cases += [(f"F2({a})", C.e2_F2(a), 2) for a in ALPHAS]
    got = {lbl: H.cohomology(P).dim_H2 for lbl, P, _ in cases}
    dt = time.perf_counter() - t0
    bad = [lbl for lbl, _, d in cases if got[lbl] != d]
    ok = not bad and dt < BUDGET_COHOMOLOGY
    record(2, "dim H2 = (3, 0, 2, 1, 1)", ok, f"{got}, {dt:.2f}s")
    assert ok


def test_c03_completeness():
    expect_true = [C.osc_F1(t, s) for t, s in itertools.product(TS, repeat=2)] + [C.osc_F3(), C.osc_F4()]
    expect_false = [C.osc_F2(a, t) for a, t in itertools.product(ALPHAS, TS)]
    ok = all(A.completeness_trace_check(P) for P in expect_true) and \
        not any(A.completeness_trace_check(P) for P in expect_false)
    record(3, "trace criterion: F1, F3, F4 complete; F2 (alpha != 0) not", ok)
    assert ok


def test_c04_cybe_suite():
    t0 = time.perf_counter()
    bad = []
    for a in R_GRID:
        r = C.oscillator_bivector(*a)
        if not Y.cybe_check(r):
            bad.append((a, "cybe"))
            continue
        if not Y.dual_bracket(r).same_as(C.osc_dual_bracket_expected(*a)):
            bad.append((a, "bracket"))
        if not Y.dual_product(r).same_as(C.osc_dual_product_expected(*a)):
            bad.append((a, "product"))
        pack = Y.double_algebra(r)
        checks = Y.double_checks(pack)
        needed = ("invariant", "signature_n_n", "g_isotropic", "dual_isotropic", "jacobi")
        if not all(checks[k] for k in needed) or A.linalg.inertia(pack.pairing.rows()) != (4, 4, 0):
            bad.append((a, "double"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < BUDGET_CYBE
    record(4, "CYBE, dual bracket/product, double pairing", ok, f"{len(R_GRID)} r, failing={bad[:3]}, {dt:.2f}s")
    assert ok


def test_c05_symplectic_suite():
    omega = C.osc_dual_omega()
    sym_bad, printed_bad, same_bad, comp_bad = [], [], [], []
    for a in R_GRID:
        r = C.oscillator_bivector(*a)
        lie = Y.dual_bracket(r)
        if not S.symplectic_check(omega, lie):
            sym_bad.append(a)
            continue
        P = S.product_from_symplectic(omega, lie)
        for (x, y), printed in C.osc_symplectic_products_printed(*a).items():
            want = [Fraction(printed.get(lbl, 0)) for lbl in lie.basis]
            if P.basis_product(x, y) != want:
                printed_bad.append((tuple(map(str, a)), x + y))
        if a[2] != 0 and P.same_as(Y.dual_product(r)):
            same_bad.append(a)
        if not A.completeness_trace_check(P):
            comp_bad.append(a)
    parts = {"symplectic": not sym_bad, "printed products": not printed_bad,
             "differs from r-product (a3 != 0)": not same_bad, "complete": not comp_bad}
    ok = all(parts.values())
    detail = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items())
    if printed_bad:
        detail += f"; {len(printed_bad)} printed-product mismatches, first {printed_bad[0]}"
    record(5, "symplectic form on o*(r) and its product", ok, detail)
    assert ok, detail


def test_c06_hess_suite():
    lie, omega = C.aff_algebra(), C.aff_omega()
    Hp = S.hess_connection(omega, lie, S.LagrangianSplit((0,), (1,)))
    parts = {"table": Hp.same_as(C.aff_hess_expected()), "flat": A.is_flat(Hp, lie),
             "torsion-free": A.is_torsion_free(Hp, lie), "Lorentz": Y.levi_civita_check(Hp, C.aff_lorentz())}
    ok = all(parts.values())
    record(6, "Hess connection on aff(R)", ok, str(parts))
    assert ok


def test_c07_developing_oracle():
    t0 = time.perf_counter()
    aff_grid = dv.grid_points([(0.5, 3.0), (-1.0, 1.0)], [10, 10])
    osc_grid = dv.grid_points([(-2.0, 2.0)] * 4, [3] * 4)
    cases = [("aff:nabla1", {"alpha": a}, aff_grid) for a in ("1/2", "1", "2")]
    cases += [("aff:nabla2", {"alpha": a}, aff_grid) for a in ("-1", "0", "2")]
    cases += [("oscillator:F1", {"t": t, "s": s}, osc_grid) for t, s in itertools.product(("0", "1", "3/2"), repeat=2)]
    cases += [("oscillator:F2", {"alpha": a, "t": t}, osc_grid)
              for a, t in itertools.product(("-1", "1/2", "2"), ("0", "1", "3/2"))]
    cases.append(("oscillator:F3", {}, osc_grid))
    worst, where = 0.0, None
    for fam, params, grid in cases:
        fa = dv.catalog_flat_affine(fam, params)
        dev = dv.max_deviation(dv.develop(fa, grid).value, dv.closed_form_development(fam, params, grid))
        if dev > worst:
            worst, where = dev, f"{fam}{params}"
    dt = time.perf_counter() - t0
    ok = worst < TOL_DEVELOP and dt < BUDGET_DEVELOP
    record(7, "numeric develop vs closed forms", ok, f"max dev {worst:.2e} at {where}, {len(cases)} cases, {dt:.1f}s")
    assert ok


def test_c08_nabla4_identity():
    rng = np.random.default_rng(SEED)
    fa = dv.catalog_flat_affine("oscillator:F4")
    pts = rng.uniform(-1.5, 1.5, (20, 4))
    eta = dv.develop(fa, pts, tol=1e-11).eta(fa.group, pts)
    worst = float(np.max(np.abs(dv.develop_jacobian(fa, pts) - eta)))
    numeric = dv.develop(fa, pts, tol=1e-10).value
    printed = dv.max_deviation(dv.closed_form_development("oscillator:F4", {}, pts), numeric)
    printed_eta = max(float(np.max(np.abs(dv.d4_printed_coframe(x) - e))) for x, e in zip(pts, eta))
    ok = worst < TOL_NABLA4
    note = "agree" if printed < TOL_DEVELOP else f"printed D4 off by {printed:.3g}, printed coframe off by {printed_eta:.3g} (erratum)"
    record(8, "dD = transported coframe for nabla4", ok, f"max |J - eta| {worst:.2e}; {note}")
    assert ok


def test_c09_geodesic_straightening():
    rng = np.random.default_rng(SEED)
    out = {}
    osc = dv.catalog_flat_affine("oscillator:F3")
    worst = 0.0
    for _ in range(10):
        tr = dv.geodesic(osc, rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4), 1.0, 200)
        worst = max(worst, dv.collinearity_residual(dv.develop(osc, tr.points, tol=1e-11).value))
    out["O,F3"] = worst
    for fam in ("aff:iso1", "aff:nabla1"):
        fa = dv.catalog_flat_affine(fam)
        worst = 0.0
        for _ in range(10):
            p = np.array([rng.uniform(0.5, 2.0), rng.uniform(-1, 1)])
            tr = dv.geodesic(fa, p, rng.uniform(-0.5, 0.5, 2), 1.0, 200)
            worst = max(worst, dv.collinearity_residual(dv.develop(fa, tr.points, tol=1e-11).value))
        out[fam] = worst
    exit_t = dv.chart_exit_time(dv.catalog_flat_affine("aff:nabla2", {"alpha": 2}), [1.0, 0.0], [-1.0, 0.0])
    ok = max(out.values()) < TOL_COLLINEAR and exit_t is not None
    record(9, "geodesics develop to lines; nabla2(2) incomplete", ok,
           ", ".join(f"{k} {v:.1e}" for k, v in out.items()) + f"; exit at t={exit_t}")
    assert ok


def test_c10_symplectomorphisms():
    rng = np.random.default_rng(SEED)
    pts = np.column_stack([rng.uniform(0.5, 3.0, 20), rng.uniform(-1.0, 1.0, 20)])
    maps = S.catalog_maps()
    pde = max(float(np.max(np.abs(S.symplectomorphism_residual(maps[k], pts)))) for k in ("f", "g", "F", "G"))
    aff = G.aff_r()
    fa1 = dv.FlatAffineGroup(aff, C.aff_iso1())
    fa2 = dv.FlatAffineGroup(aff, C.aff_iso2())
    AF, AG = dv.affine_rep(fa1, maps["F"]), dv.affine_rep(fa2, maps["G"])
    diag = max(dv.diagram_residual(fa1, maps["F"], AF, pts), dv.diagram_residual(fa2, maps["G"], AG, pts))
    comp = 0.0
    for fa, f, g in ((fa1, maps["F"], S.F_map(1.5, -1.0, 0.5)), (fa2, maps["G"], S.G_map(2.0, -1.0, 0.5))):
        lhs = dv.affine_rep(fa, f.compose(g))
        rhs = dv.affine_rep(fa, f).compose(dv.affine_rep(fa, g))
        comp = max(comp, float(np.max(np.abs(lhs.Q - rhs.Q))), float(np.max(np.abs(lhs.L - rhs.L))))
    ok = pde < TOL_PDE and diag < TOL_DIAGRAM and comp < TOL_COMPOSE
    record(10, "symplectomorphism PDE, affine diagram, A(F o G)", ok,
           f"pde {pde:.1e}, diagram {diag:.1e}, composition {comp:.1e}")
    assert ok


def _random_table(rng: random.Random, n: int) -> A.ProductTable:
    entries = {(i, j, k): Fraction(rng.randint(-2, 2), rng.randint(1, 2))
               for i in range(n) for j in range(n) for k in range(n) if rng.random() < 0.25}
    return A.ProductTable(tuple(f"e{i}" for i in range(n)), entries)


def _property_tables(rng: random.Random):
    base = [(P, lie) for _, P, lie in C.acceptance_tables()]
    out = []
    while len(out) < 100:
        kind = len(out) % 3
        if kind == 0:
            P = _random_table(rng, rng.randint(2, 3))
            out.append((P, A.commutator_bracket(P)))
        else:
            P, lie = rng.choice(base)
            if kind == 2:
                entries = dict(P.entries)
                key = tuple(rng.randrange(P.dim) for _ in range(3))
                entries[key] = entries.get(key, 0) + rng.choice((1, -1, Fraction(1, 2)))
                P = A.ProductTable(P.basis, entries)
            out.append((P, lie))
    return out


def test_c11_property_suites():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    tables = _property_tables(rng)
    mismatch = sum(A.operator_relations_check(P, lie) != (A.is_left_symmetric(P).ok and A.is_compatible(P, lie))
                   for P, lie in tables)
    n_true = sum(A.operator_relations_check(P, lie) for P, lie in tables)

    path_dev = 0.0
    for fam, params, x, via in [("aff:nabla2", {"alpha": "2"}, [2.0, 1.0], [(2.0, 0.0), (1.0, 1.0)]),
                                ("aff:nabla1", {"alpha": "1/2"}, [0.6, -1.0], [(0.6, 0.0), (1.0, -1.0)]),
                                ("oscillator:F4", {}, [0.5, -0.4, 1.0, 1.3], [(0.5, -0.4, 0.0, 0.0), (0.0, 0.0, 1.0, 1.3)])]:
        fa = dv.catalog_flat_affine(fam, params)
        ref = dv.develop(fa, np.array(x), tol=1e-10).value
        for v in via:
            alt = dv.develop(fa, np.array(x), tol=1e-10, path=dv.PathSpec(via=(v,))).value
            path_dev = max(path_dev, dv.max_deviation(ref, alt))

    trip_bad = [n for n in C.names() if not n.startswith("abelianN")
                and not io.loads(io.dumps(io.from_catalog(C.get(n)))).same_as(io.from_catalog(C.get(n)))]
    dt = time.perf_counter() - t0
    ok = mismatch == 0 and path_dev < TOL_PATH and not trip_bad and dt < BUDGET_PROPERTIES
    record(11, "operator relations, path independence, round trip", ok,
           f"{len(tables)} tables ({n_true} flat affine), mismatches {mismatch}; path dev {path_dev:.1e}; "
           f"round-trip failures {trip_bad}; {dt:.1f}s")
    assert ok


if __name__ == "__main__":
    import sys

    for name, fn in sorted(globals().items()):
        if name.startswith("test_c") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
    sys.exit(0 if all(" PASS " in r for r in RESULTS) else 1)
