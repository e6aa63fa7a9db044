"""Scalar 2-cohomology of a left-symmetric algebra with trivial coefficients.

A 2-cocycle is a bilinear f with f(ab - ba, c) = f(a, bc) - f(b, ac); the
coboundaries are f(a, b) = phi(ab).  Forms are n x n matrices f[i][j] = f(e_i, e_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import BilinearForm, ProductTable, is_left_symmetric


class NotLeftSymmetric(ValueError):
    pass


class NotACocycle(ValueError):
    pass


@dataclass(frozen=True)
class CochainSpace:
    dim: int
    basis: tuple[BilinearForm, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[list[Fraction]]:
        return [f.flat() for f in self.basis]

    def contains(self, form: BilinearForm) -> bool:
        return linalg.in_span(form.flat(), self.vectors())


@dataclass(frozen=True)
class CohomologyResult:
    Z: CochainSpace
    B: CochainSpace
    dim_H2: int
    representatives: tuple[BilinearForm, ...]


def _require_ls(P: ProductTable):
    report = is_left_symmetric(P)
    if not report.ok:
        i, j, k, _ = report.violations[0]
        raise NotLeftSymmetric(
            f"product {P.name or ''} is not left-symmetric (first violation at "
            f"{P.basis[i]}, {P.basis[j]}, {P.basis[k]})"
        )


def cocycle_equations(P: ProductTable) -> linalg.Matrix:
    """Rows of the linear system on the flattened unknowns f_ij (index i*n + j)."""
    n = P.dim
    p = P.dense
    rows = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                row = [Fraction(0)] * (n * n)
                # f(ab - ba, c) - f(a, bc) + f(b, ac) = 0
                for m in range(n):
                    row[m * n + c] += p[a][b][m] - p[b][a][m]
                    row[a * n + m] -= p[b][c][m]
                    row[b * n + m] += p[a][c][m]
                if any(row):
                    rows.append(row)
    return rows


def _form(n: int, vec) -> BilinearForm:
    return BilinearForm(tuple(tuple(vec[i * n:(i + 1) * n]) for i in range(n)))


def is_cocycle(P: ProductTable, g: BilinearForm) -> bool:
    v = g.flat()
    return all(sum((x * y for x, y in zip(row, v)), Fraction(0)) == 0 for row in cocycle_equations(P))


def cocycle_space(P: ProductTable) -> CochainSpace:
    _require_ls(P)
    n = P.dim
    eqs = cocycle_equations(P)
    basis = linalg.nullspace(eqs, n * n)
    return CochainSpace(n, tuple(_form(n, v) for v in basis))


def coboundary_space(P: ProductTable) -> CochainSpace:
    _require_ls(P)
    n = P.dim
    p = P.dense
    # phi_k o P has matrix entries p^k_ij
    spanning = [[p[i][j][k] for i in range(n) for j in range(n)] for k in range(n)]
    keep = linalg.independent_subset(spanning)
    return CochainSpace(n, tuple(_form(n, spanning[k]) for k in keep))


def cohomology(P: ProductTable) -> CohomologyResult:
    Z = cocycle_space(P)
    B = coboundary_space(P)
    reps_idx = linalg.independent_subset(Z.vectors(), B.vectors())
    reps = tuple(Z.basis[i] for i in reps_idx)
    dim_h2 = Z.rank - B.rank
    if len(reps) != dim_h2:
        raise AssertionError("coboundaries are not contained in the cocycles")
    return CohomologyResult(Z, B, dim_h2, reps)


def same_span_mod(forms_a, forms_b, B: CochainSpace) -> bool:
    """span(forms_a) + B == span(forms_b) + B."""
    va = [f.flat() for f in forms_a] + B.vectors()
    vb = [f.flat() for f in forms_b] + B.vectors()
    ra = linalg.rank(va) if va else 0
    rb = linalg.rank(vb) if vb else 0
    if ra != rb:
        return False
    return (linalg.rank(va + vb) if va + vb else 0) == ra


def central_extension(P: ProductTable, g: BilinearForm, label: str = "e0", first: bool = True) -> ProductTable:
    """Product on R + A with (x0, a)(y0, b) = (g(a, b), ab); the new basis vector goes first by default."""
    if g.dim != P.dim:
        raise ValueError("form and product dimensions differ")
    if not is_cocycle(P, g):
        raise NotACocycle("g does not satisfy the scalar 2-cocycle equation")
    if label in P.basis:
        raise ValueError(f"label {label!r} already used")
    n = P.dim
    off = 1 if first else 0
    z = 0 if first else n
    basis = (label,) + P.basis if first else P.basis + (label,)
    entries = {}
    for (i, j, k), v in P.entries.items():
        entries[(i + off, j + off, k + off)] = v
    for i in range(n):
        for j in range(n):
            if g.matrix[i][j]:
                entries[(i + off, j + off, z)] = g.matrix[i][j]
    return ProductTable(basis, entries, f"{P.name} extended by g" if P.name else "")
