"""Bivectors, the classical Yang-Baxter equation, dual and double Lie algebras.

Conventions (fixed once, checked against the oscillator tables):

* ``r = sum_{i<j} r^ij e_i ^ e_j`` with ``(e_i ^ e_j)(a, b) = a_i b_j - a_j b_i``;
* ``b(r#(a)) = r(a, b)``, so ``r#(e_i*) = sum_j r^ij e_j``;
* coadjoint action ``(ad*_x a)(y) = -a([x, y])``;
* dual bracket ``[a, b]_r = ad*_{r#a} b - ad*_{r#b} a`` and dual product
  ``a . b = ad*_{r#a} b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import linalg
from .algebra import (
    BilinearForm,
    ProductTable,
    StructureConstants,
    check_jacobi,
    unit,
)
from .linalg import Matrix, Vector, to_scalar


class CYBEViolated(ValueError):
    pass


class DegenerateForm(ValueError):
    pass


def dual_labels(basis) -> tuple[str, ...]:
    return tuple(f"{b}*" for b in basis)


@dataclass(frozen=True)
class Bivector:
    algebra: StructureConstants
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(to_scalar(x) for x in row) for row in self.matrix)
        n = self.algebra.dim
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError("bivector matrix must be dim x dim")
        for i in range(n):
            for j in range(n):
                if m[i][j] != -m[j][i]:
                    raise ValueError("bivector matrix must be antisymmetric")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_entries(cls, algebra: StructureConstants, entries: Mapping[tuple, object]) -> "Bivector":
        """Coefficients of e_i ^ e_j keyed by (i, j) (indices or labels)."""
        n = algebra.dim
        m = linalg.zeros(n, n)
        for (x, y), c in entries.items():
            i, j = algebra.index(x), algebra.index(y)
            c = to_scalar(c)
            if i == j and c:
                raise ValueError("e_i ^ e_i vanishes")
            m[i][j] += c
            m[j][i] -= c
        return cls(algebra, tuple(map(tuple, m)))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __call__(self, a: Vector, b: Vector) -> Fraction:
        n = self.dim
        return sum((self.matrix[i][j] * a[i] * b[j] for i in range(n) for j in range(n)), Fraction(0))

    def entries(self) -> dict[tuple[int, int], Fraction]:
        n = self.dim
        return {(i, j): self.matrix[i][j] for i in range(n) for j in range(i + 1, n) if self.matrix[i][j]}


def r_sharp(r: Bivector) -> Matrix:
    """Matrix of r#: g* -> g, column i is r#(e_i*)."""
    n = r.dim
    return [[r.matrix[i][j] for i in range(n)] for j in range(n)]


def apply(m: Matrix, v: Vector) -> Vector:
    return linalg.matvec(m, v)


def coadjoint(lie: StructureConstants, x: Vector, a: Vector) -> Vector:
    """(ad*_x a)(y) = -a([x, y])."""
    n = lie.dim
    out = []
    for j in range(n):
        b = lie.bracket(x, unit(n, j))
        out.append(-sum((ai * bi for ai, bi in zip(a, b)), Fraction(0)))
    return out


def cybe_residuals(r: Bivector) -> dict[tuple[int, int, int], Fraction]:
    """Nonzero values of a([r#b, r#c]) + b([r#c, r#a]) + c([r#a, r#b]) over basis covectors i<j<k."""
    lie = r.algebra
    n = r.dim
    S = r_sharp(r)
    images = [apply(S, unit(n, i)) for i in range(n)]
    out = {}
    for i, j, k in itertools.combinations(range(n), 3):
        v = (lie.bracket(images[j], images[k])[i]
             + lie.bracket(images[k], images[i])[j]
             + lie.bracket(images[i], images[j])[k])
        if v:
            out[(i, j, k)] = v
    return out


def cybe_check(r: Bivector) -> bool:
    if not check_jacobi(r.algebra).ok:
        raise ValueError("ambient bracket fails the Jacobi identity")
    return not cybe_residuals(r)


def _require_cybe(r: Bivector):
    if not cybe_check(r):
        raise CYBEViolated(f"bivector fails the CYBE at {sorted(cybe_residuals(r))}")


def _dual_ops(r: Bivector):
    lie = r.algebra
    n = r.dim
    S = r_sharp(r)
    cov = [unit(n, i) for i in range(n)]
    sh = [apply(S, a) for a in cov]
    # act[i][j] = ad*_{r#(e_i*)} e_j*
    act = [[coadjoint(lie, sh[i], cov[j]) for j in range(n)] for i in range(n)]
    return act


def dual_bracket(r: Bivector) -> StructureConstants:
    _require_cybe(r)
    n = r.dim
    act = _dual_ops(r)
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                v = act[i][j][k] - act[j][i][k]
                if v:
                    entries[(i, j, k)] = v
    return StructureConstants(dual_labels(r.algebra.basis), entries, f"{r.algebra.name}*(r)")


def dual_product(r: Bivector) -> ProductTable:
    _require_cybe(r)
    n = r.dim
    act = _dual_ops(r)
    entries = {(i, j, k): act[i][j][k] for i in range(n) for j in range(n) for k in range(n) if act[i][j][k]}
    return ProductTable(dual_labels(r.algebra.basis), entries, "r-dual product")


@dataclass(frozen=True)
class DualAlgebraPack:
    bracket: StructureConstants
    product: ProductTable
    sharp: Matrix


def dual_algebra(r: Bivector) -> DualAlgebraPack:
    return DualAlgebraPack(dual_bracket(r), dual_product(r), r_sharp(r))


@dataclass(frozen=True)
class DoubleAlgebraPack:
    algebra: StructureConstants
    pairing: BilinearForm

    @property
    def n(self) -> int:
        return self.algebra.dim // 2


def double_algebra(r: Bivector) -> DoubleAlgebraPack:
    """g + g*(r) with [(x,a),(y,b)] = ([x,y] + ad*_a y - ad*_b x, [a,b]_r + ad*_x b - ad*_y a).

    The mixed terms use the coadjoint actions of g on g* and of g*(r) on g = g**;
    that is what makes the pairing <(x,a),(y,b)> = b(x) + a(y) invariant.
    """
    lie = r.algebra
    dual = dual_bracket(r)
    n = lie.dim
    N = 2 * n

    def bracket(u: Vector, v: Vector) -> Vector:
        x, a = u[:n], u[n:]
        y, b = v[:n], v[n:]
        g_part = [p + q - s for p, q, s in zip(lie.bracket(x, y), coadjoint(dual, a, y), coadjoint(dual, b, x))]
        d_part = [p + q - s for p, q, s in zip(dual.bracket(a, b), coadjoint(lie, x, b), coadjoint(lie, y, a))]
        return g_part + d_part

    entries = {}
    for i in range(N):
        for j in range(i + 1, N):
            for k, v in enumerate(bracket(unit(N, i), unit(N, j))):
                if v:
                    entries[(i, j, k)] = v
    basis = lie.basis + dual.basis
    algebra = StructureConstants(basis, entries, f"D({lie.name}, r)")
    pairing = BilinearForm.from_entries(N, {(i, n + i): 1 for i in range(n)}, "symmetric", basis)
    return DoubleAlgebraPack(algebra, pairing)


def invariance_residuals(lie: StructureConstants, form: BilinearForm) -> list[tuple[int, int, int, Fraction]]:
    """Nonzero <[u,v],w> + <v,[u,w]> over basis triples."""
    N = lie.dim
    c, m = lie.dense, form.matrix
    out = []
    for u, v, w in itertools.product(range(N), repeat=3):
        val = sum((c[u][v][k] * m[k][w] for k in range(N) if c[u][v][k] and m[k][w]), Fraction(0))
        val += sum((m[v][k] * c[u][w][k] for k in range(N) if c[u][w][k] and m[v][k]), Fraction(0))
        if val:
            out.append((u, v, w, val))
    return out


def double_checks(pack: DoubleAlgebraPack) -> dict[str, bool]:
    n = pack.n
    m = pack.pairing.rows()
    return {
        "jacobi": check_jacobi(pack.algebra).ok,
        "symmetric": all(m[i][j] == m[j][i] for i in range(2 * n) for j in range(2 * n)),
        "nondegenerate": pack.pairing.is_nondegenerate(),
        "signature_n_n": linalg.inertia(m) == (n, n, 0),
        "g_isotropic": all(m[i][j] == 0 for i in range(n) for j in range(n)),
        "dual_isotropic": all(m[i][j] == 0 for i in range(n, 2 * n) for j in range(n, 2 * n)),
        "g_subalgebra": _closed(pack.algebra, range(n)),
        "dual_subalgebra": _closed(pack.algebra, range(n, 2 * n)),
        "invariant": not invariance_residuals(pack.algebra, pack.pairing),
    }


def _closed(lie: StructureConstants, idx) -> bool:
    idx = set(idx)
    return all(k in idx for (i, j, k) in lie.entries if i in idx and j in idx)


def dual_metric(orth: BilinearForm, r: Bivector | None = None) -> BilinearForm:
    """<a, b>* = <phi^-1 a, phi^-1 b> with phi(x) = <x, .>; the matrix is orth^-1."""
    m = orth.rows()
    if any(m[i][j] != m[j][i] for i in range(len(m)) for j in range(len(m))):
        raise ValueError("orthogonal structure must be symmetric")
    try:
        inv = linalg.inverse(m)
    except ValueError:
        raise DegenerateForm("orthogonal structure is degenerate") from None
    basis = dual_labels(r.algebra.basis) if r is not None else None
    return BilinearForm(tuple(map(tuple, inv)), "symmetric", basis)


def levi_civita_check(P: ProductTable, k: BilinearForm) -> bool:
    """k(x.y, z) + k(y, x.z) = 0 on every basis triple."""
    m = k.rows()
    n = P.dim
    if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
        raise ValueError("metric must be symmetric")
    if not k.is_nondegenerate():
        raise DegenerateForm("metric is degenerate")
    for x, y, z in itertools.product(range(n), repeat=3):
        if k(P.basis_product(x, y), unit(n, z)) + k(unit(n, y), P.basis_product(x, z)) != 0:
            return False
    return True
