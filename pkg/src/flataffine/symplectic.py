"""Symplectic Lie algebras: 2-cocycle check, the induced left-symmetric product,
Hess connections of Lagrangian splittings, and coordinate symplectomorphism tests
on Aff(R)_0 for the form -(1/x^2) dx ^ dy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .algebra import BilinearForm, ProductTable, StructureConstants, unit
from .expr import CoordinateMap, numeric_jacobian


class DegenerateForm(ValueError):
    pass


class InvalidSplit(ValueError):
    pass


class DomainError(ValueError):
    pass


def _antisym(omega: BilinearForm) -> bool:
    m = omega.matrix
    n = omega.dim
    return all(m[i][j] == -m[j][i] for i in range(n) for j in range(n))


def cocycle_residuals(omega: BilinearForm, lie: StructureConstants) -> dict[tuple[int, int, int], Fraction]:
    n = lie.dim
    out = {}
    for i, j, k in itertools.combinations(range(n), 3):
        x, y, z = unit(n, i), unit(n, j), unit(n, k)
        v = omega(lie.bracket(x, y), z) + omega(lie.bracket(y, z), x) + omega(lie.bracket(z, x), y)
        if v:
            out[(i, j, k)] = v
    return out


def symplectic_check(omega: BilinearForm, lie: StructureConstants) -> bool:
    if omega.dim != lie.dim:
        raise ValueError("form and algebra dimensions differ")
    if not _antisym(omega):
        raise ValueError("symplectic form must be antisymmetric")
    return omega.is_nondegenerate() and not cocycle_residuals(omega, lie)


def product_from_symplectic(omega: BilinearForm, lie: StructureConstants) -> ProductTable:
    """Unique product with omega(xy, z) = -omega(y, [x, z])."""
    if not omega.is_nondegenerate():
        raise DegenerateForm("omega is degenerate")
    n = lie.dim
    W = omega.rows()
    Wt = linalg.transpose(W)
    entries = {}
    for i in range(n):
        for j in range(n):
            rhs = [-omega(unit(n, j), lie.bracket(unit(n, i), unit(n, z))) for z in range(n)]
            v = linalg.solve(Wt, rhs)
            for k, c in enumerate(v):
                if c:
                    entries[(i, j, k)] = c
    return ProductTable(lie.basis, entries, "omega-product")


@dataclass(frozen=True)
class LagrangianSplit:
    first: tuple[int, ...]
    second: tuple[int, ...]

    def project(self, v, part: int):
        keep = set(self.first if part == 1 else self.second)
        return [c if i in keep else Fraction(0) for i, c in enumerate(v)]


def validate_split(omega: BilinearForm, lie: StructureConstants, split: LagrangianSplit) -> None:
    n = lie.dim
    if sorted(split.first + split.second) != list(range(n)):
        raise InvalidSplit("the two parts must partition the basis")
    for part in (split.first, split.second):
        s = set(part)
        for i, j in itertools.combinations(part, 2):
            if omega.matrix[i][j] != 0:
                raise InvalidSplit(f"part {part} is not isotropic")
            if any(c and k not in s for k, c in enumerate(lie.dense[i][j])):
                raise InvalidSplit(f"part {part} is not a subalgebra")


def hess_connection(omega: BilinearForm, lie: StructureConstants, split: LagrangianSplit) -> ProductTable:
    """nabla_(X1,X2)(Y1,Y2) = (X1 o Y1 + [X2,Y1]_1, X2 o Y2 + [X1,Y2]_2), o the omega-product."""
    validate_split(omega, lie, split)
    odot = product_from_symplectic(omega, lie)
    n = lie.dim
    entries = {}
    for i in range(n):
        x = unit(n, i)
        x1, x2 = split.project(x, 1), split.project(x, 2)
        for j in range(n):
            y = unit(n, j)
            y1, y2 = split.project(y, 1), split.project(y, 2)
            a = [p + q for p, q in zip(split.project(odot.product(x1, y1), 1),
                                       split.project(lie.bracket(x2, y1), 1))]
            b = [p + q for p, q in zip(split.project(odot.product(x2, y2), 2),
                                       split.project(lie.bracket(x1, y2), 2))]
            for k in range(n):
                c = a[k] + b[k]
                if c:
                    entries[(i, j, k)] = c
    return ProductTable(lie.basis, entries, "hess")


# ---- coordinate level ----------------------------------------------------------------

def aff_map(text: str, **params) -> CoordinateMap:
    return CoordinateMap.parse(text, ("x", "y"), params, domain=lambda p: p[0] > 0, label=text)


def catalog_maps() -> dict[str, CoordinateMap]:
    """The symplectomorphism families on Aff(R)_0, with fixed sample parameters.

    The third family is written with a single function symbol p (the printed
    formula mixes p and h).
    """
    return {
        "f": aff_map("(a*x*exp(y)/(1 + a*x*exp(y)*(1 + y**2)), a*exp(y))", a=1.5),
        "g": aff_map("(exp(y), exp(y)/x)"),
        "h": aff_map("(1 + x**2, (1 + x**2)**2*y/(2*x*x**2) + sin(x))"),
        "F": aff_map("(a*x, -b/x + a*y + d)", a=2.0, b=3.0, d=-1.0),
        "G": aff_map("(a*x, -2*b*sqrt(x) + a*y + d)", a=1.0, b=1.0, d=0.0),
    }


def F_map(a, b, d) -> CoordinateMap:
    return aff_map("(a*x, -b/x + a*y + d)", a=a, b=b, d=d)


def G_map(a, b, d) -> CoordinateMap:
    return aff_map("(a*x, -2*b*sqrt(x) + a*y + d)", a=a, b=b, d=d)


def symplectomorphism_residual(f, points, rel_step: float = 1e-6) -> np.ndarray:
    """Per point: (det Jf - (f1/x)^2) / (f1/x)^2 with central-difference Jacobians."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.empty(len(pts))
    for n, p in enumerate(pts):
        if not p[0] > 0:
            raise DomainError(f"point {p} outside x > 0")
        val = np.asarray(f(p), dtype=float)
        if not np.all(np.isfinite(val)) or not val[0] > 0:
            raise DomainError(f"map value {val} at {p} is not finite or leaves x > 0")
        J = numeric_jacobian(f, p, rel_step)
        target = (val[0] / p[0]) ** 2
        out[n] = (J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0] - target) / target
    return out


def affine_map_check(f, fa, points, velocities, T: float = 0.5, steps: int = 200, tol: float = 1e-7) -> bool:
    """Geodesic preservation: f(geodesic(p, v)) must equal the geodesic from f(p)
    with the pushed-forward initial velocity, at every sample time."""
    from .developing import geodesic

    group = fa.group
    for p, v in zip(np.atleast_2d(points), np.atleast_2d(velocities)):
        p = np.asarray(p, float)
        traj = geodesic(fa, p, v, T, steps)
        image = np.array([f(q) for q in traj.points])
        fp = image[0]
        coord_v = group.frame(p) @ np.asarray(v, float)
        pushed = numeric_jacobian(f, p) @ coord_v
        u0 = np.linalg.solve(group.frame(fp), pushed)
        ref = geodesic(fa, fp, u0, T, steps)
        scale = max(1.0, float(np.max(np.abs(image))))
        if np.max(np.abs(ref.points - image)) > tol * scale:
            return False
    return True
